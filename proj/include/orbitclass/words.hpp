#pragma once

// Exact combinatorics of the genus-g orientable surface group
// <a_1,b_1,...,a_g,b_g | prod_i [a_i,b_i]>: free and cyclic reduction,
// relator-based shortening, conjugacy canonical forms, primitivity.
//
// Word syntax: lowercase letter = generator, uppercase = inverse,
// "a1 b1 A1 B1" (whitespace optional, index defaults to 1).

#include <cstdint>
#include <string>
#include <vector>

#include "orbitclass/errors.hpp"

namespace orbitclass {

// Nonzero signed generator id: +k is generator k-1, -k its inverse.
// Generator ids: a_i -> 2(i-1), b_i -> 2(i-1)+1, handles i = 1..g.
using Letter = int;

inline Letter inverse_letter(Letter l) { return -l; }

// Ordering a1 < A1 < b1 < B1 < a2 < A2 < ... used for all shortlex ties.
int letter_rank(Letter l);

bool shortlex_less(const std::vector<Letter>& a, const std::vector<Letter>& b);

struct Word {
    std::vector<Letter> letters;

    Word() = default;
    explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    bool operator==(const Word& o) const { return letters == o.letters; }
    bool operator!=(const Word& o) const { return !(*this == o); }
};

// A conjugacy-class representative: cyclically reduced letter sequence.
// `canonical` is set once the sequence is the shortlex-minimal member of
// its rotation/half-swap closure.
struct CyclicWord {
    std::vector<Letter> letters;
    bool canonical = false;

    std::size_t size() const { return letters.size(); }
    bool operator==(const CyclicWord& o) const { return letters == o.letters; }
    bool operator!=(const CyclicWord& o) const { return !(*this == o); }
};

struct SurfacePresentation {
    int genus;

    explicit SurfacePresentation(int g);

    int generator_count() const { return 2 * genus; }   // a_i, b_i
    int alphabet_size() const { return 4 * genus; }     // with inverses
    Word relator() const;                               // a1 b1 A1 B1 a2 ...
};

// --- parsing / formatting -------------------------------------------------

Word parse_word(const std::string& text, int genus);
std::string format_word(const Word& w);                  // "a1 b1"
std::string format_word(const std::vector<Letter>& ls);
std::string compact_word(const std::vector<Letter>& ls); // "a1b1"

// --- reduction ------------------------------------------------------------

Word free_reduce(const Word& w);

struct CyclicReduction {
    CyclicWord cyclic;
    Word conjugator;  // input = conjugator * cyclic * conjugator^-1
};
CyclicReduction cyclic_reduce(const Word& w);

Word invert(const Word& w);
CyclicWord invert(const CyclicWord& w, const SurfacePresentation& p);

// Dehn shortening: replace any subword longer than half of a cyclic rotation
// of the relator (or its inverse) by the shorter complement, to a fixed point.
Word dehn_reduce(const Word& w, const SurfacePresentation& p);

// Shortlex-minimal geodesic representative of the element (linear word).
Word element_canonical(const Word& w, const SurfacePresentation& p);

// Shortlex-minimal cyclically reduced representative of the conjugacy class.
// Throws InputError on the identity.
CyclicWord canonical_conjugacy_form(const Word& w, const SurfacePresentation& p);
CyclicWord canonical_conjugacy_form(const CyclicWord& w, const SurfacePresentation& p);

// True iff the class is not a proper power. Expects a canonical form.
bool is_primitive(const CyclicWord& c, const SurfacePresentation& p);

// Unoriented-curve key: min of the canonical forms of c and c^-1.
std::string unoriented_key(const CyclicWord& c, const SurfacePresentation& p);

// Deterministic list of primitive conjugacy classes with canonical length
// <= max_len, shortlex order, optionally one per unoriented curve.
std::vector<CyclicWord> primitive_classes_upto(const SurfacePresentation& p,
                                               int max_len,
                                               std::size_t max_count,
                                               bool one_per_unoriented_curve);

}  // namespace orbitclass
