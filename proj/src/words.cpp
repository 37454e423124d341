#include "orbitclass/words.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace orbitclass {

int letter_rank(Letter l) {
    int gid = std::abs(l) - 1;
    return 2 * gid + (l > 0 ? 0 : 1);
}

bool shortlex_less(const std::vector<Letter>& a, const std::vector<Letter>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        int ra = letter_rank(a[i]), rb = letter_rank(b[i]);
        if (ra != rb) return ra < rb;
    }
    return false;
}

SurfacePresentation::SurfacePresentation(int g) : genus(g) {
    if (g < 2) throw InputError("surface presentation requires genus >= 2");
}

Word SurfacePresentation::relator() const {
    std::vector<Letter> ls;
    ls.reserve(4 * genus);
    for (int i = 0; i < genus; ++i) {
        Letter a = 2 * i + 1, b = 2 * i + 2;
        ls.push_back(a);
        ls.push_back(b);
        ls.push_back(-a);
        ls.push_back(-b);
    }
    return Word(ls);
}

// --- parsing / formatting -------------------------------------------------

Word parse_word(const std::string& text, int genus) {
    std::vector<Letter> ls;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        bool upper = std::isupper(static_cast<unsigned char>(c));
        char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (lc != 'a' && lc != 'b')
            throw InputError(std::string("unexpected character '") + c + "' in word \"" + text + "\"");
        ++i;
        int idx = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            idx = idx * 10 + (text[i] - '0');
            ++i;
        }
        if (idx == 0) idx = 1;
        if (idx > genus)
            throw InputError("generator index " + std::to_string(idx) + " exceeds genus " +
                             std::to_string(genus) + " in word \"" + text + "\"");
        int gid = 2 * (idx - 1) + (lc == 'b' ? 1 : 0);
        ls.push_back(upper ? -(gid + 1) : (gid + 1));
    }
    return Word(ls);
}

static std::string letter_str(Letter l) {
    int gid = std::abs(l) - 1;
    char c = (gid % 2 == 0) ? 'a' : 'b';
    if (l < 0) c = static_cast<char>(std::toupper(c));
    return std::string(1, c) + std::to_string(gid / 2 + 1);
}

std::string format_word(const std::vector<Letter>& ls) {
    std::string out;
    for (std::size_t i = 0; i < ls.size(); ++i) {
        if (i) out += ' ';
        out += letter_str(ls[i]);
    }
    return out;
}

std::string format_word(const Word& w) { return format_word(w.letters); }

std::string compact_word(const std::vector<Letter>& ls) {
    std::string out;
    for (Letter l : ls) out += letter_str(l);
    return out;
}

// --- reduction ------------------------------------------------------------

Word free_reduce(const Word& w) {
    std::vector<Letter> out;
    out.reserve(w.letters.size());
    for (Letter l : w.letters) {
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    return Word(out);
}

CyclicReduction cyclic_reduce(const Word& w) {
    Word r = free_reduce(w);
    std::size_t lo = 0, hi = r.letters.size();
    while (hi - lo >= 2 && r.letters[lo] == -r.letters[hi - 1]) {
        ++lo;
        --hi;
    }
    CyclicReduction out;
    out.conjugator = Word(std::vector<Letter>(r.letters.begin(), r.letters.begin() + lo));
    out.cyclic.letters.assign(r.letters.begin() + lo, r.letters.begin() + hi);
    return out;
}

Word invert(const Word& w) {
    std::vector<Letter> ls(w.letters.rbegin(), w.letters.rend());
    for (Letter& l : ls) l = -l;
    return Word(ls);
}

CyclicWord invert(const CyclicWord& w, const SurfacePresentation& p) {
    std::vector<Letter> ls(w.letters.rbegin(), w.letters.rend());
    for (Letter& l : ls) l = -l;
    return canonical_conjugacy_form(Word(ls), p);
}

// --- relator machinery ----------------------------------------------------

namespace {

// All cyclic rotations of the relator and of its inverse. Every subword of
// the (cyclic) relator word is a prefix of exactly one entry.
std::vector<std::vector<Letter>> relator_rotations(const SurfacePresentation& p) {
    std::vector<std::vector<Letter>> rots;
    auto add_all = [&rots](const std::vector<Letter>& base) {
        std::size_t n = base.size();
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<Letter> rot;
            rot.reserve(n);
            for (std::size_t k = 0; k < n; ++k) rot.push_back(base[(s + k) % n]);
            rots.push_back(std::move(rot));
        }
    };
    Word r = p.relator();
    add_all(r.letters);
    add_all(invert(r).letters);
    return rots;
}

struct Match {
    std::size_t pos = 0;
    std::size_t len = 0;
    std::size_t rot = 0;
};

// Leftmost-longest subword of `w` matching a prefix of some relator rotation,
// of length > min_len (linear scan; words here are short).
bool find_match(const std::vector<Letter>& w, const std::vector<std::vector<Letter>>& rots,
                std::size_t min_len, Match& out) {
    bool found = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t r = 0; r < rots.size(); ++r) {
            const auto& rot = rots[r];
            std::size_t m = 0;
            while (i + m < w.size() && m < rot.size() && w[i + m] == rot[m]) ++m;
            if (m > min_len && (!found || m > out.len)) {
                out = {i, m, r};
                found = true;
            }
        }
        if (found) return true;  // leftmost position wins; longest at that position
    }
    return found;
}

std::vector<Letter> inverse_of(const std::vector<Letter>& ls) {
    std::vector<Letter> out(ls.rbegin(), ls.rend());
    for (Letter& l : out) l = -l;
    return out;
}

// Replace w[pos..pos+len) by the inverse of the complementary piece of the
// matched rotation.
std::vector<Letter> apply_swap(const std::vector<Letter>& w, const Match& m,
                               const std::vector<std::vector<Letter>>& rots) {
    const auto& rot = rots[m.rot];
    std::vector<Letter> comp(rot.begin() + static_cast<long>(m.len), rot.end());
    std::vector<Letter> repl = inverse_of(comp);
    std::vector<Letter> out;
    out.reserve(w.size() - m.len + repl.size());
    out.insert(out.end(), w.begin(), w.begin() + static_cast<long>(m.pos));
    out.insert(out.end(), repl.begin(), repl.end());
    out.insert(out.end(), w.begin() + static_cast<long>(m.pos + m.len), w.end());
    return out;
}

std::vector<Letter> free_reduce_vec(const std::vector<Letter>& ls) {
    return free_reduce(Word(ls)).letters;
}

std::vector<Letter> cyclic_reduce_vec(const std::vector<Letter>& ls) {
    auto r = free_reduce_vec(ls);
    std::size_t lo = 0, hi = r.size();
    while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
        ++lo;
        --hi;
    }
    return std::vector<Letter>(r.begin() + static_cast<long>(lo), r.begin() + static_cast<long>(hi));
}

}  // namespace

Word dehn_reduce(const Word& w, const SurfacePresentation& p) {
    static thread_local std::map<int, std::vector<std::vector<Letter>>> cache;
    auto it = cache.find(p.genus);
    if (it == cache.end()) it = cache.emplace(p.genus, relator_rotations(p)).first;
    const auto& rots = it->second;

    std::vector<Letter> cur = free_reduce_vec(w.letters);
    const std::size_t half = static_cast<std::size_t>(2 * p.genus);
    Match m;
    while (find_match(cur, rots, half, m)) {
        cur = free_reduce_vec(apply_swap(cur, m, rots));
    }
    return Word(cur);
}

namespace {

// Same-length rewrites: swap a subword equal to exactly half of a relator
// rotation for the inverse complement.
std::vector<std::vector<Letter>> half_swap_neighbors(const std::vector<Letter>& w,
                                                     const std::vector<std::vector<Letter>>& rots,
                                                     std::size_t half) {
    std::vector<std::vector<Letter>> out;
    for (std::size_t i = 0; i + half <= w.size(); ++i) {
        for (std::size_t r = 0; r < rots.size(); ++r) {
            const auto& rot = rots[r];
            bool ok = true;
            for (std::size_t k = 0; k < half; ++k) {
                if (w[i + k] != rot[k]) { ok = false; break; }
            }
            if (!ok) continue;
            Match m{i, half, r};
            out.push_back(apply_swap(w, m, rots));
        }
    }
    return out;
}

const std::vector<std::vector<Letter>>& rotations_for(const SurfacePresentation& p) {
    static thread_local std::map<int, std::vector<std::vector<Letter>>> cache;
    auto it = cache.find(p.genus);
    if (it == cache.end()) it = cache.emplace(p.genus, relator_rotations(p)).first;
    return it->second;
}

}  // namespace

Word element_canonical(const Word& w, const SurfacePresentation& p) {
    const auto& rots = rotations_for(p);
    const std::size_t half = static_cast<std::size_t>(2 * p.genus);

    std::vector<Letter> start = dehn_reduce(w, p).letters;
    std::set<std::vector<Letter>> seen{start};
    std::vector<std::vector<Letter>> queue{start};
    std::vector<Letter> best = start;
    while (!queue.empty()) {
        auto cur = queue.back();
        queue.pop_back();
        if (shortlex_less(cur, best)) best = cur;
        for (auto& nb : half_swap_neighbors(cur, rots, half)) {
            auto red = free_reduce_vec(nb);
            if (red.size() < cur.size()) {
                // found a shorter representative after all; restart from it
                return element_canonical(Word(red), p);
            }
            if (seen.insert(red).second) queue.push_back(red);
        }
        if (seen.size() > 200000)
            throw std::runtime_error("element_canonical: closure too large");
    }
    return Word(best);
}

namespace {

// Cyclic Dehn shortening + full rotation/half-swap closure of the shortest
// cyclic representatives. The closure is the certificate that the shortlex
// minimum is conjugation-invariant.
std::set<std::vector<Letter>> conjugacy_closure(std::vector<Letter> c,
                                                const SurfacePresentation& p) {
    const auto& rots = rotations_for(p);
    const std::size_t half = static_cast<std::size_t>(2 * p.genus);
    const std::size_t whole = static_cast<std::size_t>(4 * p.genus);

    c = cyclic_reduce_vec(c);

    // shorten cyclically first
    bool changed = true;
    while (changed && !c.empty()) {
        changed = false;
        std::size_t n = c.size();
        std::vector<Letter> ext;
        for (std::size_t k = 0; k < n + whole; ++k) ext.push_back(c[k % n]);
        for (std::size_t i = 0; i < n && !changed; ++i) {
            for (std::size_t r = 0; r < rots.size() && !changed; ++r) {
                const auto& rot = rots[r];
                std::size_t m = 0;
                while (m < rot.size() && m < n && ext[i + m] == rot[m]) ++m;
                if (m > half) {
                    // rotate so the match starts at 0, then swap and re-reduce
                    std::vector<Letter> rotated;
                    for (std::size_t k = 0; k < n; ++k) rotated.push_back(c[(i + k) % n]);
                    Match match{0, m, r};
                    c = cyclic_reduce_vec(apply_swap(rotated, match, rots));
                    changed = true;
                }
            }
        }
    }

    std::set<std::vector<Letter>> closure;
    if (c.empty()) return closure;

    std::vector<std::vector<Letter>> queue{c};
    closure.insert(c);
    while (!queue.empty()) {
        auto cur = queue.back();
        queue.pop_back();
        std::size_t n = cur.size();
        // rotations
        for (std::size_t s = 1; s < n; ++s) {
            std::vector<Letter> rot;
            for (std::size_t k = 0; k < n; ++k) rot.push_back(cur[(s + k) % n]);
            if (closure.insert(rot).second) queue.push_back(rot);
        }
        // half swaps (on the linear layout; rotations cover wrap positions)
        for (auto& nb : half_swap_neighbors(cur, rots, half)) {
            auto red = cyclic_reduce_vec(nb);
            if (red.size() < n) {
                // shorter representative uncovered: restart entirely
                return conjugacy_closure(red, p);
            }
            if (closure.insert(red).second) queue.push_back(red);
        }
        if (closure.size() > 500000)
            throw std::runtime_error("conjugacy_closure: closure too large");
    }
    return closure;
}

}  // namespace

CyclicWord canonical_conjugacy_form(const Word& w, const SurfacePresentation& p) {
    auto closure = conjugacy_closure(free_reduce(w).letters, p);
    if (closure.empty())
        throw InputError("identity element: not a closed geodesic");
    const std::vector<Letter>* best = nullptr;
    for (const auto& m : closure) {
        if (!best || shortlex_less(m, *best)) best = &m;
    }
    CyclicWord out;
    out.letters = *best;
    out.canonical = true;
    return out;
}

CyclicWord canonical_conjugacy_form(const CyclicWord& w, const SurfacePresentation& p) {
    if (w.canonical) return w;
    return canonical_conjugacy_form(Word(w.letters), p);
}

bool is_primitive(const CyclicWord& c, const SurfacePresentation& p) {
    if (c.letters.empty()) throw InputError("identity element has no primitivity");
    auto closure = conjugacy_closure(c.letters, p);
    for (const auto& m : closure) {
        std::size_t n = m.size();
        for (std::size_t per = 1; per < n; ++per) {
            if (n % per != 0) continue;
            bool periodic = true;
            for (std::size_t i = 0; i < n && periodic; ++i)
                periodic = (m[i] == m[(i + per) % n]);
            if (periodic) return false;
        }
    }
    return true;
}

std::string unoriented_key(const CyclicWord& c, const SurfacePresentation& p) {
    CyclicWord canon = canonical_conjugacy_form(c, p);
    CyclicWord inv = invert(canon, p);
    return shortlex_less(inv.letters, canon.letters) ? compact_word(inv.letters)
                                                     : compact_word(canon.letters);
}

std::vector<CyclicWord> primitive_classes_upto(const SurfacePresentation& p, int max_len,
                                               std::size_t max_count,
                                               bool one_per_unoriented_curve) {
    std::vector<CyclicWord> out;
    std::set<std::string> seen;

    // enumerate freely reduced words in shortlex order, letter ranks 0..4g-1
    std::vector<Letter> rank_to_letter;
    for (int gid = 0; gid < p.generator_count(); ++gid) {
        rank_to_letter.push_back(gid + 1);
        rank_to_letter.push_back(-(gid + 1));
    }

    std::vector<Letter> word;
    for (int len = 1; len <= max_len && out.size() < max_count; ++len) {
        // restart per length so output is sorted by (length, lex)
        std::vector<Letter>().swap(word);
        auto dfs_len = [&](auto&& self, int remaining) -> void {
            if (out.size() >= max_count) return;
            if (remaining == 0) {
                try {
                    CyclicWord canon = canonical_conjugacy_form(Word(word), p);
                    if (static_cast<int>(canon.size()) == len && canon.letters == word) {
                        std::string key = one_per_unoriented_curve
                                              ? unoriented_key(canon, p)
                                              : compact_word(canon.letters);
                        if (!seen.count(key) && is_primitive(canon, p)) {
                            seen.insert(key);
                            out.push_back(canon);
                        }
                    }
                } catch (const InputError&) {
                }
                return;
            }
            for (Letter l : rank_to_letter) {
                if (!word.empty() && word.back() == -l) continue;
                word.push_back(l);
                self(self, remaining - 1);
                word.pop_back();
                if (out.size() >= max_count) return;
            }
        };
        dfs_len(dfs_len, len);
    }
    return out;
}

}  // namespace orbitclass
