#pragma once

// Hyperbolic structure on the genus-g surface: the regular 4g-gon with the
// commutator side pairing, evaluated generator matrices, axes, translation
// lengths.

#include <vector>

#include "orbitclass/geometry.hpp"
#include "orbitclass/words.hpp"

namespace orbitclass {

enum class IsometryType { Hyperbolic, Parabolic, Elliptic, Identity };

// Ideal endpoints of the invariant geodesic, as angles in [0, 2pi) on the
// boundary circle of the disk model.
struct Axis {
    double attracting = 0.0;
    double repelling = 0.0;
};

// Same data as complex unit vectors (convenient for Mobius pushforward).
struct AxisC {
    Cplx attracting{1.0, 0.0};
    Cplx repelling{-1.0, 0.0};
};

struct Side {
    int index = 0;        // 0..4g-1, counterclockwise
    Letter letter = 0;    // boundary label; reading all sides ccw spells the relator
    int partner = 0;      // side carrying the inverse letter
    Cplx v_start, v_end;  // ccw endpoints
    DiskGeodesic geo;     // full geodesic through the side
};

struct FuchsianRep {
    SurfacePresentation pres;
    double circumradius = 0.0;  // hyperbolic
    double apothem = 0.0;
    std::vector<Cplx> vertices;       // 4g, ccw
    std::vector<Side> sides;          // 4g, side j's outward midpoint at angle 2*pi*j/n
    std::vector<Mat2> gen_matrices;   // indexed by letter_rank: a1, A1, b1, B1, ...
    std::vector<DiskMobius> gen_disk; // same indexing

    explicit FuchsianRep(SurfacePresentation p) : pres(p) {}

    const DiskMobius& letter_mobius(Letter l) const { return gen_disk[letter_rank(l)]; }
    const Mat2& letter_matrix(Letter l) const { return gen_matrices[letter_rank(l)]; }

    // min over sides of the side_value (positive strictly inside)
    double polygon_margin(Cplx z) const;
    bool contains(Cplx z, double tol = kDegenTol) const { return polygon_margin(z) >= -tol; }
};

// Regular 4g-gon with vertex angle pi/(2g); all side pairings realize the
// relator prod_i [a_i, b_i]. Throws InputError for genus < 2.
FuchsianRep build_regular_rep(int genus);

Mat2 evaluate(const Word& w, const FuchsianRep& rep);
DiskMobius evaluate_disk(const Word& w, const FuchsianRep& rep);

IsometryType classify_isometry(const Mat2& m);
IsometryType classify_isometry(const DiskMobius& m);

Axis axis_endpoints(const Mat2& m);          // throws InputError if not hyperbolic
AxisC axis_endpoints_disk(const DiskMobius& m);

double translation_length(const Mat2& m);    // 2*acosh(|tr|/2)
double translation_length(const DiskMobius& m);

}  // namespace orbitclass
