#pragma once

// Low-level hyperbolic-plane primitives. All geometry lives in the Poincaré
// disk; the public matrix type Mat2 is the corresponding SL(2,R) action on
// the upper half-plane, related by the Cayley transform z -> (z-i)/(z+i).

#include <complex>

#include "orbitclass/tolerances.hpp"

namespace orbitclass {

using Cplx = std::complex<double>;

// Real matrix [[a,b],[c,d]], det = 1 within tolerance; acts on the upper
// half-plane by z -> (az+b)/(cz+d).
struct Mat2 {
    double a = 1, b = 0, c = 0, d = 1;

    static Mat2 identity() { return {}; }
    Mat2 operator*(const Mat2& o) const;
    Mat2 inverse() const;
    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }
};

// Disk-model isometry z -> (alpha z + beta) / (conj(beta) z + conj(alpha)),
// normalized to |alpha|^2 - |beta|^2 = 1 (sign of (alpha,beta) is free: the
// pair and its negative act identically).
struct DiskMobius {
    Cplx alpha{1.0, 0.0};
    Cplx beta{0.0, 0.0};

    static DiskMobius identity() { return {}; }
    DiskMobius operator*(const DiskMobius& o) const;  // composition: this after o
    DiskMobius inverse() const;
    Cplx apply(Cplx z) const;
    void normalize();
    double trace() const { return 2.0 * alpha.real(); }
    // squared displacement invariant: cosh d(0, m(0)) = |alpha|^2 + |beta|^2
    double cosh_displacement() const { return std::norm(alpha) + std::norm(beta); }
};

Mat2 to_half_plane(const DiskMobius& m);
DiskMobius to_disk(const Mat2& m);

double hyp_dist(Cplx z1, Cplx z2);

DiskMobius translate_to(Cplx w);   // 0 -> w
DiskMobius rotation(double theta); // about 0

// Orientation-preserving isometry with A -> C, B -> D. Requires equal
// hyperbolic distances d(A,B) = d(C,D).
DiskMobius isometry_two_points(Cplx A, Cplx B, Cplx C, Cplx D);

// Complete geodesic, oriented from ideal endpoint e1 to e2. Realized as a
// Euclidean circle orthogonal to the unit circle, or a diameter.
struct DiskGeodesic {
    bool line = false;
    Cplx center{0.0, 0.0};
    double radius = 0.0;
    Cplx e1{-1.0, 0.0}, e2{1.0, 0.0};
    // unit-speed chart: point_at(t) = chart(tanh(t/2)), chart(-1)=e1, chart(1)=e2
    DiskMobius chart;

    static DiskGeodesic from_ideal(Cplx a, Cplx b);
    static DiskGeodesic through_points(Cplx z1, Cplx z2);

    Cplx point_at(double t) const;
    double param_of(Cplx z) const;  // z assumed on the geodesic
    Cplx closest_to_origin() const;
    DiskGeodesic transformed(const DiskMobius& m) const;
    // signed side value: |z-center|^2 - radius^2 (circle), cross product (line)
    double side_value(Cplx z) const;
};

// Transverse intersection point of two geodesics inside the open disk.
// Returns false if they do not cross (or are tangent/equal within tolerance).
bool geodesic_intersection(const DiskGeodesic& g1, const DiskGeodesic& g2, Cplx& out);

}  // namespace orbitclass
