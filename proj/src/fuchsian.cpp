#include "orbitclass/fuchsian.hpp"

#include <cmath>

namespace orbitclass {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ccw boundary layout a, b^-1, a^-1, b per handle; this is the labeling whose
// pairing maps satisfy the commutator relator
Letter side_letter(int j) {
    int handle = j / 4;
    switch (j % 4) {
        case 0: return 2 * handle + 1;     // a_{handle+1}
        case 1: return -(2 * handle + 2);  // b^-1
        case 2: return -(2 * handle + 1);  // a^-1
        default: return 2 * handle + 2;    // b
    }
}

int side_partner(int j) {
    switch (j % 4) {
        case 0: return j + 2;
        case 1: return j + 2;
        case 2: return j - 2;
        default: return j - 2;
    }
}

}  // namespace

double FuchsianRep::polygon_margin(Cplx z) const {
    double m = 1e300;
    for (const Side& s : sides) m = std::min(m, s.geo.side_value(z));
    return m;
}

FuchsianRep build_regular_rep(int genus) {
    SurfacePresentation pres(genus);
    FuchsianRep rep(pres);
    const int n = 4 * genus;

    // regular n-gon with interior angle 2*pi/n: cosh(circumradius) = cot^2(pi/n)
    double cot = 1.0 / std::tan(kPi / n);
    rep.circumradius = std::acosh(cot * cot);
    double re = std::tanh(rep.circumradius * 0.5);  // Euclidean vertex radius
    double tap = std::tanh(rep.circumradius) * std::cos(kPi / n);
    rep.apothem = std::atanh(tap);

    rep.vertices.resize(n);
    for (int j = 0; j < n; ++j)
        rep.vertices[j] = std::polar(re, kPi * (2.0 * j + 1.0) / n);

    rep.sides.resize(n);
    for (int j = 0; j < n; ++j) {
        Side& s = rep.sides[j];
        s.index = j;
        s.letter = side_letter(j);
        s.partner = side_partner(j);
        s.v_start = rep.vertices[(j + n - 1) % n];
        s.v_end = rep.vertices[j];
        s.geo = DiskGeodesic::through_points(s.v_start, s.v_end);
    }

    // pairing transformation for letter x: maps the side labeled x^-1 onto the
    // side labeled x with reversed boundary orientation, so that the image
    // polygon lies across side x
    rep.gen_disk.resize(n);  // 4g entries: generators and inverses
    rep.gen_matrices.resize(n);
    for (int gid = 0; gid < 2 * genus; ++gid) {
        Letter x = gid + 1;
        int jx = -1, jinv = -1;
        for (int j = 0; j < n; ++j) {
            if (rep.sides[j].letter == x) jx = j;
            if (rep.sides[j].letter == -x) jinv = j;
        }
        const Side& sx = rep.sides[jx];
        const Side& si = rep.sides[jinv];
        DiskMobius rho = isometry_two_points(si.v_start, si.v_end, sx.v_end, sx.v_start);
        rep.gen_disk[letter_rank(x)] = rho;
        rep.gen_disk[letter_rank(-x)] = rho.inverse();
        rep.gen_matrices[letter_rank(x)] = to_half_plane(rho);
        rep.gen_matrices[letter_rank(-x)] = to_half_plane(rho.inverse());
    }

    // internal consistency: the image of the polygon center under rho(x) must
    // sit across the side labeled x, at distance twice the apothem
    for (int j = 0; j < n; ++j) {
        const Side& s = rep.sides[j];
        Cplx expected = std::polar(std::tanh(rep.apothem), 2.0 * kPi * j / n);
        Cplx got = rep.letter_mobius(s.letter).apply(Cplx(0.0, 0.0));
        if (std::abs(got - expected) > 1e-9)
            throw std::runtime_error("build_regular_rep: side pairing convention broken");
    }

    // relator must evaluate to +-identity
    DiskMobius prod = DiskMobius::identity();
    for (Letter l : pres.relator().letters) prod = prod * rep.letter_mobius(l);
    double err = std::min(std::abs(prod.alpha - 1.0) + std::abs(prod.beta),
                          std::abs(prod.alpha + 1.0) + std::abs(prod.beta));
    if (err > kAlgebraTol)
        throw std::runtime_error("build_regular_rep: relator does not close up");

    return rep;
}

DiskMobius evaluate_disk(const Word& w, const FuchsianRep& rep) {
    DiskMobius m = DiskMobius::identity();
    for (Letter l : w.letters) m = m * rep.letter_mobius(l);
    m.normalize();
    return m;
}

Mat2 evaluate(const Word& w, const FuchsianRep& rep) { return to_half_plane(evaluate_disk(w, rep)); }

IsometryType classify_isometry(const DiskMobius& m) {
    double t = std::abs(m.trace());
    if (std::abs(m.beta) <= kAlgebraTol && std::abs(m.alpha.imag()) <= kAlgebraTol &&
        std::abs(std::abs(m.alpha.real()) - 1.0) <= kAlgebraTol)
        return IsometryType::Identity;
    if (t > 2.0 + kAlgebraTol) return IsometryType::Hyperbolic;
    if (t < 2.0 - kAlgebraTol) return IsometryType::Elliptic;
    return IsometryType::Parabolic;
}

IsometryType classify_isometry(const Mat2& m) { return classify_isometry(to_disk(m)); }

AxisC axis_endpoints_disk(const DiskMobius& m) {
    if (classify_isometry(m) != IsometryType::Hyperbolic)
        throw InputError("axis_endpoints: isometry is not hyperbolic");
    // fixed points: conj(beta) z^2 + (conj(alpha) - alpha) z - beta = 0
    Cplx A = std::conj(m.beta);
    Cplx B = std::conj(m.alpha) - m.alpha;
    Cplx C = -m.beta;
    Cplx disc = std::sqrt(B * B - 4.0 * A * C);
    Cplx z1 = (-B + disc) / (2.0 * A);
    Cplx z2 = (-B - disc) / (2.0 * A);
    z1 /= std::abs(z1);
    z2 /= std::abs(z2);
    // attracting endpoint: |f'(z)| = 1/|conj(beta) z + conj(alpha)|^2 < 1
    double d1 = std::norm(std::conj(m.beta) * z1 + std::conj(m.alpha));
    AxisC ax;
    if (d1 > 1.0) {
        ax.attracting = z1;
        ax.repelling = z2;
    } else {
        ax.attracting = z2;
        ax.repelling = z1;
    }
    return ax;
}

Axis axis_endpoints(const Mat2& m) {
    AxisC ax = axis_endpoints_disk(to_disk(m));
    auto ang = [](Cplx z) {
        double a = std::arg(z);
        if (a < 0.0) a += 2.0 * kPi;
        return a;
    };
    return {ang(ax.attracting), ang(ax.repelling)};
}

double translation_length(const DiskMobius& m) {
    if (classify_isometry(m) != IsometryType::Hyperbolic)
        throw InputError("translation_length: isometry is not hyperbolic");
    return 2.0 * std::acosh(std::abs(m.trace()) * 0.5);
}

double translation_length(const Mat2& m) { return translation_length(to_disk(m)); }

}  // namespace orbitclass
