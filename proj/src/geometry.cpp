#include "orbitclass/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace orbitclass {

Mat2 Mat2::operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Mat2 Mat2::inverse() const { return {d, -b, -c, a}; }

DiskMobius DiskMobius::operator*(const DiskMobius& o) const {
    // matrix product of [[alpha,beta],[conj beta, conj alpha]] forms
    DiskMobius r;
    r.alpha = alpha * o.alpha + beta * std::conj(o.beta);
    r.beta = alpha * o.beta + beta * std::conj(o.alpha);
    return r;
}

DiskMobius DiskMobius::inverse() const {
    DiskMobius r;
    r.alpha = std::conj(alpha);
    r.beta = -beta;
    return r;
}

Cplx DiskMobius::apply(Cplx z) const {
    return (alpha * z + beta) / (std::conj(beta) * z + std::conj(alpha));
}

void DiskMobius::normalize() {
    double det = std::norm(alpha) - std::norm(beta);
    if (det <= 0.0) throw std::runtime_error("DiskMobius: nonpositive determinant");
    double s = 1.0 / std::sqrt(det);
    alpha *= s;
    beta *= s;
}

Mat2 to_half_plane(const DiskMobius& m) {
    Cplx sum = m.alpha + m.beta, dif = m.alpha - m.beta;
    return {sum.real(), dif.imag(), -sum.imag(), dif.real()};
}

DiskMobius to_disk(const Mat2& m) {
    DiskMobius d;
    d.alpha = Cplx((m.a + m.d) * 0.5, (m.b - m.c) * 0.5);
    d.beta = Cplx((m.a - m.d) * 0.5, -(m.b + m.c) * 0.5);
    return d;
}

double hyp_dist(Cplx z1, Cplx z2) {
    double n = std::norm(z1 - z2);
    double den = (1.0 - std::norm(z1)) * (1.0 - std::norm(z2));
    return std::acosh(1.0 + 2.0 * n / den);
}

DiskMobius translate_to(Cplx w) {
    double det = 1.0 - std::norm(w);
    if (det <= 0.0) throw std::runtime_error("translate_to: point outside disk");
    double s = 1.0 / std::sqrt(det);
    DiskMobius m;
    m.alpha = Cplx(s, 0.0);
    m.beta = w * s;
    return m;
}

DiskMobius rotation(double theta) {
    DiskMobius m;
    m.alpha = std::polar(1.0, theta * 0.5);
    m.beta = Cplx(0.0, 0.0);
    return m;
}

namespace {

// maps A -> 0 and B onto the positive real axis
DiskMobius align_pair(Cplx A, Cplx B) {
    DiskMobius t = translate_to(-A);
    Cplx v = t.apply(B);
    return rotation(-std::arg(v)) * t;
}

}  // namespace

DiskMobius isometry_two_points(Cplx A, Cplx B, Cplx C, Cplx D) {
    DiskMobius g1 = align_pair(A, B);
    DiskMobius g2 = align_pair(C, D);
    DiskMobius m = g2.inverse() * g1;
    m.normalize();
    return m;
}

DiskGeodesic DiskGeodesic::from_ideal(Cplx a, Cplx b) {
    a /= std::abs(a);
    b /= std::abs(b);
    DiskGeodesic g;
    g.e1 = a;
    g.e2 = b;
    double det = a.real() * b.imag() - a.imag() * b.real();  // Im(conj(a) b)
    if (std::abs(det) < 1e-10) {
        if (std::abs(a - b) < 1e-6)
            throw std::runtime_error("DiskGeodesic: coincident ideal endpoints");
        g.line = true;
    } else {
        // center c with <a,c> = 1, <b,c> = 1
        double cx = (b.imag() - a.imag()) / det;
        double cy = (a.real() - b.real()) / det;
        g.center = Cplx(cx, cy);
        g.radius = std::sqrt(std::norm(g.center) - 1.0);
        g.line = false;
    }
    // chart through the point closest to the origin
    Cplx zm = g.line ? Cplx(0.0, 0.0) : g.center * (1.0 - g.radius / std::abs(g.center));
    Cplx dir;
    if (g.line) {
        dir = g.e2;
    } else {
        dir = Cplx(0.0, 1.0) * (zm - g.center);
        dir /= std::abs(dir);
        // orient toward e2
        if ((std::conj(dir) * (g.e2 - zm)).real() < 0.0) dir = -dir;
    }
    g.chart = translate_to(zm) * rotation(std::arg(dir));
    return g;
}

DiskGeodesic DiskGeodesic::through_points(Cplx z1, Cplx z2) {
    // third point: inversion of z1 in the unit circle forces orthogonality
    Cplx z3 = z1 / std::norm(z1);
    double d = 2.0 * (z1.real() * (z2.imag() - z3.imag()) + z2.real() * (z3.imag() - z1.imag()) +
                      z3.real() * (z1.imag() - z2.imag()));
    if (std::abs(z1) < 1e-14 || std::abs(d) < 1e-13) {
        // diameter through z1, z2
        Cplx dir = (z2 - z1) / std::abs(z2 - z1);
        DiskGeodesic g = from_ideal(-dir, dir);
        return g;
    }
    double n1 = std::norm(z1), n2 = std::norm(z2), n3 = std::norm(z3);
    double ux = (n1 * (z2.imag() - z3.imag()) + n2 * (z3.imag() - z1.imag()) +
                 n3 * (z1.imag() - z2.imag())) / d;
    double uy = (n1 * (z3.real() - z2.real()) + n2 * (z1.real() - z3.real()) +
                 n3 * (z2.real() - z1.real())) / d;
    Cplx c(ux, uy);
    double r = std::sqrt(std::norm(c) - 1.0);
    // endpoints: intersection of the circle with the unit circle
    // midpoint of chord at c/|c|^2 * ... : points p with |p|=1, |p-c|=r
    double cc = std::norm(c);
    double x = (cc + 1.0 - r * r) / 2.0;  // = <p, c>
    Cplx u = c / std::abs(c);
    double along = x / std::abs(c);
    double perp = std::sqrt(std::max(0.0, 1.0 - along * along));
    Cplx ea = u * along + Cplx(0.0, 1.0) * u * perp;
    Cplx eb = u * along - Cplx(0.0, 1.0) * u * perp;
    DiskGeodesic g = from_ideal(ea, eb);
    // orient from z1 toward z2
    if (g.param_of(z2) < g.param_of(z1)) g = from_ideal(eb, ea);
    return g;
}

Cplx DiskGeodesic::point_at(double t) const { return chart.apply(Cplx(std::tanh(t * 0.5), 0.0)); }

double DiskGeodesic::param_of(Cplx z) const {
    Cplx u = chart.inverse().apply(z);
    double x = std::max(-1.0 + 1e-16, std::min(1.0 - 1e-16, u.real()));
    return 2.0 * std::atanh(x);
}

Cplx DiskGeodesic::closest_to_origin() const {
    if (line) return {0.0, 0.0};
    return center * (1.0 - radius / std::abs(center));
}

DiskGeodesic DiskGeodesic::transformed(const DiskMobius& m) const {
    return from_ideal(m.apply(e1), m.apply(e2));
}

double DiskGeodesic::side_value(Cplx z) const {
    if (line) {
        Cplx n = Cplx(0.0, 1.0) * e2;  // normal of the diameter
        return n.real() * z.real() + n.imag() * z.imag();
    }
    return std::norm(z - center) - radius * radius;
}

bool geodesic_intersection(const DiskGeodesic& g1, const DiskGeodesic& g2, Cplx& out) {
    auto inside = [](Cplx z) { return std::abs(z) < 1.0 - 1e-12; };
    if (g1.line && g2.line) {
        double cross = g1.e2.real() * g2.e2.imag() - g1.e2.imag() * g2.e2.real();
        if (std::abs(cross) < 1e-12) return false;
        out = Cplx(0.0, 0.0);
        return true;
    }
    if (g1.line || g2.line) {
        const DiskGeodesic& ln = g1.line ? g1 : g2;
        const DiskGeodesic& ci = g1.line ? g2 : g1;
        Cplx u = ln.e2;
        double b = u.real() * ci.center.real() + u.imag() * ci.center.imag();
        double c = std::norm(ci.center) - ci.radius * ci.radius;
        double disc = b * b - c;
        if (disc <= 0.0) return false;
        double s = std::sqrt(disc);
        for (double t : {b - s, b + s}) {
            Cplx z = u * t;
            if (inside(z)) { out = z; return true; }
        }
        return false;
    }
    Cplx dc = g2.center - g1.center;
    double d = std::abs(dc);
    if (d < 1e-12) return false;  // concentric: equal or disjoint
    double a = (d * d + g1.radius * g1.radius - g2.radius * g2.radius) / (2.0 * d);
    double h2 = g1.radius * g1.radius - a * a;
    if (h2 <= 0.0) return false;
    double h = std::sqrt(h2);
    Cplx u = dc / d;
    Cplx base = g1.center + u * a;
    Cplx off = Cplx(0.0, 1.0) * u * h;
    for (Cplx z : {base + off, base - off}) {
        if (inside(z)) { out = z; return true; }
    }
    return false;
}

}  // namespace orbitclass
