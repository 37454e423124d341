#include "orbitclass/tracing.hpp"

#include <algorithm>
#include <cmath>

namespace orbitclass {

namespace {

constexpr double kVertexHitTol = 1e-9;    // exact vertex passage
constexpr double kVertexFuzzTol = 3e-8;   // ambiguous band: ask for a nudge

// crossing parameters of a geodesic against every side of the polygon
struct SideHit {
    double t;
    int side;
    Cplx z;
};

std::vector<SideHit> side_hits(const DiskGeodesic& g, const FuchsianRep& rep) {
    std::vector<SideHit> hits;
    for (const Side& s : rep.sides) {
        Cplx z;
        if (!geodesic_intersection(g, s.geo, z)) continue;
        hits.push_back({g.param_of(z), s.index, z});
    }
    std::sort(hits.begin(), hits.end(), [](const SideHit& a, const SideHit& b) { return a.t < b.t; });
    return hits;
}

int vertex_near(Cplx z, const FuchsianRep& rep, double tol) {
    for (std::size_t j = 0; j < rep.vertices.size(); ++j) {
        if (std::abs(z - rep.vertices[j]) < tol) return static_cast<int>(j);
    }
    return -1;
}

// chord of g through the polygon containing the point at parameter t_ref;
// entry = last boundary crossing at t <= t_ref, exit = first after (the
// polygon is an intersection of half-planes, so these bound the chord)
struct Chord {
    double t_in, t_out;
    int side_in, side_out;
    Cplx z_in, z_out;
};

bool polygon_chord(const DiskGeodesic& g, const FuchsianRep& rep, double t_ref, Chord& out) {
    auto hits = side_hits(g, rep);
    const SideHit* in = nullptr;
    const SideHit* ex = nullptr;
    for (const auto& h : hits) {
        if (h.t <= t_ref) {
            in = &h;
        } else {
            ex = &h;
            break;
        }
    }
    if (!in || !ex) return false;
    Cplx mid = g.point_at(0.5 * (in->t + ex->t));
    if (!rep.contains(mid, 1e-9)) return false;
    out = {in->t, ex->t, in->side, ex->side, in->z, ex->z};
    return true;
}

double cross2(Cplx x, Cplx y) { return x.real() * y.imag() - x.imag() * y.real(); }

// direction of the geodesic side `s` at the vertex `v`, pointing toward the
// other endpoint
Cplx side_direction_at(const Side& s, Cplx v, Cplx toward) {
    Cplx t;
    if (s.geo.line) {
        t = s.geo.e2;
    } else {
        t = Cplx(0.0, 1.0) * (v - s.geo.center);
        t /= std::abs(t);
    }
    if ((std::conj(t) * (toward - v)).real() < 0.0) t = -t;
    return t;
}

// Passage of the geodesic through a polygon vertex: rotate around the vertex
// copy by copy (composing side pairings) until the outgoing ray enters the
// polygon interior. Returns the emitted pairing letters; `geo` and `vpt` are
// updated to the final pulled-back frame.
std::vector<Letter> continue_through_vertex(DiskGeodesic& geo, Cplx& vpt, const FuchsianRep& rep) {
    std::vector<Letter> letters;
    const int n = static_cast<int>(rep.sides.size());
    for (int guard = 0; guard <= 2 * n + 2; ++guard) {
        int vi = vertex_near(vpt, rep, 1e-7);
        if (vi < 0) throw DegenerateGeometry("vertex passage lost the vertex orbit");
        Cplx v = rep.vertices[vi];
        double t_v = geo.param_of(vpt);
        Cplx d = geo.point_at(t_v + 1e-6) - geo.point_at(t_v - 1e-6);
        d /= std::abs(d);

        const Side& sA = rep.sides[vi];                 // ends at v
        const Side& sB = rep.sides[(vi + 1) % n];       // starts at v
        Cplx rA = side_direction_at(sA, v, sA.v_start); // boundary ray along side vi
        Cplx rB = side_direction_at(sB, v, sB.v_end);   // boundary ray along side vi+1
        Cplx m = -v / std::abs(v);                      // interior bisector

        double sA_sign = cross2(rA, m) >= 0.0 ? 1.0 : -1.0;
        double sB_sign = cross2(rB, m) >= 0.0 ? 1.0 : -1.0;
        double cA = cross2(rA, d) * sA_sign;
        double cB = cross2(rB, d) * sB_sign;
        if (std::abs(cA) < kDegenTol || std::abs(cB) < kDegenTol)
            throw DegenerateGeometry("geodesic continues along a polygon side: nudge required");
        if (cA > 0.0 && cB > 0.0) return letters;  // ray enters the interior wedge

        const Side& crossed = (cA < cB) ? sA : sB;
        DiskMobius pull = rep.letter_mobius(crossed.letter).inverse();
        letters.push_back(crossed.letter);
        vpt = pull.apply(vpt);
        geo = geo.transformed(pull);
    }
    throw DegenerateGeometry("vertex passage did not terminate");
}

}  // namespace

std::vector<Word> perturbation_conjugators(const SurfacePresentation& p) {
    std::vector<Word> out;
    for (int gid = 0; gid < p.generator_count(); ++gid)
        out.push_back(Word({gid + 1}));
    for (int g1 = 0; g1 < p.generator_count(); ++g1)
        for (int g2 = 0; g2 < p.generator_count(); ++g2)
            if (g1 != g2) out.push_back(Word({g1 + 1, g2 + 1}));
    return out;
}

GeodesicTrace geodesic_trace_raw(const Word& w, const FuchsianRep& rep) {
    DiskMobius m = evaluate_disk(w, rep);
    if (classify_isometry(m) != IsometryType::Hyperbolic)
        throw InputError("geodesic_trace: word is not hyperbolic: " + format_word(w));

    AxisC ax = axis_endpoints_disk(m);
    DiskGeodesic axis = DiskGeodesic::from_ideal(ax.repelling, ax.attracting);

    // pull the point of the axis nearest the origin into the polygon
    Cplx z = axis.closest_to_origin();
    DiskMobius pullback = DiskMobius::identity();
    for (int guard = 0;; ++guard) {
        const Side* worst = nullptr;
        double worst_v = -1e-13;
        for (const Side& s : rep.sides) {
            double v = s.geo.side_value(z);
            if (v < worst_v) {
                worst_v = v;
                worst = &s;
            }
        }
        if (!worst) break;
        DiskMobius step = rep.letter_mobius(worst->letter).inverse();
        z = step.apply(z);
        pullback = step * pullback;
        pullback.normalize();
        if (guard > 4096)
            throw std::runtime_error("geodesic_trace: point reduction did not terminate");
    }
    DiskGeodesic cur = axis.transformed(pullback);

    GeodesicTrace trace;
    trace.traced_word = w;

    Chord ch;
    if (!polygon_chord(cur, rep, cur.param_of(z), ch))
        throw DegenerateGeometry("axis only grazes the polygon: nudge required");

    const Cplx first_entry = ch.z_in;
    const DiskGeodesic first_geo = cur;

    int max_steps = 256 + 64 * static_cast<int>(w.size());
    for (int step = 0; step < max_steps; ++step) {
        TraceSegment seg;
        seg.start = ch.z_in;
        seg.end = ch.z_out;
        seg.length = ch.t_out - ch.t_in;
        seg.geo = cur;
        seg.t_start = ch.t_in;
        seg.t_end = ch.t_out;

        Cplx z_next;
        int vi = vertex_near(ch.z_out, rep, kVertexHitTol);
        if (vi < 0 && vertex_near(ch.z_out, rep, kVertexFuzzTol) >= 0)
            throw DegenerateGeometry("exit point ambiguously close to a vertex: nudge required");
        if (vi >= 0) {
            seg.exit_side = -1;
            z_next = rep.vertices[vi];
            seg.exit_letters = continue_through_vertex(cur, z_next, rep);
            if (seg.exit_letters.empty())
                throw DegenerateGeometry("vertex passage emitted no letters");
        } else {
            seg.exit_side = ch.side_out;
            seg.exit_letters = {rep.sides[ch.side_out].letter};
            DiskMobius cont = rep.letter_mobius(rep.sides[ch.side_out].letter).inverse();
            z_next = cont.apply(ch.z_out);
            cur = cur.transformed(cont);
        }

        trace.segments.push_back(seg);
        for (Letter l : seg.exit_letters) trace.cutting_word.push_back(l);
        trace.total_length += seg.length;

        // closed up after one period?
        if (std::abs(z_next - first_entry) < 1e-5 &&
            std::abs(cur.e1 - first_geo.e1) < 1e-7 && std::abs(cur.e2 - first_geo.e2) < 1e-7) {
            trace.closure_defect = std::abs(z_next - first_entry);
            return trace;
        }

        double t_next = cur.param_of(z_next);
        Chord nx;
        if (!polygon_chord(cur, rep, t_next + 1e-9, nx))
            throw DegenerateGeometry("trace continuation lost the polygon: nudge required");
        if (std::abs(nx.z_in - z_next) > 1e-6)
            throw DegenerateGeometry("trace continuation mismatched entry: nudge required");
        ch = nx;
    }
    throw std::runtime_error("geodesic_trace: did not close after max steps: " + format_word(w));
}

GeodesicTrace geodesic_trace(const Word& w, const FuchsianRep& rep) {
    try {
        return geodesic_trace_raw(w, rep);
    } catch (const DegenerateGeometry&) {
    }
    auto conjugators = perturbation_conjugators(rep.pres);
    for (std::size_t i = 0; i < conjugators.size(); ++i) {
        std::vector<Letter> ls = conjugators[i].letters;
        ls.insert(ls.end(), w.letters.begin(), w.letters.end());
        Word inv = invert(conjugators[i]);
        ls.insert(ls.end(), inv.letters.begin(), inv.letters.end());
        try {
            GeodesicTrace t = geodesic_trace_raw(free_reduce(Word(ls)), rep);
            t.perturbation_index = static_cast<int>(i);
            return t;
        } catch (const DegenerateGeometry&) {
        }
    }
    throw DegenerateGeometry("geodesic_trace: all perturbation conjugators degenerate for " +
                             format_word(w));
}

namespace {

constexpr double kEndTol = 1e-9;  // param distance treated as "at a chord end"

// continuation map past a segment end: product of the exit pairings, inverted
DiskMobius continuation_map(const TraceSegment& s, const FuchsianRep& rep) {
    DiskMobius prod = DiskMobius::identity();
    for (Letter l : s.exit_letters) prod = prod * rep.letter_mobius(l);
    return prod.inverse();
}

// crossing of two chords; returns 0 = none, 1 = interior, 2 = on boundary
int chord_crossing(const TraceSegment& a, const TraceSegment& b, const FuchsianRep& rep,
                   TraceCrossing& out) {
    Cplx z;
    if (!geodesic_intersection(a.geo, b.geo, z)) return 0;
    double ta = a.geo.param_of(z);
    double tb = b.geo.param_of(z);
    if (ta < a.t_start - kEndTol || ta > a.t_end + kEndTol) return 0;
    if (tb < b.t_start - kEndTol || tb > b.t_end + kEndTol) return 0;

    // tangency guard: angle between the carrying geodesics at z
    Cplx da = a.geo.point_at(ta + 1e-6) - a.geo.point_at(ta - 1e-6);
    Cplx db = b.geo.point_at(tb + 1e-6) - b.geo.point_at(tb - 1e-6);
    double cross = da.real() * db.imag() - da.imag() * db.real();
    if (std::abs(cross) < 1e-12 * std::abs(da) * std::abs(db))
        throw DegenerateGeometry("tangential crossing: nudge required");

    if (vertex_near(z, rep, kVertexFuzzTol) >= 0)
        throw DegenerateGeometry("curves cross at a polygon vertex: nudge required");

    bool near_end = ta < a.t_start + kEndTol || ta > a.t_end - kEndTol ||
                    tb < b.t_start + kEndTol || tb > b.t_end - kEndTol;
    out = {0, 0, z, ta, tb, near_end};
    return near_end ? 2 : 1;
}

// Merge crossings that sit on the polygon boundary: such a point appears once
// in each of the two copies related by a side pairing.
std::vector<TraceCrossing> dedupe_boundary(std::vector<TraceCrossing> interior,
                                           std::vector<TraceCrossing> boundary,
                                           const FuchsianRep& rep) {
    std::vector<bool> used(boundary.size(), false);
    for (std::size_t i = 0; i < boundary.size(); ++i) {
        if (used[i]) continue;
        for (std::size_t j = i + 1; j < boundary.size(); ++j) {
            if (used[j]) continue;
            bool partner = false;
            for (const Side& s : rep.sides) {
                Cplx img = rep.letter_mobius(s.letter).inverse().apply(boundary[i].point);
                if (std::abs(img - boundary[j].point) < 1e-6) {
                    partner = true;
                    break;
                }
            }
            if (partner) {
                used[j] = true;
                break;
            }
        }
        interior.push_back(boundary[i]);
    }
    return interior;
}

}  // namespace

std::vector<TraceCrossing> crossings_between(const GeodesicTrace& a, const GeodesicTrace& b,
                                             const FuchsianRep& rep) {
    std::vector<TraceCrossing> interior, boundary;
    for (std::size_t i = 0; i < a.segments.size(); ++i) {
        for (std::size_t j = 0; j < b.segments.size(); ++j) {
            TraceCrossing c;
            int kind = chord_crossing(a.segments[i], b.segments[j], rep, c);
            if (kind == 0) continue;
            c.seg_a = static_cast<int>(i);
            c.seg_b = static_cast<int>(j);
            (kind == 1 ? interior : boundary).push_back(c);
        }
    }
    return dedupe_boundary(std::move(interior), std::move(boundary), rep);
}

std::vector<TraceCrossing> self_crossings(const GeodesicTrace& a, const FuchsianRep& rep) {
    std::vector<TraceCrossing> interior, boundary;
    std::size_t n = a.segments.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            TraceCrossing c;
            int kind = chord_crossing(a.segments[i], a.segments[j], rep, c);
            if (kind == 0) continue;
            c.seg_a = static_cast<int>(i);
            c.seg_b = static_cast<int>(j);
            if (kind == 2) {
                // consecutive chords share a continuation point; that junction
                // is not a crossing
                bool junction = false;
                if (j == i + 1 || (i == 0 && j == n - 1)) {
                    const TraceSegment& first = (j == i + 1) ? a.segments[i] : a.segments[j];
                    const TraceSegment& second = (j == i + 1) ? a.segments[j] : a.segments[i];
                    Cplx img = continuation_map(first, rep).apply(first.end);
                    if (std::abs(img - second.start) < 1e-6 &&
                        (std::abs(c.point - first.end) < 1e-6 ||
                         std::abs(c.point - second.start) < 1e-6))
                        junction = true;
                }
                if (junction) continue;
                boundary.push_back(c);
            } else {
                interior.push_back(c);
            }
        }
    }
    return dedupe_boundary(std::move(interior), std::move(boundary), rep);
}

}  // namespace orbitclass
