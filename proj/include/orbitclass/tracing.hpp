#pragma once

// Clipping the axis of a hyperbolic word to the fundamental polygon: one
// fundamental period as an ordered chain of chords, each tagged with the
// side-pairing letter used to continue. The letters read along the chain
// (the cutting sequence) spell a conjugate of the traced word.

#include <vector>

#include "orbitclass/fuchsian.hpp"

namespace orbitclass {

struct TraceSegment {
    Cplx start, end;       // on the polygon boundary
    double length = 0.0;   // hyperbolic
    int exit_side = -1;    // side index crossed at `end`; -1 for a vertex exit
    // pairing letters applied to continue past `end`: one for a side
    // crossing, several when the geodesic passes through a polygon vertex
    std::vector<Letter> exit_letters;
    DiskGeodesic geo;      // full geodesic carrying this chord
    double t_start = 0.0, t_end = 0.0;  // params of start/end on geo
};

struct GeodesicTrace {
    std::vector<TraceSegment> segments;
    std::vector<Letter> cutting_word;  // exit letters in order
    double total_length = 0.0;
    double closure_defect = 0.0;  // |continuation of last exit - first start|
    Word traced_word;             // word actually traced (possibly a conjugate)
    int perturbation_index = -1;  // index into perturbation_conjugators, -1 = none
};

// Deterministic list of conjugators used to displace an axis that hits a
// polygon vertex: single generators first, then length-2 products.
std::vector<Word> perturbation_conjugators(const SurfacePresentation& p);

// Throws DegenerateGeometry if the axis passes within kDegenTol of a
// polygon vertex (callers should normally use geodesic_trace instead).
GeodesicTrace geodesic_trace_raw(const Word& w, const FuchsianRep& rep);

// Retries geodesic_trace_raw over the perturbation conjugators.
GeodesicTrace geodesic_trace(const Word& w, const FuchsianRep& rep);

// A transverse crossing between two trace chords inside the polygon.
struct TraceCrossing {
    int seg_a = 0, seg_b = 0;
    Cplx point;
    double t_a = 0.0, t_b = 0.0;  // params on the carrying geodesics
    bool on_boundary = false;
};

// Crossings between two traces of *distinct* closed geodesics, crossings on
// the polygon boundary deduplicated through the side pairings.
// Throws DegenerateGeometry on tangencies or vertex hits.
std::vector<TraceCrossing> crossings_between(const GeodesicTrace& a, const GeodesicTrace& b,
                                             const FuchsianRep& rep);

// Self-crossings of one trace (unordered segment pairs, each geometric
// double point reported once).
std::vector<TraceCrossing> self_crossings(const GeodesicTrace& a, const FuchsianRep& rep);

}  // namespace orbitclass
