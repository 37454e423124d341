#pragma once

// Geometric intersection numbers of closed geodesics by two independent
// routes: double-coset enumeration with axis linking, and a tracing oracle
// counting chord crossings in the fundamental polygon.

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "orbitclass/fuchsian.hpp"
#include "orbitclass/tracing.hpp"

namespace orbitclass {

struct IntersectionResult {
    int count = 0;
    std::vector<std::string> certificates;  // coset representative words, sorted
    int radius_used = 0;
    bool stable = false;  // count constant for two consecutive radius increments
};

enum class LinkState { Linked, Unlinked, SharedAxis };

// True iff the endpoints of y separate the endpoints of x on the circle.
// Throws InputError when endpoint pairs nearly coincide (shared axis).
bool axes_linked(const Axis& x, const Axis& y);
LinkState link_state(const AxisC& x, const AxisC& y);

// Read-through/write-back JSON cache for intersection counts.
class IntersectionCache {
public:
    IntersectionCache() = default;

    // loads `path` if it exists; a corrupted file is discarded with a warning
    void open(const std::string& path);
    bool loaded_corrupt() const { return corrupt_; }

    std::optional<std::pair<int, int>> lookup(const std::string& key) const;  // count, radius
    void store(const std::string& key, int count, int radius);
    void save() const;
    void invalidate_genus(int genus);
    std::size_t size() const;

private:
    mutable std::mutex mu_;
    std::map<std::string, std::pair<int, int>> entries_;
    std::string path_;
    bool corrupt_ = false;
};

std::string intersection_cache_key(const CyclicWord& w, const CyclicWord& v,
                                   const SurfacePresentation& p);

// Double-coset count of transverse crossings between the closed geodesics of
// w and v. radius = 0 picks the default |w| + |v| + 4g (capped at the
// feasibility limit); enumeration stops early once the count is stable for
// two consecutive radius increments. Throws RadiusExhausted if never stable.
// For w and v in the same unoriented class this computes the
// self-intersection count.
IntersectionResult intersection_number(const CyclicWord& w, const CyclicWord& v,
                                       const FuchsianRep& rep, int radius = 0,
                                       IntersectionCache* cache = nullptr);

// Same-curve variant; rejects non-primitive input.
IntersectionResult self_intersection_number(const CyclicWord& w, const FuchsianRep& rep,
                                            int radius = 0, IntersectionCache* cache = nullptr);

// Independent oracle: count transverse crossings between the polygon traces.
// Rejects same-curve input (use tracing_self_count).
int tracing_oracle_count(const CyclicWord& w, const CyclicWord& v, const FuchsianRep& rep);
int tracing_self_count(const CyclicWord& w, const FuchsianRep& rep);

}  // namespace orbitclass
