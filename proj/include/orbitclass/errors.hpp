#pragma once

#include <stdexcept>
#include <string>

namespace orbitclass {

// Bad user input: malformed words, genus < 2, identity where a geodesic is
// required, and so on.
struct InputError : std::invalid_argument {
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// The axis of a traced word passes through a polygon vertex (or a tangency
// was detected). Callers retry with a conjugated word; see geodesic_trace.
struct DegenerateGeometry : std::runtime_error {
    explicit DegenerateGeometry(const std::string& what) : std::runtime_error(what) {}
};

// Double-coset enumeration did not stabilize within the radius cap.
struct RadiusExhausted : std::runtime_error {
    explicit RadiusExhausted(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace orbitclass
