#pragma once

// Central tolerance knobs. Everything numeric in the library keys off these
// three values: algebraic identities, geometric closure, degeneracy detection.

namespace orbitclass {

inline constexpr double kAlgebraTol = 1e-7;   // matrix identities, angle sums
inline constexpr double kGeomTol    = 1e-6;   // trace closure, segment matching
inline constexpr double kDegenTol   = 1e-9;   // vertex hits, tangencies, shared axes

}  // namespace orbitclass
