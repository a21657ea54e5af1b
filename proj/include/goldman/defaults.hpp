#pragma once

namespace goldman {

// Default tolerances. Every operation that uses one takes it as a defaulted
// parameter, so callers can tighten or relax per call.
namespace tol {

inline constexpr double degeneracy = 1e-9;         // |trace| >= 2 - this  => central
inline constexpr double norm_window = 1e-6;        // accepted |coords|-1 on input
inline constexpr double membership = 1e-8;         // relation residual for "is on the variety"
inline constexpr double sampler = 1e-10;           // residual guaranteed by samplers
inline constexpr double conjugator_trace = 1e-8;   // trace agreement required by conjugator
inline constexpr double rank_cutoff = 1e-8;        // singular value / largest => null
inline constexpr double witness = 1e-8;            // orbit witness verification
inline constexpr double fingerprint_filter = 1e-6; // fingerprint disagreement => distinct orbits

}  // namespace tol

inline constexpr int sampler_max_attempts = 100000;

}  // namespace goldman
