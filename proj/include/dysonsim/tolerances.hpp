#pragma once

// Numerical tolerances shared by every module.
namespace dysonsim::tol {

inline constexpr double algebraic = 1e-10;
inline constexpr double integrator = 1e-8;
inline constexpr double hermiticity = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double positivity = 1e-10;
// RK4 aborts when the state develops an eigenvalue below -stiffness.
inline constexpr double stiffness = 1e-6;
// Pauli coefficients below this magnitude are dropped from decompositions.
inline constexpr double pauli_prune = 1e-13;
// Slack allowed when a sampled correlator mean leaves [-1, 1].
inline constexpr double shot_probability = 1e-9;

} // namespace dysonsim::tol
