#pragma once

// Pass/fail thresholds for every verified identity, version 1.
// The README carries the same table; change both together.

namespace slicecalc::tol {

inline constexpr int kTableVersion = 1;

inline constexpr double kAlgebra = 1e-12;          // Clifford axioms, relative
inline constexpr double kKernelIdentity = 1e-12;   // slice decomposition of S^-1
inline constexpr double kCauchy = 1e-5;            // |F f - f| for slice monogenic f
inline constexpr double kBorelPompeiu = 1e-3;      // |F f + T(Gf) - f|
inline constexpr double kMinOrder = 1.5;           // empirical order for the two above
inline constexpr double kRightInverse = 5e-3;      // |G T f - f| and its slice form
inline constexpr double kExterior = 1e-5;          // |G T f| outside the closure
inline constexpr double kComplexOracle = 1e-6;     // m = 1 against the plane Pompeiu operator
inline constexpr double kSliceness = 1e-5;         // representation formula applied to T f
inline constexpr double kPlemelj = 5e-3;           // one-sided limits and jump
inline constexpr double kExtension = 5e-3;         // |S g -/+ g/2|
inline constexpr double kControlFactor = 10.0;     // discriminating controls must exceed tol by this
inline constexpr double kHodgeOrthogonality = 1e-6;  // scaled by ||f|| ||phi||
inline constexpr double kBoundedness = 0.10;       // relative spread of ||Tf||_p / ||f||_p
inline constexpr double kGaussOrder = 2.0;         // empirical order of the Gauss residual

// Residual pairs below this are treated as converged at roundoff when estimating orders.
inline constexpr double kOrderFloor = 1e-10;

}  // namespace slicecalc::tol
