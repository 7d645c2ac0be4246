#pragma once

// Numeric tolerances used across the library. These are build constants;
// every report manifest echoes them so results are reproducible.

namespace lipext::tol {

// Triangle-inequality slack, relative to the diameter of the matrix being
// validated. Absorbs rounding from coordinate-based generators.
inline constexpr double triangle_slack_rel = 1e-12;

// Row sums of stochastic matrices and partition-of-unity sums.
inline constexpr double row_sum = 1e-12;

// Balance requirement on chain coefficients, relative to their l1 mass.
inline constexpr double chain_balance_rel = 1e-12;

// Primal/dual agreement for Kantorovich-Rubinstein transport.
inline constexpr double duality_gap = 1e-9;

// Slack on certified inequalities with exact rational constants
// (factor-7 certificate, lifted-space bounds, factorization identities).
inline constexpr double certificate_slack = 1e-9;

// Exact-identity comparisons (Fubini cross-check, linearity), relative.
inline constexpr double identity_rel = 1e-12;

} // namespace lipext::tol
