#pragma once

namespace oacs {

/// Tolerance policy shared by every audit, test and experiment.
///
/// `linalg` bounds pure multilinear algebra on unit-scale inputs, `acs` is the
/// validity threshold for an orthogonal almost complex structure, `audit`
/// covers contractions that sum O(n^2) curvature terms, `fd` bounds
/// finite-difference tensors, and `optimization` is the energy level treated
/// as "found an integrable member".
struct Tolerances {
  double linalg = 1e-12;
  double acs = 1e-10;
  double audit = 1e-9;
  double fd = 2e-6;
  double optimization = 1e-8;
  double fd_step = 1e-5;
};

inline constexpr Tolerances kDefaultTolerances{};

// Usable range of finite-difference steps.
inline constexpr double kMinFdStep = 1e-9;
inline constexpr double kMaxFdStep = 1e-2;

}  // namespace oacs
