#pragma once

#include <cstdint>
#include <vector>

#include "oacs/audit_report.hpp"
#include "oacs/fields.hpp"

namespace oacs {

struct NijenhuisSample {
  EmbeddedPoint point;
  Vector x;      // X(p)
  Vector y;      // Y(p)
  Vector value;  // N(X,Y)(p), ambient coordinates
  double norm = 0.0;
};

/// Throws StepSizeError unless kMinFdStep <= h <= kMaxFdStep.
void check_fd_step(double h);

/// [X,Y](p) = (DY)X - (DX)Y by central differences of the radially extended
/// fields, projected to T_p. Truncation error is O(h^2).
Vector lie_bracket_fd(const TangentField& x, const TangentField& y, const EmbeddedPoint& p,
                      double h = kDefaultTolerances.fd_step);

/// N(X,Y) = [JX,JY] - [X,Y] - J[JX,Y] - J[X,JY] with JX, JY formed pointwise.
/// Same arithmetic as four lie_bracket_fd calls, with the field evaluations
/// at the eight stencil points shared.
NijenhuisSample nijenhuis(const ACSField& j, const TangentField& x, const TangentField& y,
                          const EmbeddedPoint& p, double h = kDefaultTolerances.fd_step);

/// Seeded degree-2 polynomial of the ambient coordinates.
ScalarFunction seeded_polynomial(int ambient_dim, std::uint64_t seed);

/// N(fX,Y) = f(p) N(X,Y) and N(X,fY) = f(p) N(X,Y) for a seeded polynomial f and
/// seeded projected-constant fields X, Y.
AuditReport nijenhuis_tensoriality_check(const ACSField& j, const EmbeddedPoint& p,
                                         std::uint64_t seed, double h = kDefaultTolerances.fd_step,
                                         double tol = 5e-6);

/// Same check with a caller-supplied f.
AuditReport nijenhuis_tensoriality_check(const ACSField& j, const EmbeddedPoint& p,
                                         const ScalarFunction& f, std::uint64_t seed,
                                         double h = kDefaultTolerances.fd_step, double tol = 5e-6);

/// Orthonormal pairs (v, w) in T_p, seeded by (seed, point index).
std::vector<std::pair<Vector, Vector>> tangent_frame_pairs(const EmbeddedProduct& geometry,
                                                           const EmbeddedPoint& p, int count,
                                                           std::uint64_t seed);

struct EnergyBreakdown {
  double energy = 0.0;              // mean of |N|^2 over all points and pairs
  std::vector<double> point_means;  // mean of |N|^2 per point
};

/// Frame-averaged squared Nijenhuis norm. At point k the pairs are
/// tangent_frame_pairs(geometry, p_k, frame_pairs, derive_seed(seed, k)),
/// extended as projected constant fields.
EnergyBreakdown nijenhuis_energy_breakdown(const ACSField& j, const std::vector<EmbeddedPoint>& points,
                                           int frame_pairs, std::uint64_t seed,
                                           double h = kDefaultTolerances.fd_step);

double nijenhuis_energy(const ACSField& j, const std::vector<EmbeddedPoint>& points, int frame_pairs,
                        std::uint64_t seed, double h = kDefaultTolerances.fd_step);

/// Compares N of a product field on two fields tangent to factor `factor`
/// with N of `standalone` (a field on that factor alone) at the factor part
/// of each point. The fields are projected constant fields of seeded ambient
/// vectors supported in the factor block. One asserted row holds the max
/// deviation over points; per-point |N| values are recorded.
AuditReport restriction_check(const ACSField& product, std::size_t factor, const ACSField& standalone,
                              const std::vector<EmbeddedPoint>& points, std::uint64_t seed,
                              double h = kDefaultTolerances.fd_step, double tol = kDefaultTolerances.fd);

}  // namespace oacs
