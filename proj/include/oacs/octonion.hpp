#pragma once

#include <Eigen/Dense>

namespace oacs {

/// Octonion as 8 real components on the basis e0 = 1, e1, ..., e7.
///
/// Cayley-Dickson doubling of the quaternions: an octonion is a pair (p, q)
/// of quaternions standing for p + q e4, with
///   (p, q)(r, s) = (p r - conj(s) q,  s p + q conj(r)).
/// The quaternion part uses e1 = i, e2 = j, e3 = k, and e(4+m) = (0, q_m).
using Octonion = Eigen::Matrix<double, 8, 1>;
using Quaternion4 = Eigen::Matrix<double, 4, 1>;
using Imaginary7 = Eigen::Matrix<double, 7, 1>;

Quaternion4 quaternion_multiply(const Quaternion4& a, const Quaternion4& b);

Octonion octonion_multiply(const Octonion& x, const Octonion& y);

Octonion octonion_conjugate(const Octonion& x);

Octonion basis_octonion(int k);

/// Imaginary part of the product of two imaginary octonions. For orthogonal
/// arguments this is the full product, i.e. the 7-dimensional cross product.
Imaginary7 imaginary_product(const Imaginary7& u, const Imaginary7& v);

/// Matrix of v -> Im(u v) on the imaginary octonions.
Eigen::Matrix<double, 7, 7> left_imaginary_product_matrix(const Imaginary7& u);

}  // namespace oacs
