#include "oacs/octonion.hpp"

namespace oacs {

namespace {

Quaternion4 qconj(const Quaternion4& a) { return {a(0), -a(1), -a(2), -a(3)}; }

}  // namespace

Quaternion4 quaternion_multiply(const Quaternion4& a, const Quaternion4& b) {
  return {a(0) * b(0) - a(1) * b(1) - a(2) * b(2) - a(3) * b(3),
          a(0) * b(1) + a(1) * b(0) + a(2) * b(3) - a(3) * b(2),
          a(0) * b(2) - a(1) * b(3) + a(2) * b(0) + a(3) * b(1),
          a(0) * b(3) + a(1) * b(2) - a(2) * b(1) + a(3) * b(0)};
}

Octonion octonion_multiply(const Octonion& x, const Octonion& y) {
  const Quaternion4 p = x.head<4>(), q = x.tail<4>();
  const Quaternion4 r = y.head<4>(), s = y.tail<4>();
  Octonion out;
  out.head<4>() = quaternion_multiply(p, r) - quaternion_multiply(qconj(s), q);
  out.tail<4>() = quaternion_multiply(s, p) + quaternion_multiply(q, qconj(r));
  return out;
}

Octonion octonion_conjugate(const Octonion& x) {
  Octonion c = -x;
  c(0) = x(0);
  return c;
}

Octonion basis_octonion(int k) { return Octonion::Unit(k); }

Imaginary7 imaginary_product(const Imaginary7& u, const Imaginary7& v) {
  Octonion a, b;
  a << 0.0, u;
  b << 0.0, v;
  return octonion_multiply(a, b).tail<7>();
}

Eigen::Matrix<double, 7, 7> left_imaginary_product_matrix(const Imaginary7& u) {
  Eigen::Matrix<double, 7, 7> m;
  for (int k = 0; k < 7; ++k) m.col(k) = imaginary_product(u, Imaginary7::Unit(k));
  return m;
}

}  // namespace oacs
