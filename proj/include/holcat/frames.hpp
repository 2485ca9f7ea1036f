#pragma once

// Standard isotropic frames and block-form element builders.
//
// Pseudo-Kaehler case (signature (2, 2n+2)): basis p1, p2, e1..en, f1..fn,
// q1, q2 with eta(p1,q1) = eta(p2,q2) = 1, the e/f block Euclidean, and
// J p1 = p2, J e_i = f_i, J q1 = q2.
//
// Lorentz case (signature (1, n+1)): basis p, e1..en, q with eta(p,q) = 1
// and the e block Euclidean.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "holcat/liealg.hpp"
#include "holcat/matrix.hpp"

namespace holcat {

enum class FrameCase { Lorentz, PseudoKaehler };

struct StandardFrame {
  FrameCase signature_case = FrameCase::PseudoKaehler;
  std::size_t n = 0;
  MetricStructure metric;

  static StandardFrame pseudo_kaehler(std::size_t n) {
    StandardFrame fr;
    fr.signature_case = FrameCase::PseudoKaehler;
    fr.n = n;
    std::size_t d = 2 * n + 4;
    Matrix eta(d, d), J(d, d);
    eta.at(0, d - 2) = eta.at(d - 2, 0) = Scalar(1);        // p1-q1
    eta.at(1, d - 1) = eta.at(d - 1, 1) = Scalar(1);        // p2-q2
    for (std::size_t i = 0; i < 2 * n; ++i) eta.at(2 + i, 2 + i) = Scalar(1);
    J.at(1, 0) = Scalar(1);
    J.at(0, 1) = Scalar(-1);
    for (std::size_t i = 0; i < n; ++i) {
      J.at(2 + n + i, 2 + i) = Scalar(1);
      J.at(2 + i, 2 + n + i) = Scalar(-1);
    }
    J.at(d - 1, d - 2) = Scalar(1);
    J.at(d - 2, d - 1) = Scalar(-1);
    fr.metric = MetricStructure(d, eta, J);
    return fr;
  }

  static StandardFrame lorentz(std::size_t n) {
    StandardFrame fr;
    fr.signature_case = FrameCase::Lorentz;
    fr.n = n;
    std::size_t d = n + 2;
    Matrix eta(d, d);
    eta.at(0, d - 1) = eta.at(d - 1, 0) = Scalar(1);
    for (std::size_t i = 0; i < n; ++i) eta.at(1 + i, 1 + i) = Scalar(1);
    fr.metric = MetricStructure(d, eta);
    return fr;
  }

  std::size_t dim() const { return metric.dim; }
  bool is_pk() const { return signature_case == FrameCase::PseudoKaehler; }

  // Index helpers (e/f indices are 1-based like the source notation).
  std::size_t p1() const { return 0; }
  std::size_t p2() const { require_pk(); return 1; }
  std::size_t e(std::size_t i) const { check_range(i); return is_pk() ? 1 + i : i; }
  std::size_t f(std::size_t i) const { require_pk(); check_range(i); return 1 + n + i; }
  std::size_t q1() const { return dim() - (is_pk() ? 2 : 1); }
  std::size_t q2() const { require_pk(); return dim() - 1; }

  Vector basis_vector(std::size_t idx) const {
    Vector v(dim(), Scalar(0));
    v[idx] = Scalar(1);
    return v;
  }

private:
  void require_pk() const {
    if (!is_pk()) throw std::logic_error("StandardFrame: pseudo-Kaehler index on Lorentz frame");
  }
  void check_range(std::size_t i) const {
    if (i < 1 || i > n) throw std::out_of_range("StandardFrame: e/f index");
  }
};

// Element of u(1,n+1)_{<p1,p2>} from the 7-tuple (a1, a2, B, C, z1, z2, c);
// B and C are n x n, z1 and z2 have length n.
inline Matrix pk_element(const StandardFrame& fr, const Scalar& a1, const Scalar& a2,
                         const Matrix& B, const Matrix& C, const Vector& z1,
                         const Vector& z2, const Scalar& c) {
  if (!fr.is_pk()) throw std::invalid_argument("pk_element: frame case");
  std::size_t n = fr.n, d = fr.dim();
  if (B.rows() != n || B.cols() != n || C.rows() != n || C.cols() != n ||
      z1.size() != n || z2.size() != n)
    throw std::invalid_argument("pk_element: block shapes");
  Matrix m(d, d);
  m.at(fr.p1(), fr.p1()) = a1;
  m.at(fr.p1(), fr.p2()) = -a2;
  m.at(fr.p2(), fr.p1()) = a2;
  m.at(fr.p2(), fr.p2()) = a1;
  for (std::size_t i = 1; i <= n; ++i) {
    m.at(fr.p1(), fr.e(i)) = -z1[i - 1];
    m.at(fr.p1(), fr.f(i)) = -z2[i - 1];
    m.at(fr.p2(), fr.e(i)) = z2[i - 1];
    m.at(fr.p2(), fr.f(i)) = -z1[i - 1];
    m.at(fr.e(i), fr.q1()) = z1[i - 1];
    m.at(fr.e(i), fr.q2()) = -z2[i - 1];
    m.at(fr.f(i), fr.q1()) = z2[i - 1];
    m.at(fr.f(i), fr.q2()) = z1[i - 1];
    for (std::size_t j = 1; j <= n; ++j) {
      m.at(fr.e(i), fr.e(j)) = B.at(i - 1, j - 1);
      m.at(fr.e(i), fr.f(j)) = -C.at(i - 1, j - 1);
      m.at(fr.f(i), fr.e(j)) = C.at(i - 1, j - 1);
      m.at(fr.f(i), fr.f(j)) = B.at(i - 1, j - 1);
    }
  }
  m.at(fr.p1(), fr.q2()) = -c;
  m.at(fr.p2(), fr.q1()) = c;
  m.at(fr.q1(), fr.q1()) = -a1;
  m.at(fr.q1(), fr.q2()) = -a2;
  m.at(fr.q2(), fr.q1()) = a2;
  m.at(fr.q2(), fr.q2()) = -a1;
  return m;
}

// Element of so(1,n+1)_{Rp} from the triple (a, A, X); A is n x n skew.
inline Matrix lorentz_element(const StandardFrame& fr, const Scalar& a, const Matrix& A,
                              const Vector& X) {
  if (fr.is_pk()) throw std::invalid_argument("lorentz_element: frame case");
  std::size_t n = fr.n, d = fr.dim();
  if (A.rows() != n || A.cols() != n || X.size() != n)
    throw std::invalid_argument("lorentz_element: block shapes");
  Matrix m(d, d);
  m.at(fr.p1(), fr.p1()) = a;
  m.at(fr.q1(), fr.q1()) = -a;
  for (std::size_t i = 1; i <= n; ++i) {
    m.at(fr.p1(), fr.e(i)) = X[i - 1];
    m.at(fr.e(i), fr.q1()) = -X[i - 1];
    for (std::size_t j = 1; j <= n; ++j) m.at(fr.e(i), fr.e(j)) = A.at(i - 1, j - 1);
  }
  return m;
}

// J_{k,...,l}: the complex structure restricted to span{e_k..e_l, f_k..f_l},
// zero elsewhere (1-based, inclusive). J_{1..l} is written J_l.
inline Matrix J_range(const StandardFrame& fr, std::size_t k, std::size_t l) {
  if (!fr.is_pk()) throw std::invalid_argument("J_range: frame case");
  Matrix m(fr.dim(), fr.dim());
  for (std::size_t i = k; i <= l && i <= fr.n; ++i) {
    m.at(fr.f(i), fr.e(i)) = Scalar(1);
    m.at(fr.e(i), fr.f(i)) = Scalar(-1);
  }
  return m;
}

// Matrix of the bivector u ^ v under (u ^ v) w = eta(u,w) v - eta(v,w) u.
inline Matrix wedge_matrix(const MetricStructure& ms, const Vector& u, const Vector& v) {
  std::size_t d = ms.dim;
  if (u.size() != d || v.size() != d) throw std::invalid_argument("wedge_matrix: shapes");
  Vector eu(d, Scalar(0)), ev(d, Scalar(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      eu[i] += ms.eta.at(i, j) * u[j];
      ev[i] += ms.eta.at(i, j) * v[j];
    }
  Matrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m.at(i, j) = v[i] * eu[j] - u[i] * ev[j];
  return m;
}

// so(k) elementary generator E_{st} (1-based): +1 at (s,t), -1 at (t,s).
inline Matrix so_generator(std::size_t n, std::size_t s, std::size_t t) {
  Matrix m(n, n);
  m.at(s - 1, t - 1) = Scalar(1);
  m.at(t - 1, s - 1) = Scalar(-1);
  return m;
}

}  // namespace holcat
