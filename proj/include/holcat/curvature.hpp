#pragma once

// Curvature-tensor spaces as exact nullspaces.
//
// R(g) = { R : Lambda^2 -> g | first Bianchi identity }, with unknowns the
// coordinates of R(e_a ^ e_b) in the canonical basis of g (so the
// value-in-g constraint is built into the parametrization). P(h) is the
// weak-curvature analogue Hom(R^n, h) with the cyclic identity, and R_0(h)
// adds the annihilation system R_A = 0 for every basis element A of h.
//
// Unknown ordering is lexicographic over (bivector index, target-basis
// index); bivectors are pairs (a,b) with a < b in lexicographic order. Both
// choices fix the canonical bases produced by the nullspace.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "holcat/liealg.hpp"
#include "holcat/matrix.hpp"

namespace holcat {

inline std::size_t pair_count(std::size_t d) { return d * (d - 1) / 2; }

inline std::size_t pair_index(std::size_t d, std::size_t a, std::size_t b) {
  if (a >= b || b >= d) throw std::invalid_argument("pair_index: need a < b < d");
  return a * (2 * d - a - 1) / 2 + (b - a - 1);
}

inline std::pair<std::size_t, std::size_t> pair_unindex(std::size_t d, std::size_t p) {
  for (std::size_t a = 0; a + 1 < d; ++a) {
    std::size_t block = d - a - 1;
    if (p < block) return {a, a + p + 1};
    p -= block;
  }
  throw std::out_of_range("pair_unindex");
}

// Exact linear map from coordinate bivectors to endomorphisms; values are
// stored for pairs a < b only, antisymmetry is implicit.
class CurvatureTensor {
public:
  CurvatureTensor() : dim_(0) {}
  CurvatureTensor(std::size_t dim, std::vector<Matrix> values)
      : dim_(dim), values_(std::move(values)) {
    if (values_.size() != pair_count(dim_))
      throw std::invalid_argument("CurvatureTensor: value count");
  }
  static CurvatureTensor zero(std::size_t dim) {
    return CurvatureTensor(dim, std::vector<Matrix>(pair_count(dim), Matrix(dim, dim)));
  }

  std::size_t dim() const { return dim_; }
  const std::vector<Matrix>& values() const { return values_; }

  const Matrix& value_at(std::size_t p) const { return values_[p]; }
  Matrix& value_at(std::size_t p) { return values_[p]; }

  Matrix value(std::size_t a, std::size_t b) const {
    if (a == b) return Matrix(dim_, dim_);
    if (a < b) return values_[pair_index(dim_, a, b)];
    return -values_[pair_index(dim_, b, a)];
  }

  // R(u ^ v) extended bilinearly.
  Matrix value(const Vector& u, const Vector& v) const {
    Matrix acc(dim_, dim_);
    for (std::size_t a = 0; a < dim_; ++a) {
      if (u[a].is_zero()) continue;
      for (std::size_t b = 0; b < dim_; ++b) {
        if (a == b || v[b].is_zero()) continue;
        Scalar c = u[a] * v[b];
        if (a < b)
          acc += c * values_[pair_index(dim_, a, b)];
        else
          acc -= c * values_[pair_index(dim_, b, a)];
      }
    }
    return acc;
  }

  bool is_zero() const {
    for (const auto& m : values_)
      if (!m.is_zero()) return false;
    return true;
  }

  Vector flatten() const {
    Vector v;
    v.reserve(values_.size() * dim_ * dim_);
    for (const auto& m : values_)
      for (const auto& x : m.flatten()) v.push_back(x);
    return v;
  }

  friend bool operator==(const CurvatureTensor& a, const CurvatureTensor& b) {
    return a.dim_ == b.dim_ && a.values_ == b.values_;
  }

private:
  std::size_t dim_;
  std::vector<Matrix> values_;
};

inline bool bianchi_holds(const CurvatureTensor& R) {
  std::size_t d = R.dim();
  for (std::size_t u = 0; u < d; ++u)
    for (std::size_t v = u + 1; v < d; ++v)
      for (std::size_t w = v + 1; w < d; ++w) {
        Vector sum(d, Scalar(0));
        auto acc = [&](const Matrix& m, std::size_t col) {
          for (std::size_t r = 0; r < d; ++r) sum[r] += m.at(r, col);
        };
        acc(R.value(u, v), w);
        acc(R.value(v, w), u);
        acc(R.value(w, u), v);
        for (const auto& x : sum)
          if (!x.is_zero()) return false;
      }
  return true;
}

// eta(R(u^v)z, w) = eta(R(z^w)u, v) over all frame quadruples.
inline bool pair_symmetry_check(const CurvatureTensor& R, const MetricStructure& ms) {
  std::size_t d = R.dim();
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b) {
      Matrix lowered = ms.eta * R.value(a, b);  // lowered(w,z) = eta(R(ab) e_z, e_w)
      for (std::size_t z = 0; z < d; ++z)
        for (std::size_t w = z + 1; w < d; ++w) {
          Matrix other = ms.eta * R.value(z, w);
          if (lowered.at(w, z) != other.at(b, a)) return false;
          if (lowered.at(z, w) != other.at(a, b)) return false;
        }
    }
  return true;
}

struct CurvatureSpace {
  MatrixLieAlgebra target;
  std::vector<CurvatureTensor> basis;

  std::size_t dim() const { return basis.size(); }
};

inline CurvatureSpace curvature_space(const MatrixLieAlgebra& g) {
  if (!is_in_so(g)) throw std::invalid_argument("curvature_space: g not in so(eta)");
  std::size_t d = g.ambient_dim();
  std::size_t k = g.dim();
  std::size_t P = pair_count(d);
  CurvatureSpace out{g, {}};
  if (k == 0) return out;

  // Bianchi rows: one per (u<v<w, component r).
  std::size_t triples = d * (d - 1) * (d - 2) / 6;
  Matrix sys(triples * d, P * k);
  std::size_t row = 0;
  for (std::size_t u = 0; u < d; ++u)
    for (std::size_t v = u + 1; v < d; ++v)
      for (std::size_t w = v + 1; w < d; ++w, row += d) {
        std::size_t puv = pair_index(d, u, v);
        std::size_t pvw = pair_index(d, v, w);
        std::size_t puw = pair_index(d, u, w);
        for (std::size_t t = 0; t < k; ++t) {
          const Matrix& B = g.basis()[t];
          for (std::size_t r = 0; r < d; ++r) {
            sys.at(row + r, puv * k + t) += B.at(r, w);
            sys.at(row + r, pvw * k + t) += B.at(r, u);
            sys.at(row + r, puw * k + t) -= B.at(r, v);
          }
        }
      }
  Subspace ns = nullspace(sys);
  for (const auto& coords : ns.basis()) {
    std::vector<Matrix> vals(P, Matrix(d, d));
    for (std::size_t p = 0; p < P; ++p)
      for (std::size_t t = 0; t < k; ++t)
        if (!coords[p * k + t].is_zero()) vals[p] += coords[p * k + t] * g.basis()[t];
    out.basis.emplace_back(d, std::move(vals));
  }
  return out;
}

// Span of all R(e_a ^ e_b) over basis tensors, inside gl(d) flattened.
inline Subspace image_span(const CurvatureSpace& cs) {
  std::size_t d = cs.target.ambient_dim();
  std::vector<Vector> vecs;
  for (const auto& R : cs.basis)
    for (const auto& m : R.values()) vecs.push_back(m.flatten());
  return Subspace::span(d * d, vecs);
}

inline bool is_berger(const MatrixLieAlgebra& g) {
  return image_span(curvature_space(g)) == g.flat_span();
}

// Weak-curvature tensors: linear maps R^n -> h with the cyclic identity.
struct WeakCurvatureSpace {
  MatrixLieAlgebra target;
  std::vector<std::vector<Matrix>> basis;  // each element: n matrices P(e_i)

  std::size_t dim() const { return basis.size(); }
};

inline bool weak_cyclic_holds(const std::vector<Matrix>& P, const MetricStructure& ms) {
  std::size_t n = ms.dim;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = 0; w < n; ++w) {
        Matrix Pu = ms.eta * P[u], Pv = ms.eta * P[v], Pw = ms.eta * P[w];
        Scalar s = Pu.at(w, v) + Pv.at(u, w) + Pw.at(v, u);
        if (!s.is_zero()) return false;
      }
  return true;
}

inline WeakCurvatureSpace weak_curvature_space(const MatrixLieAlgebra& h) {
  if (!is_in_so(h)) throw std::invalid_argument("weak_curvature_space: h not in so(n)");
  // positive-definite check: the frame eta must be symmetric with positive
  // leading minors; the toolkit only ever uses the Euclidean identity here.
  std::size_t n = h.ambient_dim();
  const Matrix& eta = h.ambient().eta;
  {
    Matrix sub(0, 0);
    for (std::size_t m = 1; m <= n; ++m) {
      Matrix mm(m, m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) mm.at(i, j) = eta.at(i, j);
      Scalar det = determinant(mm);
      if (det.is_rational() && det.to_rational().sign() <= 0)
        throw std::invalid_argument("weak_curvature_space: eta not positive definite");
    }
  }
  std::size_t k = h.dim();
  WeakCurvatureSpace out{h, {}};
  if (k == 0) return out;
  // Unknowns: coordinates of P(e_i) in h's basis; rows: cyclic identity over
  // all (u,v,w) triples (redundant rows are harmless).
  Matrix sys(n * n * n, n * k);
  std::vector<Matrix> lowered;
  for (const auto& B : h.basis()) lowered.push_back(eta * B);
  std::size_t row = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = 0; w < n; ++w, ++row)
        for (std::size_t t = 0; t < k; ++t) {
          sys.at(row, u * k + t) += lowered[t].at(w, v);
          sys.at(row, v * k + t) += lowered[t].at(u, w);
          sys.at(row, w * k + t) += lowered[t].at(v, u);
        }
  Subspace ns = nullspace(sys);
  for (const auto& coords : ns.basis()) {
    std::vector<Matrix> maps(n, Matrix(n, n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t = 0; t < k; ++t)
        if (!coords[i * k + t].is_zero()) maps[i] += coords[i * k + t] * h.basis()[t];
    out.basis.push_back(std::move(maps));
  }
  return out;
}

// R_0(h): curvature space cut down by the annihilation system
// R_A(x,y) = [R(x^y), A] + R(Ax ^ y) + R(x ^ Ay) = 0 for all basis A.
inline CurvatureSpace invariant_curvature_space(const MatrixLieAlgebra& h) {
  if (!is_in_so(h)) throw std::invalid_argument("invariant_curvature_space: h not in so(eta)");
  std::size_t d = h.ambient_dim();
  std::size_t k = h.dim();
  std::size_t P = pair_count(d);
  CurvatureSpace out{h, {}};
  if (k == 0) return out;

  std::size_t triples = d * (d - 1) * (d - 2) / 6;
  std::size_t bianchi_rows = triples * d;
  std::size_t annih_rows = k * P * d * d;
  Matrix sys(bianchi_rows + annih_rows, P * k);
  std::size_t row = 0;
  for (std::size_t u = 0; u < d; ++u)
    for (std::size_t v = u + 1; v < d; ++v)
      for (std::size_t w = v + 1; w < d; ++w, row += d) {
        std::size_t puv = pair_index(d, u, v);
        std::size_t pvw = pair_index(d, v, w);
        std::size_t puw = pair_index(d, u, w);
        for (std::size_t t = 0; t < k; ++t) {
          const Matrix& B = h.basis()[t];
          for (std::size_t r = 0; r < d; ++r) {
            sys.at(row + r, puv * k + t) += B.at(r, w);
            sys.at(row + r, pvw * k + t) += B.at(r, u);
            sys.at(row + r, puw * k + t) -= B.at(r, v);
          }
        }
      }
  for (const auto& A : h.basis()) {
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = a + 1; b < d; ++b) {
        // coefficient matrices of the equation for this (A, a<b) block
        std::vector<Matrix> coeff(P * k, Matrix(d, d));
        std::size_t pab = pair_index(d, a, b);
        for (std::size_t t = 0; t < k; ++t) {
          const Matrix& B = h.basis()[t];
          coeff[pab * k + t] += B * A - A * B;  // [R(a^b), A]
          for (std::size_t s = 0; s < d; ++s) {
            if (!A.at(s, a).is_zero() && s != b) {
              std::size_t p2 = pair_index(d, std::min(s, b), std::max(s, b));
              Scalar sign = s < b ? A.at(s, a) : -A.at(s, a);
              coeff[p2 * k + t] += sign * B;  // R(Ax ^ y)
            }
            if (!A.at(s, b).is_zero() && s != a) {
              std::size_t p2 = pair_index(d, std::min(a, s), std::max(a, s));
              Scalar sign = a < s ? A.at(s, b) : -A.at(s, b);
              coeff[p2 * k + t] += sign * B;  // R(x ^ Ay)
            }
          }
        }
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j, ++row)
            for (std::size_t ut = 0; ut < P * k; ++ut)
              if (!coeff[ut].at(i, j).is_zero()) sys.at(row, ut) = coeff[ut].at(i, j);
      }
  }
  Subspace ns = nullspace(sys);
  for (const auto& coords : ns.basis()) {
    std::vector<Matrix> vals(P, Matrix(d, d));
    for (std::size_t p = 0; p < P; ++p)
      for (std::size_t t = 0; t < k; ++t)
        if (!coords[p * k + t].is_zero()) vals[p] += coords[p * k + t] * h.basis()[t];
    out.basis.emplace_back(d, std::move(vals));
  }
  return out;
}

// {R in cs : all values of R lie in sub}; sub must sit inside cs.target.
inline CurvatureSpace restrict_space(const CurvatureSpace& cs, const MatrixLieAlgebra& sub) {
  std::size_t d = cs.target.ambient_dim();
  if (sub.ambient_dim() != d)
    throw std::invalid_argument("restrict_space: ambient mismatch");
  if (!cs.target.flat_span().contains(sub.flat_span()))
    throw std::invalid_argument("restrict_space: sub not contained in target");
  std::size_t m = cs.basis.size();
  std::size_t P = pair_count(d);
  CurvatureSpace out{sub, {}};
  if (m == 0) return out;
  const Subspace& S = sub.flat_span();
  Matrix sys(P * d * d, m);
  for (std::size_t p = 0; p < P; ++p)
    for (std::size_t i = 0; i < m; ++i) {
      Vector red = S.reduce(cs.basis[i].value_at(p).flatten());
      for (std::size_t e = 0; e < d * d; ++e) sys.at(p * d * d + e, i) = red[e];
    }
  Subspace ns = nullspace(sys);
  for (const auto& y : ns.basis()) {
    std::vector<Matrix> vals(P, Matrix(d, d));
    for (std::size_t p = 0; p < P; ++p)
      for (std::size_t i = 0; i < m; ++i)
        if (!y[i].is_zero()) vals[p] += y[i] * cs.basis[i].value_at(p);
    out.basis.emplace_back(d, std::move(vals));
  }
  return out;
}

}  // namespace holcat
