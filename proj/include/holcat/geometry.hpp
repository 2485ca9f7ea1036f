#pragma once

// The holonomy engine: Christoffel symbols, curvature, covariant derivatives
// and holonomy generation for polynomial metrics, plus the left-invariant
// Lie-group pipeline.
//
// Metrics must have constant nonzero determinant so that the inverse metric
// is a polynomial matrix (adjugate over a scalar). The curvature sign
// convention is R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y], i.e.
// R^a_{bcd} = d_c Gamma^a_{db} - d_d Gamma^a_{cb}
//            + Gamma^a_{ce} Gamma^e_{db} - Gamma^a_{de} Gamma^e_{cb}.
//
// Holonomy generation follows the analytic description: evaluate R and its
// iterated covariant derivatives at the basepoint and take the Lie closure
// of all resulting endomorphisms. Derivative directions are enumerated as
// non-decreasing tuples (multisets); antisymmetrized tuples only contribute
// curvature-action terms that the Lie closure and the lower orders already
// contain, which a brute-force all-tuples engine cross-checks in the tests.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "holcat/curvature.hpp"
#include "holcat/liealg.hpp"
#include "holcat/matrix.hpp"
#include "holcat/polynomial.hpp"

namespace holcat {

using PolyMatrix = std::vector<std::vector<Polynomial>>;

// Determinant of a polynomial matrix by column-subset dynamic programming
// (Laplace expansion shared across subsets; fine for the dims in play).
inline Polynomial poly_det(const PolyMatrix& m) {
  std::size_t d = m.size();
  if (d == 0) return Polynomial(0);
  std::size_t nv = m[0][0].variable_count();
  if (d > 20) throw std::invalid_argument("poly_det: dimension too large");
  std::vector<Polynomial> dp(1u << d);
  dp[0] = Polynomial::constant(nv, Scalar(1));
  for (std::uint32_t mask = 1; mask < (1u << d); ++mask) {
    std::size_t row = static_cast<std::size_t>(__builtin_popcount(mask)) - 1;
    Polynomial acc(nv);
    // Laplace along the last row of the submatrix: sign starts at (-1)^row.
    int sign = (row % 2 == 0) ? 1 : -1;
    for (std::size_t c = 0; c < d; ++c) {
      if (!(mask & (1u << c))) continue;
      if (!m[row][c].is_zero() && !dp[mask & ~(1u << c)].is_zero()) {
        Polynomial t = m[row][c] * dp[mask & ~(1u << c)];
        if (sign < 0) t *= Scalar(-1);
        acc += t;
      }
      sign = -sign;
    }
    dp[mask] = std::move(acc);
  }
  return dp[(1u << d) - 1];
}

struct PolynomialMetric {
  std::size_t dim = 0;
  PolyMatrix g;
  std::vector<Scalar> basepoint;

  PolynomialMetric() = default;
  PolynomialMetric(std::size_t d, PolyMatrix entries, std::vector<Scalar> base)
      : dim(d), g(std::move(entries)), basepoint(std::move(base)) {
    validate();
  }

  void validate() const {
    if (g.size() != dim || basepoint.size() != dim)
      throw std::invalid_argument("PolynomialMetric: shapes");
    for (const auto& row : g)
      if (row.size() != dim) throw std::invalid_argument("PolynomialMetric: shapes");
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j)
        if (g[i][j] != g[j][i]) throw std::invalid_argument("PolynomialMetric: not symmetric");
    Polynomial det = poly_det(g);
    if (!det.is_constant() || det.is_zero())
      throw std::invalid_argument(
          "PolynomialMetric: unsupported metric, det(g) must be a nonzero constant");
  }

  std::size_t variable_count() const { return dim == 0 ? 0 : g[0][0].variable_count(); }

  Matrix value_at(const std::vector<Scalar>& point) const {
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) m.at(i, j) = g[i][j].evaluate(point);
    return m;
  }

  // Same metric in coordinates translated so that the basepoint is 0.
  PolynomialMetric recentered() const {
    PolynomialMetric out = *this;
    bool zero = true;
    for (const auto& x : basepoint)
      if (!x.is_zero()) zero = false;
    if (zero) return out;
    for (auto& row : out.g)
      for (auto& p : row) p = p.shifted(basepoint);
    out.basepoint.assign(dim, Scalar(0));
    return out;
  }
};

// gamma[a][sym_index(b<=c)] = Gamma^a_{bc}
class ChristoffelField {
public:
  ChristoffelField() : dim_(0) {}
  ChristoffelField(std::size_t dim, std::size_t nvars)
      : dim_(dim), nvars_(nvars), gamma_(dim, std::vector<Polynomial>(dim * (dim + 1) / 2, Polynomial(nvars))) {}

  std::size_t dim() const { return dim_; }
  std::size_t variable_count() const { return nvars_; }

  static std::size_t sym_index(std::size_t d, std::size_t b, std::size_t c) {
    if (b > c) std::swap(b, c);
    return b * (2 * d - b + 1) / 2 + (c - b);
  }

  Polynomial& at(std::size_t a, std::size_t b, std::size_t c) {
    return gamma_[a][sym_index(dim_, b, c)];
  }
  const Polynomial& at(std::size_t a, std::size_t b, std::size_t c) const {
    return gamma_[a][sym_index(dim_, b, c)];
  }

private:
  std::size_t dim_ = 0, nvars_ = 0;
  std::vector<std::vector<Polynomial>> gamma_;
};

inline ChristoffelField christoffel(const PolynomialMetric& m) {
  std::size_t d = m.dim, nv = m.variable_count();
  Polynomial detp = poly_det(m.g);
  Scalar det = detp.constant_value();  // validated constant nonzero

  // Inverse metric = adjugate / det, entrywise polynomial.
  PolyMatrix ginv(d, std::vector<Polynomial>(d, Polynomial(nv)));
  for (std::size_t er = 0; er < d; ++er) {    // deleted row of the minor
    for (std::size_t ec = 0; ec < d; ++ec) {  // deleted column
      // minor of g with row er and column ec removed
      PolyMatrix minor;
      for (std::size_t i = 0; i < d; ++i) {
        if (i == er) continue;
        std::vector<Polynomial> row;
        for (std::size_t j = 0; j < d; ++j)
          if (j != ec) row.push_back(m.g[i][j]);
        minor.push_back(std::move(row));
      }
      Polynomial cof = d == 1 ? Polynomial::constant(nv, Scalar(1)) : poly_det(minor);
      if ((er + ec) % 2 == 1) cof *= Scalar(-1);
      // adj[ec][er] = cofactor(er,ec); g symmetric so adj is symmetric too
      ginv[ec][er] = cof * Scalar(Scalar(1) / det);
    }
  }

  // Precompute first derivatives of g.
  std::vector<PolyMatrix> dg(d, PolyMatrix(d, std::vector<Polynomial>(d, Polynomial(nv))));
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (!m.g[i][j].is_zero()) dg[c][i][j] = m.g[i][j].partial(c);

  ChristoffelField out(d, nv);
  Scalar half(1, 2);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = b; c < d; ++c) {
        Polynomial acc(nv);
        for (std::size_t e = 0; e < d; ++e) {
          if (ginv[a][e].is_zero()) continue;
          Polynomial s = dg[b][e][c];
          s += dg[c][e][b];
          s -= dg[e][b][c];
          if (!s.is_zero()) acc += ginv[a][e] * s;
        }
        acc *= half;
        out.at(a, b, c) = std::move(acc);
      }
  return out;
}

// Exact polynomial identity nabla g = 0:
// d_c g_ab - Gamma^e_{ca} g_eb - Gamma^e_{cb} g_ae = 0.
inline bool metric_compatible(const PolynomialMetric& m, const ChristoffelField& gamma) {
  std::size_t d = m.dim, nv = m.variable_count();
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = a; b < d; ++b) {
        Polynomial acc = m.g[a][b].partial(c);
        for (std::size_t e = 0; e < d; ++e) {
          if (!gamma.at(e, c, a).is_zero() && !m.g[e][b].is_zero())
            acc -= gamma.at(e, c, a) * m.g[e][b];
          if (!gamma.at(e, c, b).is_zero() && !m.g[a][e].is_zero())
            acc -= gamma.at(e, c, b) * m.g[a][e];
        }
        (void)nv;
        if (!acc.is_zero()) return false;
      }
  return true;
}

// Curvature-shaped polynomial tensor: components T^a_{b,(c<d)} with the
// antisymmetry in (c,d) implicit. Iterated directional covariant derivatives
// keep this shape.
class CurvPolyTensor {
public:
  CurvPolyTensor() : dim_(0) {}
  CurvPolyTensor(std::size_t dim, std::size_t nvars)
      : dim_(dim), nvars_(nvars), comp_(dim * dim * pair_count(dim), Polynomial(nvars)) {}

  std::size_t dim() const { return dim_; }
  std::size_t nvars() const { return nvars_; }

  Polynomial& at(std::size_t a, std::size_t b, std::size_t p) {
    return comp_[(a * dim_ + b) * pair_count(dim_) + p];
  }
  const Polynomial& at(std::size_t a, std::size_t b, std::size_t p) const {
    return comp_[(a * dim_ + b) * pair_count(dim_) + p];
  }

  // Signed value T^a_{b,x,y} for arbitrary x, y.
  Polynomial value(std::size_t a, std::size_t b, std::size_t x, std::size_t y) const {
    if (x == y) return Polynomial(nvars_);
    if (x < y) return at(a, b, pair_index(dim_, x, y));
    return -at(a, b, pair_index(dim_, y, x));
  }

  // Evaluate at 0: the endomorphism X^a_b for a fixed bivector slot.
  Matrix endo_at_zero(std::size_t p) const {
    Matrix m(dim_, dim_);
    for (std::size_t a = 0; a < dim_; ++a)
      for (std::size_t b = 0; b < dim_; ++b) m.at(a, b) = at(a, b, p).value_at_zero();
    return m;
  }

  CurvPolyTensor truncated(std::uint64_t max_deg) const {
    CurvPolyTensor t(dim_, nvars_);
    for (std::size_t i = 0; i < comp_.size(); ++i) t.comp_[i] = comp_[i].truncated(max_deg);
    return t;
  }

private:
  std::size_t dim_ = 0, nvars_ = 0;
  std::vector<Polynomial> comp_;
};

inline CurvPolyTensor curvature_tensor_field(const ChristoffelField& gamma) {
  std::size_t d = gamma.dim(), nv = gamma.variable_count();
  CurvPolyTensor R(d, nv);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t e = c + 1; e < d; ++e) {
      std::size_t p = pair_index(d, c, e);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
          Polynomial acc = gamma.at(a, e, b).partial(c);
          acc -= gamma.at(a, c, b).partial(e);
          for (std::size_t f = 0; f < d; ++f) {
            if (!gamma.at(a, c, f).is_zero() && !gamma.at(f, e, b).is_zero())
              acc += gamma.at(a, c, f) * gamma.at(f, e, b);
            if (!gamma.at(a, e, f).is_zero() && !gamma.at(f, c, b).is_zero())
              acc -= gamma.at(a, e, f) * gamma.at(f, c, b);
          }
          R.at(a, b, p) = std::move(acc);
        }
    }
  return R;
}

// Directional covariant derivative along the coordinate field d/dx^dir,
// treating T as a (1,3)-tensor of curvature shape.
inline CurvPolyTensor covariant_derivative_dir(const CurvPolyTensor& T,
                                               const ChristoffelField& gamma,
                                               std::size_t dir) {
  std::size_t d = T.dim(), nv = T.nvars();
  CurvPolyTensor out(d, nv);
  // nonzero Gamma^e_{dir, s} lists by lower index s, and by upper index e
  std::vector<std::vector<std::pair<std::size_t, const Polynomial*>>> by_lower(d), by_upper(d);
  for (std::size_t e = 0; e < d; ++e)
    for (std::size_t s = 0; s < d; ++s) {
      const Polynomial& gpoly = gamma.at(e, dir, s);
      if (gpoly.is_zero()) continue;
      by_lower[s].emplace_back(e, &gpoly);
      by_upper[e].emplace_back(s, &gpoly);
    }
  std::size_t P = pair_count(d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t p = 0; p < P; ++p) {
        auto [c, e2] = pair_unindex(d, p);
        Polynomial acc = T.at(a, b, p).partial(dir);
        for (const auto& [s, gp] : by_upper[a]) {  // +Gamma^a_{dir,s} T^s
          const Polynomial& t = T.at(s, b, p);
          if (!t.is_zero()) acc += (*gp) * t;
        }
        for (const auto& [e, gp] : by_lower[b]) {  // -Gamma^e_{dir,b} T^a_e
          const Polynomial& t = T.at(a, e, p);
          if (!t.is_zero()) acc -= (*gp) * t;
        }
        for (const auto& [e, gp] : by_lower[c]) {
          Polynomial t = T.value(a, b, e, e2);
          if (!t.is_zero()) acc -= (*gp) * t;
        }
        for (const auto& [e, gp] : by_lower[e2]) {
          Polynomial t = T.value(a, b, c, e);
          if (!t.is_zero()) acc -= (*gp) * t;
        }
        out.at(a, b, p) = std::move(acc);
      }
  return out;
}

// ---- public tensor fields with explicit derivative slots ----------------

// Components indexed by [a, b, c, d, a_1, ..., a_r]; sparse.
struct TensorField {
  std::size_t dim = 0;
  std::size_t order = 0;
  std::size_t nvars = 0;
  std::map<std::vector<std::uint8_t>, Polynomial> components;

  const Polynomial* find(const std::vector<std::uint8_t>& idx) const {
    auto it = components.find(idx);
    return it == components.end() ? nullptr : &it->second;
  }
  Polynomial component(const std::vector<std::uint8_t>& idx) const {
    auto it = components.find(idx);
    return it == components.end() ? Polynomial(nvars) : it->second;
  }
  void set(const std::vector<std::uint8_t>& idx, Polynomial p) {
    if (p.is_zero())
      components.erase(idx);
    else
      components[idx] = std::move(p);
  }
};

inline TensorField curvature(const ChristoffelField& gamma) {
  CurvPolyTensor R = curvature_tensor_field(gamma);
  std::size_t d = gamma.dim();
  TensorField out;
  out.dim = d;
  out.order = 0;
  out.nvars = gamma.variable_count();
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t e = 0; e < d; ++e) {
          if (c == e) continue;
          Polynomial v = R.value(a, b, c, e);
          if (!v.is_zero())
            out.components[{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                            static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(e)}] =
                std::move(v);
        }
  return out;
}

// Full covariant derivative: order r -> r+1, appending one lower slot.
inline TensorField covariant_derivative(const TensorField& T, const ChristoffelField& gamma) {
  std::size_t d = T.dim;
  TensorField out;
  out.dim = d;
  out.order = T.order + 1;
  out.nvars = T.nvars;
  std::size_t nslots = 3 + T.order;  // lower slots of T
  for (const auto& [idx, q] : T.components) {
    for (std::size_t dir = 0; dir < d; ++dir) {
      std::vector<std::uint8_t> oidx = idx;
      oidx.push_back(static_cast<std::uint8_t>(dir));
      // partial derivative part
      Polynomial dq = q.partial(dir);
      if (!dq.is_zero()) {
        auto it = out.components.find(oidx);
        if (it == out.components.end())
          out.components.emplace(oidx, std::move(dq));
        else {
          it->second += dq;
          if (it->second.is_zero()) out.components.erase(it);
        }
      }
      // upper slot: + Gamma^{a'}_{dir, a} T^{a...}
      for (std::size_t ap = 0; ap < d; ++ap) {
        const Polynomial& gp = gamma.at(ap, dir, idx[0]);
        if (gp.is_zero()) continue;
        std::vector<std::uint8_t> tix = oidx;
        tix[0] = static_cast<std::uint8_t>(ap);
        Polynomial add = gp * q;
        auto it = out.components.find(tix);
        if (it == out.components.end())
          out.components.emplace(std::move(tix), std::move(add));
        else {
          it->second += add;
          if (it->second.is_zero()) out.components.erase(it);
        }
      }
      // lower slots: - Gamma^{s}_{dir, b'} when slot holds s
      for (std::size_t slot = 0; slot < nslots; ++slot) {
        std::size_t s = idx[1 + slot];
        for (std::size_t bp = 0; bp < d; ++bp) {
          const Polynomial& gp = gamma.at(s, dir, bp);
          if (gp.is_zero()) continue;
          std::vector<std::uint8_t> tix = oidx;
          tix[1 + slot] = static_cast<std::uint8_t>(bp);
          Polynomial add = gp * q;
          add *= Scalar(-1);
          auto it = out.components.find(tix);
          if (it == out.components.end())
            out.components.emplace(std::move(tix), std::move(add));
          else {
            it->second += add;
            if (it->second.is_zero()) out.components.erase(it);
          }
        }
      }
    }
  }
  return out;
}

// ---- holonomy ------------------------------------------------------------

struct GeneratorRecord {
  std::size_t order;
  std::size_t frame_c, frame_d;            // bivector pair
  std::vector<std::size_t> derivative_dirs;  // non-decreasing multiset
  Matrix matrix;
};

struct HolonomyReport {
  MatrixLieAlgebra algebra;
  std::size_t max_order_used = 0;
  bool stabilized = false;
  std::vector<GeneratorRecord> generator_log;
  bool closure_added_elements = false;  // whether Lie closure exceeded the plain span
};

inline HolonomyReport holonomy(const PolynomialMetric& metric, std::size_t max_order,
                               std::size_t window) {
  if (max_order < 1 || window < 1)
    throw std::invalid_argument("holonomy: max_order and window must be >= 1");
  PolynomialMetric m = metric.recentered();
  std::size_t d = m.dim;
  ChristoffelField gamma = christoffel(m);
  CurvPolyTensor R = curvature_tensor_field(gamma);

  MetricStructure eta0(d, m.value_at(m.basepoint));
  LieSpan closure(d);
  Subspace plain_span(d * d);
  HolonomyReport report{MatrixLieAlgebra(eta0, {}), 0, false, {}, false};

  std::size_t P = pair_count(d);
  std::size_t no_growth = 0;
  // frontier: multiset of directions (non-decreasing) -> tensor
  std::vector<std::pair<std::vector<std::size_t>, CurvPolyTensor>> frontier;
  frontier.emplace_back(std::vector<std::size_t>{}, R.truncated(max_order + 1));

  for (std::size_t order = 0; order <= max_order; ++order) {
    std::size_t before = closure.rank();
    for (const auto& [dirs, T] : frontier) {
      for (std::size_t p = 0; p < P; ++p) {
        Matrix x = T.endo_at_zero(p);
        if (x.is_zero()) continue;
        plain_span = plain_span.sum(Subspace::span(d * d, {x.flatten()}));
        if (closure.add(x)) {
          auto [c, e] = pair_unindex(d, p);
          report.generator_log.push_back({order, c, e, dirs, x});
          report.max_order_used = order;
        }
      }
    }
    if (closure.rank() == before && order > 0) {
      if (++no_growth >= window) {
        report.stabilized = true;
        break;
      }
    } else if (order > 0) {
      no_growth = 0;
    }
    if (order == max_order) break;
    // expand frontier with non-decreasing direction tuples
    std::vector<std::pair<std::vector<std::size_t>, CurvPolyTensor>> next;
    for (const auto& [dirs, T] : frontier) {
      std::size_t start = dirs.empty() ? 0 : dirs.back();
      for (std::size_t dir = start; dir < d; ++dir) {
        std::vector<std::size_t> nd = dirs;
        nd.push_back(dir);
        CurvPolyTensor nt = covariant_derivative_dir(T, gamma, dir);
        if (max_order > order + 1) nt = nt.truncated(max_order - order);
        next.emplace_back(std::move(nd), std::move(nt));
      }
    }
    frontier = std::move(next);
  }

  report.closure_added_elements = closure.rank() != plain_span.dim();
  report.algebra = MatrixLieAlgebra(eta0, closure.basis());
  return report;
}

// ---- left-invariant Lie group pipeline ------------------------------------

struct LieGroupData {
  std::size_t dim = 0;
  Matrix gram;
  // brackets[i][j] = coefficient vector of [e_i, e_j]
  std::vector<std::vector<Vector>> brackets;

  LieGroupData() = default;
  LieGroupData(std::size_t d, Matrix gram_, std::vector<std::vector<Vector>> br)
      : dim(d), gram(std::move(gram_)), brackets(std::move(br)) {
    validate();
  }

  Vector bracket_vec(const Vector& x, const Vector& y) const {
    Vector out(dim, Scalar(0));
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        if (x[i].is_zero() || y[j].is_zero()) continue;
        Scalar c = x[i] * y[j];
        for (std::size_t k = 0; k < dim; ++k) out[k] += c * brackets[i][j][k];
      }
    return out;
  }

  void validate() const {
    if (gram.rows() != dim || gram.cols() != dim)
      throw std::invalid_argument("LieGroupData: gram shape");
    if (gram != gram.transpose() || determinant(gram).is_zero())
      throw std::invalid_argument("LieGroupData: gram degenerate");
    if (brackets.size() != dim)
      throw std::invalid_argument("LieGroupData: bracket table shape");
    for (const auto& row : brackets) {
      if (row.size() != dim) throw std::invalid_argument("LieGroupData: bracket table shape");
      for (const auto& v : row)
        if (v.size() != dim) throw std::invalid_argument("LieGroupData: bracket table shape");
    }
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t k = 0; k < dim; ++k)
          if (brackets[i][j][k] != -brackets[j][i][k])
            throw std::invalid_argument("LieGroupData: brackets not antisymmetric");
    // Jacobi identity
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j)
        for (std::size_t k = j + 1; k < dim; ++k) {
          Vector ei(dim, Scalar(0)), ej(dim, Scalar(0)), ek(dim, Scalar(0));
          ei[i] = ej[j] = ek[k] = Scalar(1);
          Vector s = bracket_vec(ei, bracket_vec(ej, ek));
          Vector t = bracket_vec(ej, bracket_vec(ek, ei));
          Vector u = bracket_vec(ek, bracket_vec(ei, ej));
          for (std::size_t a = 0; a < dim; ++a)
            if (!(s[a] + t[a] + u[a]).is_zero())
              throw std::invalid_argument("LieGroupData: Jacobi identity fails");
        }
  }
};

// Matrices of nabla_{e_i} from the left-invariant Koszul formula
// 2 g(nabla_X Y, Z) = g([X,Y],Z) + g([Z,X],Y) + g(X,[Z,Y]).
inline std::vector<Matrix> lg_nabla(const LieGroupData& d) {
  std::size_t n = d.dim;
  Matrix ginv = inverse(d.gram);
  std::vector<Matrix> out;
  auto basis = [&](std::size_t i) {
    Vector v(n, Scalar(0));
    v[i] = Scalar(1);
    return v;
  };
  auto inner = [&](const Vector& x, const Vector& y) {
    Scalar s(0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (!d.gram.at(a, b).is_zero()) s += x[a] * d.gram.at(a, b) * y[b];
    return s;
  };
  for (std::size_t i = 0; i < n; ++i) {
    Matrix nab(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      Vector rhs(n, Scalar(0));
      for (std::size_t k = 0; k < n; ++k) {
        Scalar v = inner(d.bracket_vec(basis(i), basis(j)), basis(k));
        v += inner(d.bracket_vec(basis(k), basis(i)), basis(j));
        v += inner(basis(i), d.bracket_vec(basis(k), basis(j)));
        rhs[k] = v * Scalar(1, 2);
      }
      Vector col = ginv.apply(rhs);
      for (std::size_t a = 0; a < n; ++a) nab.at(a, j) = col[a];
    }
    out.push_back(std::move(nab));
  }
  return out;
}

// R(e_i, e_j) = [nabla_i, nabla_j] - nabla_{[e_i, e_j]} for i < j.
inline std::vector<Matrix> lg_curvature(const LieGroupData& d, const std::vector<Matrix>& nabla) {
  std::size_t n = d.dim;
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Matrix r = commutator(nabla[i], nabla[j]);
      for (std::size_t k = 0; k < n; ++k) {
        const Scalar& c = d.brackets[i][j][k];
        if (!c.is_zero()) r -= c * nabla[k];
      }
      out.push_back(std::move(r));
    }
  return out;
}

// hol_e = m0 + [m1, m0] + [m1, [m1, m0]] + ... with m0 the curvature span and
// m1 the nabla span; the result is returned as a bracket-closed algebra.
inline MatrixLieAlgebra lg_holonomy(const LieGroupData& d) {
  std::size_t n = d.dim;
  std::vector<Matrix> nabla = lg_nabla(d);
  std::vector<Matrix> curv = lg_curvature(d, nabla);
  std::vector<Vector> flat;
  std::vector<Matrix> accum;
  for (const auto& m : curv)
    if (!m.is_zero()) accum.push_back(m);
  Subspace span(n * n);
  {
    std::vector<Vector> rows;
    for (const auto& m : accum) rows.push_back(m.flatten());
    span = Subspace::span(n * n, rows);
  }
  // iterate ad(m1); the dimension strictly increases each pass, bound n^2
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Matrix> fresh;
    for (const auto& nb : nabla)
      for (const auto& m : accum) {
        Matrix b = commutator(nb, m);
        if (!b.is_zero() && !span.contains(b.flatten())) {
          span = span.sum(Subspace::span(n * n, {b.flatten()}));
          fresh.push_back(b);
          grew = true;
        }
      }
    for (auto& m : fresh) accum.push_back(std::move(m));
  }
  MetricStructure amb(n, d.gram);
  return MatrixLieAlgebra(amb, accum);
}

}  // namespace holcat
