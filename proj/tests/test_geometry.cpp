#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "holcat/frames.hpp"
#include "holcat/geometry.hpp"

using namespace holcat;

namespace {

Polynomial C0(std::size_t nv, long num, long den = 1) {
  return Polynomial::constant(nv, Scalar(num, den));
}
Polynomial V(std::size_t nv, std::size_t i) { return Polynomial::variable(nv, i); }

// n=0 pseudo-Kaehler metric 2dx1dx3 + 2dx2dx4 + f1 (dx3)^2 + f2 (dx4)^2
// + 2 f3 dx3 dx4 on R^4.
PolynomialMetric pk_metric_n0(const Polynomial& f1, const Polynomial& f2, const Polynomial& f3) {
  std::size_t nv = 4;
  PolyMatrix g(4, std::vector<Polynomial>(4, Polynomial(nv)));
  g[0][2] = g[2][0] = C0(nv, 1);
  g[1][3] = g[3][1] = C0(nv, 1);
  g[2][2] = f1;
  g[3][3] = f2;
  g[2][3] = g[3][2] = f3;
  return PolynomialMetric(4, g, std::vector<Scalar>(4, Scalar(0)));
}

PolynomialMetric flat_n0() {
  std::size_t nv = 4;
  return pk_metric_n0(Polynomial(nv), Polynomial(nv), Polynomial(nv));
}

// the u(1,1)_{<p1,p2>} generators in the 4x4 frame
struct N0Gens {
  StandardFrame fr = StandardFrame::pseudo_kaehler(0);
  Matrix A1, A2, C;
  N0Gens() {
    Vector z0(0);
    Matrix B0(0, 0);
    A1 = pk_element(fr, Scalar(1), Scalar(0), B0, B0, z0, z0, Scalar(0));
    A2 = pk_element(fr, Scalar(0), Scalar(1), B0, B0, z0, z0, Scalar(0));
    C = pk_element(fr, Scalar(0), Scalar(0), B0, B0, z0, z0, Scalar(1));
  }
};

bool curvature_identities(const CurvPolyTensor& R) {
  std::size_t d = R.dim();
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t e = 0; e < d; ++e) {
          // antisymmetry is structural; first Bianchi is not
          Polynomial s = R.value(a, b, c, e) + R.value(a, c, e, b) + R.value(a, e, b, c);
          if (!s.is_zero()) return false;
          if (R.value(a, b, c, e) != -R.value(a, b, e, c)) return false;
        }
    }
  return true;
}

// all-ordered-tuples engine via the exact public covariant_derivative;
// independent of the multiset engine's internals
MatrixLieAlgebra brute_force_holonomy(const PolynomialMetric& metric, std::size_t max_order) {
  PolynomialMetric m = metric.recentered();
  std::size_t d = m.dim;
  ChristoffelField gamma = christoffel(m);
  TensorField T = curvature(gamma);
  MetricStructure eta0(d, m.value_at(m.basepoint));
  LieSpan closure(d);
  std::vector<Scalar> zero(m.variable_count(), Scalar(0));
  for (std::size_t order = 0; order <= max_order; ++order) {
    // collect endomorphisms for every value of the trailing slots
    std::map<std::vector<std::uint8_t>, Matrix> endos;
    for (const auto& [idx, poly] : T.components) {
      Scalar v = poly.evaluate(zero);
      if (v.is_zero()) continue;
      std::vector<std::uint8_t> tail(idx.begin() + 2, idx.end());
      auto it = endos.find(tail);
      if (it == endos.end()) it = endos.emplace(tail, Matrix(d, d)).first;
      it->second.at(idx[0], idx[1]) += v;
    }
    for (const auto& [tail, mtx] : endos) closure.add(mtx);
    if (order < max_order) T = covariant_derivative(T, gamma);
  }
  return MatrixLieAlgebra(eta0, closure.basis());
}

std::mt19937_64 rng(424242);

Polynomial random_quadratic(std::size_t nv, const std::vector<std::size_t>& vars,
                            int nterms = 4) {
  std::uniform_int_distribution<long> coef(-3, 3);
  std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
  Polynomial p(nv);
  for (int t = 0; t < nterms; ++t) {
    Monomial m(nv, 0);
    m[vars[pick(rng)]] += 1;
    m[vars[pick(rng)]] += 1;
    p.add_term(m, Scalar(coef(rng)));
  }
  p += Scalar(coef(rng)) * V(nv, vars[pick(rng)]);
  return p;
}

}  // namespace

TEST_CASE("flat metric: everything vanishes") {
  PolynomialMetric m = flat_n0();
  ChristoffelField gamma = christoffel(m);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t c = b; c < 4; ++c) CHECK(gamma.at(a, b, c).is_zero());
  CurvPolyTensor R = curvature_tensor_field(gamma);
  for (std::size_t p = 0; p < pair_count(4); ++p) CHECK(R.endo_at_zero(p).is_zero());
  TensorField T = curvature(gamma);
  CHECK(T.components.empty());
  TensorField dT = covariant_derivative(T, gamma);
  CHECK(dT.components.empty());

  HolonomyReport rep = holonomy(m, 4, 2);
  CHECK(rep.algebra.dim() == 0);
  CHECK(rep.stabilized);
  CHECK(rep.max_order_used == 0);
}

TEST_CASE("christoffel oracle: hol^2 row of the n=0 table") {
  std::size_t nv = 4;
  Polynomial f1 = V(nv, 0) * V(nv, 0) - V(nv, 1) * V(nv, 1);
  Polynomial f3 = C0(nv, 2) * V(nv, 0) * V(nv, 1);
  PolynomialMetric m = pk_metric_n0(f1, -f1, f3);
  ChristoffelField gamma = christoffel(m);
  // closed form: Gamma^1_{1,2n+3} = (1/2) df1/dx1
  CHECK(gamma.at(0, 0, 2) == V(nv, 0));
  CHECK(metric_compatible(m, gamma));
  CHECK(curvature_identities(curvature_tensor_field(gamma)));
}

TEST_CASE("tabhol0 rows reproduce the n=0 holonomy catalog") {
  std::size_t nv = 4;
  N0Gens gen;
  auto span_of = [&](std::initializer_list<Matrix> ms) {
    std::vector<Vector> v;
    for (const auto& m : ms) v.push_back(m.flatten());
    return Subspace::span(16, v);
  };

  // row 1: f1 = -2x2x3 - x1(x3)^2, f2 = -f1, f3 = 2x1x3 - x2(x3)^2
  {
    Polynomial f1 = C0(nv, -2) * V(nv, 1) * V(nv, 2) - V(nv, 0) * V(nv, 2) * V(nv, 2);
    Polynomial f3 = C0(nv, 2) * V(nv, 0) * V(nv, 2) - V(nv, 1) * V(nv, 2) * V(nv, 2);
    HolonomyReport rep = holonomy(pk_metric_n0(f1, -f1, f3), 6, 2);
    CHECK(rep.stabilized);
    CHECK(rep.algebra.dim() == 3);
    CHECK(rep.algebra.flat_span() == span_of({gen.A1, gen.A2, gen.C}));
  }
  // row 2: f1 = (x1)^2 - (x2)^2, f2 = -f1, f3 = 2x1x2  -> hol^2 (dim 2)
  {
    Polynomial f1 = V(nv, 0) * V(nv, 0) - V(nv, 1) * V(nv, 1);
    Polynomial f3 = C0(nv, 2) * V(nv, 0) * V(nv, 1);
    HolonomyReport rep = holonomy(pk_metric_n0(f1, -f1, f3), 6, 2);
    CHECK(rep.stabilized);
    CHECK(rep.algebra.dim() == 2);
    CHECK(rep.algebra.flat_span() == span_of({gen.A1, gen.A2}));
  }
  // row 3 with gamma1=0, gamma2=1: f1 = -2x1x3, f2 = -f1, f3 = -2x2x3
  {
    Polynomial f1 = C0(nv, -2) * V(nv, 0) * V(nv, 2);
    Polynomial f3 = C0(nv, -2) * V(nv, 1) * V(nv, 2);
    HolonomyReport rep = holonomy(pk_metric_n0(f1, -f1, f3), 6, 2);
    CHECK(rep.stabilized);
    CHECK(rep.algebra.dim() == 2);
    CHECK(rep.algebra.flat_span() == span_of({gen.A2, gen.C}));
  }
  // row 4: f1 = (x4)^2, f2 = f3 = 0 -> hol^{0,0} = R C (dim 1)
  {
    Polynomial f1 = V(nv, 3) * V(nv, 3);
    HolonomyReport rep = holonomy(pk_metric_n0(f1, Polynomial(nv), Polynomial(nv)), 6, 2);
    CHECK(rep.stabilized);
    CHECK(rep.algebra.dim() == 1);
    CHECK(rep.algebra.flat_span() == span_of({gen.C}));
  }
}

TEST_CASE("holonomy generators are eta-skew and log is consistent") {
  std::size_t nv = 4;
  Polynomial f1 = C0(nv, -2) * V(nv, 1) * V(nv, 2) - V(nv, 0) * V(nv, 2) * V(nv, 2);
  Polynomial f3 = C0(nv, 2) * V(nv, 0) * V(nv, 2) - V(nv, 1) * V(nv, 2) * V(nv, 2);
  PolynomialMetric m = pk_metric_n0(f1, -f1, f3);
  HolonomyReport rep = holonomy(m, 6, 2);
  CHECK(is_in_so(rep.algebra));
  CHECK(!rep.generator_log.empty());
  for (const auto& rec : rep.generator_log) {
    CHECK(rec.order <= rep.max_order_used);
    CHECK(rec.frame_c < rec.frame_d);
    CHECK(rep.algebra.contains(rec.matrix));
  }
}

TEST_CASE("multiset engine agrees with the all-tuples engine") {
  std::size_t nv = 4;
  for (int trial = 0; trial < 3; ++trial) {
    Polynomial f1 = random_quadratic(nv, {0, 1, 2, 3});
    Polynomial f2 = random_quadratic(nv, {0, 1, 2, 3});
    Polynomial f3 = random_quadratic(nv, {0, 1, 2, 3});
    PolynomialMetric m = pk_metric_n0(f1, f2, f3);
    MatrixLieAlgebra brute = brute_force_holonomy(m, 3);
    HolonomyReport rep = holonomy(m, 3, 4);  // window large: run all orders to 3
    CHECK(rep.algebra.flat_span() == brute.flat_span());
  }
}

TEST_CASE("exact identity suite on random constant-determinant metrics") {
  std::size_t nv = 4;
  for (int trial = 0; trial < 5; ++trial) {
    Polynomial f1 = random_quadratic(nv, {0, 1, 2, 3});
    Polynomial f2 = random_quadratic(nv, {0, 1, 2, 3});
    Polynomial f3 = random_quadratic(nv, {0, 1, 2, 3});
    PolynomialMetric m = pk_metric_n0(f1, f2, f3);
    ChristoffelField gamma = christoffel(m);
    CHECK(metric_compatible(m, gamma));
    CurvPolyTensor R = curvature_tensor_field(gamma);
    CHECK(curvature_identities(R));
    // lowered curvature at the basepoint has the pair symmetry
    std::size_t d = m.dim;
    std::vector<Matrix> vals;
    for (std::size_t p = 0; p < pair_count(d); ++p) vals.push_back(R.endo_at_zero(p));
    CurvatureTensor R0(d, vals);
    CHECK(pair_symmetry_check(R0, MetricStructure(d, m.value_at(m.basepoint))));
    CHECK(bianchi_holds(R0));
  }
}

TEST_CASE("nonzero basepoint is handled by recentering") {
  std::size_t nv = 4;
  // f1 = (x4 - 1)^2 with basepoint (0,0,0,1) looks like tabhol0 row 4 at its
  // own basepoint
  Polynomial x4m1 = V(nv, 3) - C0(nv, 1);
  PolyMatrix g(4, std::vector<Polynomial>(4, Polynomial(nv)));
  g[0][2] = g[2][0] = C0(nv, 1);
  g[1][3] = g[3][1] = C0(nv, 1);
  g[2][2] = x4m1 * x4m1;
  PolynomialMetric m(4, g, {Scalar(0), Scalar(0), Scalar(0), Scalar(1)});
  HolonomyReport rep = holonomy(m, 6, 2);
  CHECK(rep.algebra.dim() == 1);
  CHECK(rep.stabilized);
}

TEST_CASE("unsupported metric: non-constant determinant") {
  std::size_t nv = 2;
  PolyMatrix g(2, std::vector<Polynomial>(2, Polynomial(nv)));
  g[0][0] = C0(nv, 1) + V(nv, 1) * V(nv, 1);
  g[1][1] = C0(nv, 1);
  CHECK_THROWS(PolynomialMetric(2, g, {Scalar(0), Scalar(0)}));
}

TEST_CASE("lie group pipeline: g1 reproduces the printed matrices") {
  // basis p1, p2, q1, q2; nonzero brackets:
  // [p1,q1] = p1 + q2, [p1,q2] = -p2 - q1, [p2,q1] = p2 + q1, [p2,q2] = p1 + q2
  std::size_t d = 4;
  Matrix gram(4, 4);
  gram.at(0, 2) = gram.at(2, 0) = Scalar(1);
  gram.at(1, 3) = gram.at(3, 1) = Scalar(1);
  std::vector<std::vector<Vector>> br(4, std::vector<Vector>(4, Vector(4, Scalar(0))));
  auto set_br = [&](std::size_t i, std::size_t j, Vector v) {
    br[i][j] = v;
    for (auto& x : v) x = -x;
    br[j][i] = v;
  };
  set_br(0, 2, {Scalar(1), Scalar(0), Scalar(0), Scalar(1)});
  set_br(0, 3, {Scalar(0), Scalar(-1), Scalar(-1), Scalar(0)});
  set_br(1, 2, {Scalar(0), Scalar(1), Scalar(1), Scalar(0)});
  set_br(1, 3, {Scalar(1), Scalar(0), Scalar(0), Scalar(1)});
  LieGroupData g1(d, gram, br);

  auto nab = lg_nabla(g1);
  Matrix rot(4, 4), diag(4, 4);
  rot.at(0, 1) = Scalar(-1); rot.at(1, 0) = Scalar(1);
  rot.at(2, 3) = Scalar(-1); rot.at(3, 2) = Scalar(1);
  diag.at(0, 0) = diag.at(1, 1) = Scalar(-1);
  diag.at(2, 2) = diag.at(3, 3) = Scalar(1);
  CHECK(nab[0] == rot);
  CHECK(nab[3] == rot);
  CHECK(nab[1] == diag);
  CHECK(nab[2] == diag);

  auto curv = lg_curvature(g1, nab);
  // order of pairs: (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)
  Matrix r_p1q1(4, 4), r_p1q2(4, 4);
  r_p1q1.at(0, 1) = Scalar(2); r_p1q1.at(1, 0) = Scalar(-2);
  r_p1q1.at(2, 3) = Scalar(2); r_p1q1.at(3, 2) = Scalar(-2);
  // R(p1,q2) = -nabla_{[p1,q2]} = nabla_{p2} + nabla_{q1}; the Bianchi
  // identity forces this sign (see the q2^p2, p1 triple)
  r_p1q2.at(0, 0) = r_p1q2.at(1, 1) = Scalar(-2);
  r_p1q2.at(2, 2) = r_p1q2.at(3, 3) = Scalar(2);
  CHECK(curv[0].is_zero());                  // R(p1,p2)
  CHECK(curv[5].is_zero());                  // R(q1,q2)
  CHECK(curv[1] == r_p1q1);                  // R(p1,q1)
  CHECK(curv[4] == r_p1q1);                  // R(p2,q2)
  CHECK(curv[2] == r_p1q2);   // R(p1,q2)
  CHECK(curv[3] == -r_p1q2);  // stored R(p2,q1) = -R(q1,p2) = -R(p1,q2)

  MatrixLieAlgebra hol = lg_holonomy(g1);
  N0Gens gen;
  std::vector<Vector> v{gen.A1.flatten(), gen.A2.flatten()};
  CHECK(hol.flat_span() == Subspace::span(16, v));
  CHECK(is_in_so(hol));
}

TEST_CASE("lie group pipeline: g2") {
  // [p1,q2] = p1, [p2,q1] = -p1, [q1,q2] = p1 + q1
  std::size_t d = 4;
  Matrix gram(4, 4);
  gram.at(0, 2) = gram.at(2, 0) = Scalar(1);
  gram.at(1, 3) = gram.at(3, 1) = Scalar(1);
  std::vector<std::vector<Vector>> br(4, std::vector<Vector>(4, Vector(4, Scalar(0))));
  auto set_br = [&](std::size_t i, std::size_t j, Vector v) {
    br[i][j] = v;
    for (auto& x : v) x = -x;
    br[j][i] = v;
  };
  set_br(0, 3, {Scalar(1), Scalar(0), Scalar(0), Scalar(0)});
  set_br(1, 2, {Scalar(-1), Scalar(0), Scalar(0), Scalar(0)});
  set_br(2, 3, {Scalar(1), Scalar(0), Scalar(1), Scalar(0)});
  LieGroupData g2(d, gram, br);

  auto nab = lg_nabla(g2);
  Matrix n_p1(4, 4), n_q1(4, 4);
  n_p1.at(0, 3) = Scalar(1); n_p1.at(1, 2) = Scalar(-1);
  n_q1.at(0, 1) = Scalar(1); n_q1.at(0, 3) = Scalar(1);
  n_q1.at(1, 0) = Scalar(-1); n_q1.at(1, 2) = Scalar(-1);
  n_q1.at(2, 3) = Scalar(1); n_q1.at(3, 2) = Scalar(-1);
  CHECK(nab[0] == n_p1);
  CHECK(nab[2] == n_q1);
  CHECK(nab[1].is_zero());
  CHECK(nab[3].is_zero());

  auto curv = lg_curvature(g2, nab);
  CHECK(curv[0].is_zero());  // R(p1,p2)
  CHECK(curv[1].is_zero());  // R(p1,q1)
  CHECK(curv[4].is_zero());  // R(p2,q2)
  Matrix r_p1q2(4, 4), r_q1q2(4, 4);
  r_p1q2.at(0, 3) = Scalar(-1); r_p1q2.at(1, 2) = Scalar(1);
  r_q1q2.at(0, 1) = Scalar(-1); r_q1q2.at(0, 3) = Scalar(-2);
  r_q1q2.at(1, 0) = Scalar(1); r_q1q2.at(1, 2) = Scalar(2);
  r_q1q2.at(2, 3) = Scalar(-1); r_q1q2.at(3, 2) = Scalar(1);
  CHECK(curv[2] == r_p1q2);   // R(p1,q2)
  CHECK(curv[3] == -r_p1q2);  // R(p2,q1)
  CHECK(curv[5] == r_q1q2);   // R(q1,q2)

  MatrixLieAlgebra hol = lg_holonomy(g2);
  N0Gens gen;
  CHECK(hol.dim() == 2);
  CHECK(hol.flat_span() == Subspace::span(16, {gen.A2.flatten(), gen.C.flatten()}));
}

TEST_CASE("lie group pipeline: abelian is flat") {
  Matrix gram = Matrix::identity(3);
  std::vector<std::vector<Vector>> br(3, std::vector<Vector>(3, Vector(3, Scalar(0))));
  LieGroupData ab(3, gram, br);
  auto nab = lg_nabla(ab);
  for (const auto& m : nab) CHECK(m.is_zero());
  for (const auto& m : lg_curvature(ab, nab)) CHECK(m.is_zero());
  CHECK(lg_holonomy(ab).dim() == 0);
}

TEST_CASE("lie group data validation") {
  Matrix gram = Matrix::identity(2);
  std::vector<std::vector<Vector>> br(2, std::vector<Vector>(2, Vector(2, Scalar(0))));
  br[0][1] = {Scalar(1), Scalar(0)};  // antisymmetry violated: br[1][0] = 0
  CHECK_THROWS(LieGroupData(2, gram, br));
}
