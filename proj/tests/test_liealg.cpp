#include <catch2/catch_amalgamated.hpp>

#include "holcat/frames.hpp"
#include "holcat/liealg.hpp"

using namespace holcat;

namespace {

MetricStructure euclidean(std::size_t d) { return MetricStructure(d, Matrix::identity(d)); }

// Image of so(3) in so(5) spanned by the three matrices with sqrt(3) entries.
std::vector<Matrix> ikemakhen_so3() {
  Scalar r3 = Scalar::sqrt3();
  Matrix A1(5, 5), A2(5, 5), A3(5, 5);
  A1.at(0, 2) = Scalar(-1); A1.at(1, 2) = r3; A1.at(2, 0) = Scalar(1);
  A1.at(2, 1) = -r3; A1.at(3, 4) = Scalar(-1); A1.at(4, 3) = Scalar(1);
  A2.at(0, 3) = Scalar(-4); A2.at(2, 4) = Scalar(-2); A2.at(3, 0) = Scalar(4);
  A2.at(4, 2) = Scalar(2);
  A3.at(0, 4) = Scalar(-1); A3.at(1, 4) = -r3; A3.at(2, 3) = Scalar(-1);
  A3.at(3, 2) = Scalar(1); A3.at(4, 0) = Scalar(1); A3.at(4, 1) = r3;
  return {A1, A2, A3};
}

}  // namespace

TEST_CASE("bracket basics") {
  Matrix a(3, 3);
  a.at(0, 1) = Scalar(2);
  a.at(2, 0) = Scalar(-1);
  CHECK(bracket(a, a).is_zero());
  CHECK_THROWS(bracket(a, Matrix(2, 2)));
}

TEST_CASE("ikemakhen so(3) image") {
  auto as = ikemakhen_so3();
  std::vector<Vector> flat;
  for (const auto& m : as) flat.push_back(m.flatten());
  CHECK(Subspace::span(25, flat).dim() == 3);

  MatrixLieAlgebra alg(euclidean(5), as);  // throws if not bracket-closed
  CHECK(alg.dim() == 3);
  CHECK(alg.contains(bracket(as[0], as[1])));
  CHECK(is_in_so(alg));

  MatrixLieAlgebra cl = lie_closure(as, euclidean(5));
  CHECK(cl.dim() == 3);
  CHECK(cl.same_span(alg));
}

TEST_CASE("lie_closure basics") {
  MetricStructure amb = euclidean(3);
  CHECK(lie_closure({}, amb).dim() == 0);
  Matrix e12(3, 3);
  e12.at(0, 1) = Scalar(1);
  CHECK(lie_closure({e12}, amb).dim() == 1);
  // closure contains its seed and re-closure is idempotent
  Matrix e21(3, 3);
  e21.at(1, 0) = Scalar(1);
  MatrixLieAlgebra sl2 = lie_closure({e12, e21}, amb);
  CHECK(sl2.dim() == 3);
  CHECK(sl2.contains(e12));
  CHECK(lie_closure(sl2.basis(), amb).same_span(sl2));
}

TEST_CASE("is_in_so and commutes_with_J") {
  StandardFrame fr = StandardFrame::pseudo_kaehler(0);
  Vector z0(0);
  Matrix A1 = pk_element(fr, Scalar(1), Scalar(0), Matrix(0, 0), Matrix(0, 0), z0, z0, Scalar(0));
  Matrix A2 = pk_element(fr, Scalar(0), Scalar(1), Matrix(0, 0), Matrix(0, 0), z0, z0, Scalar(0));
  Matrix C = pk_element(fr, Scalar(0), Scalar(0), Matrix(0, 0), Matrix(0, 0), z0, z0, Scalar(1));
  MatrixLieAlgebra u11(fr.metric, {A1, A2, C});
  CHECK(u11.dim() == 3);
  CHECK(is_in_so(u11));
  CHECK(commutes_with_J(u11));

  CHECK(is_in_so(MatrixLieAlgebra(fr.metric, {})));
  CHECK_FALSE(is_in_so(MatrixLieAlgebra(fr.metric, {Matrix::identity(4)})));

  // J itself commutes with J
  MatrixLieAlgebra jalg(fr.metric, {*fr.metric.J});
  CHECK(commutes_with_J(jalg));

  // an eta-skew element outside u(1,2) fails to commute with J
  StandardFrame fr1 = StandardFrame::pseudo_kaehler(1);
  Matrix w = wedge_matrix(fr1.metric, fr1.basis_vector(fr1.e(1)), fr1.basis_vector(fr1.q1()));
  CHECK(eta_skew(fr1.metric.eta, w));
  MatrixLieAlgebra walg(fr1.metric, {w});
  CHECK(is_in_so(walg));
  CHECK_FALSE(commutes_with_J(walg));
}

TEST_CASE("commutant") {
  MetricStructure amb = euclidean(3);
  CHECK(commutant(MatrixLieAlgebra(amb, {})).dim() == 9);
  std::vector<Matrix> so3 = {so_generator(3, 1, 2), so_generator(3, 1, 3), so_generator(3, 2, 3)};
  Subspace c = commutant(MatrixLieAlgebra(amb, so3));
  CHECK(c.dim() == 1);
  CHECK(c.contains(Matrix::identity(3).flatten()));
}

TEST_CASE("commutant of hol2 contains the isotropic-plane projections") {
  StandardFrame fr = StandardFrame::pseudo_kaehler(0);
  Vector z0(0);
  Matrix A1 = pk_element(fr, Scalar(1), Scalar(0), Matrix(0, 0), Matrix(0, 0), z0, z0, Scalar(0));
  Matrix A2 = pk_element(fr, Scalar(0), Scalar(1), Matrix(0, 0), Matrix(0, 0), z0, z0, Scalar(0));
  MatrixLieAlgebra hol2(fr.metric, {A1, A2});
  Subspace c = commutant(hol2);
  Matrix proj_p(4, 4), proj_q(4, 4);
  proj_p.at(0, 0) = proj_p.at(1, 1) = Scalar(1);
  proj_q.at(2, 2) = proj_q.at(3, 3) = Scalar(1);
  CHECK(c.contains(proj_p.flatten()));
  CHECK(c.contains(proj_q.flatten()));
}

TEST_CASE("check_invariant_subspace") {
  StandardFrame fr = StandardFrame::pseudo_kaehler(1);
  Vector z1{Scalar(1)}, z0{Scalar(0)};
  Matrix B(1, 1), C(1, 1);
  // N^1 + N^2 + C inside u(1,2)_{<p1,p2>}
  Matrix N1 = pk_element(fr, Scalar(0), Scalar(0), B, C, z1, z0, Scalar(0));
  Matrix N2 = pk_element(fr, Scalar(0), Scalar(0), B, C, z0, z1, Scalar(0));
  Matrix Cm = pk_element(fr, Scalar(0), Scalar(0), B, C, z0, z0, Scalar(1));
  MatrixLieAlgebra alg(fr.metric, {N1, N2, Cm});

  Subspace pp = Subspace::span(6, {fr.basis_vector(fr.p1()), fr.basis_vector(fr.p2())});
  CHECK(check_invariant_subspace(alg, pp) == SubspaceVerdict::InvariantIsotropic);
  CHECK(check_invariant_subspace(alg, Subspace::full(6)) == SubspaceVerdict::InvariantNonDegenerate);
  Subspace not_inv = Subspace::span(6, {fr.basis_vector(fr.q1())});
  CHECK(check_invariant_subspace(alg, not_inv) == SubspaceVerdict::NotInvariant);

  // A^1 in su(1,1): p1,q1 plane is invariant and non-degenerate
  StandardFrame fr0 = StandardFrame::pseudo_kaehler(0);
  Vector ze(0);
  Matrix A1 = pk_element(fr0, Scalar(1), Scalar(0), Matrix(0, 0), Matrix(0, 0), ze, ze, Scalar(0));
  MatrixLieAlgebra a1(fr0.metric, {A1});
  Subspace p1q1 = Subspace::span(4, {fr0.basis_vector(0), fr0.basis_vector(2)});
  CHECK(check_invariant_subspace(a1, p1q1) == SubspaceVerdict::InvariantNonDegenerate);
}

TEST_CASE("weak irreducibility: A^1 in su(1,1) is reducible") {
  StandardFrame fr = StandardFrame::pseudo_kaehler(0);
  Vector ze(0);
  Matrix A1 = pk_element(fr, Scalar(1), Scalar(0), Matrix(0, 0), Matrix(0, 0), ze, ze, Scalar(0));
  MatrixLieAlgebra alg(fr.metric, {A1});
  WeakIrrVerdict v = weak_irreducibility(alg);
  REQUIRE(v.kind == WeakIrrKind::ReducibleWitness);
  REQUIRE(v.witness.has_value());
  Subspace p1q1 = Subspace::span(4, {fr.basis_vector(0), fr.basis_vector(2)});
  Subspace p2q2 = Subspace::span(4, {fr.basis_vector(1), fr.basis_vector(3)});
  CHECK((*v.witness == p1q1 || *v.witness == p2q2));
  CHECK(check_invariant_subspace(alg, *v.witness) == SubspaceVerdict::InvariantNonDegenerate);
}

TEST_CASE("weak irreducibility: N^1+C is weakly irreducible (exWI1)") {
  StandardFrame fr = StandardFrame::pseudo_kaehler(1);
  Vector z1{Scalar(1)}, z0{Scalar(0)};
  Matrix B(1, 1), C(1, 1);
  Matrix N1 = pk_element(fr, Scalar(0), Scalar(0), B, C, z1, z0, Scalar(0));
  Matrix Cm = pk_element(fr, Scalar(0), Scalar(0), B, C, z0, z0, Scalar(1));
  MatrixLieAlgebra alg(fr.metric, {N1, Cm});
  WeakIrrVerdict v = weak_irreducibility(alg);
  CHECK(v.kind == WeakIrrKind::WeaklyIrreducible);
}

TEST_CASE("weak irreducibility: N^1 alone is reducible with the +/- witness") {
  StandardFrame fr = StandardFrame::pseudo_kaehler(1);
  Vector z1{Scalar(1)}, z0{Scalar(0)};
  Matrix B(1, 1), C(1, 1);
  Matrix N1 = pk_element(fr, Scalar(0), Scalar(0), B, C, z1, z0, Scalar(0));
  MatrixLieAlgebra alg(fr.metric, {N1});
  WeakIrrVerdict v = weak_irreducibility(alg);
  REQUIRE(v.kind == WeakIrrKind::ReducibleWitness);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->dim() > 0);
  CHECK(v.witness->dim() < 6);
  CHECK(check_invariant_subspace(alg, *v.witness) == SubspaceVerdict::InvariantNonDegenerate);
  // the diagonal witness span{p1+p2, e1+f1, q1+q2} is invariant non-degenerate
  auto mk = [&](int sgn) {
    Vector a(6, Scalar(0)), b(6, Scalar(0)), c(6, Scalar(0));
    a[fr.p1()] = Scalar(1); a[fr.p2()] = Scalar(sgn);
    b[fr.e(1)] = Scalar(1); b[fr.f(1)] = Scalar(sgn);
    c[fr.q1()] = Scalar(1); c[fr.q2()] = Scalar(sgn);
    return Subspace::span(6, {a, b, c});
  };
  CHECK(check_invariant_subspace(alg, mk(1)) == SubspaceVerdict::InvariantNonDegenerate);
  CHECK(check_invariant_subspace(alg, mk(-1)) == SubspaceVerdict::InvariantNonDegenerate);
}

TEST_CASE("weak irreducibility: N^1 + RJ never claims a witness (exWI2)") {
  StandardFrame fr = StandardFrame::pseudo_kaehler(1);
  Vector z1{Scalar(1)}, z0{Scalar(0)};
  Matrix B(1, 1), C(1, 1);
  Matrix N1 = pk_element(fr, Scalar(0), Scalar(0), B, C, z1, z0, Scalar(0));
  MatrixLieAlgebra alg(fr.metric, {N1, *fr.metric.J});
  WeakIrrVerdict v = weak_irreducibility(alg);
  CHECK(v.kind != WeakIrrKind::ReducibleWitness);
}

TEST_CASE("commutant elements commute post hoc") {
  StandardFrame fr = StandardFrame::pseudo_kaehler(1);
  Vector z1{Scalar(1)}, z0{Scalar(0)};
  Matrix B(1, 1), C(1, 1);
  Matrix N1 = pk_element(fr, Scalar(0), Scalar(0), B, C, z1, z0, Scalar(0));
  Matrix Cm = pk_element(fr, Scalar(0), Scalar(0), B, C, z0, z0, Scalar(1));
  MatrixLieAlgebra alg(fr.metric, {N1, Cm});
  Subspace c = commutant(alg);
  for (const auto& row : c.basis()) {
    Matrix x = Matrix::unflatten(6, 6, row);
    for (const auto& b : alg.basis()) CHECK(bracket(x, b).is_zero());
  }
}
