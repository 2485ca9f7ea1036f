#pragma once

// Constructors for the named algebra families, the explicit metric recipes,
// the symmetric-pair tensors, and basis-exact identification.
//
// Families are built in the standard isotropic frames of frames.hpp. The
// pseudo-Kaehler families are parametrized by (n, m, u, maps); the unitary
// part u is given by block pairs (B, C) acting on E_{1..m} and must be
// adapted: its common kernel inside E_{1..m} has to be a coordinate subspace
// spanned by the trailing e_i, f_i. Identification is subspace equality in
// the standard frame; no conjugacy testing is attempted.

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "holcat/curvature.hpp"
#include "holcat/frames.hpp"
#include "holcat/geometry.hpp"
#include "holcat/liealg.hpp"

namespace holcat {

enum class FamilyId {
  Lorentz1,
  Lorentz2,
  Lorentz3,
  Lorentz4,
  SuA1,
  SuVarphi,
  SuPsiNKL,
  SuPsiMKLR,
  SuPsiK,
  SuZeta,
  SuPsiKZeta,
  HolA1A2t,
  HolA1Phi,
  HolVarphiPhi,
  HolVarphiA2t,
  HolLambda,
  HolPsiNKL,
  HolPsiMKLR,
  N0Hol1,
  N0Hol2,
  N0Gamma,
};

inline const std::vector<std::pair<FamilyId, const char*>>& family_names() {
  static const std::vector<std::pair<FamilyId, const char*>> names = {
      {FamilyId::Lorentz1, "lorentz1"},
      {FamilyId::Lorentz2, "lorentz2"},
      {FamilyId::Lorentz3, "lorentz3"},
      {FamilyId::Lorentz4, "lorentz4"},
      {FamilyId::SuA1, "su-m-h-a1"},
      {FamilyId::SuVarphi, "su-m-h-varphi"},
      {FamilyId::SuPsiNKL, "su-n-h-psi-k-l"},
      {FamilyId::SuPsiMKLR, "su-m-h-psi-k-l-r"},
      {FamilyId::SuPsiK, "su-0-h-psi-k"},
      {FamilyId::SuZeta, "su-0-h-zeta"},
      {FamilyId::SuPsiKZeta, "su-0-h-psi-k-zeta"},
      {FamilyId::HolA1A2t, "hol-m-u-a1-a2t"},
      {FamilyId::HolA1Phi, "hol-m-u-a1-phi"},
      {FamilyId::HolVarphiPhi, "hol-m-u-varphi-phi"},
      {FamilyId::HolVarphiA2t, "hol-m-u-varphi-a2t"},
      {FamilyId::HolLambda, "hol-m-u-lambda"},
      {FamilyId::HolPsiNKL, "hol-n-u-psi-k-l"},
      {FamilyId::HolPsiMKLR, "hol-m-u-psi-k-l-r"},
      {FamilyId::N0Hol1, "n0-hol1"},
      {FamilyId::N0Hol2, "n0-hol2"},
      {FamilyId::N0Gamma, "n0-gamma"},
  };
  return names;
}

inline std::string family_name(FamilyId id) {
  for (const auto& [fid, name] : family_names())
    if (fid == id) return name;
  return "?";
}
inline std::optional<FamilyId> family_from_name(const std::string& s) {
  for (const auto& [fid, name] : family_names())
    if (s == name) return fid;
  return std::nullopt;
}

struct FamilySpec {
  FamilyId id = FamilyId::N0Hol1;
  std::size_t n = 0, m = 0, k = 0, l = 0, r = 0;
  Scalar lambda{0};
  Scalar gamma1{0}, gamma2{0};
  // unitary part u (pseudo-Kaehler families): pairs (B, C), m x m blocks.
  // For Lorentz and the diagonal su families the orthogonal part h is u_B
  // alone (so(n) or so(k) matrices).
  std::vector<Matrix> u_B, u_C;
  // linear maps given by values on the u-basis (must vanish on u')
  std::vector<Scalar> varphi, phi, zeta;
  std::vector<Vector> psi1, psi2, psi3, psi4;  // values per basis element
  std::vector<Vector> psi_lorentz;             // Lorentz type 4: values in R^{n-m}
};

namespace detail {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument("family constraint violated: " + msg);
}

inline Vector unit(std::size_t n, std::size_t i) {
  Vector v(n, Scalar(0));
  v[i] = Scalar(1);
  return v;
}

// (B, C) as the 2m x 2m matrix [[B, -C], [C, B]] acting on E^1 + E^2.
inline Matrix unitary_block(const Matrix& B, const Matrix& C) {
  std::size_t m = B.rows();
  Matrix u(2 * m, 2 * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      u.at(i, j) = B.at(i, j);
      u.at(i, m + j) = -C.at(i, j);
      u.at(m + i, j) = C.at(i, j);
      u.at(m + i, m + j) = B.at(i, j);
    }
  return u;
}

// Coordinates of the derived algebra u' inside the span of the given basis
// (throws if the basis is not linearly independent or brackets leave it).
struct UnitaryPartSplit {
  std::vector<std::size_t> derived_first_order;  // permutation: u' block then center
  std::size_t n1 = 0;                            // dim u'
  // change of basis: new basis element t = sum coeff[t][alpha] * old alpha
  std::vector<Vector> coeff;
};

inline UnitaryPartSplit split_unitary_part(const std::vector<Matrix>& blocks) {
  std::size_t N = blocks.size();
  UnitaryPartSplit out;
  if (N == 0) return out;
  std::size_t m2 = blocks[0].rows();
  std::vector<Vector> flat;
  for (const auto& b : blocks) flat.push_back(b.flatten());
  Subspace span = Subspace::span(m2 * m2, flat);
  require(span.dim() == N, "u-basis must be linearly independent");
  // derived algebra
  std::vector<Vector> der;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) {
      Matrix br = bracket(blocks[i], blocks[j]);
      require(span.contains(br.flatten()), "u must be closed under bracket");
      der.push_back(br.flatten());
    }
  Subspace derived = Subspace::span(m2 * m2, der);
  out.n1 = derived.dim();
  // center: elements commuting with every basis element, inside u
  Matrix sys(N * m2 * m2, N);
  for (std::size_t t = 0; t < N; ++t) {
    std::size_t row = 0;
    for (std::size_t i = 0; i < N; ++i) {
      Matrix br = bracket(blocks[t], blocks[i]);
      Vector f = br.flatten();
      for (std::size_t e = 0; e < m2 * m2; ++e, ++row) sys.at(row, t) = f[e];
    }
  }
  Subspace central = nullspace(sys);
  require(out.n1 + central.dim() == N, "u must split as u' + center");
  // coefficients of a u'-basis in terms of the original basis
  Matrix basis_mat(m2 * m2, N);
  for (std::size_t t = 0; t < N; ++t)
    for (std::size_t e = 0; e < m2 * m2; ++e) basis_mat.at(e, t) = flat[t][e];
  for (const auto& v : derived.basis()) {
    auto sol = solve(basis_mat, v);
    out.coeff.push_back(*sol);
  }
  for (const auto& cv : central.basis()) out.coeff.push_back(cv);
  return out;
}

// Largest n0 such that the common kernel of the blocks is exactly the
// trailing coordinate subspace span{e_{n0+1}..e_m, f_{n0+1}..f_m}.
inline std::size_t adapted_n0(const std::vector<Matrix>& blocks, std::size_t m) {
  if (blocks.empty() || m == 0) return 0;
  Matrix stack(blocks.size() * 2 * m, 2 * m);
  for (std::size_t t = 0; t < blocks.size(); ++t)
    for (std::size_t i = 0; i < 2 * m; ++i)
      for (std::size_t j = 0; j < 2 * m; ++j) stack.at(t * 2 * m + i, j) = blocks[t].at(i, j);
  Subspace ker = nullspace(stack);
  require(ker.dim() % 2 == 0, "u kernel must be J-invariant");
  std::size_t n0 = m - ker.dim() / 2;
  std::vector<Vector> expect;
  for (std::size_t i = n0; i < m; ++i) {
    expect.push_back(unit(2 * m, i));
    expect.push_back(unit(2 * m, m + i));
  }
  require(ker == Subspace::span(2 * m, expect),
          "u-basis must be adapted: kernel spans the trailing e_i, f_i");
  return n0;
}

}  // namespace detail

// ---- algebra builders -----------------------------------------------------

struct BuiltAlgebra {
  StandardFrame frame;
  MatrixLieAlgebra algebra;
};

inline BuiltAlgebra build_algebra(const FamilySpec& spec) {
  using detail::require;
  using detail::unit;
  std::size_t n = spec.n;

  auto embed = [&](const Matrix& small, std::size_t msize) {
    // msize x msize block placed into the n x n leading block
    Matrix out(n, n);
    for (std::size_t i = 0; i < msize; ++i)
      for (std::size_t j = 0; j < msize; ++j) out.at(i, j) = small.at(i, j);
    return out;
  };

  switch (spec.id) {
    case FamilyId::N0Hol1:
    case FamilyId::N0Hol2:
    case FamilyId::N0Gamma: {
      StandardFrame fr = StandardFrame::pseudo_kaehler(0);
      Vector z0(0);
      Matrix B0(0, 0);
      Matrix A1 = pk_element(fr, Scalar(1), Scalar(0), B0, B0, z0, z0, Scalar(0));
      Matrix A2 = pk_element(fr, Scalar(0), Scalar(1), B0, B0, z0, z0, Scalar(0));
      Matrix C = pk_element(fr, Scalar(0), Scalar(0), B0, B0, z0, z0, Scalar(1));
      std::vector<Matrix> gens;
      if (spec.id == FamilyId::N0Hol1) gens = {A1, A2, C};
      if (spec.id == FamilyId::N0Hol2) gens = {A1, A2};
      if (spec.id == FamilyId::N0Gamma) gens = {spec.gamma1 * A1 + spec.gamma2 * A2, C};
      return {fr, MatrixLieAlgebra(fr.metric, gens)};
    }
    case FamilyId::Lorentz1:
    case FamilyId::Lorentz2:
    case FamilyId::Lorentz3:
    case FamilyId::Lorentz4: {
      StandardFrame fr = StandardFrame::lorentz(n);
      std::size_t N = spec.u_B.size();
      Matrix A0(n, n);
      std::vector<Matrix> gens;
      auto lelem = [&](const Scalar& a, const Matrix& A, const Vector& X) {
        return lorentz_element(fr, a, A, X);
      };
      if (spec.id == FamilyId::Lorentz1) {
        gens.push_back(lelem(Scalar(1), A0, Vector(n, Scalar(0))));
        for (const auto& A : spec.u_B) gens.push_back(lelem(Scalar(0), A, Vector(n, Scalar(0))));
        for (std::size_t i = 0; i < n; ++i) gens.push_back(lelem(Scalar(0), A0, unit(n, i)));
      } else if (spec.id == FamilyId::Lorentz2) {
        for (const auto& A : spec.u_B) gens.push_back(lelem(Scalar(0), A, Vector(n, Scalar(0))));
        for (std::size_t i = 0; i < n; ++i) gens.push_back(lelem(Scalar(0), A0, unit(n, i)));
      } else if (spec.id == FamilyId::Lorentz3) {
        require(spec.varphi.size() == N, "lorentz3: varphi values per h-basis element");
        auto split = detail::split_unitary_part(spec.u_B);
        for (std::size_t t = 0; t < split.n1; ++t) {
          Scalar v(0);
          for (std::size_t a = 0; a < N; ++a) v += split.coeff[t][a] * spec.varphi[a];
          require(v.is_zero(), "lorentz3: varphi must vanish on h'");
        }
        bool nonzero = false;
        for (const auto& v : spec.varphi) nonzero = nonzero || !v.is_zero();
        require(nonzero, "lorentz3: varphi must be nonzero");
        for (std::size_t a = 0; a < N; ++a)
          gens.push_back(lelem(spec.varphi[a], spec.u_B[a], Vector(n, Scalar(0))));
        for (std::size_t i = 0; i < n; ++i) gens.push_back(lelem(Scalar(0), A0, unit(n, i)));
      } else {  // Lorentz4
        std::size_t m = spec.m;
        require(0 < m && m < n, "lorentz4: need 0 < m < n");
        require(spec.psi_lorentz.size() == N, "lorentz4: psi values per h-basis element");
        auto split = detail::split_unitary_part(spec.u_B);
        require(N - split.n1 >= n - m, "lorentz4: need dim z(h) >= n - m");
        std::vector<Vector> psis;
        for (std::size_t a = 0; a < N; ++a) {
          require(spec.psi_lorentz[a].size() == n - m, "lorentz4: psi value length n - m");
          psis.push_back(spec.psi_lorentz[a]);
        }
        require(Subspace::span(n - m, psis).dim() == n - m, "lorentz4: psi must be surjective");
        for (std::size_t t = 0; t < split.n1; ++t) {
          Vector v(n - m, Scalar(0));
          for (std::size_t a = 0; a < N; ++a)
            for (std::size_t c = 0; c < n - m; ++c)
              v[c] += split.coeff[t][a] * spec.psi_lorentz[a][c];
          for (const auto& x : v) require(x.is_zero(), "lorentz4: psi must vanish on h'");
        }
        for (std::size_t a = 0; a < N; ++a) {
          Vector X(n, Scalar(0));
          for (std::size_t c = 0; c < n - m; ++c) X[m + c] = spec.psi_lorentz[a][c];
          gens.push_back(lelem(Scalar(0), spec.u_B[a], X));
        }
        for (std::size_t i = 0; i < m; ++i) gens.push_back(lelem(Scalar(0), A0, unit(n, i)));
      }
      return {fr, MatrixLieAlgebra(fr.metric, gens)};
    }
    default:
      break;
  }

  // pseudo-Kaehler families with n >= 1
  require(n >= 1, "pseudo-Kaehler family: need n >= 1");
  StandardFrame fr = StandardFrame::pseudo_kaehler(n);
  std::size_t N = spec.u_B.size();
  require(spec.u_C.size() == N, "u-basis: B and C lists must have equal length");
  std::size_t m = spec.m;

  auto pk = [&](const Scalar& a1, const Scalar& a2, const Matrix& B, const Matrix& C,
                const Vector& z1, const Vector& z2, const Scalar& c) {
    return pk_element(fr, a1, a2, B, C, z1, z2, c);
  };
  Matrix Bn(n, n), Cn(n, n);
  Vector zn(n, Scalar(0));

  // generic pieces
  auto n1_gen = [&](std::size_t i) {  // e_i translation, 1-based
    return pk(Scalar(0), Scalar(0), Bn, Cn, unit(n, i - 1), zn, Scalar(0));
  };
  auto n2_gen = [&](std::size_t i) {
    return pk(Scalar(0), Scalar(0), Bn, Cn, zn, unit(n, i - 1), Scalar(0));
  };
  Matrix Cgen = pk(Scalar(0), Scalar(0), Bn, Cn, zn, zn, Scalar(1));
  Matrix A1gen = pk(Scalar(1), Scalar(0), Bn, Cn, zn, zn, Scalar(0));
  Matrix A2gen = pk(Scalar(0), Scalar(1), Bn, Cn, zn, zn, Scalar(0));

  std::vector<Matrix> gens;

  auto u_embedded = [&](std::size_t a, std::size_t block) {
    // u-basis element as an ambient matrix, blocks are `block` x `block`
    require(spec.u_B[a].rows() == block && spec.u_C[a].rows() == block,
            "u-basis block size mismatch");
    return pk(Scalar(0), Scalar(0), embed(spec.u_B[a], block), embed(spec.u_C[a], block), zn, zn,
              Scalar(0));
  };

  auto check_vanishes_on_derived = [&](const std::vector<Scalar>& vals, const char* what) {
    if (N == 0) return;
    std::vector<Matrix> blocks;
    for (std::size_t a = 0; a < N; ++a)
      blocks.push_back(detail::unitary_block(spec.u_B[a], spec.u_C[a]));
    auto split = detail::split_unitary_part(blocks);
    for (std::size_t t = 0; t < split.n1; ++t) {
      Scalar v(0);
      for (std::size_t a = 0; a < N; ++a) v += split.coeff[t][a] * vals[a];
      require(v.is_zero(), std::string(what) + " must vanish on u'");
    }
  };
  auto center_dim = [&]() -> std::size_t {
    if (N == 0) return 0;
    std::vector<Matrix> blocks;
    for (std::size_t a = 0; a < N; ++a)
      blocks.push_back(detail::unitary_block(spec.u_B[a], spec.u_C[a]));
    auto split = detail::split_unitary_part(blocks);
    return N - split.n1;
  };

  switch (spec.id) {
    case FamilyId::HolA1A2t:
    case FamilyId::HolA1Phi:
    case FamilyId::HolVarphiPhi:
    case FamilyId::HolVarphiA2t:
    case FamilyId::HolLambda: {
      require(m <= n, "hol family: need m <= n");
      Matrix Jout = J_range(fr, m + 1, n);
      bool has_a1 = spec.id == FamilyId::HolA1A2t || spec.id == FamilyId::HolA1Phi;
      bool has_a2t = spec.id == FamilyId::HolA1A2t || spec.id == FamilyId::HolVarphiA2t;
      if (spec.id == FamilyId::HolLambda) {
        require(!spec.lambda.is_zero(), "hol-m-u-lambda: lambda must be nonzero");
        gens.push_back(A1gen + spec.lambda * (A2gen + Jout));
      }
      if (has_a1) gens.push_back(A1gen);
      if (has_a2t) gens.push_back(A2gen + Jout);
      bool uses_varphi = spec.id == FamilyId::HolVarphiPhi || spec.id == FamilyId::HolVarphiA2t;
      bool uses_phi = spec.id == FamilyId::HolA1Phi || spec.id == FamilyId::HolVarphiPhi;
      if (uses_varphi) {
        require(spec.varphi.size() == N, "varphi values per u-basis element");
        check_vanishes_on_derived(spec.varphi, "varphi");
      }
      if (uses_phi) {
        require(spec.phi.size() == N, "phi values per u-basis element");
        check_vanishes_on_derived(spec.phi, "phi");
      }
      for (std::size_t a = 0; a < N; ++a) {
        Matrix g = u_embedded(a, m);
        if (uses_varphi) g += spec.varphi[a] * A1gen;
        if (uses_phi) g += spec.phi[a] * (A2gen + Jout);
        gens.push_back(g);
      }
      for (std::size_t i = 1; i <= n; ++i) gens.push_back(n1_gen(i));
      for (std::size_t i = 1; i <= m; ++i) gens.push_back(n2_gen(i));
      gens.push_back(Cgen);
      return {fr, MatrixLieAlgebra(fr.metric, gens)};
    }
    case FamilyId::HolPsiNKL:
    case FamilyId::SuPsiNKL: {
      std::size_t k = spec.k, l = spec.l;
      require(0 < k, "hol-n-u-psi-k-l: need 0 < k");
      require(k <= l, "hol-n-u-psi-k-l: need k <= l");
      require(l <= n, "hol-n-u-psi-k-l: need l <= n");
      require(spec.psi1.size() == N && spec.psi2.size() == N && spec.psi3.size() == N,
              "psi values per u-basis element");
      require(center_dim() + 2 * k >= n + l, "hol-n-u-psi-k-l: need dim z(u) >= n + l - 2k");
      // surjectivity of psi onto E^1_{k+1..l} + E^2_{k+1..l} + E^2_{l+1..n}
      std::size_t target = (l - k) + (l - k) + (n - l);
      std::vector<Vector> rows;
      for (std::size_t a = 0; a < N; ++a) {
        require(spec.psi1[a].size() == l - k && spec.psi2[a].size() == l - k &&
                    spec.psi3[a].size() == n - l,
                "psi component lengths");
        Vector row;
        for (const auto& x : spec.psi1[a]) row.push_back(x);
        for (const auto& x : spec.psi2[a]) row.push_back(x);
        for (const auto& x : spec.psi3[a]) row.push_back(x);
        rows.push_back(row);
      }
      if (target > 0)
        require(Subspace::span(target, rows).dim() == target, "psi must be surjective");
      {
        // psi|_{u'} = 0 checked componentwise
        if (N > 0) {
          std::vector<Matrix> blocks;
          for (std::size_t a = 0; a < N; ++a)
            blocks.push_back(detail::unitary_block(spec.u_B[a], spec.u_C[a]));
          auto split = detail::split_unitary_part(blocks);
          for (std::size_t t = 0; t < split.n1; ++t) {
            Vector acc(target, Scalar(0));
            for (std::size_t a = 0; a < N; ++a)
              for (std::size_t c = 0; c < target; ++c) acc[c] += split.coeff[t][a] * rows[a][c];
            for (const auto& x : acc) require(x.is_zero(), "psi must vanish on u'");
          }
        }
      }
      bool su = spec.id == FamilyId::SuPsiNKL;
      for (std::size_t a = 0; a < N; ++a) {
        Vector z1(n, Scalar(0)), z2(n, Scalar(0));
        for (std::size_t c = 0; c < l - k; ++c) {
          z1[k + c] = spec.psi1[a][c];
          z2[k + c] = spec.psi2[a][c];
        }
        for (std::size_t c = 0; c < n - l; ++c) z2[l + c] = spec.psi3[a][c];
        Scalar a2 = su ? Scalar(-1, 2) * embed(spec.u_C[a], k).trace() : Scalar(0);
        gens.push_back(pk(Scalar(0), a2, embed(spec.u_B[a], k), embed(spec.u_C[a], k), z1, z2,
                          Scalar(0)));
      }
      for (std::size_t i = 1; i <= k; ++i) {
        gens.push_back(n1_gen(i));
        gens.push_back(n2_gen(i));
      }
      for (std::size_t i = l + 1; i <= n; ++i) gens.push_back(n1_gen(i));
      gens.push_back(Cgen);
      return {fr, MatrixLieAlgebra(fr.metric, gens)};
    }
    case FamilyId::HolPsiMKLR:
    case FamilyId::SuPsiMKLR: {
      std::size_t k = spec.k, l = spec.l, r = spec.r;
      require(0 < k, "hol-m-u-psi-k-l-r: need 0 < k");
      require(k <= l, "hol-m-u-psi-k-l-r: need k <= l");
      require(l <= m, "hol-m-u-psi-k-l-r: need l <= m");
      require(m <= r, "hol-m-u-psi-k-l-r: need m <= r");
      require(r <= n, "hol-m-u-psi-k-l-r: need r <= n");
      require(m < n, "hol-m-u-psi-k-l-r: need m < n");
      require(spec.psi1.size() == N && spec.psi2.size() == N && spec.psi3.size() == N &&
                  spec.psi4.size() == N,
              "psi values per u-basis element");
      require(center_dim() + 2 * k + r >= n + m + l,
              "hol-m-u-psi-k-l-r: need dim z(u) >= n + m + l - 2k - r");
      std::size_t target = 2 * (l - k) + (m - l) + (n - r);
      std::vector<Vector> rows;
      for (std::size_t a = 0; a < N; ++a) {
        require(spec.psi1[a].size() == l - k && spec.psi2[a].size() == l - k &&
                    spec.psi3[a].size() == m - l && spec.psi4[a].size() == n - r,
                "psi component lengths");
        Vector row;
        for (const auto& x : spec.psi1[a]) row.push_back(x);
        for (const auto& x : spec.psi2[a]) row.push_back(x);
        for (const auto& x : spec.psi3[a]) row.push_back(x);
        for (const auto& x : spec.psi4[a]) row.push_back(x);
        rows.push_back(row);
      }
      if (target > 0)
        require(Subspace::span(target, rows).dim() == target, "psi must be surjective");
      bool su = spec.id == FamilyId::SuPsiMKLR;
      for (std::size_t a = 0; a < N; ++a) {
        Vector z1(n, Scalar(0)), z2(n, Scalar(0));
        for (std::size_t c = 0; c < l - k; ++c) {
          z1[k + c] = spec.psi1[a][c];
          z2[k + c] = spec.psi2[a][c];
        }
        for (std::size_t c = 0; c < m - l; ++c) z2[l + c] = spec.psi3[a][c];
        for (std::size_t c = 0; c < n - r; ++c) z1[r + c] = spec.psi4[a][c];
        Scalar a2 = su ? Scalar(-1, 2) * embed(spec.u_C[a], k).trace() : Scalar(0);
        gens.push_back(pk(Scalar(0), a2, embed(spec.u_B[a], k), embed(spec.u_C[a], k), z1, z2,
                          Scalar(0)));
      }
      for (std::size_t i = 1; i <= k; ++i) {
        gens.push_back(n1_gen(i));
        gens.push_back(n2_gen(i));
      }
      for (std::size_t i = l + 1; i <= r; ++i) gens.push_back(n1_gen(i));
      gens.push_back(Cgen);
      return {fr, MatrixLieAlgebra(fr.metric, gens)};
    }
    case FamilyId::SuA1:
    case FamilyId::SuVarphi: {
      require(m <= n, "su family: need m <= n");
      if (spec.id == FamilyId::SuVarphi) {
        require(spec.varphi.size() == N, "varphi values per u-basis element");
        check_vanishes_on_derived(spec.varphi, "varphi");
      }
      if (spec.id == FamilyId::SuA1) gens.push_back(A1gen);
      for (std::size_t a = 0; a < N; ++a) {
        require(spec.u_B[a].rows() == n && spec.u_C[a].rows() == n,
                "su family: h-basis blocks are n x n");
        Scalar a1 = spec.id == FamilyId::SuVarphi ? spec.varphi[a] : Scalar(0);
        Scalar a2 = Scalar(-1, 2) * spec.u_C[a].trace();
        gens.push_back(pk(a1, a2, spec.u_B[a], spec.u_C[a], zn, zn, Scalar(0)));
      }
      for (std::size_t i = 1; i <= n; ++i) gens.push_back(n1_gen(i));
      for (std::size_t i = 1; i <= m; ++i) gens.push_back(n2_gen(i));
      gens.push_back(Cgen);
      return {fr, MatrixLieAlgebra(fr.metric, gens)};
    }
    case FamilyId::SuPsiK:
    case FamilyId::SuZeta:
    case FamilyId::SuPsiKZeta: {
      // h inside sod(1..k) (or sod(1..n) for the zeta family); u_B holds the
      // so-blocks B, u_C must be zero.
      std::size_t k = spec.id == FamilyId::SuZeta ? n : spec.k;
      if (spec.id == FamilyId::SuPsiK) require(0 < k && k < n, "su-0-h-psi-k: need 0 < k < n");
      if (spec.id == FamilyId::SuPsiKZeta)
        require(1 <= k && k < n, "su-0-h-psi-k-zeta: need 1 <= k < n");
      bool uses_psi = spec.id != FamilyId::SuZeta;
      bool uses_zeta = spec.id != FamilyId::SuPsiK;
      if (uses_psi) require(spec.psi1.size() == N, "psi values per h-basis element");
      if (uses_zeta) require(spec.zeta.size() == N, "zeta values per h-basis element");
      for (std::size_t a = 0; a < N; ++a) {
        require(spec.u_B[a].rows() == n && spec.u_C[a].is_zero(),
                "sod family: h-basis is (B, 0) with B n x n");
        Vector z1(n, Scalar(0));
        if (uses_psi) {
          require(spec.psi1[a].size() == n - k, "psi component length n - k");
          for (std::size_t c = 0; c < n - k; ++c) z1[k + c] = spec.psi1[a][c];
        }
        Scalar c = uses_zeta ? spec.zeta[a] : Scalar(0);
        gens.push_back(pk(Scalar(0), Scalar(0), spec.u_B[a], Cn, z1, zn, c));
      }
      if (uses_psi && N > 0) {
        std::vector<Vector> rows;
        for (std::size_t a = 0; a < N; ++a) rows.push_back(spec.psi1[a]);
        require(n == k || Subspace::span(n - k, rows).dim() == n - k, "psi must be surjective");
      }
      for (std::size_t i = 1; i <= k; ++i) gens.push_back(n1_gen(i));
      if (spec.id == FamilyId::SuPsiK) gens.push_back(Cgen);
      return {fr, MatrixLieAlgebra(fr.metric, gens)};
    }
    default:
      throw std::invalid_argument("build_algebra: unhandled family");
  }
}

// ---- fixed generator lists ------------------------------------------------

// g2 inside so(7), spanned by 14 combinations of elementary rotations.
inline std::vector<Matrix> g2_generators() {
  auto E = [](std::size_t i, std::size_t j) { return so_generator(7, i, j); };
  return {
      E(1, 2) - E(3, 4), E(1, 2) - E(5, 6), E(1, 3) + E(2, 4), E(1, 3) - E(6, 7),
      E(1, 4) - E(2, 3), E(1, 4) - E(5, 7), E(1, 5) + E(2, 6), E(1, 5) + E(4, 7),
      E(1, 6) - E(2, 5), E(1, 6) + E(3, 7), E(1, 7) - E(3, 6), E(1, 7) - E(4, 5),
      E(2, 7) - E(3, 5), E(2, 7) + E(4, 6),
  };
}

// spin(7) inside so(8), 21 generators.
inline std::vector<Matrix> spin7_generators() {
  auto E = [](std::size_t i, std::size_t j) { return so_generator(8, i, j); };
  return {
      E(1, 2) + E(3, 4),  E(1, 3) - E(2, 4), E(1, 4) + E(2, 3),  E(5, 6) + E(7, 8),
      -E(5, 7) + E(6, 8), E(5, 8) + E(6, 7), -E(1, 5) + E(2, 6), E(1, 2) + E(5, 6),
      E(1, 6) + E(2, 5),  E(3, 7) - E(4, 8), E(3, 8) + E(4, 7),  E(1, 7) + E(2, 8),
      E(1, 8) - E(2, 7),  E(3, 5) + E(4, 6), E(3, 6) - E(4, 5),  E(1, 8) + E(3, 6),
      E(1, 7) + E(3, 5),  E(2, 6) - E(4, 8), E(2, 5) + E(3, 8),  E(2, 3) + E(6, 7),
      E(2, 4) + E(5, 7),
  };
}

// rho(so(3)) inside so(5): the corrected Ikemakhen triple (the variant that
// closes under bracket and that the original metric reproduces).
inline std::vector<Matrix> ikemakhen_so3_generators() {
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

// weak-curvature map realizing rho(so(3)): P(e_3) = A1, P(e_4) = A2,
// P(e_5) = A3, zero on e_1, e_2.
inline std::vector<Matrix> ikemakhen_P() {
  auto as = ikemakhen_so3_generators();
  std::vector<Matrix> P(5, Matrix(5, 5));
  P[2] = as[0];
  P[3] = as[1];
  P[4] = as[2];
  return P;
}

// ---- metric builders --------------------------------------------------------

// Lorentzian recipe (dim n+2): orthogonal part h in so(n), weak-curvature
// generators P_alpha given by their values on e_1..e_n0.
struct LorentzRecipe {
  int type = 2;  // classification type 1..4
  std::size_t n = 0;
  std::vector<std::vector<Matrix>> P;  // P[alpha][i] = P_{alpha+1}(e_{i+1}), so(n) matrices
  std::vector<Scalar> varphi;          // type 3: varphi(P_alpha(e_i)) packed per (alpha, i)
  std::size_t m = 0;                   // type 4
  std::vector<std::vector<Vector>> psi;  // type 4: psi[alpha][i] in R^{n-m}
};

inline PolynomialMetric build_lorentz_metric(const LorentzRecipe& rec) {
  std::size_t n = rec.n;
  std::size_t dim = n + 2;
  std::size_t nv = dim;
  std::size_t N = rec.P.size();
  std::size_t n0 = N == 0 ? 0 : rec.P[0].size();
  detail::require(rec.type >= 1 && rec.type <= 4, "lorentz metric: type in 1..4");

  MetricStructure eucl(n, Matrix::identity(n));
  for (const auto& row : rec.P) {
    detail::require(row.size() == n0, "lorentz metric: even P rows");
    // each P must satisfy the cyclic identity (value 0 outside e_1..e_n0)
    std::vector<Matrix> full(n, Matrix(n, n));
    for (std::size_t i = 0; i < n0; ++i) full[i] = row[i];
    detail::require(weak_cyclic_holds(full, eucl), "lorentz metric: P not in P(h)");
  }

  // factorials
  auto fact = [](std::size_t k) {
    Scalar f(1);
    for (std::size_t i = 2; i <= k; ++i) f *= Scalar(static_cast<long>(i));
    return f;
  };

  // coordinates: x^0 .. x^{n+1} are variables 0 .. n+1
  auto var = [&](std::size_t i) { return Polynomial::variable(nv, i); };
  Polynomial zero(nv);

  // u^i for 1 <= i <= n0:
  // a^i_{alpha j k} = (P^i_{alpha j k} + P^i_{alpha k j}) / (3 (alpha-1)!)
  // u^i = sum_alpha sum_{j,k} a^i_{alpha j k} x^j x^k (x^{n+1})^{alpha-1}
  std::vector<Polynomial> u(n0 + 1, zero);
  for (std::size_t alpha = 1; alpha <= N; ++alpha) {
    Scalar denom = Scalar(1) / (Scalar(3) * fact(alpha - 1));
    Polynomial tpow = Polynomial::constant(nv, Scalar(1));
    for (std::size_t t = 0; t + 1 < alpha; ++t) tpow *= var(n + 1);
    for (std::size_t i = 1; i <= n0; ++i) {
      Polynomial quad(nv);
      for (std::size_t j = 1; j <= n0; ++j)
        for (std::size_t k = 1; k <= n0; ++k) {
          // P^i_{alpha j k} = (P_alpha(e_k) e_j)^i = matrix entry (i-1, j-1)
          Scalar p1 = rec.P[alpha - 1][k - 1].at(i - 1, j - 1);
          Scalar p2 = rec.P[alpha - 1][j - 1].at(i - 1, k - 1);
          Scalar a = (p1 + p2) * denom;
          if (!a.is_zero()) quad += a * (var(j) * var(k));
        }
      u[i] += quad * tpow;
    }
  }

  // f by type
  Polynomial f(nv);
  if (rec.type == 1) {
    f += var(0) * var(0);
    for (std::size_t i = n0 + 1; i <= n; ++i) f += var(i) * var(i);
  } else if (rec.type == 2) {
    for (std::size_t i = n0 + 1; i <= n; ++i) f += var(i) * var(i);
  } else if (rec.type == 3) {
    detail::require(rec.varphi.size() == N * n0, "lorentz metric: varphi per (alpha, i)");
    for (std::size_t alpha = 1; alpha <= N; ++alpha) {
      Scalar denom = Scalar(1) / fact(alpha - 1);
      Polynomial tpow = Polynomial::constant(nv, Scalar(1));
      for (std::size_t t = 0; t + 1 < alpha; ++t) tpow *= var(n + 1);
      for (std::size_t i = 1; i <= n0; ++i) {
        Scalar phi_ai = rec.varphi[(alpha - 1) * n0 + (i - 1)] * denom;
        if (!phi_ai.is_zero()) f += (Scalar(2) * phi_ai) * (var(0) * var(i) * tpow);
      }
    }
    for (std::size_t i = n0 + 1; i <= n; ++i) f += var(i) * var(i);
  } else {
    std::size_t m = rec.m;
    detail::require(n0 <= m && m < n, "lorentz metric type 4: need n0 <= m < n");
    detail::require(rec.psi.size() == N, "lorentz metric: psi per alpha");
    for (std::size_t alpha = 1; alpha <= N; ++alpha) {
      detail::require(rec.psi[alpha - 1].size() == n0, "lorentz metric: psi per (alpha, i)");
      Scalar denom = Scalar(1) / fact(alpha - 1);
      Polynomial tpow = Polynomial::constant(nv, Scalar(1));
      for (std::size_t t = 0; t + 1 < alpha; ++t) tpow *= var(n + 1);
      for (std::size_t i = 1; i <= n0; ++i) {
        const Vector& psi_ai = rec.psi[alpha - 1][i - 1];
        detail::require(psi_ai.size() == n - m, "lorentz metric: psi values in R^{n-m}");
        for (std::size_t t = 0; t < n - m; ++t) {
          Scalar c = psi_ai[t] * denom;
          if (!c.is_zero()) f += (Scalar(2) * c) * (var(i) * var(m + 1 + t) * tpow);
        }
      }
    }
    for (std::size_t i = n0 + 1; i <= m; ++i) f += var(i) * var(i);
  }

  PolyMatrix g(dim, std::vector<Polynomial>(dim, zero));
  g[0][n + 1] = g[n + 1][0] = Polynomial::constant(nv, Scalar(1));
  for (std::size_t i = 1; i <= n; ++i) g[i][i] = Polynomial::constant(nv, Scalar(1));
  for (std::size_t i = 1; i <= n0; ++i) {
    g[i][n + 1] += u[i];
    g[n + 1][i] += u[i];
  }
  g[n + 1][n + 1] += f;
  return PolynomialMetric(dim, g, std::vector<Scalar>(dim, Scalar(0)));
}

// The original quadratic metric on R^7 with holonomy g^{2, rho(so(3))}.
inline PolynomialMetric ikemakhen_metric() {
  std::size_t nv = 7;
  auto var = [&](std::size_t i) { return Polynomial::variable(nv, i); };
  Scalar r3 = Scalar::sqrt3();
  std::vector<Polynomial> u(6, Polynomial(nv));
  u[1] = Scalar(-1) * (var(3) * var(3)) - Scalar(4) * (var(4) * var(4)) - var(5) * var(5);
  u[3] = (Scalar(-2) * r3) * (var(2) * var(3)) - Scalar(2) * (var(4) * var(5));
  u[5] = (Scalar(2) * r3) * (var(2) * var(5)) + Scalar(2) * (var(3) * var(4));
  PolyMatrix g(7, std::vector<Polynomial>(7, Polynomial(nv)));
  g[0][6] = g[6][0] = Polynomial::constant(nv, Scalar(1));
  for (std::size_t i = 1; i <= 5; ++i) g[i][i] = Polynomial::constant(nv, Scalar(1));
  for (std::size_t i = 1; i <= 5; ++i) {
    g[i][6] += u[i];
    g[6][i] += u[i];
  }
  return PolynomialMetric(7, g, std::vector<Scalar>(7, Scalar(0)));
}

// ---- pseudo-Kaehler metric recipe ------------------------------------------

inline PolynomialMetric build_pk_metric(const FamilySpec& spec) {
  using detail::require;
  std::size_t n = spec.n;
  std::size_t nv = 2 * n + 4;
  auto var = [&](std::size_t i) { return Polynomial::variable(nv, i); };  // x^{i+1}
  Polynomial zero(nv);
  auto fact = [](std::size_t k) {
    Scalar f(1);
    for (std::size_t i = 2; i <= k; ++i) f *= Scalar(static_cast<long>(i));
    return f;
  };

  // n = 0 rows are explicit
  if (spec.id == FamilyId::N0Hol1 || spec.id == FamilyId::N0Hol2 ||
      spec.id == FamilyId::N0Gamma) {
    require(n == 0, "n0 metric rows need n = 0");
    Polynomial f1(4), f2(4), f3(4);
    std::size_t v = 4;
    auto V = [&](std::size_t i) { return Polynomial::variable(v, i); };
    if (spec.id == FamilyId::N0Hol1) {
      f1 = Scalar(-2) * (V(1) * V(2)) - V(0) * V(2) * V(2);
      f2 = -f1;
      f3 = Scalar(2) * (V(0) * V(2)) - V(1) * V(2) * V(2);
    } else if (spec.id == FamilyId::N0Hol2) {
      f1 = V(0) * V(0) - V(1) * V(1);
      f2 = -f1;
      f3 = Scalar(2) * (V(0) * V(1));
    } else if (spec.gamma1.is_zero() && spec.gamma2.is_zero()) {
      f1 = V(3) * V(3);
    } else {
      f1 = Scalar(-2) * spec.gamma1 * (V(1) * V(2)) - Scalar(2) * spec.gamma2 * (V(0) * V(2));
      f2 = -f1;
      f3 = Scalar(2) * spec.gamma1 * (V(0) * V(2)) - Scalar(2) * spec.gamma2 * (V(1) * V(2));
    }
    PolyMatrix g(4, std::vector<Polynomial>(4, Polynomial(v)));
    g[0][2] = g[2][0] = Polynomial::constant(v, Scalar(1));
    g[1][3] = g[3][1] = Polynomial::constant(v, Scalar(1));
    g[2][2] = f1;
    g[3][3] = f2;
    g[2][3] = g[3][2] = f3;
    return PolynomialMetric(4, g, std::vector<Scalar>(4, Scalar(0)));
  }

  require(n >= 1, "pk metric: need n >= 1");
  std::size_t m = spec.id == FamilyId::HolPsiNKL ? n : spec.m;
  std::size_t N = spec.u_B.size();

  // canonical (u', center) ordered basis with transported map values
  std::vector<Matrix> Bv, Cv;
  std::vector<Scalar> varphi_v, phi_v;
  std::vector<Vector> psi1_v, psi2_v, psi3_v, psi4_v;
  std::size_t N1 = 0;
  if (N > 0) {
    std::vector<Matrix> blocks;
    for (std::size_t a = 0; a < N; ++a)
      blocks.push_back(detail::unitary_block(spec.u_B[a], spec.u_C[a]));
    auto split = detail::split_unitary_part(blocks);
    N1 = split.n1;
    auto transport_scalar = [&](const std::vector<Scalar>& vals, std::size_t t) {
      Scalar v(0);
      for (std::size_t a = 0; a < N; ++a) v += split.coeff[t][a] * vals[a];
      return v;
    };
    auto transport_vec = [&](const std::vector<Vector>& vals, std::size_t t) {
      if (vals.empty()) return Vector{};
      Vector v(vals[0].size(), Scalar(0));
      for (std::size_t a = 0; a < N; ++a)
        for (std::size_t c = 0; c < v.size(); ++c) v[c] += split.coeff[t][a] * vals[a][c];
      return v;
    };
    std::size_t mm = spec.u_B[0].rows();
    for (std::size_t t = 0; t < N; ++t) {
      Matrix Bt(mm, mm), Ct(mm, mm);
      for (std::size_t a = 0; a < N; ++a) {
        if (split.coeff[t][a].is_zero()) continue;
        Bt += split.coeff[t][a] * spec.u_B[a];
        Ct += split.coeff[t][a] * spec.u_C[a];
      }
      Bv.push_back(Bt);
      Cv.push_back(Ct);
      if (!spec.varphi.empty()) varphi_v.push_back(transport_scalar(spec.varphi, t));
      if (!spec.phi.empty()) phi_v.push_back(transport_scalar(spec.phi, t));
      if (!spec.psi1.empty()) psi1_v.push_back(transport_vec(spec.psi1, t));
      if (!spec.psi2.empty()) psi2_v.push_back(transport_vec(spec.psi2, t));
      if (!spec.psi3.empty()) psi3_v.push_back(transport_vec(spec.psi3, t));
      if (!spec.psi4.empty()) psi4_v.push_back(transport_vec(spec.psi4, t));
    }
  }
  std::size_t ublock = spec.id == FamilyId::HolPsiNKL || spec.id == FamilyId::HolPsiMKLR
                           ? spec.k
                           : m;
  std::size_t n0 = 0;
  if (N > 0) {
    std::vector<Matrix> blocks;
    for (std::size_t a = 0; a < N; ++a)
      blocks.push_back(detail::unitary_block(Bv[a], Cv[a]));
    n0 = detail::adapted_n0(blocks, ublock);
  }

  // 0-based coordinate indices for the named coordinates:
  //   x^1, x^2 -> 0, 1;  e_i -> i + 1;  f_i -> n + i + 1;
  //   x^{2n+3} -> 2n + 2;  x^{2n+4} -> 2n + 3.
  std::size_t X1 = 0, X2 = 1, Q1 = 2 * n + 2;
  auto E = [&](std::size_t i) { return i + 1; };      // 1-based e index
  auto F = [&](std::size_t i) { return n + i + 1; };  // 1-based f index
  auto tpow = [&](std::size_t p) {
    Polynomial t = Polynomial::constant(nv, Scalar(1));
    for (std::size_t i = 0; i < p; ++i) t *= var(Q1);
    return t;
  };

  // u-functions from the unitary part (alpha = 1..N, weight 1/alpha!)
  std::vector<Polynomial> u(nv, zero);  // indexed by coordinate
  for (std::size_t alpha = 1; alpha <= N; ++alpha) {
    Scalar w = Scalar(1) / fact(alpha);
    const Matrix& B = Bv[alpha - 1];
    const Matrix& C = Cv[alpha - 1];
    for (std::size_t i = 1; i <= n0; ++i) {
      Polynomial lin1(nv), lin2(nv);
      for (std::size_t j = 1; j <= n0; ++j) {
        Scalar b = B.at(i - 1, j - 1), c = C.at(i - 1, j - 1);
        if (!b.is_zero()) {
          lin1 += b * var(E(j));
          lin2 += b * var(F(j));
        }
        if (!c.is_zero()) {
          lin1 -= c * var(F(j));
          lin2 += c * var(E(j));
        }
      }
      u[E(i)] += (w * lin1) * tpow(alpha);
      u[F(i)] += (w * lin2) * tpow(alpha);
    }
  }

  // family-specific outer-block u-functions (i = m+1..n)
  auto add_outer_u = [&](const Scalar& coef, std::size_t K) {
    // u^{e_i} -= coef/K! * x^{f_i} t^K ; u^{f_i} += coef/K! * x^{e_i} t^K
    Scalar w = coef / fact(K);
    if (w.is_zero()) return;
    for (std::size_t i = m + 1; i <= n; ++i) {
      u[E(i)] -= w * (var(F(i)) * tpow(K));
      u[F(i)] += w * (var(E(i)) * tpow(K));
    }
  };

  // f-function families
  Polynomial f1(nv), f2(nv), f3(nv);
  auto add_f0 = [&]() {
    Polynomial acc(nv);
    for (std::size_t alpha = 1; alpha <= N; ++alpha) {
      Scalar w = Scalar(1) / fact(alpha - 1);
      const Matrix& B = Bv[alpha - 1];
      const Matrix& C = Cv[alpha - 1];
      Polynomial quad(nv);
      for (std::size_t i = 1; i <= n0; ++i)
        for (std::size_t j = 1; j <= n0; ++j) {
          Scalar b = B.at(i - 1, j - 1), c = C.at(i - 1, j - 1);
          if (!b.is_zero()) quad += b * (var(E(i)) * var(F(j)));
          if (!c.is_zero()) {
            quad += (c * Scalar(1, 2)) * (var(E(i)) * var(E(j)));
            quad += (c * Scalar(1, 2)) * (var(F(i)) * var(F(j)));
          }
        }
      acc += (w * quad) * tpow(alpha - 1);
    }
    f1 += acc;
    // f0_2 = f0_1 + sum_i (u^{e_i})^2 + (u^{f_i})^2
    f2 += acc;
    for (std::size_t i = 1; i <= n0; ++i) {
      if (!u[E(i)].is_zero()) f2 += u[E(i)] * u[E(i)];
      if (!u[F(i)].is_zero()) f2 += u[F(i)] * u[F(i)];
    }
  };
  auto add_f_varphi = [&]() {
    for (std::size_t alpha = N1 + 1; alpha <= N; ++alpha) {
      Scalar w = varphi_v[alpha - 1] / fact(alpha);
      if (w.is_zero()) continue;
      f1 -= (Scalar(2) * w) * (var(X2) * tpow(alpha));
      f2 += (Scalar(2) * w) * (var(X2) * tpow(alpha));
      f3 += (Scalar(2) * w) * (var(X1) * tpow(alpha));
    }
  };
  // the alpha-indexed phi-hat summand shared by f^phi and f^{A2t,K}
  auto add_f_phihat_term = [&](const Scalar& coef, std::size_t K) {
    if (coef.is_zero()) return;
    Scalar w = coef / fact(K - 1);
    Polynomial tK1 = tpow(K - 1);
    Polynomial souter1(nv), souter2(nv), souter3(nv);
    for (std::size_t i = m + 1; i <= n; ++i) {
      souter1 += var(E(i)) * var(E(i));
      souter2 += var(F(i)) * var(F(i));
      souter3 += var(E(i)) * var(F(i));
    }
    Scalar invK = Scalar(2) / Scalar(static_cast<long>(K));
    f1 += w * (tK1 * (souter1 - invK * (var(X1) * var(Q1))));
    Polynomial inner2 = invK * (var(X1) * var(Q1)) + souter2;
    Scalar kk = Scalar(1) / Scalar(static_cast<long>((K + 1) * K));
    inner2 += kk * (var(Q1) * var(Q1) * (souter1 + souter2));
    f2 += w * (tK1 * inner2);
    f3 += w * (tK1 * (souter3 - invK * (var(X2) * var(Q1))));
  };
  auto add_f_phi = [&]() {
    for (std::size_t alpha = N1 + 1; alpha <= N; ++alpha)
      add_f_phihat_term(phi_v[alpha - 1], alpha);
  };
  auto add_f_a1 = [&](std::size_t K) {
    Scalar w = Scalar(1) / fact(K);
    f1 -= (Scalar(2) * w) * (var(X2) * tpow(K));
    f2 += (Scalar(2) * w) * (var(X2) * tpow(K));
    f3 += (Scalar(2) * w) * (var(X1) * tpow(K));
  };
  auto add_f_tilde = [&](std::size_t m1, std::size_t m2) {
    for (std::size_t i = m1; i <= m2 && i <= n; ++i) {
      f1 += var(E(i)) * var(E(i)) - var(F(i)) * var(F(i));
      f2 -= var(E(i)) * var(E(i)) - var(F(i)) * var(F(i));
      f3 += Scalar(2) * (var(E(i)) * var(F(i)));
    }
  };
  // Note the + sign on the third component: the printed minus would make the
  // injected translation pair R^1_{e} = -R^2_{f}, which leaves u(1,n+1); the
  // proof's derivative values (R^1 = +R^2) force the + here.
  auto add_f_breve = [&](std::size_t K, std::size_t m1, std::size_t m2) {
    for (std::size_t i = m1; i <= m2 && i <= n; ++i) {
      Scalar w = Scalar(2) / fact(K + i - m1);
      Polynomial t = tpow(K + i - m1);
      f1 += w * (var(F(i)) * t);
      f2 -= w * (var(F(i)) * t);
      f3 -= w * (var(E(i)) * t);
    }
  };
  auto add_f_psi = [&]() {
    std::size_t k = spec.k, l = spec.l;
    bool mklr = spec.id == FamilyId::HolPsiMKLR;
    Polynomial acc1(nv), acc3(nv);
    for (std::size_t alpha = N1 + 1; alpha <= N; ++alpha) {
      Scalar w = Scalar(2) / fact(alpha);
      Polynomial lin1(nv), lin3(nv);
      for (std::size_t c = 0; c < l - k; ++c) {
        std::size_t i = k + 1 + c;
        const Scalar& p1 = psi1_v[alpha - 1][c];
        const Scalar& p2 = psi2_v[alpha - 1][c];
        if (!p1.is_zero()) {
          lin1 += p1 * var(F(i));
          lin3 -= p1 * var(E(i));
        }
        if (!p2.is_zero()) {
          lin1 -= p2 * var(E(i));
          lin3 -= p2 * var(F(i));
        }
      }
      std::size_t third_hi = mklr ? m : n;
      for (std::size_t c = 0; l + 1 + c <= third_hi; ++c) {
        std::size_t i = l + 1 + c;
        const Scalar& p3 = psi3_v[alpha - 1][c];
        if (!p3.is_zero()) {
          lin1 -= p3 * var(E(i));
          lin3 -= p3 * var(F(i));
        }
      }
      if (mklr) {
        for (std::size_t c = 0; spec.r + 1 + c <= n; ++c) {
          std::size_t i = spec.r + 1 + c;
          const Scalar& p4 = psi4_v[alpha - 1][c];
          if (!p4.is_zero()) {
            lin1 += p4 * var(F(i));
            lin3 -= p4 * var(E(i));
          }
        }
      }
      acc1 += w * (lin1 * tpow(alpha));
      acc3 += w * (lin3 * tpow(alpha));
    }
    f1 += acc1;
    f2 -= acc1;
    f3 += acc3;
  };

  switch (spec.id) {
    case FamilyId::HolA1A2t:
      add_f0();
      add_f_a1(N + 1);
      add_f_phihat_term(Scalar(1), N + 2);
      add_f_tilde(n0 + 1, m);
      add_f_breve(N + 3, m + 1, n);
      add_outer_u(Scalar(1), N + 2);
      break;
    case FamilyId::HolA1Phi:
      add_f0();
      add_f_a1(N + 1);
      add_f_phi();
      add_f_tilde(n0 + 1, m);
      add_f_breve(N + 2, m + 1, n);
      for (std::size_t alpha = N1 + 1; alpha <= N; ++alpha)
        add_outer_u(phi_v[alpha - 1], alpha);
      break;
    case FamilyId::HolVarphiPhi:
      add_f0();
      add_f_varphi();
      add_f_phi();
      add_f_tilde(n0 + 1, m);
      add_f_breve(N + 1, m + 1, n);
      for (std::size_t alpha = N1 + 1; alpha <= N; ++alpha)
        add_outer_u(phi_v[alpha - 1], alpha);
      break;
    case FamilyId::HolVarphiA2t:
      add_f0();
      add_f_varphi();
      add_f_phihat_term(Scalar(1), N + 1);
      add_f_tilde(n0 + 1, m);
      add_f_breve(N + 2, m + 1, n);
      add_outer_u(Scalar(1), N + 1);
      break;
    case FamilyId::HolLambda:
      add_f0();
      add_f_a1(N + 1);
      add_f_phihat_term(spec.lambda, N + 1);
      add_f_tilde(n0 + 1, m);
      add_f_breve(N + 2, m + 1, n);
      add_outer_u(spec.lambda, N + 1);
      break;
    case FamilyId::HolPsiNKL:
      add_f0();
      add_f_tilde(n0 + 1, spec.k);
      add_f_psi();
      add_f_breve(N + 1, spec.l + 1, n);
      break;
    case FamilyId::HolPsiMKLR:
      add_f0();
      add_f_tilde(n0 + 1, spec.k);
      add_f_psi();
      add_f_breve(N + 1, spec.l + 1, spec.r);
      break;
    default:
      throw std::invalid_argument("build_pk_metric: unsupported family");
  }

  PolyMatrix g(nv, std::vector<Polynomial>(nv, zero));
  g[X1][Q1] = g[Q1][X1] = Polynomial::constant(nv, Scalar(1));
  g[X2][Q1 + 1] = g[Q1 + 1][X2] = Polynomial::constant(nv, Scalar(1));
  for (std::size_t i = 2; i < 2 * n + 2; ++i) g[i][i] = Polynomial::constant(nv, Scalar(1));
  for (std::size_t i = 2; i < 2 * n + 2; ++i) {
    if (u[i].is_zero()) continue;
    g[i][Q1 + 1] += u[i];
    g[Q1 + 1][i] += u[i];
  }
  g[Q1][Q1] += f1;
  g[Q1 + 1][Q1 + 1] += f2;
  g[Q1][Q1 + 1] += f3;
  g[Q1 + 1][Q1] += f3;
  return PolynomialMetric(nv, g, std::vector<Scalar>(nv, Scalar(0)));
}

// ---- symmetric-space support ------------------------------------------------

enum class SymTensorName { R_lambda5, R_lambda1, R_lambda2, R_M3_e1, R_1 };

// holonomy algebras of the symmetric-pair catalog
inline BuiltAlgebra hol1_algebra() {
  FamilySpec s;
  s.id = FamilyId::N0Gamma;
  return build_algebra(s);  // gamma = (0,0): R C
}
inline BuiltAlgebra hol2_algebra() {
  // span{p1^e1 + p2^f1, p1^p2} inside u(1,2)
  StandardFrame fr = StandardFrame::pseudo_kaehler(1);
  Matrix B0(1, 1);
  Vector z1{Scalar(1)}, z0{Scalar(0)};
  Matrix N1 = pk_element(fr, Scalar(0), Scalar(0), B0, B0, z1, z0, Scalar(0));
  Matrix C = pk_element(fr, Scalar(0), Scalar(0), B0, B0, z0, z0, Scalar(1));
  return {fr, MatrixLieAlgebra(fr.metric, {N1, C})};
}
// hol_3 = hol^{m, R J_m, varphi=0, phi=2} (equals hol^{gamma=(0,1)} when
// n = 0). The twist generator is the endomorphism 2J - J_m.
inline BuiltAlgebra hol3_algebra(std::size_t m, std::size_t n) {
  if (n == 0) {
    FamilySpec s;
    s.id = FamilyId::N0Gamma;
    s.gamma2 = Scalar(1);
    return build_algebra(s);
  }
  StandardFrame fr = StandardFrame::pseudo_kaehler(n);
  std::vector<Matrix> gens;
  Matrix Bn(n, n), Cn(n, n);
  Vector zn(n, Scalar(0));
  Matrix A2 = pk_element(fr, Scalar(0), Scalar(1), Bn, Cn, zn, zn, Scalar(0));
  // 2 A2 + J_m + 2 J_{m+1..n} = 2J - J_m as an ambient endomorphism
  gens.push_back(Scalar(2) * A2 + J_range(fr, 1, m) + Scalar(2) * J_range(fr, m + 1, n));
  for (std::size_t i = 0; i < n; ++i) {
    Vector z(n, Scalar(0));
    z[i] = Scalar(1);
    gens.push_back(pk_element(fr, Scalar(0), Scalar(0), Bn, Cn, z, zn, Scalar(0)));
    if (i < m) gens.push_back(pk_element(fr, Scalar(0), Scalar(0), Bn, Cn, zn, z, Scalar(0)));
  }
  gens.push_back(pk_element(fr, Scalar(0), Scalar(0), Bn, Cn, zn, zn, Scalar(1)));
  return {fr, MatrixLieAlgebra(fr.metric, gens)};
}

inline CurvatureTensor theorem_sym_tensor(SymTensorName name, std::size_t m = 0,
                                          std::size_t n = 0, const Scalar& lambda = Scalar(1)) {
  StandardFrame fr = StandardFrame::pseudo_kaehler(n);
  std::size_t d = fr.dim();
  CurvatureTensor R = CurvatureTensor::zero(d);
  auto wedge = [&](std::size_t i, std::size_t j) {
    return wedge_matrix(fr.metric, fr.basis_vector(i), fr.basis_vector(j));
  };
  auto set_val = [&](std::size_t i, std::size_t j, const Matrix& M) {
    if (i < j)
      R.value_at(pair_index(d, i, j)) += M;
    else
      R.value_at(pair_index(d, j, i)) -= M;
  };
  std::size_t p1 = fr.p1(), p2 = fr.p2(), q1 = fr.q1(), q2 = fr.q2();
  switch (name) {
    case SymTensorName::R_lambda5:
      set_val(q1, q2, wedge(p1, p2));
      break;
    case SymTensorName::R_lambda1: {
      Matrix d1 = wedge(p1, q1) + wedge(p2, q2);
      Matrix d2 = wedge(p1, q2) - wedge(p2, q1);
      set_val(p1, q1, lambda * d1);
      set_val(p2, q2, lambda * d1);
      set_val(p1, q2, lambda * d2);
      set_val(p2, q1, (Scalar(0) - lambda) * d2);
      break;
    }
    case SymTensorName::R_lambda2: {
      Matrix d1 = wedge(p1, q1) + wedge(p2, q2);
      Matrix d2 = wedge(p1, q2) - wedge(p2, q1);
      set_val(p1, q1, lambda * d2);
      set_val(p2, q2, lambda * d2);
      set_val(p1, q2, (Scalar(0) - lambda) * d1);
      set_val(p2, q1, lambda * d1);
      break;
    }
    case SymTensorName::R_M3_e1: {
      if (n < 1) throw std::invalid_argument("R_M3_e1 needs n >= 1");
      std::size_t e1 = fr.e(1), f1 = fr.f(1);
      set_val(q1, q2, wedge(p1, e1) + wedge(p2, f1));
      set_val(q1, e1, wedge(p1, p2));
      set_val(q2, f1, wedge(p1, p2));
      break;
    }
    case SymTensorName::R_1: {
      if (m > n) throw std::invalid_argument("R_1 needs m <= n");
      Matrix p12 = wedge(p1, p2);
      set_val(p1, q2, Scalar(-2) * p12);
      set_val(p2, q1, Scalar(2) * p12);
      for (std::size_t i = 1; i <= m; ++i) {
        set_val(fr.e(i), fr.f(i), -p12);
        Matrix a = wedge(p1, fr.e(i)) + wedge(p2, fr.f(i));
        Matrix b = wedge(p1, fr.f(i)) - wedge(p2, fr.e(i));
        set_val(q1, fr.e(i), Scalar(-1, 2) * a);
        set_val(q2, fr.f(i), Scalar(-1, 2) * a);
        set_val(q2, fr.e(i), Scalar(1, 2) * b);
        set_val(q1, fr.f(i), Scalar(-1, 2) * b);
      }
      for (std::size_t j = m + 1; j <= n; ++j) {
        set_val(fr.e(j), fr.f(j), Scalar(-2) * p12);
        Matrix a = wedge(p1, fr.e(j)) + wedge(p2, fr.f(j));
        set_val(q1, fr.e(j), Scalar(-2) * a);
        set_val(q2, fr.f(j), Scalar(-2) * a);
      }
      // R(q1^q2) = J_m - 2J as endomorphisms
      set_val(q1, q2, J_range(fr, 1, m) - Scalar(2) * (*fr.metric.J));
      break;
    }
  }
  return R;
}

// Ric(X,Y) = -(1/2) tr_R (J R(X ^ JY)); the half makes this the complex trace.
inline Matrix ricci(const CurvatureTensor& R, const StandardFrame& fr) {
  if (!fr.metric.J) throw std::invalid_argument("ricci: J required");
  std::size_t d = fr.dim();
  const Matrix& J = *fr.metric.J;
  Matrix out(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      // JY = column b of J
      Matrix acc(d, d);
      for (std::size_t s = 0; s < d; ++s) {
        if (J.at(s, b).is_zero() || s == a) continue;
        acc += J.at(s, b) * R.value(a, s);
      }
      out.at(a, b) = Scalar(-1, 2) * (J * acc).trace();
    }
  return out;
}

struct SymmetricPairReport {
  bool in_invariant_space = false;
  bool image_matches = false;
  std::size_t invariant_space_dim = 0;
};

inline SymmetricPairReport verify_symmetric_pair(const MatrixLieAlgebra& hol,
                                                 const CurvatureTensor& R) {
  SymmetricPairReport rep;
  CurvatureSpace inv = invariant_curvature_space(hol);
  rep.invariant_space_dim = inv.dim();
  std::size_t d = hol.ambient_dim();
  std::vector<Vector> rows;
  for (const auto& t : inv.basis) rows.push_back(t.flatten());
  rep.in_invariant_space = Subspace::span(pair_count(d) * d * d, rows).contains(R.flatten());
  std::vector<Vector> img;
  for (const auto& v : R.values()) img.push_back(v.flatten());
  rep.image_matches = Subspace::span(d * d, img) == hol.flat_span();
  return rep;
}

// ---- identification ---------------------------------------------------------

struct SweepCandidate {
  std::string label;
  MatrixLieAlgebra algebra;
};

struct IdentifyResult {
  bool exact = false;
  std::string label;
};

inline IdentifyResult identify(const MatrixLieAlgebra& alg,
                               const std::vector<SweepCandidate>& sweep) {
  for (const auto& cand : sweep) {
    if (cand.algebra.ambient_dim() != alg.ambient_dim()) continue;
    if (cand.algebra.flat_span() == alg.flat_span()) return {true, cand.label};
  }
  return {false, ""};
}

// Bounded default sweep for the frame's dimension; pseudo-Kaehler frames get
// the n = 0 catalog or the small-parameter hol families, Lorentz frames the
// four types over a few stock orthogonal parts.
inline std::vector<SweepCandidate> default_sweep(const StandardFrame& fr);

namespace detail {

inline void push_candidate(std::vector<SweepCandidate>& out, const std::string& label,
                           const FamilySpec& spec) {
  try {
    out.push_back({label, build_algebra(spec).algebra});
  } catch (const std::exception&) {
    // infeasible parameter combination: skip silently
  }
}

}  // namespace detail

inline std::vector<SweepCandidate> default_sweep(const StandardFrame& fr) {
  std::vector<SweepCandidate> out;
  if (fr.is_pk() && fr.n == 0) {
    FamilySpec s;
    s.id = FamilyId::N0Hol1;
    detail::push_candidate(out, "n0-hol1", s);
    s.id = FamilyId::N0Hol2;
    detail::push_candidate(out, "n0-hol2", s);
    for (auto [g1, g2] : std::vector<std::pair<long, long>>{
             {0, 0}, {1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2}}) {
      FamilySpec gs;
      gs.id = FamilyId::N0Gamma;
      gs.gamma1 = Scalar(g1);
      gs.gamma2 = Scalar(g2);
      detail::push_candidate(out,
                             "n0-gamma:" + std::to_string(g1) + ":" + std::to_string(g2), gs);
    }
    return out;
  }
  if (fr.is_pk()) {
    std::size_t n = fr.n;
    std::vector<std::pair<std::string, std::pair<std::vector<Matrix>, std::vector<Matrix>>>>
        uparts;
    uparts.push_back({"u0", {{}, {}}});
    for (std::size_t m = 1; m <= n && m <= 2; ++m) {
      Matrix B(m, m), C(m, m);
      for (std::size_t i = 0; i < m; ++i) C.at(i, i) = Scalar(1);
      uparts.push_back({"uJ" + std::to_string(m), {{B}, {C}}});
    }
    for (const auto& [ulabel, ubc] : uparts) {
      for (std::size_t m = 0; m <= n; ++m) {
        if (!ubc.first.empty() && ubc.first[0].rows() > m) continue;
        std::vector<FamilyId> fams = {FamilyId::HolA1A2t, FamilyId::HolA1Phi,
                                      FamilyId::HolVarphiPhi, FamilyId::HolVarphiA2t,
                                      FamilyId::HolLambda};
        for (FamilyId id : fams) {
          FamilySpec s;
          s.id = id;
          s.n = n;
          s.m = m;
          // resize u blocks to m x m
          for (std::size_t a = 0; a < ubc.first.size(); ++a) {
            Matrix B(m, m), C(m, m);
            for (std::size_t i = 0; i < std::min(m, ubc.first[a].rows()); ++i)
              for (std::size_t j = 0; j < std::min(m, ubc.first[a].rows()); ++j) {
                B.at(i, j) = ubc.first[a].at(i, j);
                C.at(i, j) = ubc.second[a].at(i, j);
              }
            s.u_B.push_back(B);
            s.u_C.push_back(C);
          }
          std::size_t N = s.u_B.size();
          if (id == FamilyId::HolVarphiPhi || id == FamilyId::HolVarphiA2t)
            s.varphi.assign(N, Scalar(1));
          if (id == FamilyId::HolA1Phi || id == FamilyId::HolVarphiPhi)
            s.phi.assign(N, Scalar(2));
          if (id == FamilyId::HolLambda) s.lambda = Scalar(1);
          std::string label = family_name(id) + ":" + ulabel + ":m" + std::to_string(m);
          detail::push_candidate(out, label, s);
        }
      }
    }
    return out;
  }
  // Lorentz sweep: the four types over stock orthogonal parts
  std::size_t n = fr.n;
  std::vector<std::pair<std::string, std::vector<Matrix>>> hparts;
  hparts.push_back({"h0", {}});
  if (n >= 2) {
    hparts.push_back({"so2", {so_generator(n, 1, 2)}});
  }
  if (n == 5) hparts.push_back({"rho-so3", ikemakhen_so3_generators()});
  if (n == 7) hparts.push_back({"g2", g2_generators()});
  if (n == 8) hparts.push_back({"spin7", spin7_generators()});
  for (const auto& [hlabel, hbasis] : hparts) {
    for (FamilyId id : {FamilyId::Lorentz1, FamilyId::Lorentz2}) {
      FamilySpec s;
      s.id = id;
      s.n = n;
      s.u_B = hbasis;
      detail::push_candidate(out, family_name(id) + ":" + hlabel, s);
    }
  }
  return out;
}

}  // namespace holcat
