#pragma once

// Sparse multivariate polynomials over the exact scalar field.
//
// A Monomial is a fixed-length exponent vector (one slot per variable of the
// ambient ring). Terms are kept in a map ordered by graded lexicographic
// order, which is THE canonical order of the toolkit: serialization walks the
// map, so equal polynomials serialize identically.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "holcat/rational.hpp"

namespace holcat {

using Monomial = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), std::uint64_t{0});
}

// Graded lex: compare total degree first, then exponents left to right.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    std::uint64_t da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

class Polynomial {
public:
  using TermMap = std::map<Monomial, Scalar, GrlexLess>;

  Polynomial() : nvars_(0) {}
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Scalar& c) {
    Polynomial p(nvars);
    if (!c.is_zero()) p.terms_.emplace(Monomial(nvars, 0), c);
    return p;
  }
  static Polynomial variable(std::size_t nvars, std::size_t idx, const Scalar& coef = Scalar(1)) {
    if (idx >= nvars) throw std::out_of_range("Polynomial::variable: index");
    Polynomial p(nvars);
    if (!coef.is_zero()) {
      Monomial m(nvars, 0);
      m[idx] = 1;
      p.terms_.emplace(std::move(m), coef);
    }
    return p;
  }

  std::size_t variable_count() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }
  Scalar constant_value() const {
    if (terms_.empty()) return Scalar(0);
    if (!is_constant()) throw std::domain_error("Polynomial: not constant");
    return terms_.begin()->second;
  }

  std::uint64_t degree() const {
    return terms_.empty() ? 0 : total_degree(terms_.rbegin()->first);
  }

  void add_term(const Monomial& m, const Scalar& c) {
    if (m.size() != nvars_) throw std::invalid_argument("Polynomial: monomial arity");
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Polynomial operator-() const {
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_arity(b);
    Polynomial r(a.nvars_);
    Monomial m(a.nvars_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        for (std::size_t i = 0; i < a.nvars_; ++i) m[i] = ma[i] + mb[i];
        r.add_term(m, ca * cb);
      }
    }
    return r;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial& operator*=(const Scalar& c) {
    if (c.is_zero()) {
      terms_.clear();
    } else {
      for (auto& [m, v] : terms_) v *= c;
    }
    return *this;
  }
  friend Polynomial operator*(Polynomial p, const Scalar& c) { return p *= c; }
  friend Polynomial operator*(const Scalar& c, Polynomial p) { return p *= c; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  // Formal partial derivative with respect to variable var.
  Polynomial partial(std::size_t var) const {
    if (var >= nvars_) throw std::out_of_range("Polynomial::partial: index");
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      Monomial d = m;
      d[var] -= 1;
      r.add_term(d, c * Scalar(static_cast<long>(m[var])));
    }
    return r;
  }

  // Exact substitution.
  Scalar evaluate(const std::vector<Scalar>& point) const {
    if (point.size() != nvars_)
      throw std::invalid_argument("Polynomial::evaluate: point length");
    Scalar acc(0);
    for (const auto& [m, c] : terms_) {
      Scalar t = c;
      for (std::size_t i = 0; i < nvars_; ++i)
        for (std::uint32_t e = 0; e < m[i]; ++e) t *= point[i];
      acc += t;
    }
    return acc;
  }

  // Value at the origin.
  Scalar value_at_zero() const {
    auto it = terms_.find(Monomial(nvars_, 0));
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  // Substitute x_i -> x_i + shift_i (translation of coordinates).
  Polynomial shifted(const std::vector<Scalar>& shift) const {
    if (shift.size() != nvars_)
      throw std::invalid_argument("Polynomial::shifted: shift length");
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
      Polynomial t = Polynomial::constant(nvars_, c);
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (m[i] == 0) continue;
        Polynomial base = Polynomial::variable(nvars_, i);
        base.add_term(Monomial(nvars_, 0), shift[i]);
        for (std::uint32_t e = 0; e < m[i]; ++e) t *= base;
      }
      r += t;
    }
    return r;
  }

  // Drop all terms of total degree above max_deg.
  Polynomial truncated(std::uint64_t max_deg) const {
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
      if (total_degree(m) > max_deg) break;  // grlex order: done
      r.terms_.emplace(m, c);
    }
    return r;
  }

  std::string str(const std::string& varname = "x") const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += c.str();
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (m[i] == 0) continue;
        out += "*" + varname + std::to_string(i + 1);
        if (m[i] > 1) out += "^" + std::to_string(m[i]);
      }
    }
    return out;
  }

private:
  void check_arity(const Polynomial& o) const {
    if (nvars_ != o.nvars_)
      throw std::invalid_argument("Polynomial: variable count mismatch");
  }

  std::size_t nvars_;
  TermMap terms_;
};

}  // namespace holcat
