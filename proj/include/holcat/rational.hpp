#pragma once

// Exact scalars for the holonomy toolkit.
//
// Rational is an arbitrary-precision rational (GMP-backed), always stored
// reduced with positive denominator. Scalar extends it to the real quadratic
// field Q(sqrt(3)) = { a + b*sqrt(3) }, the smallest field containing every
// constant appearing in the source data; for all-rational inputs the radical
// part stays zero and Scalar behaves exactly like Rational.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace holcat {

class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}
  Rational(long n, long d) : v_(n, d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  explicit Rational(const mpz_class& z) : v_(z) {}

  static Rational from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0)
      throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    q.canonicalize();
    return Rational(q);
  }

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  std::string str() const { return v_.get_str(); }
  double to_double() const { return v_.get_d(); }

  const mpq_class& raw() const { return v_; }

private:
  mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

// Element of Q(sqrt(3)): rat + rad*sqrt(3).
class Scalar {
public:
  Scalar() = default;
  Scalar(long n) : rat_(n) {}
  Scalar(long n, long d) : rat_(n, d) {}
  Scalar(const Rational& r) : rat_(r) {}
  Scalar(Rational rat, Rational rad) : rat_(std::move(rat)), rad_(std::move(rad)) {}

  static Scalar sqrt3() { return Scalar(Rational(0), Rational(1)); }

  const Rational& rational_part() const { return rat_; }
  const Rational& radical_part() const { return rad_; }

  bool is_zero() const { return rat_.is_zero() && rad_.is_zero(); }
  bool is_one() const { return rat_.is_one() && rad_.is_zero(); }
  bool is_rational() const { return rad_.is_zero(); }

  // Exact rational value; throws if the radical part is nonzero.
  Rational to_rational() const {
    if (!rad_.is_zero())
      throw std::domain_error("Scalar: not a rational number");
    return rat_;
  }

  Scalar operator-() const { return Scalar(-rat_, -rad_); }
  Scalar& operator+=(const Scalar& o) { rat_ += o.rat_; rad_ += o.rad_; return *this; }
  Scalar& operator-=(const Scalar& o) { rat_ -= o.rat_; rad_ -= o.rad_; return *this; }
  Scalar& operator*=(const Scalar& o) {
    // (a + b s)(c + d s) = ac + 3bd + (ad + bc) s,  s^2 = 3
    Rational a = rat_, b = rad_;
    rat_ = a * o.rat_ + Rational(3) * b * o.rad_;
    rad_ = a * o.rad_ + b * o.rat_;
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_zero()) throw std::domain_error("Scalar: division by zero");
    // 1/(c + d s) = (c - d s)/(c^2 - 3 d^2); the norm is nonzero since
    // sqrt(3) is irrational.
    Rational norm = o.rat_ * o.rat_ - Rational(3) * o.rad_ * o.rad_;
    Scalar conj(o.rat_ / norm, -o.rad_ / norm);
    return *this *= conj;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.rat_ == b.rat_ && a.rad_ == b.rad_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  double to_double() const { return rat_.to_double() + rad_.to_double() * 1.7320508075688772; }

  // "p/q" for rationals, "p/q+r/s*rt3" otherwise; both halves omitted when zero
  // except that plain zero prints "0".
  std::string str() const {
    if (rad_.is_zero()) return rat_.str();
    std::string radpart = rad_.str() + "*rt3";
    if (rat_.is_zero()) return radpart;
    return rat_.str() + (rad_.sign() > 0 ? "+" : "") + radpart;
  }

  static Scalar from_string(const std::string& s) {
    auto pos = s.find("rt3");
    if (pos == std::string::npos) return Scalar(Rational::from_string(s));
    // forms: "R*rt3", "A+R*rt3", "A-R*rt3"
    auto star = s.rfind('*', pos);
    if (star == std::string::npos || star + 4 != pos + 3)
      throw std::invalid_argument("Scalar: cannot parse '" + s + "'");
    std::string radstr = s.substr(0, star);
    std::string ratstr;
    // Split off a leading rational: find the last '+'/'-' that is not part of
    // the rational's own sign (position > 0, previous char a digit).
    for (size_t i = radstr.size(); i-- > 1;) {
      if ((radstr[i] == '+' || radstr[i] == '-') && std::isdigit(static_cast<unsigned char>(radstr[i - 1]))) {
        ratstr = radstr.substr(0, i);
        radstr = radstr.substr(radstr[i] == '+' ? i + 1 : i);
        break;
      }
    }
    Rational rat = ratstr.empty() ? Rational(0) : Rational::from_string(ratstr);
    return Scalar(rat, Rational::from_string(radstr));
  }

private:
  Rational rat_;
  Rational rad_;
};

}  // namespace holcat
