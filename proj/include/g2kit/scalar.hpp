#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace g2kit {

/// Exact rational scalar. Stored in lowest terms with positive denominator
/// (gmp canonical form); all arithmetic stays exact.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(static_cast<long>(n)) {}
  Rational(long n, long d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  /// Parses "p", "-p" or "p/q". Throws on malformed input or q == 0.
  static Rational parse(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0)
      throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    if (sgn(q.get_den()) == 0)
      throw std::invalid_argument("Rational: zero denominator in '" + s + "'");
    q.canonicalize();
    return Rational(q);
  }

  std::string str() const { return v_.get_str(); }
  double to_double() const { return v_.get_d(); }
  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }

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
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

private:
  mpq_class v_;
};

/// Backend glue shared by the exact and binary64 scalar types.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
  static constexpr const char* backend_name = "exact";
  static constexpr double zero_tol = 0.0;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_long(long n) { return Rational(n); }
  static Rational fraction(long n, long d) { return Rational(n, d); }
  static bool is_zero(const Rational& s) { return s.is_zero(); }
  static double to_double(const Rational& s) { return s.to_double(); }
  static Rational abs(const Rational& s) { return s.sign() < 0 ? -s : s; }
};

template <>
struct ScalarOps<double> {
  static constexpr const char* backend_name = "f64";
  static constexpr double zero_tol = 1e-14;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_long(long n) { return static_cast<double>(n); }
  static double fraction(long n, long d) {
    return static_cast<double>(n) / static_cast<double>(d);
  }
  static bool is_zero(double s) { return s == 0.0; }
  static double to_double(double s) { return s; }
  static double abs(double s) { return std::fabs(s); }
};

}  // namespace g2kit
