#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <utility>

#include "g2kit/multiindex.hpp"
#include "g2kit/scalar.hpp"

namespace g2kit {

/// Alternating k-form on R^7, sparse over sorted multi-indices. Values are
/// immutable in spirit: every operation returns a fresh form.
template <class S>
class Form {
public:
  using scalar_type = S;

  explicit Form(int grade = 0) : grade_(check_grade(grade)) {}

  static Form basis(Mask m) {
    Form f(grade_of(m));
    f.coeffs_[m] = ScalarOps<S>::one();
    return f;
  }
  static Form basis(std::initializer_list<int> idx) { return basis(mask_of(idx)); }

  int grade() const { return grade_; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::map<Mask, S>& coeffs() const { return coeffs_; }

  /// Coefficient at a sorted multi-index.
  S coeff(Mask m) const {
    auto it = coeffs_.find(m);
    return it == coeffs_.end() ? ScalarOps<S>::zero() : it->second;
  }

  /// Fully antisymmetric coefficient at an arbitrary index tuple.
  S at(std::initializer_list<int> idx) const { return at(std::vector<int>(idx)); }
  S at(const std::vector<int>& idx) const {
    if (static_cast<int>(idx.size()) != grade_)
      throw std::invalid_argument("Form::at: tuple length != grade");
    Mask m = 0;
    int sign = sort_sign(idx, m);
    if (sign == 0) return ScalarOps<S>::zero();
    S c = coeff(m);
    return sign > 0 ? c : -c;
  }

  void set(Mask m, const S& v) {
    if (grade_of(m) != grade_)
      throw std::invalid_argument("Form::set: index grade mismatch");
    if (ScalarOps<S>::is_zero(v))
      coeffs_.erase(m);
    else
      coeffs_[m] = v;
  }

  void add(Mask m, const S& v) { set(m, coeff(m) + v); }

  Form operator-() const {
    Form out(grade_);
    for (const auto& [m, c] : coeffs_) out.coeffs_[m] = -c;
    return out;
  }

  Form& operator+=(const Form& o) {
    require_same_grade(o);
    for (const auto& [m, c] : o.coeffs_) add(m, c);
    return *this;
  }
  Form& operator-=(const Form& o) {
    require_same_grade(o);
    for (const auto& [m, c] : o.coeffs_) add(m, -c);
    return *this;
  }
  Form& operator*=(const S& s) {
    if (ScalarOps<S>::is_zero(s)) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [m, c] : coeffs_) c *= s;
    return *this;
  }

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form f, const S& s) { return f *= s; }
  friend Form operator*(const S& s, Form f) { return f *= s; }

  friend bool operator==(const Form& a, const Form& b) {
    return a.grade_ == b.grade_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

private:
  static int check_grade(int g) {
    if (g < 0 || g > kDim) throw std::invalid_argument("Form: grade out of 0..7");
    return g;
  }
  void require_same_grade(const Form& o) const {
    if (grade_ != o.grade_) throw std::invalid_argument("Form: grade mismatch");
  }

  int grade_;
  std::map<Mask, S> coeffs_;
};

/// Tangent vector, identified with a 1-form through the Euclidean metric.
template <class S>
class Vector {
public:
  Vector() { comps_.fill(ScalarOps<S>::zero()); }

  static Vector basis(int i) {
    Vector v;
    v[i] = ScalarOps<S>::one();
    return v;
  }

  S& operator[](int i) { return comps_.at(check(i) - 1); }
  const S& operator[](int i) const { return comps_.at(check(i) - 1); }

  friend bool operator==(const Vector& a, const Vector& b) { return a.comps_ == b.comps_; }

private:
  static int check(int i) {
    if (i < 1 || i > kDim) throw std::out_of_range("Vector index out of 1..7");
    return i;
  }
  std::array<S, kDim> comps_;
};

template <class S>
Form<S> flat(const Vector<S>& v) {
  Form<S> f(1);
  for (int i = 1; i <= kDim; ++i) f.set(bit_of(i), v[i]);
  return f;
}

template <class S>
Vector<S> sharp(const Form<S>& f) {
  if (f.grade() != 1) throw std::invalid_argument("sharp: expects a 1-form");
  Vector<S> v;
  for (int i = 1; i <= kDim; ++i) v[i] = f.coeff(bit_of(i));
  return v;
}

/// Exterior product. Grades must fit inside dimension 7; overflow signals a
/// degree-bookkeeping bug in the caller and is rejected.
template <class S>
Form<S> wedge(const Form<S>& a, const Form<S>& b) {
  int g = a.grade() + b.grade();
  if (g > kDim) throw std::invalid_argument("wedge: grade overflow beyond 7");
  Form<S> out(g);
  for (const auto& [ma, ca] : a.coeffs())
    for (const auto& [mb, cb] : b.coeffs()) {
      int sign = merge_sign(ma, mb);
      if (sign == 0) continue;
      S term = ca * cb;
      out.add(static_cast<Mask>(ma | mb), sign > 0 ? term : -term);
    }
  return out;
}

/// Interior product i_X a; anti-derivation of degree -1.
template <class S>
Form<S> interior(const Vector<S>& x, const Form<S>& a) {
  if (a.grade() == 0) throw std::invalid_argument("interior: grade-0 form");
  Form<S> out(a.grade() - 1);
  for (const auto& [m, c] : a.coeffs())
    for (int j = 1; j <= kDim; ++j) {
      if (!contains(m, j) || ScalarOps<S>::is_zero(x[j])) continue;
      S term = x[j] * c;
      out.add(static_cast<Mask>(m & ~bit_of(j)),
              removal_sign(m, j) > 0 ? term : -term);
    }
  return out;
}

/// p-fold contraction a ⌟ b for p = grade(a) <= grade(b):
/// (a⌟b)_J = (1/p!) sum_I a_I b_{IJ} over full index ranges. The permutation
/// sum collapses to one signed term per sorted pair, so no factorial appears.
template <class S>
Form<S> contract(const Form<S>& a, const Form<S>& b) {
  if (a.grade() > b.grade())
    throw std::invalid_argument("contract: grade(a) > grade(b)");
  Form<S> out(b.grade() - a.grade());
  for (const auto& [ma, ca] : a.coeffs())
    for (const auto& [mb, cb] : b.coeffs()) {
      if ((ma & mb) != ma) continue;
      Mask rest = static_cast<Mask>(mb & ~ma);
      int sign = merge_sign(ma, rest);  // b_{IJ} with I in the leading slots
      S term = ca * cb;
      out.add(rest, sign > 0 ? term : -term);
    }
  return out;
}

/// Hodge star for the Euclidean metric and orientation vol = e^{1234567}.
/// Satisfies a ∧ ⋆b = <a,b> vol and ⋆⋆ = id.
template <class S>
Form<S> hodge(const Form<S>& a) {
  Form<S> out(kDim - a.grade());
  for (const auto& [m, c] : a.coeffs()) {
    Mask comp = static_cast<Mask>(kFullMask & ~m);
    int sign = merge_sign(m, comp);
    out.add(comp, sign > 0 ? c : -c);
  }
  return out;
}

/// Hodge inner product of equal-grade forms.
template <class S>
S inner(const Form<S>& a, const Form<S>& b) {
  if (a.grade() != b.grade()) throw std::invalid_argument("inner: grade mismatch");
  S acc = ScalarOps<S>::zero();
  for (const auto& [m, c] : a.coeffs()) acc += c * b.coeff(m);
  return acc;
}

template <class S>
S norm2(const Form<S>& a) {
  return inner(a, a);
}

/// Largest |coefficient|, as a double; handy for residual reporting.
template <class S>
double sup_norm(const Form<S>& a) {
  double m = 0.0;
  for (const auto& [mask, c] : a.coeffs()) {
    double v = std::fabs(ScalarOps<S>::to_double(c));
    if (v > m) m = v;
  }
  return m;
}

}  // namespace g2kit
