#pragma once

#include <array>
#include <utility>

#include "g2kit/g2.hpp"
#include "g2kit/matrix.hpp"

namespace g2kit {

/// Element of the real spinor space Delta_7 = R^8.
template <class S>
class Spinor {
public:
  Spinor() { comps_.fill(ScalarOps<S>::zero()); }

  /// eta0 = (1, 0, ..., 0), the spinor stabilized by G2.
  static Spinor eta0() {
    Spinor s;
    s[1] = ScalarOps<S>::one();
    return s;
  }

  S& operator[](int i) { return comps_.at(i - 1); }
  const S& operator[](int i) const { return comps_.at(i - 1); }

  bool is_zero() const {
    for (const auto& c : comps_)
      if (!ScalarOps<S>::is_zero(c)) return false;
    return true;
  }

  S inner(const Spinor& o) const {
    S acc = ScalarOps<S>::zero();
    for (int i = 0; i < 8; ++i) acc += comps_[i] * o.comps_[i];
    return acc;
  }

  double sup_norm() const {
    double m = 0.0;
    for (const auto& c : comps_) m = std::max(m, std::fabs(ScalarOps<S>::to_double(c)));
    return m;
  }

  Spinor operator-() const {
    Spinor s;
    for (int i = 0; i < 8; ++i) s.comps_[i] = -comps_[i];
    return s;
  }
  Spinor& operator+=(const Spinor& o) {
    for (int i = 0; i < 8; ++i) comps_[i] += o.comps_[i];
    return *this;
  }
  Spinor& operator-=(const Spinor& o) {
    for (int i = 0; i < 8; ++i) comps_[i] -= o.comps_[i];
    return *this;
  }
  Spinor& operator*=(const S& s) {
    for (auto& c : comps_) c *= s;
    return *this;
  }
  friend Spinor operator+(Spinor a, const Spinor& b) { return a += b; }
  friend Spinor operator-(Spinor a, const Spinor& b) { return a -= b; }
  friend Spinor operator*(Spinor a, const S& s) { return a *= s; }
  friend Spinor operator*(const S& s, Spinor a) { return a *= s; }
  friend bool operator==(const Spinor& a, const Spinor& b) { return a.comps_ == b.comps_; }

private:
  std::array<S, 8> comps_;
};

namespace detail {

// Generator tables: e_i = sum of signed E_{ab}, where E_{ab} has -1 at
// (a, b) and +1 at (b, a).
struct EPair {
  int a, b, sign;
};
inline constexpr std::array<std::array<EPair, 4>, 7> kGeneratorPairs{{
    {{{1, 8, +1}, {2, 7, +1}, {3, 6, -1}, {4, 5, -1}}},
    {{{1, 7, -1}, {2, 8, +1}, {3, 5, +1}, {4, 6, -1}}},
    {{{1, 6, -1}, {2, 5, +1}, {3, 8, -1}, {4, 7, +1}}},
    {{{1, 5, -1}, {2, 6, -1}, {3, 7, -1}, {4, 8, -1}}},
    {{{1, 3, -1}, {2, 4, -1}, {5, 7, +1}, {6, 8, +1}}},
    {{{1, 4, +1}, {2, 3, -1}, {5, 8, -1}, {6, 7, +1}}},
    {{{1, 2, +1}, {3, 4, -1}, {5, 6, -1}, {7, 8, +1}}},
}};

}  // namespace detail

/// The i-th Clifford generator acting on Delta_7 (skew-symmetric, orthogonal,
/// e_i e_j + e_j e_i = -2 delta_ij).
template <class S>
const Matrix8<S>& cliff_generator(int i) {
  if (i < 1 || i > kDim) throw std::out_of_range("cliff_generator: index out of 1..7");
  static const std::array<Matrix8<S>, 7> table = [] {
    std::array<Matrix8<S>, 7> t;
    for (int g = 0; g < 7; ++g)
      for (const auto& p : detail::kGeneratorPairs[g]) {
        S v = ScalarOps<S>::from_long(p.sign);
        t[g](p.a, p.b) -= v;
        t[g](p.b, p.a) += v;
      }
    return t;
  }();
  return table[i - 1];
}

template <class S>
Spinor<S> apply(const Matrix8<S>& m, const Spinor<S>& s) {
  Spinor<S> out;
  for (int i = 1; i <= 8; ++i) {
    S acc = ScalarOps<S>::zero();
    for (int j = 1; j <= 8; ++j) acc += m(i, j) * s[j];
    out[i] = acc;
  }
  return out;
}

/// 8x8 operator of a k-form: sum over sorted multi-indices of
/// a_I e_{i1} ... e_{ik}. On 2-forms this is the half-normalized so(7)
/// embedding of the antisymmetric coefficient tensor.
template <class S>
Matrix8<S> clifford_operator(const Form<S>& a) {
  Matrix8<S> out;
  for (const auto& [mask, c] : a.coeffs()) {
    Matrix8<S> prod = Matrix8<S>::identity();
    for (int i : indices_of(mask)) prod = prod * cliff_generator<S>(i);
    out += prod * c;
  }
  return out;
}

/// Clifford action of a form on a spinor.
template <class S>
Spinor<S> act(const Form<S>& a, const Spinor<S>& s) {
  Spinor<S> out;
  for (const auto& [mask, c] : a.coeffs()) {
    Spinor<S> v = s;
    auto idx = indices_of(mask);
    for (auto it = idx.rbegin(); it != idx.rend(); ++it)
      v = apply(cliff_generator<S>(*it), v);
    out += v * c;
  }
  return out;
}

/// Dirac-type action of a 3-form: sum_j e^j . (e_j ⌟ a) . s. The inner
/// 2-form acts through the so(7) embedding e^{ab} -> (1/2) e_a e_b on full
/// coefficients, i.e. half the sorted Clifford product.
template <class S>
Spinor<S> slashed_act(const Form<S>& a, const Spinor<S>& s) {
  if (a.grade() != 3) throw std::invalid_argument("slashed_act: expects a 3-form");
  Spinor<S> out;
  for (int j = 1; j <= kDim; ++j) {
    Spinor<S> v = act(interior(Vector<S>::basis(j), a), s);
    out += apply(cliff_generator<S>(j), v);
  }
  return out * ScalarOps<S>::fraction(1, 2);
}

/// Membership test for g2 = { beta in Lambda^2 : beta . eta0 = 0 }, returning
/// the residual spinor alongside the verdict.
template <class S>
std::pair<bool, Spinor<S>> is_g2_2form(const Form<S>& b, double tol = 0.0) {
  if (b.grade() != 2) throw std::invalid_argument("is_g2_2form: expects a 2-form");
  Spinor<S> r = act(b, Spinor<S>::eta0());
  bool ok = (tol == 0.0) ? r.is_zero() : (r.sup_norm() <= tol);
  return {ok, r};
}

/// 3-form of a nonzero spinor, unit-normalized. The sign is fixed so that
/// eta0 maps back to phi0, consistently with phi0 . eta0 = -7 eta0:
/// phi(X,Y,Z) = -<X.Y.Z.s, s> / <s,s>.
template <class S>
Form<S> phi_from_spinor(const Spinor<S>& s) {
  if (s.is_zero()) throw std::invalid_argument("phi_from_spinor: zero spinor");
  S n = s.inner(s);
  Form<S> phi(3);
  for (Mask m : masks_of_grade(3)) {
    auto idx = indices_of(m);
    Spinor<S> v = s;
    v = apply(cliff_generator<S>(idx[2]), v);
    v = apply(cliff_generator<S>(idx[1]), v);
    v = apply(cliff_generator<S>(idx[0]), v);
    phi.set(m, -(v.inner(s) / n));
  }
  return phi;
}

/// gamma with [act(a, .), act(b, .)] = act(gamma, .) as operators on
/// Delta_7: gamma = 2 sum_j (e_j ⌟ a) ∧ (e_j ⌟ b). The factor 2 pairs with
/// the sorted-product normalization of act on 2-forms.
template <class S>
Form<S> commutator_form(const Form<S>& a, const Form<S>& b) {
  if (a.grade() != 2 || b.grade() != 2)
    throw std::invalid_argument("commutator_form: expects 2-forms");
  Form<S> out(2);
  for (int j = 1; j <= kDim; ++j) {
    Vector<S> ej = Vector<S>::basis(j);
    out += wedge(interior(ej, a), interior(ej, b));
  }
  return out * ScalarOps<S>::from_long(2);
}

}  // namespace g2kit
