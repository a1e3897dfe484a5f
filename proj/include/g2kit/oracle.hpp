#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "g2kit/form.hpp"

// Independent dense reference implementations. Everything here works on the
// full antisymmetric coefficient tensor with raw index loops and factorial
// normalizations, never through the sparse kernel's merge-sign paths; the
// verify suite and the unit tests compare the two.

namespace g2kit::oracle {

inline int perm_sign(const std::vector<int>& v) {
  int sign = 1;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j) {
      if (v[i] == v[j]) return 0;
      if (v[i] > v[j]) sign = -sign;
    }
  return sign;
}

/// Dense grade-k tensor, indexed by arbitrary tuples in {1..7}^k.
template <class S>
class DenseForm {
public:
  explicit DenseForm(int grade) : grade_(grade) {}

  static DenseForm from_sparse(const Form<S>& f) {
    DenseForm d(f.grade());
    const auto& masks = masks_of_grade(f.grade());
    for (size_t i = 0; i < masks.size(); ++i) d.sorted_[i] = f.coeff(masks[i]);
    return d;
  }

  int grade() const { return grade_; }

  /// Fully antisymmetric value at an arbitrary tuple.
  S at(const std::vector<int>& idx) const {
    std::vector<int> v = idx;
    int sign = perm_sign(v);
    if (sign == 0) return ScalarOps<S>::zero();
    std::sort(v.begin(), v.end());
    size_t pos = 0;
    const auto& masks = masks_of_grade(grade_);
    Mask m = 0;
    for (int i : v) m |= bit_of(i);
    for (; pos < masks.size(); ++pos)
      if (masks[pos] == m) break;
    S c = sorted_.at(pos);
    return sign > 0 ? c : -c;
  }

  void set_sorted(size_t pos, const S& v) { sorted_.at(pos) = v; }

  Form<S> to_sparse() const {
    Form<S> f(grade_);
    const auto& masks = masks_of_grade(grade_);
    for (size_t i = 0; i < masks.size(); ++i) f.set(masks[i], sorted_[i]);
    return f;
  }

private:
  int grade_;
  std::vector<S> sorted_ = std::vector<S>(masks_of_grade(grade_).size(), ScalarOps<S>::zero());
};

/// All tuples {1..7}^k, by odometer.
inline bool next_tuple(std::vector<int>& t) {
  for (int pos = static_cast<int>(t.size()) - 1; pos >= 0; --pos) {
    if (t[pos] < kDim) {
      ++t[pos];
      return true;
    }
    t[pos] = 1;
  }
  return false;
}

/// (a ∧ b)_J = (1/(p! q!)) sum_{sigma in S_{p+q}} sgn(sigma)
///             a(J_sigma(1..p)) b(J_sigma(p+1..p+q)), per sorted J.
template <class S>
Form<S> wedge(const Form<S>& a, const Form<S>& b) {
  int p = a.grade(), q = b.grade();
  auto da = DenseForm<S>::from_sparse(a);
  auto db = DenseForm<S>::from_sparse(b);
  Form<S> out(p + q);
  S norm = ScalarOps<S>::fraction(1, 1);
  for (long f = 2; f <= p; ++f) norm = norm / ScalarOps<S>::from_long(f);
  for (long f = 2; f <= q; ++f) norm = norm / ScalarOps<S>::from_long(f);
  for (Mask m : masks_of_grade(p + q)) {
    auto base = indices_of(m);
    std::vector<int> perm(base.size());
    std::iota(perm.begin(), perm.end(), 0);
    S acc = ScalarOps<S>::zero();
    do {
      std::vector<int> left, right;
      for (int i = 0; i < p; ++i) left.push_back(base[perm[i]]);
      for (int i = p; i < p + q; ++i) right.push_back(base[perm[i]]);
      std::vector<int> whole;
      for (int i : perm) whole.push_back(i);
      int s = perm_sign(whole);
      S term = da.at(left) * db.at(right);
      acc += s > 0 ? term : -term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    // next_permutation needs the identity ordering restored per mask
    out.set(m, acc * norm);
  }
  return out;
}

/// (a ⌟ b)_J = (1/p!) sum over full tuples I of a_I b_{IJ}.
template <class S>
Form<S> contract(const Form<S>& a, const Form<S>& b) {
  int p = a.grade();
  auto da = DenseForm<S>::from_sparse(a);
  auto db = DenseForm<S>::from_sparse(b);
  Form<S> out(b.grade() - p);
  S norm = ScalarOps<S>::one();
  for (long f = 2; f <= p; ++f) norm = norm / ScalarOps<S>::from_long(f);
  for (Mask m : masks_of_grade(b.grade() - p)) {
    auto j = indices_of(m);
    S acc = ScalarOps<S>::zero();
    if (p == 0) {
      acc = da.at({}) * db.at(j);
    } else {
      std::vector<int> i(p, 1);
      do {
        std::vector<int> full = i;
        full.insert(full.end(), j.begin(), j.end());
        acc += da.at(i) * db.at(full);
      } while (next_tuple(i));
    }
    out.set(m, acc * norm);
  }
  return out;
}

/// (⋆a)_J = (1/p!) sum_I a_I eps_{I J} against vol = e^{1..7}.
template <class S>
Form<S> hodge(const Form<S>& a) {
  int p = a.grade();
  auto da = DenseForm<S>::from_sparse(a);
  Form<S> out(kDim - p);
  S norm = ScalarOps<S>::one();
  for (long f = 2; f <= p; ++f) norm = norm / ScalarOps<S>::from_long(f);
  for (Mask m : masks_of_grade(kDim - p)) {
    auto j = indices_of(m);
    S acc = ScalarOps<S>::zero();
    if (p == 0) {
      std::vector<int> full = j;
      int s = perm_sign(full);
      if (s != 0) acc = s > 0 ? da.at({}) : -da.at({});
    } else {
      std::vector<int> i(p, 1);
      do {
        std::vector<int> full = i;
        full.insert(full.end(), j.begin(), j.end());
        int s = perm_sign(full);
        if (s == 0) continue;
        S term = da.at(i);
        acc += s > 0 ? term : -term;
      } while (next_tuple(i));
    }
    out.set(m, acc * norm);
  }
  return out;
}

/// (i_X a)(j_2..j_k) = sum_i X_i a(i, j_2..j_k).
template <class S>
Form<S> interior(const Vector<S>& x, const Form<S>& a) {
  auto da = DenseForm<S>::from_sparse(a);
  Form<S> out(a.grade() - 1);
  for (Mask m : masks_of_grade(a.grade() - 1)) {
    auto j = indices_of(m);
    S acc = ScalarOps<S>::zero();
    for (int i = 1; i <= kDim; ++i) {
      std::vector<int> full{i};
      full.insert(full.end(), j.begin(), j.end());
      acc += x[i] * da.at(full);
    }
    out.set(m, acc);
  }
  return out;
}

}  // namespace g2kit::oracle
