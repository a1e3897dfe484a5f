#pragma once

#include <array>
#include <stdexcept>

#include "g2kit/scalar.hpp"

namespace g2kit {

/// Dense N x N matrix over the active scalar backend, 1-indexed accessors.
template <class S, int N>
class SquareMatrix {
public:
  SquareMatrix() {
    for (auto& row : m_) row.fill(ScalarOps<S>::zero());
  }

  static SquareMatrix identity() {
    SquareMatrix out;
    for (int i = 1; i <= N; ++i) out(i, i) = ScalarOps<S>::one();
    return out;
  }

  S& operator()(int i, int j) { return m_.at(i - 1).at(j - 1); }
  const S& operator()(int i, int j) const { return m_.at(i - 1).at(j - 1); }

  SquareMatrix operator-() const {
    SquareMatrix out;
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) out(i, j) = -(*this)(i, j);
    return out;
  }
  SquareMatrix& operator+=(const SquareMatrix& o) {
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) (*this)(i, j) += o(i, j);
    return *this;
  }
  SquareMatrix& operator-=(const SquareMatrix& o) {
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) (*this)(i, j) -= o(i, j);
    return *this;
  }
  SquareMatrix& operator*=(const S& s) {
    for (auto& row : m_)
      for (auto& v : row) v *= s;
    return *this;
  }
  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
  friend SquareMatrix operator*(SquareMatrix a, const S& s) { return a *= s; }
  friend SquareMatrix operator*(const S& s, SquareMatrix a) { return a *= s; }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix out;
    for (int i = 1; i <= N; ++i)
      for (int k = 1; k <= N; ++k) {
        if (ScalarOps<S>::is_zero(a(i, k))) continue;
        for (int j = 1; j <= N; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }

  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) { return a.m_ == b.m_; }
  friend bool operator!=(const SquareMatrix& a, const SquareMatrix& b) { return !(a == b); }

  SquareMatrix transposed() const {
    SquareMatrix out;
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) out(i, j) = (*this)(j, i);
    return out;
  }

  bool is_zero() const {
    for (const auto& row : m_)
      for (const auto& v : row)
        if (!ScalarOps<S>::is_zero(v)) return false;
    return true;
  }

  double sup_norm() const {
    double best = 0.0;
    for (const auto& row : m_)
      for (const auto& v : row) {
        double x = std::fabs(ScalarOps<S>::to_double(v));
        if (x > best) best = x;
      }
    return best;
  }

private:
  std::array<std::array<S, N>, N> m_;
};

template <class S>
using Matrix7 = SquareMatrix<S, 7>;

template <class S>
using Matrix8 = SquareMatrix<S, 8>;

}  // namespace g2kit
