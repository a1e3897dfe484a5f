#pragma once

#include <cstdint>

#include "g2kit/form.hpp"

namespace g2kit {

/// SplitMix64 stream. Chosen over std::mt19937 so the exact byte-level
/// sequence is three lines of documentation and reproducible from any
/// language (see README).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n).
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  /// Random rational p/q with |p| <= 16, 1 <= q <= 16 (then reduced).
  template <class S>
  S next_scalar() {
    long num = static_cast<long>(next_below(33)) - 16;
    long den = static_cast<long>(next_below(16)) + 1;
    return ScalarOps<S>::fraction(num, den);
  }

  /// Random k-form with one such rational per sorted multi-index.
  template <class S>
  Form<S> next_form(int grade) {
    Form<S> f(grade);
    for (Mask m : masks_of_grade(grade)) f.set(m, next_scalar<S>());
    return f;
  }

  template <class S>
  Vector<S> next_vector() {
    Vector<S> v;
    for (int i = 1; i <= kDim; ++i) v[i] = next_scalar<S>();
    return v;
  }

private:
  std::uint64_t state_;
};

}  // namespace g2kit
