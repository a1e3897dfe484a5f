#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace g2kit {

inline constexpr int kDim = 7;
inline constexpr std::uint8_t kFullMask = 0x7f;

/// Sorted multi-indices over {1..7} are encoded as bitmasks: bit i-1 <-> index i.
using Mask = std::uint8_t;

inline int grade_of(Mask m) { return std::popcount(static_cast<unsigned>(m)); }

inline Mask bit_of(int index) {
  if (index < 1 || index > kDim) throw std::out_of_range("index out of 1..7");
  return static_cast<Mask>(1u << (index - 1));
}

inline bool contains(Mask m, int index) { return (m & bit_of(index)) != 0; }

inline std::vector<int> indices_of(Mask m) {
  std::vector<int> out;
  for (int i = 1; i <= kDim; ++i)
    if (contains(m, i)) out.push_back(i);
  return out;
}

inline Mask mask_of(std::initializer_list<int> idx) {
  Mask m = 0;
  for (int i : idx) {
    Mask b = bit_of(i);
    if (m & b) throw std::invalid_argument("repeated index in multi-index");
    m |= b;
  }
  return m;
}

/// "127" style key for a mask, digits strictly increasing.
inline std::string mask_key(Mask m) {
  std::string s;
  for (int i = 1; i <= kDim; ++i)
    if (contains(m, i)) s += static_cast<char>('0' + i);
  return s;
}

inline Mask parse_mask_key(const std::string& key) {
  Mask m = 0;
  int prev = 0;
  for (char c : key) {
    int i = c - '0';
    if (i < 1 || i > kDim || i <= prev)
      throw std::invalid_argument("bad multi-index key '" + key + "'");
    m |= bit_of(i);
    prev = i;
  }
  return m;
}

/// Sign of sorting the concatenation (sorted A, sorted B) into sorted A|B;
/// 0 when the index sets overlap.
inline int merge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int inversions = 0;
  for (int j = 1; j <= kDim; ++j) {
    if (!contains(b, j)) continue;
    // elements of a larger than j must jump over j
    unsigned higher = a & ~((1u << j) - 1u);
    inversions += std::popcount(higher);
  }
  return (inversions & 1) ? -1 : 1;
}

/// Sign picked up when index j is pulled out of the front of e^M (j in M).
inline int removal_sign(Mask m, int j) {
  unsigned lower = m & ((1u << (j - 1)) - 1u);
  return (std::popcount(lower) & 1) ? -1 : 1;
}

/// All masks of a given grade, ascending as integers.
inline const std::vector<Mask>& masks_of_grade(int k) {
  static const std::array<std::vector<Mask>, kDim + 1> table = [] {
    std::array<std::vector<Mask>, kDim + 1> t;
    for (unsigned m = 0; m <= kFullMask; ++m)
      t[grade_of(static_cast<Mask>(m))].push_back(static_cast<Mask>(m));
    return t;
  }();
  if (k < 0 || k > kDim) throw std::out_of_range("grade out of 0..7");
  return table[k];
}

/// Sorts a tuple of distinct indices, returning the permutation sign
/// and the mask; sign 0 when an index repeats.
inline int sort_sign(std::vector<int> idx, Mask& mask_out) {
  int sign = 1;
  for (size_t i = 0; i + 1 < idx.size(); ++i)
    for (size_t j = 0; j + 1 < idx.size() - i; ++j)
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
  Mask m = 0;
  for (int i : idx) {
    Mask b = bit_of(i);
    if (m & b) return 0;
    m |= b;
  }
  mask_out = m;
  return sign;
}

}  // namespace g2kit
