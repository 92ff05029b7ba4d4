#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace stablecalc {

/// Bitmask over variable indices 0..n-1; bit i set means i is in the set.
using Subset = std::uint32_t;

constexpr Subset full_set(std::size_t n) {
  return n == 0 ? Subset{0} : static_cast<Subset>((std::uint64_t{1} << n) - 1);
}

constexpr Subset singleton(std::size_t i) { return Subset{1} << i; }

constexpr bool contains(Subset s, std::size_t i) { return ((s >> i) & 1U) != 0; }

constexpr int subset_size(Subset s) { return std::popcount(s); }

inline Subset subset_from_indices(std::span<const std::size_t> indices, std::size_t n) {
  Subset s = 0;
  for (std::size_t i : indices) {
    if (i >= n) {
      throw std::out_of_range("subset index " + std::to_string(i) + " outside 0.." +
                              std::to_string(n == 0 ? 0 : n - 1));
    }
    s |= singleton(i);
  }
  return s;
}

inline std::vector<std::size_t> subset_indices(Subset s) {
  std::vector<std::size_t> out;
  out.reserve(static_cast<std::size_t>(std::popcount(s)));
  while (s != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

/// Calls f(u) for every u contained in s, in decreasing bitmask order (s first, empty last).
template <class F>
void for_each_submask(Subset s, F&& f) {
  for (Subset u = s;; u = (u - 1) & s) {
    f(u);
    if (u == 0) break;
  }
}

}  // namespace stablecalc
