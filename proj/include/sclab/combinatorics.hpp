#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sclab {

using BigInt = boost::multiprecision::cpp_int;

// Calls fn(indices) for every k-subset of {0..n-1} in lexicographic order.
// fn returns false to stop early; the function then returns false.
template <class Fn>
bool for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(static_cast<const std::vector<std::size_t>&>(idx))) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Calls fn(indices) for every size-k multiset of {0..n-1}, as non-decreasing
// sequences in lexicographic order.
template <class Fn>
bool for_each_multiset(std::size_t n, std::size_t k, Fn&& fn) {
  if (n == 0) return k == 0 ? fn(std::vector<std::size_t>{}) : true;
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    if (!fn(static_cast<const std::vector<std::size_t>&>(idx))) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[i - 1];
  }
}

inline BigInt binomial_big(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = k < n - k ? k : n - k;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// C(n, k) saturating at UINT64_MAX.
inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = k < n - k ? k : n - k;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace sclab
