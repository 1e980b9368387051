#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gshift {

using elem_t = std::uint32_t;  // element index inside a FiniteGroup
using word_t = std::uint64_t;  // block over an alphabet, mixed-radix big-endian

/// Raised when a construction would exceed the configured element budget.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, std::uint64_t requested, std::uint64_t limit)
      : std::runtime_error(what + " needs " + std::to_string(requested) +
                           " elements, budget is " + std::to_string(limit)),
        requested_(requested),
        limit_(limit) {}

  std::uint64_t requested() const { return requested_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t requested_;
  std::uint64_t limit_;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caps the size of every materialized element set (block groups, closures,
/// direct powers). Blow-ups surface as BudgetError instead of memory
/// exhaustion.
struct Budget {
  std::uint64_t max_elements = 1'000'000;

  void check(std::uint64_t n, const char* what) const {
    if (n > max_elements) throw BudgetError(what, n, max_elements);
  }
};

/// base^exp if it fits into 62 bits, nullopt otherwise.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) {
  constexpr std::uint64_t kMax = std::uint64_t{1} << 62;
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > kMax / base) return std::nullopt;
    r *= base;
  }
  return r;
}

inline void sort_unique(std::vector<word_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

inline bool sorted_contains(std::span<const word_t> v, word_t x) {
  return std::binary_search(v.begin(), v.end(), x);
}

/// Index of x in a sorted vector; the caller guarantees membership.
inline std::size_t sorted_index(std::span<const word_t> v, word_t x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  return static_cast<std::size_t>(it - v.begin());
}

inline std::vector<word_t> sorted_intersection(std::span<const word_t> a,
                                               std::span<const word_t> b) {
  std::vector<word_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool sorted_subset(std::span<const word_t> small, std::span<const word_t> big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace gshift
