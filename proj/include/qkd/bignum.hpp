// Minimal arbitrary-precision unsigned integer: just the operations the exact
// multinomial enumeration needs (add, multiply/divide by machine words, log2).

#pragma once

#include <cstdint>
#include <vector>

namespace qkd {

class BigUint {
 public:
  BigUint() = default;
  explicit BigUint(std::uint64_t v);

  bool zero() const noexcept { return limbs_.empty(); }

  void mul_u64(std::uint64_t m);
  // In-place division by a machine word; returns the remainder.
  std::uint64_t div_u64(std::uint64_t d);
  void add(const BigUint& other);

  std::size_t bit_length() const noexcept;
  // log2 of the value; relative accuracy ~1e-16. Requires a nonzero value.
  double log2() const;

 private:
  void trim() noexcept;
  std::vector<std::uint64_t> limbs_;  // little-endian, no trailing zero limbs
};

}  // namespace qkd
