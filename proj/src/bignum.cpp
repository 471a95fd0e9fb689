#include "qkd/bignum.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qkd {

BigUint::BigUint(std::uint64_t v) {
  if (v != 0) limbs_.push_back(v);
}

void BigUint::trim() noexcept {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

void BigUint::mul_u64(std::uint64_t m) {
  if (m == 0 || zero()) {
    limbs_.clear();
    return;
  }
  unsigned __int128 carry = 0;
  for (auto& limb : limbs_) {
    const unsigned __int128 cur = static_cast<unsigned __int128>(limb) * m + carry;
    limb = static_cast<std::uint64_t>(cur);
    carry = cur >> 64;
  }
  if (carry != 0) limbs_.push_back(static_cast<std::uint64_t>(carry));
}

std::uint64_t BigUint::div_u64(std::uint64_t d) {
  if (d == 0) throw std::invalid_argument("BigUint: division by zero");
  unsigned __int128 rem = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    const unsigned __int128 cur = (rem << 64) | limbs_[i];
    limbs_[i] = static_cast<std::uint64_t>(cur / d);
    rem = cur % d;
  }
  trim();
  return static_cast<std::uint64_t>(rem);
}

void BigUint::add(const BigUint& other) {
  if (other.zero()) return;
  if (limbs_.size() < other.limbs_.size()) limbs_.resize(other.limbs_.size(), 0);
  unsigned __int128 carry = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    unsigned __int128 cur = static_cast<unsigned __int128>(limbs_[i]) + carry;
    if (i < other.limbs_.size()) cur += other.limbs_[i];
    limbs_[i] = static_cast<std::uint64_t>(cur);
    carry = cur >> 64;
    if (carry == 0 && i >= other.limbs_.size()) break;
  }
  if (carry != 0) limbs_.push_back(static_cast<std::uint64_t>(carry));
}

std::size_t BigUint::bit_length() const noexcept {
  if (zero()) return 0;
  return 64 * (limbs_.size() - 1) + std::bit_width(limbs_.back());
}

double BigUint::log2() const {
  if (zero()) throw std::domain_error("BigUint: log2 of zero");
  const std::size_t bits = bit_length();
  const std::size_t top = limbs_.size() - 1;
  const unsigned lead = std::bit_width(limbs_[top]);  // 1..64
  std::uint64_t top64 = limbs_[top];
  if (lead < 64 && top > 0) {
    top64 = (top64 << (64 - lead)) | (limbs_[top - 1] >> lead);
  } else if (lead < 64) {
    top64 <<= (64 - lead);
  }
  // top64 holds the leading 64 bits, MSB-aligned; scale it into [1, 2) so the
  // log2 argument is well conditioned.
  const double mantissa = static_cast<double>(top64) * 0x1.0p-63;
  return static_cast<double>(bits - 1) + std::log2(mantissa);
}

}  // namespace qkd
