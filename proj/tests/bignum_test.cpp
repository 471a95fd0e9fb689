#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qkd/bignum.hpp"

using qkd::BigUint;

TEST_CASE("construction and zero") {
  CHECK(BigUint().zero());
  CHECK(BigUint(0).zero());
  CHECK(!BigUint(1).zero());
  CHECK(BigUint(1).bit_length() == 1);
  CHECK(BigUint(255).bit_length() == 8);
  CHECK(BigUint().bit_length() == 0);
}

TEST_CASE("addition carries across limbs") {
  BigUint a(0xFFFFFFFFFFFFFFFFULL);
  a.add(BigUint(1));
  CHECK(a.bit_length() == 65);
  CHECK(a.log2() == 64.0);

  BigUint b(0xFFFFFFFFFFFFFFFFULL);
  b.add(b);  // self-add must be safe
  CHECK(b.bit_length() == 65);
  CHECK(std::abs(b.log2() - std::log2(2.0 * 18446744073709551615.0)) < 1e-12);

  BigUint c;
  c.add(BigUint(7));
  CHECK(std::abs(c.log2() - std::log2(7.0)) < 5e-15);
}

TEST_CASE("multiplication grows across limbs") {
  BigUint a(1);
  a.mul_u64(1ULL << 63);
  a.mul_u64(1ULL << 63);
  CHECK(a.bit_length() == 127);
  CHECK(a.log2() == 126.0);

  a.mul_u64(0);
  CHECK(a.zero());
}

TEST_CASE("division by words is exact with remainders") {
  BigUint a(1);
  for (int i = 0; i < 13; ++i) a.mul_u64(1000000000ULL);  // 10^117
  BigUint b = a;
  CHECK(b.div_u64(1000000000ULL) == 0);
  CHECK(std::abs(b.log2() - 108.0 * std::log2(10.0)) < 1e-9);

  BigUint r(10);
  CHECK(r.div_u64(3) == 1);
  CHECK(std::abs(r.log2() - std::log2(3.0)) < 5e-15);

  CHECK_THROWS_AS(BigUint(5).div_u64(0), std::invalid_argument);
}

TEST_CASE("log2 of a large factorial matches lgamma") {
  BigUint f(1);
  for (std::uint64_t k = 2; k <= 200; ++k) f.mul_u64(k);
  const double expected = std::lgamma(201.0) / std::log(2.0);
  CHECK(std::abs(f.log2() - expected) < 1e-9 * expected);
  CHECK_THROWS_AS(BigUint().log2(), std::domain_error);
}
