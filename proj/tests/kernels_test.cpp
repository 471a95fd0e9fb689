#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "qkd/bellcore.hpp"
#include "qkd/detail/rng.hpp"
#include "qkd/kernels.hpp"

using namespace qkd;
namespace k = qkd::kernels;

namespace {

bool bitwise_equal(const k::McAccum& a, const k::McAccum& b) {
  return std::memcmp(&a, &b, sizeof a) == 0;
}

bool equal_counts(const k::PairCounts& a, const k::PairCounts& b) {
  return a.sifted == b.sifted && a.checked == b.checked && a.parallel == b.parallel &&
         a.anti == b.anti;
}

k::PairTable bb84_table(double check_fraction = 1.0) {
  k::PairTable t;
  t.basis_count = 2;
  t.npab = false;
  t.check_fraction = check_fraction;
  t.label_cdf = {0.1, 0.2, 0.3};  // source (0.1, 0.1, 0.1, 0.7)
  t.parallel_prob = {1.0, 1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0};  // z,x rows per label
  return t;
}

k::PairTable six_table() {
  k::PairTable t;
  t.basis_count = 3;
  t.npab = false;
  t.check_fraction = 0.6;
  t.label_cdf = {0.25, 0.5, 0.75};
  t.parallel_prob = {1, 1, 0, 0, 1, 1, 1, 0, 1, 0, 0, 0};
  return t;
}

}  // namespace

TEST_CASE("scalar kernel is always available") {
  CHECK(k::impl_available(k::Impl::scalar));
  CHECK(k::impl_name(k::Impl::scalar) == std::string("scalar"));
  CHECK(k::impl_name(k::Impl::avx2) == std::string("avx2"));
  // active_impl must name an available implementation
  CHECK(k::impl_available(k::active_impl()));
}

TEST_CASE("unit doubles stay in [0, 1)") {
  for (std::uint64_t i = 0; i < 100000; ++i) {
    const double u = detail::to_unit(detail::counter_value(42, i));
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("sincospi2 tracks libm") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = u01(rng);
    const auto sc = detail::sincospi2(u);
    worst = std::max(worst, std::abs(sc.cos_v - std::cos(detail::kTwoPi * u)));
    worst = std::max(worst, std::abs(sc.sin_v - std::sin(detail::kTwoPi * u)));
  }
  CHECK(worst < 5e-13);
  CHECK(detail::sincospi2(0.0).cos_v == 1.0);
  CHECK(detail::sincospi2(0.0).sin_v == 0.0);
}

TEST_CASE("monte carlo accumulation is deterministic") {
  const auto a = k::mc_accumulate(k::McEnsemble::sphere, 0, 5000, 7, k::Impl::scalar);
  const auto b = k::mc_accumulate(k::McEnsemble::sphere, 0, 5000, 7, k::Impl::scalar);
  CHECK(bitwise_equal(a, b));
}

TEST_CASE("monte carlo estimates approach the continuum averages") {
  for (int component : {0, 1, 2}) {
    const auto est = k::mc_parallel_average(k::McEnsemble::sphere, component, 200000, 3);
    CHECK(std::abs(est.mean - 2.0 / 3.0) <= 4.0 * est.std_error);
  }
  const auto plane_x = k::mc_parallel_average(k::McEnsemble::plane, 0, 200000, 3);
  CHECK(std::abs(plane_x.mean - 0.5) <= 4.0 * plane_x.std_error);
  const auto plane_y = k::mc_parallel_average(k::McEnsemble::plane, 1, 200000, 3);
  CHECK(plane_y.mean == 1.0);  // ny = 0 in the z-x plane
}

TEST_CASE("monte carlo integrand equals the projector oracle pointwise") {
  // the kernels integrate 1 - w^2 with w = (nx, ny, nz) per label; check that
  // against exact projector arithmetic on random directions
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double theta = std::acos(1.0 - 2.0 * u01(rng));
    const double phi = 2.0 * detail::kTwoPi * 0.5 * u01(rng);
    const Basis b(theta, phi);
    const auto dir = b.direction();
    CHECK(std::abs(parallel_probability(BellLabel::phi_plus, b) - (1.0 - dir[1] * dir[1])) < 1e-12);
    CHECK(std::abs(parallel_probability(BellLabel::psi_plus, b) - (1.0 - dir[2] * dir[2])) < 1e-12);
    CHECK(std::abs(parallel_probability(BellLabel::phi_minus, b) - (1.0 - dir[0] * dir[0])) < 1e-12);
    CHECK(parallel_probability(BellLabel::psi_minus, b) < 1e-12);
  }
}

TEST_CASE("pair kernel reproduces hand-computable degenerate tables") {
  k::PairTable t = bb84_table();
  // all-singlet source: label cdf puts everything on label 3, which never
  // yields parallel outcomes
  t.label_cdf = {0.0, 0.0, 0.0};
  const auto counts = k::simulate_pairs(t, 40000, 9, k::Impl::scalar);
  CHECK(counts.parallel == 0);
  CHECK(counts.checked == counts.sifted);
  CHECK(counts.anti == counts.checked);
  const double p = 0.5;
  const double se = std::sqrt(p * (1.0 - p) / 40000.0);
  CHECK(std::abs(static_cast<double>(counts.sifted) / 40000.0 - p) <= 4.0 * se);
}

TEST_CASE("pair kernel validates its table") {
  k::PairTable t = bb84_table();
  t.parallel_prob.pop_back();
  CHECK_THROWS_AS(k::simulate_pairs(t, 10, 1, k::Impl::scalar), std::invalid_argument);
  k::PairTable empty;
  CHECK_THROWS_AS(k::simulate_pairs(empty, 10, 1, k::Impl::scalar), std::invalid_argument);
}

TEST_CASE("avx2 and scalar monte carlo accumulators agree bit for bit") {
  if (!k::impl_available(k::Impl::avx2)) return;
  for (auto ensemble : {k::McEnsemble::sphere, k::McEnsemble::plane}) {
    for (int component : {0, 1, 2}) {
      for (std::uint64_t samples : {0ull, 1ull, 3ull, 4ull, 5ull, 17ull, 1024ull, 100003ull}) {
        for (std::uint64_t seed : {0ull, 7ull, 0xDEADBEEFull}) {
          const auto s = k::mc_accumulate(ensemble, component, samples, seed, k::Impl::scalar);
          const auto v = k::mc_accumulate(ensemble, component, samples, seed, k::Impl::avx2);
          REQUIRE(bitwise_equal(s, v));
        }
      }
    }
  }
}

TEST_CASE("avx2 and scalar pair counts agree exactly") {
  if (!k::impl_available(k::Impl::avx2)) return;
  k::PairTable npab = six_table();
  npab.npab = true;
  k::PairTable wide;
  wide.basis_count = 7;
  wide.npab = false;
  wide.check_fraction = 0.35;
  wide.label_cdf = {0.4, 0.45, 0.9};
  wide.parallel_prob.resize(28);
  for (std::size_t i = 0; i < wide.parallel_prob.size(); ++i) {
    wide.parallel_prob[i] = static_cast<double>(i % 5) / 4.0;
  }
  for (const auto& table : {bb84_table(), bb84_table(0.3), six_table(), npab, wide}) {
    for (std::uint64_t pairs : {0ull, 1ull, 7ull, 64ull, 9999ull, 100000ull}) {
      for (std::uint64_t seed : {1ull, 31337ull}) {
        const auto s = k::simulate_pairs(table, pairs, seed, k::Impl::scalar);
        const auto v = k::simulate_pairs(table, pairs, seed, k::Impl::avx2);
        REQUIRE(equal_counts(s, v));
      }
    }
  }
}

TEST_CASE("mc_finish combines lanes in a fixed order") {
  k::McAccum acc;
  acc.sum = {1.0, 2.0, 3.0, 4.0};
  acc.sum_sq = {1.0, 4.0, 9.0, 16.0};
  const auto est = k::mc_finish(acc, 4);
  CHECK(est.mean == doctest::Approx(2.5));
  CHECK(est.std_error == doctest::Approx(std::sqrt((7.5 - 6.25) / 4.0)));
  const auto empty = k::mc_finish(k::McAccum{}, 0);
  CHECK(empty.mean == 0.0);
}
