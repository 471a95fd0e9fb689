// Data-parallel inner loops: Monte Carlo averaging of parallel-outcome
// probabilities over basis ensembles, and pair-level protocol sampling.
//
// Each kernel exists as a scalar reference and an AVX2 variant selected at
// runtime. Both follow the same counter-based draw layout and the same
// floating-point operation order, so their outputs are bit-identical; the
// equivalence tests assert exactly that. Runtime selection therefore never
// changes results, only speed.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace qkd::kernels {

enum class Impl { scalar, avx2 };

bool impl_available(Impl impl) noexcept;
Impl active_impl() noexcept;
const char* impl_name(Impl impl) noexcept;

enum class McEnsemble { sphere, plane };

// Lane-split accumulators: sample i lands in lane (i mod 4) in every variant.
struct McAccum {
  std::array<double, 4> sum{};
  std::array<double, 4> sum_sq{};
};

struct McEstimate {
  double mean;
  double std_error;
};

// Averages the integrand 1 - w^2, where w is the Bloch component of the
// sampled direction selected by `component` (0 = x, 1 = y, 2 = z). These are
// the parallel-outcome probabilities of the Bell states with nonzero profile.
McAccum mc_accumulate(McEnsemble ensemble, int component, std::uint64_t samples,
                      std::uint64_t seed, Impl impl);
McEstimate mc_finish(const McAccum& acc, std::uint64_t samples) noexcept;
McEstimate mc_parallel_average(McEnsemble ensemble, int component, std::uint64_t samples,
                               std::uint64_t seed);

// Everything the pair loop needs, precomputed: label distribution, matched
// basis parallel probabilities, sift/check rules.
struct PairTable {
  int basis_count = 0;
  bool npab = false;
  double check_fraction = 1.0;
  std::array<double, 3> label_cdf{};    // P(label <= phi+), <= psi+, <= phi-
  std::vector<double> parallel_prob;    // [label * basis_count + basis]
};

struct PairCounts {
  std::uint64_t sifted = 0;
  std::uint64_t checked = 0;
  std::uint64_t parallel = 0;
  std::uint64_t anti = 0;
};

PairCounts simulate_pairs(const PairTable& table, std::uint64_t pairs, std::uint64_t seed,
                          Impl impl);
PairCounts simulate_pairs(const PairTable& table, std::uint64_t pairs, std::uint64_t seed);

}  // namespace qkd::kernels
