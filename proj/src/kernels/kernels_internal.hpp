#pragma once

#include <cstdint>

#include "qkd/kernels.hpp"

namespace qkd::kernels::detail {

// Scalar reference workers over a half-open sample/pair range. The AVX2
// variants use them for loop tails, so there is exactly one scalar definition
// of the per-element math (compiled without -mavx2).
void mc_scalar_range(McEnsemble ensemble, int component, std::uint64_t begin, std::uint64_t end,
                     std::uint64_t seed, McAccum& acc) noexcept;
PairCounts sim_scalar_range(const PairTable& table, std::uint64_t begin, std::uint64_t end,
                            std::uint64_t seed) noexcept;

#if defined(QKD_HAVE_AVX2)
McAccum mc_avx2(McEnsemble ensemble, int component, std::uint64_t samples, std::uint64_t seed);
PairCounts sim_avx2(const PairTable& table, std::uint64_t pairs, std::uint64_t seed);
#endif

}  // namespace qkd::kernels::detail
