#include <cmath>
#include <stdexcept>

#include "kernels_internal.hpp"
#include "qkd/kernels.hpp"

namespace qkd::kernels {

bool impl_available(Impl impl) noexcept {
  switch (impl) {
    case Impl::scalar:
      return true;
    case Impl::avx2:
#if defined(QKD_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Impl active_impl() noexcept {
  return impl_available(Impl::avx2) ? Impl::avx2 : Impl::scalar;
}

const char* impl_name(Impl impl) noexcept {
  return impl == Impl::avx2 ? "avx2" : "scalar";
}

McAccum mc_accumulate(McEnsemble ensemble, int component, std::uint64_t samples,
                      std::uint64_t seed, Impl impl) {
  if (component < 0 || component > 2) {
    throw std::invalid_argument("mc_accumulate: component must be 0, 1 or 2");
  }
  if (!impl_available(impl)) {
    throw std::invalid_argument("mc_accumulate: requested kernel not available on this host");
  }
#if defined(QKD_HAVE_AVX2)
  if (impl == Impl::avx2) return detail::mc_avx2(ensemble, component, samples, seed);
#endif
  McAccum acc;
  detail::mc_scalar_range(ensemble, component, 0, samples, seed, acc);
  return acc;
}

McEstimate mc_finish(const McAccum& acc, std::uint64_t samples) noexcept {
  if (samples == 0) return {0.0, 0.0};
  const double n = static_cast<double>(samples);
  const double mean = ((acc.sum[0] + acc.sum[1]) + (acc.sum[2] + acc.sum[3])) / n;
  const double msq = ((acc.sum_sq[0] + acc.sum_sq[1]) + (acc.sum_sq[2] + acc.sum_sq[3])) / n;
  double var = msq - mean * mean;
  if (var < 0.0) var = 0.0;
  return {mean, std::sqrt(var / n)};
}

McEstimate mc_parallel_average(McEnsemble ensemble, int component, std::uint64_t samples,
                               std::uint64_t seed) {
  return mc_finish(mc_accumulate(ensemble, component, samples, seed, active_impl()), samples);
}

PairCounts simulate_pairs(const PairTable& table, std::uint64_t pairs, std::uint64_t seed,
                          Impl impl) {
  if (table.basis_count < 1) throw std::invalid_argument("simulate_pairs: empty basis set");
  if (table.parallel_prob.size() != static_cast<std::size_t>(4 * table.basis_count)) {
    throw std::invalid_argument("simulate_pairs: parallel_prob must hold 4*basis_count entries");
  }
  if (!impl_available(impl)) {
    throw std::invalid_argument("simulate_pairs: requested kernel not available on this host");
  }
#if defined(QKD_HAVE_AVX2)
  if (impl == Impl::avx2) return detail::sim_avx2(table, pairs, seed);
#endif
  return detail::sim_scalar_range(table, 0, pairs, seed);
}

PairCounts simulate_pairs(const PairTable& table, std::uint64_t pairs, std::uint64_t seed) {
  return simulate_pairs(table, pairs, seed, active_impl());
}

}  // namespace qkd::kernels
