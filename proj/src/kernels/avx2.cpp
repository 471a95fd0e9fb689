// AVX2 variants of the Monte Carlo and pair-simulation kernels. Lane j of a
// 4-wide block handles element 4k+j, the same counters and the same operation
// order as the scalar reference in scalar.cpp, so results are bit-identical.

#if defined(QKD_HAVE_AVX2)

#include <immintrin.h>

#include "kernels_internal.hpp"
#include "qkd/detail/rng.hpp"

namespace qkd::kernels::detail {

namespace {

namespace dr = qkd::detail;

// 64x64 -> low 64 multiply from 32-bit partial products.
inline __m256i mullo64(__m256i a, __m256i b) {
  const __m256i a_hi = _mm256_srli_epi64(a, 32);
  const __m256i b_hi = _mm256_srli_epi64(b, 32);
  const __m256i lo = _mm256_mul_epu32(a, b);
  const __m256i cross = _mm256_add_epi64(_mm256_mul_epu32(a_hi, b), _mm256_mul_epu32(a, b_hi));
  return _mm256_add_epi64(lo, _mm256_slli_epi64(cross, 32));
}

inline __m256i mix64_v(__m256i z) {
  z = mullo64(_mm256_xor_si256(z, _mm256_srli_epi64(z, 30)), _mm256_set1_epi64x(0xBF58476D1CE4E5B9LL));
  z = mullo64(_mm256_xor_si256(z, _mm256_srli_epi64(z, 27)), _mm256_set1_epi64x(0x94D049BB133111EBLL));
  return _mm256_xor_si256(z, _mm256_srli_epi64(z, 31));
}

inline __m256i counter_value_v(__m256i seed, __m256i counter) {
  return mix64_v(_mm256_add_epi64(seed, mullo64(counter, _mm256_set1_epi64x(static_cast<long long>(dr::kGamma)))));
}

inline __m256d to_unit_v(__m256i bits) {
  const __m256i mant = _mm256_srli_epi64(bits, 12);
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);  // 2^52 exponent
  const __m256d as_d = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(mant, magic)),
                                     _mm256_set1_pd(0x1.0p52));
  return _mm256_mul_pd(as_d, _mm256_set1_pd(0x1.0p-52));
}

inline __m256d negate(__m256d v) {
  return _mm256_xor_pd(v, _mm256_set1_pd(-0.0));
}

struct SinCosV {
  __m256d cos_v;
  __m256d sin_v;
};

inline SinCosV sincospi2_v(__m256d u) {
  const __m256d q = _mm256_floor_pd(_mm256_mul_pd(u, _mm256_set1_pd(4.0)));
  const __m256d r = _mm256_sub_pd(u, _mm256_mul_pd(q, _mm256_set1_pd(0.25)));
  const __m256d x = _mm256_mul_pd(r, _mm256_set1_pd(dr::kTwoPi));
  const __m256d y = _mm256_mul_pd(x, x);

  __m256d s = _mm256_set1_pd(dr::kS17);
  s = _mm256_add_pd(_mm256_set1_pd(dr::kS15), _mm256_mul_pd(y, s));
  s = _mm256_add_pd(_mm256_set1_pd(dr::kS13), _mm256_mul_pd(y, s));
  s = _mm256_add_pd(_mm256_set1_pd(dr::kS11), _mm256_mul_pd(y, s));
  s = _mm256_add_pd(_mm256_set1_pd(dr::kS9), _mm256_mul_pd(y, s));
  s = _mm256_add_pd(_mm256_set1_pd(dr::kS7), _mm256_mul_pd(y, s));
  s = _mm256_add_pd(_mm256_set1_pd(dr::kS5), _mm256_mul_pd(y, s));
  s = _mm256_add_pd(_mm256_set1_pd(dr::kS3), _mm256_mul_pd(y, s));
  s = _mm256_add_pd(_mm256_set1_pd(1.0), _mm256_mul_pd(y, s));
  s = _mm256_mul_pd(x, s);

  __m256d c = _mm256_set1_pd(dr::kC18);
  c = _mm256_add_pd(_mm256_set1_pd(dr::kC16), _mm256_mul_pd(y, c));
  c = _mm256_add_pd(_mm256_set1_pd(dr::kC14), _mm256_mul_pd(y, c));
  c = _mm256_add_pd(_mm256_set1_pd(dr::kC12), _mm256_mul_pd(y, c));
  c = _mm256_add_pd(_mm256_set1_pd(dr::kC10), _mm256_mul_pd(y, c));
  c = _mm256_add_pd(_mm256_set1_pd(dr::kC8), _mm256_mul_pd(y, c));
  c = _mm256_add_pd(_mm256_set1_pd(dr::kC6), _mm256_mul_pd(y, c));
  c = _mm256_add_pd(_mm256_set1_pd(dr::kC4), _mm256_mul_pd(y, c));
  c = _mm256_add_pd(_mm256_set1_pd(dr::kC2), _mm256_mul_pd(y, c));
  c = _mm256_add_pd(_mm256_set1_pd(1.0), _mm256_mul_pd(y, c));

  const __m256d m1 = _mm256_cmp_pd(q, _mm256_set1_pd(1.0), _CMP_EQ_OQ);
  const __m256d m2 = _mm256_cmp_pd(q, _mm256_set1_pd(2.0), _CMP_EQ_OQ);
  const __m256d m3 = _mm256_cmp_pd(q, _mm256_set1_pd(3.0), _CMP_EQ_OQ);

  __m256d cos_out = c;
  cos_out = _mm256_blendv_pd(cos_out, negate(s), m1);
  cos_out = _mm256_blendv_pd(cos_out, negate(c), m2);
  cos_out = _mm256_blendv_pd(cos_out, s, m3);

  __m256d sin_out = s;
  sin_out = _mm256_blendv_pd(sin_out, c, m1);
  sin_out = _mm256_blendv_pd(sin_out, negate(s), m2);
  sin_out = _mm256_blendv_pd(sin_out, negate(c), m3);

  return {cos_out, sin_out};
}

inline __m256d indicator(__m256d mask) {
  return _mm256_and_pd(mask, _mm256_set1_pd(1.0));
}

}  // namespace

McAccum mc_avx2(McEnsemble ensemble, int component, std::uint64_t samples, std::uint64_t seed) {
  McAccum acc;
  const std::uint64_t blocks = samples / 4;
  const __m256i seed_v = _mm256_set1_epi64x(static_cast<long long>(seed));
  const __m256i lane_offsets = _mm256_setr_epi64x(0, 2, 4, 6);
  const __m256i one64 = _mm256_set1_epi64x(1);
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d vsum = _mm256_setzero_pd();
  __m256d vsumsq = _mm256_setzero_pd();

  for (std::uint64_t k = 0; k < blocks; ++k) {
    const __m256i ctr0 = _mm256_add_epi64(
        _mm256_set1_epi64x(static_cast<long long>(8 * k)), lane_offsets);
    const __m256d u1 = to_unit_v(counter_value_v(seed_v, ctr0));
    __m256d nx, ny, nz;
    if (ensemble == McEnsemble::sphere) {
      const __m256d u2 = to_unit_v(counter_value_v(seed_v, _mm256_add_epi64(ctr0, one64)));
      nz = _mm256_sub_pd(_mm256_mul_pd(u1, _mm256_set1_pd(2.0)), one);
      const __m256d r = _mm256_sqrt_pd(_mm256_sub_pd(one, _mm256_mul_pd(nz, nz)));
      const SinCosV sc = sincospi2_v(u2);
      nx = _mm256_mul_pd(r, sc.cos_v);
      ny = _mm256_mul_pd(r, sc.sin_v);
    } else {
      const SinCosV sc = sincospi2_v(_mm256_mul_pd(u1, _mm256_set1_pd(0.5)));
      nz = sc.cos_v;
      nx = sc.sin_v;
      ny = _mm256_setzero_pd();
    }
    const __m256d w = component == 0 ? nx : (component == 1 ? ny : nz);
    const __m256d v = _mm256_sub_pd(one, _mm256_mul_pd(w, w));
    vsum = _mm256_add_pd(vsum, v);
    vsumsq = _mm256_add_pd(vsumsq, _mm256_mul_pd(v, v));
  }

  _mm256_storeu_pd(acc.sum.data(), vsum);
  _mm256_storeu_pd(acc.sum_sq.data(), vsumsq);
  mc_scalar_range(ensemble, component, blocks * 4, samples, seed, acc);
  return acc;
}

PairCounts sim_avx2(const PairTable& table, std::uint64_t pairs, std::uint64_t seed) {
  const std::uint64_t blocks = pairs / 4;
  const __m256i seed_v = _mm256_set1_epi64x(static_cast<long long>(seed));
  const __m256i lane_offsets = _mm256_setr_epi64x(0, 8, 16, 24);
  const __m256d m_d = _mm256_set1_pd(static_cast<double>(table.basis_count));
  const __m256d cdf0 = _mm256_set1_pd(table.label_cdf[0]);
  const __m256d cdf1 = _mm256_set1_pd(table.label_cdf[1]);
  const __m256d cdf2 = _mm256_set1_pd(table.label_cdf[2]);
  const __m256d cf = _mm256_set1_pd(table.check_fraction);
  const __m256d all_true = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
  const double* pp = table.parallel_prob.data();

  __m256i c_sift = _mm256_setzero_si256();
  __m256i c_chk = _mm256_setzero_si256();
  __m256i c_par = _mm256_setzero_si256();
  __m256i c_anti = _mm256_setzero_si256();

  const auto slot = [](std::uint64_t s) { return _mm256_set1_epi64x(static_cast<long long>(s)); };

  for (std::uint64_t k = 0; k < blocks; ++k) {
    const __m256i base = _mm256_add_epi64(
        _mm256_set1_epi64x(static_cast<long long>(32 * k)), lane_offsets);
    const __m256d ul = to_unit_v(counter_value_v(seed_v, _mm256_add_epi64(base, slot(dr::kSlotLabel))));
    __m256d label = indicator(_mm256_cmp_pd(ul, cdf0, _CMP_GE_OQ));
    label = _mm256_add_pd(label, indicator(_mm256_cmp_pd(ul, cdf1, _CMP_GE_OQ)));
    label = _mm256_add_pd(label, indicator(_mm256_cmp_pd(ul, cdf2, _CMP_GE_OQ)));

    __m256d basis_a, sifted;
    if (table.npab) {
      const __m256d us =
          to_unit_v(counter_value_v(seed_v, _mm256_add_epi64(base, slot(dr::kSlotNpabBasis))));
      basis_a = _mm256_floor_pd(_mm256_mul_pd(us, m_d));
      sifted = all_true;
    } else {
      const __m256d ua =
          to_unit_v(counter_value_v(seed_v, _mm256_add_epi64(base, slot(dr::kSlotBasisA))));
      const __m256d ub =
          to_unit_v(counter_value_v(seed_v, _mm256_add_epi64(base, slot(dr::kSlotBasisB))));
      basis_a = _mm256_floor_pd(_mm256_mul_pd(ua, m_d));
      const __m256d basis_b = _mm256_floor_pd(_mm256_mul_pd(ub, m_d));
      sifted = _mm256_cmp_pd(basis_a, basis_b, _CMP_EQ_OQ);
    }

    const __m256d uc = to_unit_v(counter_value_v(seed_v, _mm256_add_epi64(base, slot(dr::kSlotCheck))));
    const __m256d checked = _mm256_and_pd(sifted, _mm256_cmp_pd(uc, cf, _CMP_LT_OQ));

    const __m256d v = to_unit_v(counter_value_v(seed_v, _mm256_add_epi64(base, slot(dr::kSlotOutcome))));
    const __m128i idx = _mm256_cvttpd_epi32(_mm256_add_pd(_mm256_mul_pd(label, m_d), basis_a));
    const __m256d p = _mm256_i32gather_pd(pp, idx, 8);
    const __m256d parallel = _mm256_and_pd(checked, _mm256_cmp_pd(v, p, _CMP_LT_OQ));
    const __m256d anti = _mm256_andnot_pd(parallel, checked);

    c_sift = _mm256_sub_epi64(c_sift, _mm256_castpd_si256(sifted));
    c_chk = _mm256_sub_epi64(c_chk, _mm256_castpd_si256(checked));
    c_par = _mm256_sub_epi64(c_par, _mm256_castpd_si256(parallel));
    c_anti = _mm256_sub_epi64(c_anti, _mm256_castpd_si256(anti));
  }

  alignas(32) std::uint64_t lanes[4];
  PairCounts counts;
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), c_sift);
  counts.sifted = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), c_chk);
  counts.checked = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), c_par);
  counts.parallel = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), c_anti);
  counts.anti = lanes[0] + lanes[1] + lanes[2] + lanes[3];

  const PairCounts tail = sim_scalar_range(table, blocks * 4, pairs, seed);
  counts.sifted += tail.sifted;
  counts.checked += tail.checked;
  counts.parallel += tail.parallel;
  counts.anti += tail.anti;
  return counts;
}

}  // namespace qkd::kernels::detail

#endif  // QKD_HAVE_AVX2
