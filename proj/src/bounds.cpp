#include "qkd/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qkd/bignum.hpp"

namespace qkd {

namespace {

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

void require_rate(double d, double lo, double hi, const char* who) {
  if (!(d >= lo && d <= hi)) {
    throw std::invalid_argument(std::string(who) + ": error rate out of range");
  }
}

std::vector<unsigned> primes_up_to(unsigned n) {
  std::vector<bool> composite(n + 1, false);
  std::vector<unsigned> primes;
  for (unsigned p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (unsigned q = p * p; q <= n; q += p) composite[q] = true;
  }
  return primes;
}

unsigned factorial_exponent(unsigned n, unsigned p) {
  unsigned e = 0;
  for (unsigned q = n / p; q > 0; q /= p) e += q;
  return e;
}

// n! / (a! b! c! d!) from prime factorizations.
BigUint multinomial_big(unsigned n, unsigned a, unsigned b, unsigned c, unsigned d,
                        const std::vector<unsigned>& primes) {
  BigUint result(1);
  for (unsigned p : primes) {
    unsigned e = factorial_exponent(n, p) - factorial_exponent(a, p) - factorial_exponent(b, p) -
                 factorial_exponent(c, p) - factorial_exponent(d, p);
    while (e > 0) {
      std::uint64_t power = 1;
      unsigned used = 0;
      while (used < e && power <= 0x7FFFFFFFFFFFFFFFULL / p) {
        power *= p;
        ++used;
      }
      result.mul_u64(power);
      e -= used;
    }
  }
  return result;
}

}  // namespace

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("binary_entropy: argument must lie in [0, 1]");
  }
  return 0.0 - (xlog2x(p) + xlog2x(1.0 - p));  // 0.0 - keeps h(0) a positive zero
}

double i_eve_bb84(double d_rate) {
  require_rate(d_rate, 0.0, 1.0, "i_eve_bb84");
  return binary_entropy(d_rate);
}

double i_eve_six_state(double d_rate) {
  require_rate(d_rate, 0.0, 2.0 / 3.0, "i_eve_six_state");
  const double rest = 1.0 - 1.5 * d_rate;
  const double half = d_rate / 2.0;
  return 0.0 - 0.5 * (xlog2x(rest) + (half > 0.0 ? 1.5 * d_rate * std::log2(half) : 0.0));
}

double i_ab(double d_rate) {
  require_rate(d_rate, 0.0, 1.0, "i_ab");
  return 1.0 + xlog2x(d_rate) + xlog2x(1.0 - d_rate);
}

RealComposition maximizer_bb84(double pairs, double d_rate) {
  if (!(pairs >= 1.0)) throw std::invalid_argument("maximizer_bb84: pairs must be >= 1");
  require_rate(d_rate, 0.0, 1.0, "maximizer_bb84");
  const double off = d_rate - d_rate * d_rate;
  return {pairs * (1.0 - d_rate) * (1.0 - d_rate), pairs * off, pairs * off,
          pairs * d_rate * d_rate};
}

RealComposition maximizer_six_state(double pairs, double d_rate) {
  if (!(pairs >= 1.0)) throw std::invalid_argument("maximizer_six_state: pairs must be >= 1");
  require_rate(d_rate, 0.0, 2.0 / 3.0, "maximizer_six_state");
  const double each = pairs * d_rate / 2.0;
  return {pairs * (1.0 - 1.5 * d_rate), each, each, each};
}

double composition_entropy_per_bit(const RealComposition& counts) {
  const double n = counts.n();
  if (!(n > 0.0)) throw std::invalid_argument("composition_entropy_per_bit: empty composition");
  for (double v : {counts.a, counts.b, counts.c, counts.d}) {
    if (!(v >= 0.0)) {
      throw std::invalid_argument("composition_entropy_per_bit: negative count");
    }
  }
  return 0.0 - 0.5 * (xlog2x(counts.a / n) + xlog2x(counts.b / n) + xlog2x(counts.c / n) +
                      xlog2x(counts.d / n));
}

double asymptotic_log_omega_per_bit(const Scheme& scheme, double d_rate) {
  switch (scheme.underlying().kind()) {
    case SchemeKind::bb84:
      return i_eve_bb84(d_rate);
    case SchemeKind::six_state:
      return i_eve_six_state(d_rate);
    default:
      throw std::invalid_argument(
          "asymptotic_log_omega_per_bit: pass bb84 or six-state explicitly for "
          "multiple-basis schemes");
  }
}

BoundResult bound_result(const Scheme& scheme, double d_rate) {
  return {scheme, d_rate, asymptotic_log_omega_per_bit(scheme, d_rate), i_ab(d_rate)};
}

double log_omega_exact(unsigned pairs, const DetectionProfile& profile, double d_rate,
                       double tolerance) {
  if (pairs < 1 || pairs > kMaxOraclePairs) {
    throw std::invalid_argument("log_omega_exact: pairs must lie in [1, 512]");
  }
  if (!(tolerance >= 0.0)) throw std::invalid_argument("log_omega_exact: negative tolerance");
  if (!std::isfinite(d_rate)) throw std::invalid_argument("log_omega_exact: bad target rate");

  const unsigned n = pairs;
  const auto primes = primes_up_to(std::max(2u, n));
  const double window = tolerance + 1e-12;
  const double q_psi_plus = profile[BellLabel::psi_plus];
  const double q_phi_plus = profile[BellLabel::phi_plus];

  const auto in_window = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
    const double rate = composition_error_rate({a, b, c, d}, profile);
    return std::abs(rate - d_rate) <= window;
  };

  BigUint total;
  for (unsigned a = 0; a <= n; ++a) {
    for (unsigned b = 0; a + b <= n; ++b) {
      const unsigned rem = n - a - b;
      // The rate is linear in c for fixed (a, b); bracket the candidate c
      // range in floating point, then test each candidate exactly.
      long c_lo = 0;
      long c_hi = static_cast<long>(rem);
      const double slope = (q_psi_plus - q_phi_plus) / static_cast<double>(n);
      if (slope == 0.0) {
        if (!in_window(a, b, 0, rem)) continue;
      } else {
        const double base = composition_error_rate({a, b, 0, rem}, profile);
        double t0 = (d_rate - window - base) / slope;
        double t1 = (d_rate + window - base) / slope;
        if (t0 > t1) std::swap(t0, t1);
        t0 = std::clamp(t0, -2.0, static_cast<double>(rem) + 2.0);
        t1 = std::clamp(t1, -2.0, static_cast<double>(rem) + 2.0);
        c_lo = std::max(c_lo, static_cast<long>(std::floor(t0)) - 1);
        c_hi = std::min(c_hi, static_cast<long>(std::ceil(t1)) + 1);
        if (c_lo > c_hi) continue;
      }

      BigUint m = multinomial_big(n, a, b, static_cast<unsigned>(c_lo),
                                  rem - static_cast<unsigned>(c_lo), primes);
      for (long c = c_lo; c <= c_hi; ++c) {
        const std::uint64_t cu = static_cast<std::uint64_t>(c);
        if (in_window(a, b, cu, rem - cu)) total.add(m);
        if (c < c_hi) {
          // step c -> c+1: multiply by the old d count, divide by the new c
          m.mul_u64(rem - cu);
          m.div_u64(cu + 1);
        }
      }
    }
  }

  if (total.zero()) {
    throw NoCompositionInWindow("log_omega_exact: no composition within the rate window");
  }
  return total.log2();
}

}  // namespace qkd
