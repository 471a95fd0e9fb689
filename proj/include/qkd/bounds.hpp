// Eve's optimal-information computations: closed-form per-sifted-bit bounds,
// the constrained composition maximizers, an exact finite-n enumeration
// oracle over Bell-label strings, and the complementary mutual information
// between the legitimate parties.

#pragma once

#include <stdexcept>

#include "qkd/schemes.hpp"

namespace qkd {

// Thrown by the enumeration oracle when no integer composition hits the rate
// window; callers should widen the tolerance.
struct NoCompositionInWindow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Real-valued relaxation of CompositionCounts, same label order
// (a = psi-, b = phi-, c = psi+, d = phi+).
struct RealComposition {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double n() const noexcept { return a + b + c + d; }
};

struct BoundResult {
  Scheme scheme;
  double d_rate;
  double i_eve_per_bit;
  double i_ab_per_bit;
};

// Binary entropy h(p) in bits with the 0 log 0 = 0 convention; rejects
// arguments outside [0, 1].
double binary_entropy(double p);

// Eve's optimal information per sifted bit at error rate D: h(D) for BB84.
double i_eve_bb84(double d_rate);

// Six-state value -(1/2)[(1 - 3D/2) log2(1 - 3D/2) + (3D/2) log2(D/2)];
// rejects d_rate outside [0, 2/3].
double i_eve_six_state(double d_rate);

// Mutual information between the legitimate parties per sifted bit:
// 1 + D log2 D + (1 - D) log2(1 - D) = 1 - h(D).
double i_ab(double d_rate);

// Composition maximizing the label-string count at error rate D under BB84
// checking: a = n(1-D)^2, b = c = n(D - D^2), d = n D^2.
RealComposition maximizer_bb84(double pairs, double d_rate);

// Six-state analogue: b = c = d = nD/2, a = n(1 - 3D/2); d_rate in [0, 2/3].
RealComposition maximizer_six_state(double pairs, double d_rate);

// Per-sifted-bit entropy of a composition: S(counts/n) / 2. Evaluated at the
// maximizers this reproduces the closed-form bounds.
double composition_entropy_per_bit(const RealComposition& counts);

// Asymptotic log Omega / (2n): the closed-form bound of the scheme. NPAB
// variants return their underlying scheme's value bit for bit. Rejects
// multiple-basis schemes; their bounds coincide with six-state (sphere) or
// BB84 (plane) and callers must say which they mean.
double asymptotic_log_omega_per_bit(const Scheme& scheme, double d_rate);

BoundResult bound_result(const Scheme& scheme, double d_rate);

inline constexpr unsigned kMaxOraclePairs = 512;

// Exact finite-n oracle: sums the multinomials n!/(a! b! c! d!) over all
// integer compositions whose composition_error_rate lies within `tolerance`
// of d_rate (plus 1e-12 slack for float rate comparison), in arbitrary
// precision, and returns log2 of the sum. Throws NoCompositionInWindow when
// the window is empty. pairs must be in [1, kMaxOraclePairs].
double log_omega_exact(unsigned pairs, const DetectionProfile& profile, double d_rate,
                       double tolerance);

}  // namespace qkd
