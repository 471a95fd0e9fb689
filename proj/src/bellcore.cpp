#include "qkd/bellcore.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qkd {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

std::pair<int, int> bit_pair(BellLabel l) noexcept {
  const int i = index_of(l);
  return {(i >> 1) & 1, i & 1};
}

BellLabel bell_label_from_bits(int first, int second) {
  if ((first != 0 && first != 1) || (second != 0 && second != 1)) {
    throw std::invalid_argument("bell_label_from_bits: bits must be 0 or 1");
  }
  return static_cast<BellLabel>((first << 1) | second);
}

const char* to_string(BellLabel l) noexcept {
  switch (l) {
    case BellLabel::phi_plus: return "phi+";
    case BellLabel::psi_plus: return "psi+";
    case BellLabel::phi_minus: return "phi-";
    default: return "psi-";
  }
}

double TwoQubitState::norm_squared() const noexcept {
  double s = 0.0;
  for (const auto& a : amp) s += std::norm(a);
  return s;
}

Basis::Basis(double theta, double phi) : theta_(theta), phi_(phi), axis_(Axis::custom) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw std::invalid_argument("Basis: angles must be finite");
  }
  if (theta < 0.0 || theta > kPi) {
    throw std::invalid_argument("Basis: theta must lie in [0, pi]");
  }
  phi_ = std::fmod(phi, kTwoPi);
  if (phi_ < 0.0) phi_ += kTwoPi;
}

Basis Basis::z() noexcept { return Basis(0.0, 0.0, Axis::z); }
Basis Basis::x() noexcept { return Basis(kPi / 2.0, 0.0, Axis::x); }
Basis Basis::y() noexcept { return Basis(kPi / 2.0, kPi / 2.0, Axis::y); }

std::array<double, 3> Basis::direction() const noexcept {
  const double st = std::sin(theta_);
  return {st * std::cos(phi_), st * std::sin(phi_), std::cos(theta_)};
}

BellDiagonal::BellDiagonal(const std::array<double, 4>& probs_by_label) : p_(probs_by_label) {
  double sum = 0.0;
  for (double v : p_) {
    if (!(v >= 0.0)) throw std::invalid_argument("BellDiagonal: probabilities must be nonnegative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("BellDiagonal: probabilities must sum to 1 within 1e-12");
  }
}

BellDiagonal BellDiagonal::honest() noexcept {
  BellDiagonal d;
  d.p_ = {0.0, 0.0, 0.0, 1.0};
  return d;
}

TwoQubitState bell_state(BellLabel l) noexcept {
  const Amplitude h{kInvSqrt2};
  const Amplitude zero{};
  switch (l) {
    case BellLabel::phi_plus: return {{h, zero, zero, h}};
    case BellLabel::psi_plus: return {{zero, h, h, zero}};
    case BellLabel::phi_minus: return {{h, zero, zero, -h}};
    default: return {{zero, h, -h, zero}};
  }
}

std::array<QubitState, 2> basis_states(const Basis& b) noexcept {
  const double half = 0.5 * b.theta();
  const double ct = std::cos(half);
  const double st = std::sin(half);
  const Amplitude phase{std::cos(b.phi()), std::sin(b.phi())};
  const QubitState plus{{Amplitude{ct}, phase * st}};
  const QubitState minus{{Amplitude{st}, -(phase * ct)}};
  return {plus, minus};
}

std::array<double, 4> joint_outcome_distribution(BellLabel l, const Basis& basis_a,
                                                 const Basis& basis_b) noexcept {
  const TwoQubitState psi = bell_state(l);
  const auto a_states = basis_states(basis_a);
  const auto b_states = basis_states(basis_b);
  std::array<double, 4> out{};
  for (int s = 0; s < 2; ++s) {
    for (int t = 0; t < 2; ++t) {
      Amplitude overlap{};
      for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
          overlap += std::conj(a_states[s].amp[j]) * std::conj(b_states[t].amp[k]) * psi.amp[2 * j + k];
        }
      }
      out[2 * s + t] = std::norm(overlap);
    }
  }
  return out;
}

double parallel_probability(BellLabel l, const Basis& b) noexcept {
  const auto d = joint_outcome_distribution(l, b, b);
  return d[0] + d[3];
}

double bell_diagonal_entropy(const BellDiagonal& p) noexcept {
  double s = 0.0;
  for (double v : p.probs()) {
    if (v > 0.0) s -= v * std::log2(v);
  }
  return s;
}

}  // namespace qkd
