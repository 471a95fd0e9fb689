// Exact two-qubit state and measurement arithmetic: Bell states, product bases
// along arbitrary Bloch directions, joint outcome distributions, and the
// entropy of Bell-diagonal mixtures. Everything here is a pure function; no
// shared mutable state.

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <utility>

namespace qkd {

// The four Bell states with their two-classical-bit encoding. The enum value
// is the bit pair read as a binary number: PhiPlus = 00, PsiPlus = 01,
// PhiMinus = 10, PsiMinus = 11.
enum class BellLabel : int {
  phi_plus = 0,
  psi_plus = 1,
  phi_minus = 2,
  psi_minus = 3,
};

inline constexpr std::array<BellLabel, 4> kAllBellLabels = {
    BellLabel::phi_plus, BellLabel::psi_plus, BellLabel::phi_minus, BellLabel::psi_minus};

inline constexpr int index_of(BellLabel l) noexcept { return static_cast<int>(l); }

std::pair<int, int> bit_pair(BellLabel l) noexcept;
BellLabel bell_label_from_bits(int first, int second);
const char* to_string(BellLabel l) noexcept;

using Amplitude = std::complex<double>;

// Two-qubit state in the computational product basis |00>, |01>, |10>, |11>.
struct TwoQubitState {
  std::array<Amplitude, 4> amp;
  double norm_squared() const noexcept;
};

struct QubitState {
  std::array<Amplitude, 2> amp;
};

enum class Axis { custom, z, x, y };

// A measurement direction on the Bloch sphere: polar angle theta in [0, pi],
// azimuth phi normalized into [0, 2*pi). Canonical constructors carry a tag so
// the Z/X/Y axes stay recognizable.
class Basis {
 public:
  Basis(double theta, double phi);
  static Basis z() noexcept;
  static Basis x() noexcept;
  static Basis y() noexcept;

  double theta() const noexcept { return theta_; }
  double phi() const noexcept { return phi_; }
  Axis axis() const noexcept { return axis_; }
  // Bloch vector (nx, ny, nz).
  std::array<double, 3> direction() const noexcept;

 private:
  Basis(double theta, double phi, Axis axis) noexcept : theta_(theta), phi_(phi), axis_(axis) {}
  double theta_;
  double phi_;
  Axis axis_;
};

// Probability vector over the four Bell labels; the per-pair source an
// adversary prepares. Validates nonnegativity and normalization (1e-12).
class BellDiagonal {
 public:
  explicit BellDiagonal(const std::array<double, 4>& probs_by_label);
  static BellDiagonal honest() noexcept;  // all singlet
  double operator[](BellLabel l) const noexcept { return p_[index_of(l)]; }
  const std::array<double, 4>& probs() const noexcept { return p_; }

 private:
  BellDiagonal() noexcept : p_{} {}
  std::array<double, 4> p_;
};

// |Phi+-> = (|00> +- |11>)/sqrt(2), |Psi+-> = (|01> +- |10>)/sqrt(2).
TwoQubitState bell_state(BellLabel l) noexcept;

// (|n+>, |n->) = (cos(t/2)|0> + e^{i phi} sin(t/2)|1>,
//                 sin(t/2)|0> - e^{i phi} cos(t/2)|1>).
std::array<QubitState, 2> basis_states(const Basis& b) noexcept;

// Probabilities of outcomes (+,+), (+,-), (-,+), (-,-) when the two halves of
// a Bell pair are measured along basis_a and basis_b. Exact projector
// arithmetic; entries are nonnegative and sum to 1 within 1e-12.
std::array<double, 4> joint_outcome_distribution(BellLabel l, const Basis& basis_a,
                                                 const Basis& basis_b) noexcept;

// Probability of a parallel outcome, (+,+) or (-,-), when both parties measure
// along the same basis.
double parallel_probability(BellLabel l, const Basis& b) noexcept;

// Von Neumann entropy of the Bell-diagonal mixture, in bits: -sum p log2 p
// with 0 log 0 = 0.
double bell_diagonal_entropy(const BellDiagonal& p) noexcept;

}  // namespace qkd
