// Protocol definitions: which bases each scheme uses, per-Bell-state
// error-detection probabilities, expected error rates, sifting probabilities,
// and basis-ensemble averages for multiple-basis schemes.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qkd/bellcore.hpp"

namespace qkd {

enum class SchemeKind {
  bb84,
  six_state,
  multi_basis_sphere,
  multi_basis_plane,
  npab_bb84,
  npab_six_state,
};

// A protocol variant. Multiple-basis variants carry the basis count m >= 2;
// the no-public-announcement (NPAB) variants share a pre-agreed secret basis
// sequence instead of announcing bases.
class Scheme {
 public:
  static Scheme bb84() noexcept { return {SchemeKind::bb84, 2}; }
  static Scheme six_state() noexcept { return {SchemeKind::six_state, 3}; }
  static Scheme multi_basis_sphere(int m);
  static Scheme multi_basis_plane(int m);
  static Scheme npab_bb84() noexcept { return {SchemeKind::npab_bb84, 2}; }
  static Scheme npab_six_state() noexcept { return {SchemeKind::npab_six_state, 3}; }

  SchemeKind kind() const noexcept { return kind_; }
  int basis_count() const noexcept { return m_; }
  bool npab() const noexcept {
    return kind_ == SchemeKind::npab_bb84 || kind_ == SchemeKind::npab_six_state;
  }
  bool multi_basis() const noexcept {
    return kind_ == SchemeKind::multi_basis_sphere || kind_ == SchemeKind::multi_basis_plane;
  }
  // NPAB variants resolve to the scheme whose bases and checking they reuse.
  Scheme underlying() const noexcept;

  std::string name() const;
  static Scheme parse(const std::string& name, std::optional<int> m = std::nullopt);

  friend bool operator==(const Scheme&, const Scheme&) noexcept = default;

 private:
  Scheme(SchemeKind kind, int m) noexcept : kind_(kind), m_(m) {}
  SchemeKind kind_;
  int m_;
};

// Probability that a pair in each Bell state is flagged during error
// checking, indexed by BellLabel. q[psi-] = 0 for every scheme here.
struct DetectionProfile {
  std::array<double, 4> q;
  double operator[](BellLabel l) const noexcept { return q[index_of(l)]; }
};

struct SphereUniform {};
struct PlaneUniformZX {};
struct FiniteSet {
  std::vector<Basis> directions;
};
using BasisEnsemble = std::variant<SphereUniform, PlaneUniformZX, FiniteSet>;

struct Quadrature {
  int nodes = 32;  // >= 8
};
struct MonteCarlo {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
};
using AveragingMethod = std::variant<Quadrature, MonteCarlo>;

struct BasisAverage {
  double value;
  double error;  // quadrature refinement delta or Monte Carlo standard error
};

// Occupation numbers of the four Bell labels across n pairs, in the order
// a = psi-, b = phi-, c = psi+, d = phi+ (the error-free label first).
struct CompositionCounts {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t c = 0;
  std::uint64_t d = 0;
  std::uint64_t n() const noexcept { return a + b + c + d; }
};

// (q[phi+], q[psi+], q[phi-], q[psi-]): BB84 (1, 1/2, 1/2, 0); six-state and
// the sphere continuum (2/3, 2/3, 2/3, 0); the z-x plane continuum matches
// BB84. NPAB variants return their underlying scheme's profile. Multiple-basis
// profiles are the continuum (m -> infinity) values.
DetectionProfile detection_profile(const Scheme& scheme) noexcept;

// Probability that a pair survives sifting: 1/m with announced bases, 1 for
// NPAB variants.
double sift_probability(const Scheme& scheme) noexcept;

// The finite basis set a simulated run draws from. Sphere variants use a
// golden-angle lattice, plane variants an even theta grid at phi = 0.
std::vector<Basis> scheme_basis_set(const Scheme& scheme);

double expected_error_rate(const BellDiagonal& source, const DetectionProfile& profile) noexcept;

// (a q[psi-] + b q[phi-] + c q[psi+] + d q[phi+]) / n. Rejects n = 0.
double composition_error_rate(const CompositionCounts& counts, const DetectionProfile& profile);

// Ensemble average of parallel_probability. Sphere uses the uniform
// solid-angle measure, plane is uniform in theta over [0, pi) at phi = 0,
// finite sets average with equal weights (either method, error 0).
BasisAverage average_parallel_probability(BellLabel label, const BasisEnsemble& ensemble,
                                          const AveragingMethod& method);

}  // namespace qkd
