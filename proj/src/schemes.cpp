#include "qkd/schemes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qkd/kernels.hpp"

namespace qkd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Gauss-Legendre nodes and weights on [-1, 1], Newton iteration on the
// recurrence-evaluated Legendre polynomial.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = x;
    nodes[n - 1 - i] = -x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

double sphere_quadrature(BellLabel label, int nodes) {
  std::vector<double> z, w;
  gauss_legendre(nodes, z, w);
  double total = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double theta = std::acos(z[i]);
    double ring = 0.0;
    for (int j = 0; j < nodes; ++j) {
      const double phi = kTwoPi * (j + 0.5) / nodes;
      ring += parallel_probability(label, Basis(theta, phi));
    }
    total += w[i] * ring / nodes;
  }
  return total / 2.0;  // weights sum to 2
}

double plane_quadrature(BellLabel label, int nodes) {
  double total = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double theta = kPi * (j + 0.5) / nodes;
    total += parallel_probability(label, Basis(theta, 0.0));
  }
  return total / nodes;
}

// Which Bloch component squares into the integrand 1 - w^2; psi- has no
// parallel outcomes in any basis.
int mc_component(BellLabel label) {
  switch (label) {
    case BellLabel::phi_plus: return 1;   // 1 - ny^2
    case BellLabel::psi_plus: return 2;   // 1 - nz^2
    case BellLabel::phi_minus: return 0;  // 1 - nx^2
    default: return -1;
  }
}

}  // namespace

Scheme Scheme::multi_basis_sphere(int m) {
  if (m < 2) throw std::invalid_argument("Scheme: multiple-basis variants need m >= 2");
  return {SchemeKind::multi_basis_sphere, m};
}

Scheme Scheme::multi_basis_plane(int m) {
  if (m < 2) throw std::invalid_argument("Scheme: multiple-basis variants need m >= 2");
  return {SchemeKind::multi_basis_plane, m};
}

Scheme Scheme::underlying() const noexcept {
  switch (kind_) {
    case SchemeKind::npab_bb84: return bb84();
    case SchemeKind::npab_six_state: return six_state();
    default: return *this;
  }
}

std::string Scheme::name() const {
  switch (kind_) {
    case SchemeKind::bb84: return "bb84";
    case SchemeKind::six_state: return "six-state";
    case SchemeKind::multi_basis_sphere: return "multi-basis-sphere";
    case SchemeKind::multi_basis_plane: return "multi-basis-plane";
    case SchemeKind::npab_bb84: return "npab-bb84";
    default: return "npab-six-state";
  }
}

Scheme Scheme::parse(const std::string& name, std::optional<int> m) {
  if (name == "bb84") return bb84();
  if (name == "six-state") return six_state();
  if (name == "npab-bb84") return npab_bb84();
  if (name == "npab-six-state") return npab_six_state();
  if (name == "multi-basis-sphere" || name == "multi-basis-plane") {
    if (!m.has_value()) {
      throw std::invalid_argument("Scheme: '" + name + "' requires a basis count m");
    }
    return name == "multi-basis-sphere" ? multi_basis_sphere(*m) : multi_basis_plane(*m);
  }
  throw std::invalid_argument("Scheme: unknown scheme '" + name + "'");
}

DetectionProfile detection_profile(const Scheme& scheme) noexcept {
  switch (scheme.underlying().kind()) {
    case SchemeKind::six_state:
    case SchemeKind::multi_basis_sphere:
      return {{2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 0.0}};
    default:
      // BB84 and the z-x plane continuum share (1, 1/2, 1/2, 0).
      return {{1.0, 0.5, 0.5, 0.0}};
  }
}

double sift_probability(const Scheme& scheme) noexcept {
  if (scheme.npab()) return 1.0;
  return 1.0 / scheme.basis_count();
}

std::vector<Basis> scheme_basis_set(const Scheme& scheme) {
  const Scheme base = scheme.underlying();
  switch (base.kind()) {
    case SchemeKind::bb84:
      return {Basis::z(), Basis::x()};
    case SchemeKind::six_state:
      return {Basis::z(), Basis::x(), Basis::y()};
    case SchemeKind::multi_basis_plane: {
      std::vector<Basis> out;
      out.reserve(base.basis_count());
      for (int j = 0; j < base.basis_count(); ++j) {
        out.emplace_back(kPi * j / base.basis_count(), 0.0);
      }
      return out;
    }
    default: {
      // golden-angle lattice on the sphere
      constexpr double kGoldenFrac = 0.3819660112501051;
      std::vector<Basis> out;
      out.reserve(base.basis_count());
      for (int j = 0; j < base.basis_count(); ++j) {
        const double z = 1.0 - (2.0 * j + 1.0) / base.basis_count();
        const double phi = kTwoPi * std::fmod(j * kGoldenFrac, 1.0);
        out.emplace_back(std::acos(z), phi);
      }
      return out;
    }
  }
}

double expected_error_rate(const BellDiagonal& source, const DetectionProfile& profile) noexcept {
  double d = 0.0;
  for (BellLabel l : kAllBellLabels) d += source[l] * profile[l];
  return d;
}

double composition_error_rate(const CompositionCounts& counts, const DetectionProfile& profile) {
  const std::uint64_t n = counts.n();
  if (n == 0) throw std::invalid_argument("composition_error_rate: empty composition");
  const double weighted = static_cast<double>(counts.a) * profile[BellLabel::psi_minus] +
                          static_cast<double>(counts.b) * profile[BellLabel::phi_minus] +
                          static_cast<double>(counts.c) * profile[BellLabel::psi_plus] +
                          static_cast<double>(counts.d) * profile[BellLabel::phi_plus];
  return weighted / static_cast<double>(n);
}

BasisAverage average_parallel_probability(BellLabel label, const BasisEnsemble& ensemble,
                                          const AveragingMethod& method) {
  if (const auto* finite = std::get_if<FiniteSet>(&ensemble)) {
    if (finite->directions.empty()) {
      throw std::invalid_argument("average_parallel_probability: empty finite basis set");
    }
    double sum = 0.0;
    for (const Basis& b : finite->directions) sum += parallel_probability(label, b);
    return {sum / static_cast<double>(finite->directions.size()), 0.0};
  }

  const bool sphere = std::holds_alternative<SphereUniform>(ensemble);
  if (const auto* quad = std::get_if<Quadrature>(&method)) {
    if (quad->nodes < 8) throw std::invalid_argument("average_parallel_probability: nodes >= 8");
    const auto eval = sphere ? sphere_quadrature : plane_quadrature;
    const double coarse = eval(label, quad->nodes);
    const double fine = eval(label, 2 * quad->nodes);
    return {fine, std::abs(fine - coarse)};
  }

  const auto& mc = std::get<MonteCarlo>(method);
  if (mc.samples < 1) throw std::invalid_argument("average_parallel_probability: samples >= 1");
  const int component = mc_component(label);
  if (component < 0) return {0.0, 0.0};  // psi-: integrand identically zero
  const auto est = kernels::mc_parallel_average(
      sphere ? kernels::McEnsemble::sphere : kernels::McEnsemble::plane, component, mc.samples,
      mc.seed);
  return {est.mean, est.std_error};
}

}  // namespace qkd
