// Command-line surface: eavesdropper-information curves, protocol simulation,
// the exact enumeration oracle, and basis-ensemble averages, all as
// reproducible file or stdout outputs.
//
// Exit codes: 0 success, 2 usage/config error, 3 domain error (degenerate
// sample, empty composition window).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qkd/bounds.hpp"
#include "qkd/sim.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int cmd_curve(double d_min, double d_max, double step, const std::string& out_path) {
  if (!(d_min >= 0.0 && d_min < d_max && d_max <= 1.0 && step > 0.0)) {
    std::cerr << "curve: need 0 <= min < max <= 1 and step > 0\n";
    return kExitUsage;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "curve: cannot open '" << out_path << "' for writing\n";
    return kExitUsage;
  }
  out << "d,i_eve_bb84,i_eve_six,i_ab\n";
  for (std::uint64_t k = 0;; ++k) {
    const double d = d_min + static_cast<double>(k) * step;
    if (d > d_max + step * 1e-9) break;
    out << fmt12(d) << ',' << fmt12(qkd::i_eve_bb84(d)) << ',';
    if (d <= 2.0 / 3.0) out << fmt12(qkd::i_eve_six_state(d));
    out << ',' << fmt12(qkd::i_ab(d)) << '\n';
  }
  return 0;
}

int cmd_simulate(const std::string& config_path) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "simulate: cannot read '" << config_path << "'\n";
    return kExitUsage;
  }
  qkd::SimConfig config;
  try {
    config = qkd::sim_config_from_json(nlohmann::json::parse(in));
  } catch (const std::exception& e) {
    std::cerr << "simulate: bad config: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    std::cout << qkd::sim_result_to_json(qkd::run_protocol(config)).dump() << "\n";
  } catch (const qkd::DegenerateSample& e) {
    std::cerr << "simulate: " << e.what() << "\n";
    return kExitDomain;
  }
  return 0;
}

int cmd_oracle(unsigned n, const std::string& scheme_name, double d, std::optional<double> tol) {
  const double tolerance = tol.value_or(1.0 / (2.0 * n));
  try {
    const qkd::Scheme scheme = qkd::Scheme::parse(scheme_name);
    const double asymptotic = qkd::asymptotic_log_omega_per_bit(scheme, d);
    const double exact =
        qkd::log_omega_exact(n, qkd::detection_profile(scheme), d, tolerance) / (2.0 * n);
    std::cout << "n " << n << "\nscheme " << scheme.name() << "\nd " << fmt12(d) << "\ntol "
              << fmt12(tolerance) << "\nexact_per_bit " << fmt12(exact) << "\nasymptotic_per_bit "
              << fmt12(asymptotic) << "\ngap " << fmt12(asymptotic - exact) << "\n";
  } catch (const qkd::NoCompositionInWindow& e) {
    std::cerr << "oracle: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "oracle: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}

int cmd_basis_average(const std::string& state, const std::string& ensemble_name,
                      const std::string& method_name, int nodes, std::uint64_t samples,
                      std::uint64_t seed) {
  qkd::BellLabel label;
  if (state == "phi+") label = qkd::BellLabel::phi_plus;
  else if (state == "psi+") label = qkd::BellLabel::psi_plus;
  else if (state == "phi-") label = qkd::BellLabel::phi_minus;
  else if (state == "psi-") label = qkd::BellLabel::psi_minus;
  else {
    std::cerr << "basis-average: unknown state '" << state << "' (use phi+ psi+ phi- psi-)\n";
    return kExitUsage;
  }
  qkd::BasisEnsemble ensemble;
  if (ensemble_name == "sphere") ensemble = qkd::SphereUniform{};
  else if (ensemble_name == "plane") ensemble = qkd::PlaneUniformZX{};
  else {
    std::cerr << "basis-average: unknown ensemble '" << ensemble_name << "'\n";
    return kExitUsage;
  }
  qkd::AveragingMethod method;
  if (method_name == "quadrature") method = qkd::Quadrature{nodes};
  else if (method_name == "mc") method = qkd::MonteCarlo{samples, seed};
  else {
    std::cerr << "basis-average: unknown method '" << method_name << "'\n";
    return kExitUsage;
  }
  try {
    const auto avg = qkd::average_parallel_probability(label, ensemble, method);
    std::printf("%.12g +/- %.3g\n", avg.value, avg.error);
  } catch (const std::exception& e) {
    std::cerr << "basis-average: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eavesdropper information bounds for BB84-family QKD schemes"};
  app.require_subcommand(1);

  auto* curve = app.add_subcommand("curve", "Write the bound curves as CSV");
  double d_min = 0.0, d_max = 0.0, step = 0.0;
  std::string out_path;
  curve->add_option("--min", d_min, "Grid start")->required();
  curve->add_option("--max", d_max, "Grid end")->required();
  curve->add_option("--step", step, "Grid step")->required();
  curve->add_option("--out", out_path, "Output CSV path")->required();

  auto* simulate = app.add_subcommand("simulate", "Run the protocol simulator on a JSON config");
  std::string config_path;
  simulate->add_option("--config", config_path, "SimConfig JSON file")->required();

  auto* oracle = app.add_subcommand(
      "oracle", "Compare the exact finite-n enumeration with the asymptotic bound");
  unsigned n = 0;
  std::string scheme_name;
  double d = 0.0;
  std::optional<double> tol;
  oracle->add_option("--n", n, "Pair count (<= 512)")->required();
  oracle->add_option("--scheme", scheme_name, "bb84 | six-state | npab-bb84 | npab-six-state")
      ->required();
  oracle->add_option("--d", d, "Target error rate")->required();
  oracle->add_option("--tol", tol, "Rate window half-width (default 1/(2n))");

  auto* basis_avg = app.add_subcommand("basis-average",
                                       "Average parallel-outcome probability over an ensemble");
  std::string state, ensemble_name, method_name = "quadrature";
  int nodes = 32;
  std::uint64_t samples = 100000, seed = 1;
  basis_avg->add_option("--state", state, "phi+ | psi+ | phi- | psi-")->required();
  basis_avg->add_option("--ensemble", ensemble_name, "sphere | plane")->required();
  basis_avg->add_option("--method", method_name, "quadrature | mc");
  basis_avg->add_option("--nodes", nodes, "Quadrature nodes (>= 8)");
  basis_avg->add_option("--samples", samples, "Monte Carlo samples");
  basis_avg->add_option("--seed", seed, "Monte Carlo seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*curve) return cmd_curve(d_min, d_max, step, out_path);
  if (*simulate) return cmd_simulate(config_path);
  if (*oracle) return cmd_oracle(n, scheme_name, d, tol);
  return cmd_basis_average(state, ensemble_name, method_name, nodes, samples, seed);
}
