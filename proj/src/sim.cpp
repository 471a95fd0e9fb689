#include "qkd/sim.hpp"

#include <algorithm>
#include <cmath>

#include "qkd/bounds.hpp"
#include "qkd/detail/rng.hpp"
#include "qkd/kernels.hpp"

namespace qkd {

namespace {

constexpr int kMaxBasisCount = 1000000;

// Matched-basis parallel probabilities for the scheme's actual basis set.
// Entries within 1e-9 of 0 or 1 are snapped exact: those probabilities are
// exactly 0 or 1 analytically, and snapping keeps the degenerate sources
// (all-singlet, all-phi+) exact in finite samples.
std::vector<double> parallel_table(const std::vector<Basis>& set) {
  std::vector<double> table(4 * set.size());
  for (BellLabel l : kAllBellLabels) {
    for (std::size_t j = 0; j < set.size(); ++j) {
      double p = parallel_probability(l, set[j]);
      if (p < 1e-9) p = 0.0;
      if (p > 1.0 - 1e-9) p = 1.0;
      table[index_of(l) * set.size() + j] = p;
    }
  }
  return table;
}

// Expected error rate of the simulated protocol: the same-basis average over
// the actual finite basis set. For BB84/six-state this matches the continuum
// detection profile to 1e-12; for finite multiple-basis sets it is the exact
// finite-m expectation.
double expected_rate(const BellDiagonal& source, const std::vector<double>& table, int m) {
  double d = 0.0;
  for (BellLabel l : kAllBellLabels) {
    double row = 0.0;
    for (int j = 0; j < m; ++j) row += table[index_of(l) * m + j];
    d += source[l] * (row / m);
  }
  return d;
}

// Per-sifted-bit bound at the observed rate. Sphere-family schemes use the
// six-state form (their continuum bound); plane-family the BB84 form. Finite
// samples can overshoot the six-state domain, so clamp.
double bound_at(const Scheme& scheme, double empirical_d) {
  switch (scheme.underlying().kind()) {
    case SchemeKind::six_state:
    case SchemeKind::multi_basis_sphere:
      return i_eve_six_state(std::min(empirical_d, 2.0 / 3.0));
    default:
      return i_eve_bb84(empirical_d);
  }
}

kernels::PairTable build_table(const SimConfig& config) {
  const auto set = scheme_basis_set(config.scheme);
  if (set.size() > kMaxBasisCount) {
    throw std::invalid_argument("run_protocol: basis count too large");
  }
  kernels::PairTable t;
  t.basis_count = static_cast<int>(set.size());
  t.npab = config.scheme.npab();
  t.check_fraction = config.check_fraction;
  const auto& p = config.source.probs();
  t.label_cdf = {p[0], p[0] + p[1], p[0] + p[1] + p[2]};
  t.parallel_prob = parallel_table(set);
  return t;
}

}  // namespace

SimResult run_protocol(const SimConfig& config) {
  if (config.pairs < 1) throw std::invalid_argument("run_protocol: pairs must be >= 1");
  if (!(config.check_fraction > 0.0 && config.check_fraction <= 1.0)) {
    throw std::invalid_argument("run_protocol: check_fraction must lie in (0, 1]");
  }

  const kernels::PairTable table = build_table(config);
  const kernels::PairCounts counts = kernels::simulate_pairs(table, config.pairs, config.seed);
  if (counts.checked == 0) {
    throw DegenerateSample("run_protocol: no pairs survived sifting and checking");
  }

  SimResult r;
  r.sifted = counts.sifted;
  r.n_para = counts.parallel;
  r.n_anti = counts.anti;
  r.empirical_d = static_cast<double>(counts.parallel) / static_cast<double>(counts.checked);
  r.expected_d = expected_rate(config.source, table.parallel_prob, table.basis_count);
  r.i_eve_bound = bound_at(config.scheme, r.empirical_d);
  r.standard_error = std::sqrt(r.empirical_d * (1.0 - r.empirical_d) /
                               static_cast<double>(counts.checked));
  return r;
}

std::vector<Basis> npab_basis_sequence(std::uint64_t seed, std::uint64_t length,
                                       const Scheme& scheme) {
  if (!scheme.npab()) {
    throw std::invalid_argument("npab_basis_sequence: scheme must be an NPAB variant");
  }
  if (length < 1) throw std::invalid_argument("npab_basis_sequence: length must be >= 1");
  const auto set = scheme_basis_set(scheme);
  const double m = static_cast<double>(set.size());
  std::vector<Basis> out;
  out.reserve(length);
  for (std::uint64_t j = 0; j < length; ++j) {
    const double u = detail::to_unit(
        detail::counter_value(seed, j * detail::kSlotsPerPair + detail::kSlotNpabBasis));
    out.push_back(set[static_cast<std::size_t>(std::floor(u * m))]);
  }
  return out;
}

EquivalenceResult equivalence_trial(const BellDiagonal& source, std::uint64_t pairs,
                                    std::span<const std::uint64_t> seeds) {
  if (seeds.size() < 30) throw std::invalid_argument("equivalence_trial: need at least 30 seeds");

  const auto run_all = [&](const Scheme& scheme, double& mean, double& var) {
    std::vector<double> ds;
    ds.reserve(seeds.size());
    for (std::uint64_t seed : seeds) {
      ds.push_back(run_protocol({scheme, pairs, source, seed, 1.0}).empirical_d);
    }
    mean = 0.0;
    for (double d : ds) mean += d;
    mean /= static_cast<double>(ds.size());
    var = 0.0;
    for (double d : ds) var += (d - mean) * (d - mean);
    var /= static_cast<double>(ds.size() - 1);
  };

  EquivalenceResult r;
  run_all(Scheme::bb84(), r.mean_bb84, r.var_bb84);
  run_all(Scheme::npab_bb84(), r.mean_npab, r.var_npab);
  r.mean_difference = r.mean_bb84 - r.mean_npab;
  const double k = static_cast<double>(seeds.size());
  r.combined_std_error = std::sqrt(r.var_bb84 / k + r.var_npab / k);
  return r;
}

namespace {

Scheme scheme_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Scheme::parse(j.get<std::string>());
  if (j.is_object()) {
    const std::string kind = j.at("kind").get<std::string>();
    std::optional<int> m;
    if (j.contains("m")) m = j.at("m").get<int>();
    return Scheme::parse(kind, m);
  }
  throw std::invalid_argument("scheme: expected a name string or {kind, m} object");
}

nlohmann::json scheme_to_json(const Scheme& scheme) {
  if (scheme.multi_basis()) {
    return nlohmann::json{{"kind", scheme.name()}, {"m", scheme.basis_count()}};
  }
  return scheme.name();
}

std::uint64_t u64_field(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    throw std::invalid_argument(std::string(key) + ": expected a nonnegative integer");
  }
  if (v.is_number_integer() && v.get<std::int64_t>() < 0) {
    throw std::invalid_argument(std::string(key) + ": expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

}  // namespace

SimConfig sim_config_from_json(const nlohmann::json& j) {
  SimConfig config;
  config.scheme = scheme_from_json(j.at("scheme"));
  config.pairs = u64_field(j, "pairs");
  if (config.pairs < 1) throw std::invalid_argument("pairs: must be >= 1");
  const auto& src = j.at("source");
  if (!src.is_array() || src.size() != 4) {
    throw std::invalid_argument("source: expected 4 probabilities [phi+, psi+, phi-, psi-]");
  }
  config.source = BellDiagonal(
      {src[0].get<double>(), src[1].get<double>(), src[2].get<double>(), src[3].get<double>()});
  config.seed = u64_field(j, "seed");
  config.check_fraction = j.value("check_fraction", 1.0);
  if (!(config.check_fraction > 0.0 && config.check_fraction <= 1.0)) {
    throw std::invalid_argument("check_fraction: must lie in (0, 1]");
  }
  return config;
}

nlohmann::json sim_config_to_json(const SimConfig& config) {
  return nlohmann::json{{"scheme", scheme_to_json(config.scheme)},
                        {"pairs", config.pairs},
                        {"source", config.source.probs()},
                        {"seed", config.seed},
                        {"check_fraction", config.check_fraction}};
}

nlohmann::json sim_result_to_json(const SimResult& result) {
  return nlohmann::json{{"sifted", result.sifted},
                        {"n_para", result.n_para},
                        {"n_anti", result.n_anti},
                        {"empirical_d", result.empirical_d},
                        {"expected_d", result.expected_d},
                        {"i_eve_bound", result.i_eve_bound},
                        {"standard_error", result.standard_error}};
}

}  // namespace qkd
