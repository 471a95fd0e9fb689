// End-to-end sampling simulator of the entanglement-based protocol under an
// i.i.d. Bell-diagonal adversarial source, for every scheme variant including
// no-public-announcement. Runs are pure functions of their config: every draw
// comes from a counter-based generator indexed by (seed, pair, slot), so
// results are bit-identical across runs, kernel variants, and any internal
// work partitioning.

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "qkd/schemes.hpp"

namespace qkd {

// Zero pairs survived sifting and checking.
struct DegenerateSample : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimConfig {
  Scheme scheme = Scheme::bb84();
  std::uint64_t pairs = 0;
  BellDiagonal source = BellDiagonal::honest();
  std::uint64_t seed = 0;
  double check_fraction = 1.0;  // fraction of sifted pairs publicly compared
};

struct SimResult {
  std::uint64_t sifted = 0;
  std::uint64_t n_para = 0;
  std::uint64_t n_anti = 0;
  double empirical_d = 0.0;
  double expected_d = 0.0;
  double i_eve_bound = 0.0;
  double standard_error = 0.0;
};

SimResult run_protocol(const SimConfig& config);

// The pre-shared secret basis string of an NPAB scheme: a deterministic
// pseudo-random sequence over {Z, X} or {Z, X, Y}. Rejects non-NPAB schemes.
// run_protocol draws the same values internally for NPAB runs.
std::vector<Basis> npab_basis_sequence(std::uint64_t seed, std::uint64_t length,
                                       const Scheme& scheme);

struct EquivalenceResult {
  double mean_bb84 = 0.0;
  double mean_npab = 0.0;
  double var_bb84 = 0.0;
  double var_npab = 0.0;
  double mean_difference = 0.0;
  double combined_std_error = 0.0;
  // Degenerate sources have zero spread; equality is then the only acceptable
  // outcome.
  bool consistent(double sigmas = 4.0) const noexcept {
    if (combined_std_error > 0.0) return std::abs(mean_difference) <= sigmas * combined_std_error;
    return mean_difference == 0.0;
  }
};

// Runs BB84 and NPAB-BB84 once per seed and compares the empirical error-rate
// distributions. Requires at least 30 seeds.
EquivalenceResult equivalence_trial(const BellDiagonal& source, std::uint64_t pairs,
                                    std::span<const std::uint64_t> seeds);

// JSON wire formats. SimConfig fields: scheme, pairs, source, seed,
// check_fraction (optional, default 1). scheme is a name string, or an object
// {"kind": name, "m": count} for multiple-basis variants.
SimConfig sim_config_from_json(const nlohmann::json& j);
nlohmann::json sim_config_to_json(const SimConfig& config);
nlohmann::json sim_result_to_json(const SimResult& result);

}  // namespace qkd
