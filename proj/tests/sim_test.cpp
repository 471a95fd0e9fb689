#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "qkd/bounds.hpp"
#include "qkd/sim.hpp"

using namespace qkd;

namespace {

bool same_result(const SimResult& a, const SimResult& b) {
  return a.sifted == b.sifted && a.n_para == b.n_para && a.n_anti == b.n_anti &&
         a.empirical_d == b.empirical_d && a.expected_d == b.expected_d &&
         a.i_eve_bound == b.i_eve_bound && a.standard_error == b.standard_error;
}

std::vector<std::uint64_t> seed_range(std::uint64_t first, std::size_t count) {
  std::vector<std::uint64_t> seeds(count);
  std::iota(seeds.begin(), seeds.end(), first);
  return seeds;
}

const BellDiagonal kMixed({0.1, 0.1, 0.1, 0.7});

}  // namespace

TEST_CASE("identical configs give bit-identical results") {
  for (const Scheme& scheme : {Scheme::bb84(), Scheme::six_state(), Scheme::npab_bb84(),
                               Scheme::multi_basis_sphere(9), Scheme::multi_basis_plane(5)}) {
    const SimConfig config{scheme, 20000, kMixed, 99, 0.8};
    CHECK(same_result(run_protocol(config), run_protocol(config)));
  }
}

TEST_CASE("honest source never shows parallel outcomes") {
  const SimConfig config{Scheme::bb84(), 1000, BellDiagonal::honest(), 5, 1.0};
  const auto r = run_protocol(config);
  CHECK(r.n_para == 0);
  CHECK(r.empirical_d == 0.0);
  CHECK(r.expected_d == 0.0);
  CHECK(r.i_eve_bound == 0.0);
  CHECK(r.standard_error == 0.0);
  CHECK(r.sifted > 0);
}

TEST_CASE("all-phi+ source is always flagged under bb84 checking") {
  const SimConfig config{Scheme::bb84(), 10000, BellDiagonal({1.0, 0.0, 0.0, 0.0}), 11, 1.0};
  const auto r = run_protocol(config);
  CHECK(r.n_anti == 0);
  CHECK(r.empirical_d == 1.0);
  CHECK(r.expected_d == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("uniform source under six-state lands near one half") {
  const SimConfig config{Scheme::six_state(), 100000, BellDiagonal({0.25, 0.25, 0.25, 0.25}), 17,
                         1.0};
  const auto r = run_protocol(config);
  CHECK(std::abs(r.empirical_d - 0.5) <= 4.0 * r.standard_error);
}

TEST_CASE("mixed source under bb84 lands near 0.2") {
  const SimConfig config{Scheme::bb84(), 100000, kMixed, 23, 1.0};
  const auto r = run_protocol(config);
  CHECK(std::abs(r.expected_d - 0.2) < 1e-12);
  CHECK(std::abs(r.empirical_d - 0.2) <= 4.0 * r.standard_error);
  CHECK(r.i_eve_bound == i_eve_bb84(r.empirical_d));
}

TEST_CASE("sifted fraction tracks the sift probability") {
  for (const Scheme& scheme : {Scheme::bb84(), Scheme::six_state(), Scheme::npab_bb84(),
                               Scheme::npab_six_state(), Scheme::multi_basis_sphere(5),
                               Scheme::multi_basis_plane(4)}) {
    const std::uint64_t pairs = 100000;
    const auto r = run_protocol({scheme, pairs, kMixed, 31, 1.0});
    const double p = sift_probability(scheme);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(pairs));
    CHECK(std::abs(static_cast<double>(r.sifted) / pairs - p) <= 4.0 * se + 1e-12);
  }
}

TEST_CASE("multi-basis sphere empirical rate matches its finite-set expectation") {
  const SimConfig config{Scheme::multi_basis_sphere(12), 100000, kMixed, 37, 1.0};
  const auto r = run_protocol(config);
  CHECK(std::abs(r.empirical_d - r.expected_d) <= 4.0 * r.standard_error);
  // the finite-12 expectation sits near the continuum value
  const double continuum = expected_error_rate(kMixed, detection_profile(config.scheme));
  CHECK(std::abs(r.expected_d - continuum) < 0.02);
}

TEST_CASE("multi-basis plane empirical rate matches its finite-set expectation") {
  const SimConfig config{Scheme::multi_basis_plane(6), 100000, kMixed, 43, 1.0};
  const auto r = run_protocol(config);
  CHECK(std::abs(r.empirical_d - r.expected_d) <= 4.0 * r.standard_error);
  // even theta grids average the plane integrands exactly, so the finite
  // expectation already equals the continuum value
  const double continuum = expected_error_rate(kMixed, detection_profile(config.scheme));
  CHECK(std::abs(r.expected_d - continuum) < 1e-12);
}

TEST_CASE("empirical rate is within four standard errors in at least 95 of 100 runs") {
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = run_protocol({Scheme::bb84(), 20000, kMixed, seed, 1.0});
    if (std::abs(r.empirical_d - r.expected_d) <= 4.0 * r.standard_error) ++hits;
  }
  CHECK(hits >= 95);
}

TEST_CASE("check fraction thins the checked subset") {
  const SimConfig full{Scheme::bb84(), 50000, kMixed, 41, 1.0};
  const SimConfig thin{Scheme::bb84(), 50000, kMixed, 41, 0.25};
  const auto rf = run_protocol(full);
  const auto rt = run_protocol(thin);
  CHECK(rf.sifted == rt.sifted);  // sifting does not depend on checking
  const auto checked = [](const SimResult& r) { return r.n_para + r.n_anti; };
  CHECK(checked(rf) == rf.sifted);
  const double expect = 0.25 * static_cast<double>(rt.sifted);
  const double se = std::sqrt(0.25 * 0.75 * static_cast<double>(rt.sifted));
  CHECK(std::abs(static_cast<double>(checked(rt)) - expect) <= 4.0 * se);
}

TEST_CASE("degenerate samples are reported") {
  // tiny check fraction: overwhelmingly likely that nothing gets checked,
  // and deterministic for any fixed seed
  bool threw = false;
  for (std::uint64_t seed = 0; seed < 10 && !threw; ++seed) {
    try {
      run_protocol({Scheme::bb84(), 3, BellDiagonal::honest(), seed, 1e-15});
    } catch (const DegenerateSample&) {
      threw = true;
    }
  }
  CHECK(threw);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(run_protocol({Scheme::bb84(), 0, kMixed, 1, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(run_protocol({Scheme::bb84(), 10, kMixed, 1, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(run_protocol({Scheme::bb84(), 10, kMixed, 1, 1.5}), std::invalid_argument);
}

TEST_CASE("npab basis sequences") {
  const auto seq = npab_basis_sequence(77, 100000, Scheme::npab_bb84());
  REQUIRE(seq.size() == 100000);
  std::uint64_t z_count = 0;
  for (const Basis& b : seq) {
    const bool is_z = b.axis() == Axis::z;
    const bool is_x = b.axis() == Axis::x;
    REQUIRE((is_z || is_x));
    if (is_z) ++z_count;
  }
  const double freq = static_cast<double>(z_count) / 100000.0;
  CHECK(std::abs(freq - 0.5) <= 4.0 * std::sqrt(0.25 / 100000.0));

  const auto again = npab_basis_sequence(77, 100000, Scheme::npab_bb84());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    REQUIRE(seq[i].axis() == again[i].axis());
  }

  const auto six = npab_basis_sequence(3, 1000, Scheme::npab_six_state());
  bool saw_y = false;
  for (const Basis& b : six) saw_y = saw_y || b.axis() == Axis::y;
  CHECK(saw_y);

  CHECK_THROWS_AS(npab_basis_sequence(1, 10, Scheme::bb84()), std::invalid_argument);
}

TEST_CASE("npab equivalence trial") {
  const auto seeds = seed_range(1000, 30);
  const auto r = equivalence_trial(kMixed, 20000, seeds);
  CHECK(r.consistent());
  CHECK(std::abs(r.mean_bb84 - 0.2) < 0.05);
  CHECK(std::abs(r.mean_npab - 0.2) < 0.05);

  const auto honest = equivalence_trial(BellDiagonal::honest(), 5000, seeds);
  CHECK(honest.mean_bb84 == 0.0);
  CHECK(honest.mean_npab == 0.0);
  CHECK(honest.consistent());

  CHECK_THROWS_AS(equivalence_trial(kMixed, 1000, seed_range(0, 10)), std::invalid_argument);
}

TEST_CASE("npab and bb84 report the same bound function of the empirical rate") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = run_protocol({Scheme::bb84(), 20000, kMixed, seed, 1.0});
    const auto b = run_protocol({Scheme::npab_bb84(), 20000, kMixed, seed, 1.0});
    CHECK(a.i_eve_bound == i_eve_bb84(a.empirical_d));
    CHECK(b.i_eve_bound == i_eve_bb84(b.empirical_d));
  }
}

TEST_CASE("sim config json round trip") {
  const SimConfig config{Scheme::multi_basis_sphere(7), 1234, kMixed, 99, 0.5};
  const auto j = sim_config_to_json(config);
  const auto back = sim_config_from_json(j);
  CHECK(back.scheme == config.scheme);
  CHECK(back.pairs == config.pairs);
  CHECK(back.source.probs() == config.source.probs());
  CHECK(back.seed == config.seed);
  CHECK(back.check_fraction == config.check_fraction);
}

TEST_CASE("sim config json accepts scheme names and defaults check_fraction") {
  const auto j = nlohmann::json::parse(
      R"({"scheme":"npab-six-state","pairs":50,"source":[0,0,0,1],"seed":7})");
  const auto config = sim_config_from_json(j);
  CHECK(config.scheme == Scheme::npab_six_state());
  CHECK(config.check_fraction == 1.0);
}

TEST_CASE("sim config json rejects malformed documents") {
  using nlohmann::json;
  CHECK_THROWS(sim_config_from_json(json::parse(R"({"pairs":10})")));
  CHECK_THROWS(sim_config_from_json(
      json::parse(R"({"scheme":"b92","pairs":10,"source":[0,0,0,1],"seed":1})")));
  CHECK_THROWS(sim_config_from_json(
      json::parse(R"({"scheme":"bb84","pairs":0,"source":[0,0,0,1],"seed":1})")));
  CHECK_THROWS(sim_config_from_json(
      json::parse(R"({"scheme":"bb84","pairs":10,"source":[0.5,0,0,1],"seed":1})")));
  CHECK_THROWS(sim_config_from_json(
      json::parse(R"({"scheme":"bb84","pairs":10,"source":[0,0,0,1],"seed":-4})")));
  CHECK_THROWS(sim_config_from_json(json::parse(
      R"({"scheme":"bb84","pairs":10,"source":[0,0,0,1],"seed":1,"check_fraction":0})")));
  CHECK_THROWS(sim_config_from_json(json::parse(
      R"({"scheme":"multi-basis-sphere","pairs":10,"source":[0,0,0,1],"seed":1})")));
}

TEST_CASE("sim result json carries exactly the result fields") {
  const auto r = run_protocol({Scheme::bb84(), 1000, kMixed, 1, 1.0});
  const auto j = sim_result_to_json(r);
  CHECK(j.size() == 7);
  for (const char* key : {"sifted", "n_para", "n_anti", "empirical_d", "expected_d",
                          "i_eve_bound", "standard_error"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["sifted"].get<std::uint64_t>() == r.sifted);
  CHECK(j["empirical_d"].get<double>() == r.empirical_d);
}
