#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "oracles.hpp"
#include "ringchord/experiments.hpp"

using namespace ringchord;

TEST_CASE("instance generation") {
    std::mt19937_64 rng(1);
    const auto uni = generate_instance(10, 1.0, 1.0, rng);
    for (int i = 0; i < 10; ++i) CHECK(uni.conductance(i) == 1.0);

    std::mt19937_64 a(42), b(42);
    const auto ca = generate_instance(12, 1.0, 100.0, a);
    const auto cb = generate_instance(12, 1.0, 100.0, b);
    for (int i = 0; i < 12; ++i) CHECK(ca.conductance(i) == cb.conductance(i));

    CHECK_THROWS_AS(generate_instance(10, 0.0, 1.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(generate_instance(10, 2.0, 1.0, rng), std::invalid_argument);

    // CLT band for the sample mean of 1e5 draws from U[1, 100].
    std::mt19937_64 big(7);
    double acc = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) acc += uniform_real(big, 1.0, 100.0);
    const double mean = acc / draws;
    const double sd = 99.0 / std::sqrt(12.0);
    CHECK(std::abs(mean - 50.5) <= 4.0 * sd / std::sqrt(static_cast<double>(draws)));
}

TEST_CASE("pearson correlation basics") {
    const std::vector<double> x = {1, 2, 3, 4, 5};
    std::vector<double> y = x;
    CHECK(pearson_correlation(x, y) == doctest::Approx(1.0));
    for (auto& v : y) v = -v;
    CHECK(pearson_correlation(x, y) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(pearson_correlation(x, {1, 1, 1, 1, 1}), std::invalid_argument);
}

TEST_CASE("campaign config JSON round trip") {
    const std::string text = R"({
        "n": 60, "conductance_lo": 1.0, "conductance_hi": 10.0,
        "budget_rule": "max_conductance", "tau": 0.2, "m": 8,
        "trials": 5, "master_seed": 99,
        "strategies": ["fiedler", "aw_rbaps"], "mode": "gain_screening"
    })";
    const auto cfg = CampaignConfig::from_json(text);
    CHECK(cfg.n == 60);
    CHECK(cfg.budget_rule == BudgetRule::MaxConductance);
    CHECK(cfg.strategies.size() == 2);
    const auto back = CampaignConfig::from_json(cfg.to_json());
    CHECK(back.tau == cfg.tau);
    CHECK(back.master_seed == cfg.master_seed);

    CHECK_THROWS_AS(CampaignConfig::from_json(R"({"n": 10})"), std::invalid_argument);

    const auto fixed = CampaignConfig::from_json(R"({"master_seed": 1, "budget_rule": 42.0})");
    CHECK(fixed.budget_rule == BudgetRule::Fixed);
    CHECK(fixed.budget_value == 42.0);

    std::mt19937_64 rng(3);
    const auto cycle = generate_instance(10, 1.0, 10.0, rng);
    CHECK(fixed.budget_for(cycle) == 42.0);
    CampaignConfig upper;
    upper.conductance_hi = 10.0;
    CHECK(upper.budget_for(cycle) == 10.0);
    CampaignConfig maxc;
    maxc.budget_rule = BudgetRule::MaxConductance;
    CHECK(maxc.budget_for(cycle) ==
          *std::max_element(cycle.conductances().begin(), cycle.conductances().end()));
}

namespace {

CampaignConfig small_gain_config() {
    CampaignConfig cfg;
    cfg.n = 40;
    cfg.conductance_lo = 1.0;
    cfg.conductance_hi = 100.0;
    cfg.trials = 8;
    cfg.master_seed = 20250810;
    cfg.m = 12;
    cfg.tau = 0.1;
    cfg.mode = CampaignMode::GainScreening;
    return cfg;
}

} // namespace

TEST_CASE("gain campaign invariants at small scale") {
    const auto cfg = small_gain_config();
    const auto result = run_gain_campaign(cfg);
    REQUIRE(result.trials.size() == 8);

    for (const auto& rep : result.trials) {
        REQUIRE(rep.strategies.size() == 4);
        double rbaps_theta = 0.0, aw_theta = 0.0;
        for (const auto& o : rep.strategies) {
            CHECK(o.theta_hat >= 0.0);
            CHECK(o.theta_hat <= 1.0 + 1e-12);
            if (o.strategy == Strategy::Rbaps) rbaps_theta = o.theta_hat;
            if (o.strategy == Strategy::AwRbaps) aw_theta = o.theta_hat;
        }
        // RBAPS candidates are a subset of AW-RBAPS candidates.
        CHECK(rbaps_theta <= aw_theta + 1e-12);
    }

    // The full-set selector is the normalizer: theta_hat exactly 1.
    std::mt19937_64 rng(substream_seed(cfg.master_seed, 0));
    const auto cycle = generate_instance(cfg.n, cfg.conductance_lo, cfg.conductance_hi, rng);
    const auto spec = SpectralDecomposition::decompose(cycle, false);
    const double w = cfg.budget_for(cycle);
    CandidateSet full;
    full.pairs = admissible_chords(cycle);
    const auto score = [&](const Chord& c) { return lowfreq_gain(spec, c.p, c.q, w, cfg.m); };
    const Chord best = select_best(full, score);
    double max_score = 0.0;
    for (const Chord& c : full.pairs) max_score = std::max(max_score, score(c));
    CHECK(score(best) == doctest::Approx(max_score));
}

TEST_CASE("campaign outputs are byte-identical across worker counts") {
    const auto cfg = small_gain_config();

    setenv("RING_CHORD_THREADS", "1", 1);
    const auto serial = run_gain_campaign(cfg);
    setenv("RING_CHORD_THREADS", "2", 1);
    const auto parallel = run_gain_campaign(cfg);
    unsetenv("RING_CHORD_THREADS");
    const auto free_run = run_gain_campaign(cfg);

    std::ostringstream s1, s2, s3;
    serial.write_trials_csv(s1);
    parallel.write_trials_csv(s2);
    free_run.write_trials_csv(s3);
    CHECK(s1.str() == s2.str());
    CHECK(s1.str() == s3.str());
    CHECK(serial.summary_json() == parallel.summary_json());
    CHECK(s1.str().find("trial,seed,strategy,p,q,theta_hat\n") == 0);
}

TEST_CASE("RBAPS stays near the exhaustive optimum on large rings") {
    CampaignConfig cfg;
    cfg.n = 800;
    cfg.trials = 6;
    cfg.master_seed = 80080;
    cfg.strategies = {Strategy::Rbaps};
    const auto result = run_gain_campaign(cfg);
    CHECK(result.gain_aggregates.front().mean >= 0.999);
}

TEST_CASE("select_screened validates its config") {
    std::mt19937_64 rng(6);
    const auto cycle = generate_instance(20, 1.0, 10.0, rng);
    const auto spec = SpectralDecomposition::decompose(cycle, false);
    CHECK_NOTHROW(select_screened(cycle, spec, {.tau = 0.1, .modes = 8}, 10.0));
    CHECK_THROWS_AS(select_screened(cycle, spec, {.tau = 1.0, .modes = 8}, 10.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(select_screened(cycle, spec, {.tau = 0.1, .modes = 0}, 10.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(select_screened(cycle, spec, {.tau = 0.1, .modes = 20}, 10.0),
                    std::invalid_argument);
}

TEST_CASE("correlation campaign on synthetic and sampled instances") {
    CampaignConfig cfg;
    cfg.n = 30;
    cfg.trials = 4;
    cfg.master_seed = 5;
    cfg.mode = CampaignMode::Correlation;
    const auto result = run_correlation_campaign(cfg);
    REQUIRE(result.trials.size() == 4);
    for (const auto& rep : result.trials) {
        REQUIRE(rep.pearson_r.has_value());
        CHECK(*rep.pearson_r >= -1.0);
        CHECK(*rep.pearson_r <= 1.0);
    }
    CHECK(result.pearson_mean.has_value());
    CHECK(*result.pearson_min <= *result.pearson_mean);
    CHECK(*result.pearson_mean <= *result.pearson_max);
}

TEST_CASE("pareto campaign with a screen-everything tolerance is perfect") {
    CampaignConfig cfg;
    cfg.n = 24;
    cfg.trials = 3;
    cfg.master_seed = 31;
    cfg.mode = CampaignMode::Pareto;
    cfg.tau = 1.0;  // the window covers the whole cycle: screened = full
    const auto result = run_pareto_campaign(cfg);
    for (const auto& rep : result.trials) {
        REQUIRE(rep.pareto.has_value());
        CHECK(rep.pareto->coverage == doctest::Approx(1.0));
        CHECK(rep.pareto->epsilon_plus == doctest::Approx(0.0));
        CHECK(rep.pareto->hv_ratio == doctest::Approx(1.0));
        CHECK(rep.pareto->candidate_ratio == doctest::Approx(1.0));
        CHECK(rep.pareto->knee_captured);
    }
    const auto& agg = *result.pareto_aggregates;
    CHECK(agg.exact_coverage_fraction == doctest::Approx(1.0));
    CHECK(agg.knee_capture_fraction == doctest::Approx(1.0));
    CHECK(agg.degenerate_excluded == 0);
}

TEST_CASE("pareto campaign writes fronts and sensible metrics") {
    CampaignConfig cfg;
    cfg.n = 40;
    cfg.trials = 4;
    cfg.master_seed = 77;
    cfg.mode = CampaignMode::Pareto;
    cfg.tau = 0.1;
    cfg.write_fronts = true;
    const auto result = run_pareto_campaign(cfg);
    for (const auto& rep : result.trials) {
        CHECK(!rep.front_json.empty());
        CHECK(rep.pareto->candidate_ratio > 0.0);
        CHECK(rep.pareto->candidate_ratio < 1.0);
        CHECK(rep.pareto->full_front_size >= 1);
        CHECK(rep.pareto->screened_front_size >= 1);
    }

    std::ostringstream csv;
    result.write_trials_csv(csv);
    CHECK(csv.str().find("trial,seed,coverage,") == 0);
    CHECK(!result.summary_json().empty());
}
