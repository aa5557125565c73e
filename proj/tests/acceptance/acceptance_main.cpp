// Acceptance suite: one numbered criterion per section, one PASS/FAIL line
// each, nonzero exit when any criterion fails. Tolerances are pinned in the
// checks themselves; oracles run through dense eigendecompositions only.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ringchord/consensus_sim.hpp"
#include "ringchord/experiments.hpp"
#include "ringchord/pareto.hpp"

using namespace ringchord;

namespace {

struct Harness {
    int failures = 0;

    void report(int criterion, bool ok, const std::string& what) {
        std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof(buf), pattern, args);
    va_end(args);
    return buf;
}

struct Triple {
    WeightedCycle cycle;
    Chord chord;
    double w;
};

std::vector<Triple> random_triples(int count, std::uint64_t seed) {
    std::vector<Triple> triples;
    triples.reserve(static_cast<std::size_t>(count));
    std::mt19937_64 rng(seed);
    for (int i = 0; i < count; ++i) {
        const int n = 5 + static_cast<int>(uniform_index(rng, 56));
        auto cycle = generate_instance(n, 0.2, 8.0, rng);
        const auto chords = admissible_chords(cycle);
        const Chord chord = chords[uniform_index(rng, chords.size())];
        const double w = std::exp(uniform_real(rng, -2.0, 5.0));
        triples.push_back({std::move(cycle), chord, w});
    }
    return triples;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- criteria -------------------------------------------------------------

void criterion_1_update_oracles(Harness& h, const std::vector<Triple>& triples) {
    const auto t0 = std::chrono::steady_clock::now();
    double worst_improvement = 0.0, worst_pairwise = 0.0;
    for (const auto& tr : triples) {
        const auto spec = SpectralDecomposition::decompose(tr.cycle);
        const ChordCandidate chord(tr.cycle, tr.chord, tr.w);
        const Eigen::MatrixXd L = oracle::laplacian(tr.cycle);
        const Eigen::MatrixXd Lw = oracle::with_chord(L, tr.chord.p, tr.chord.q, tr.w);

        const double fast = kirchhoff_improvement(spec, chord);
        const double pair_sum = kirchhoff_improvement_pair_sum(spec, chord);
        const double dense = oracle::kirchhoff_index(L) - oracle::kirchhoff_index(Lw);
        const double scale = std::max({std::abs(fast), std::abs(dense), 1e-30});
        worst_improvement = std::max(worst_improvement, std::abs(fast - pair_sum) / scale);
        worst_improvement = std::max(worst_improvement, std::abs(fast - dense) / scale);

        const Eigen::MatrixXd Gw = oracle::pseudoinverse(Lw);
        for (int u = 0; u < tr.cycle.n(); ++u) {
            for (int v = u + 1; v < tr.cycle.n(); ++v) {
                const double mine = pairwise_resistance_updated(spec, chord, u, v);
                worst_pairwise =
                    std::max(worst_pairwise, std::abs(mine - oracle::resistance(Gw, u, v)));
            }
        }
    }
    const double secs = elapsed_s(t0);
    const bool ok = worst_improvement <= 1e-8 && worst_pairwise <= 1e-9 && secs < 60.0;
    h.report(1, ok,
             fmt("update-formula oracles on %zu triples: improvement rel err %.2e (<=1e-8), "
                 "pairwise abs err %.2e (<=1e-9), %.1fs (<60s)",
                 triples.size(), worst_improvement, worst_pairwise, secs));
}

void criterion_2_spectral_oracles(Harness& h, const std::vector<Triple>& triples) {
    double worst_rel = 0.0, worst_interlace = 0.0;
    for (const auto& tr : triples) {
        const auto spec = SpectralDecomposition::decompose(tr.cycle, false);
        const double mine = lambda1_updated(spec, tr.chord.p, tr.chord.q, tr.w);
        const double dense = oracle::lambda1(
            oracle::with_chord(oracle::laplacian(tr.cycle), tr.chord.p, tr.chord.q, tr.w));
        worst_rel = std::max(worst_rel, std::abs(mine - dense) / std::abs(dense));
        worst_interlace = std::max(worst_interlace, spec.lambda1() - mine);
        worst_interlace = std::max(worst_interlace, mine - spec.lambda2());
    }
    const bool ok = worst_rel <= 1e-8 && worst_interlace <= 1e-10;
    h.report(2, ok,
             fmt("secular vs dense lambda_1 on %zu triples: rel err %.2e (<=1e-8), "
                 "interlacing slack %.2e (<=1e-10)",
                 triples.size(), worst_rel, worst_interlace));
}

void criterion_3_monotonicity(Harness& h) {
    std::mt19937_64 rng(33);
    int violations = 0;
    for (int inst = 0; inst < 100; ++inst) {
        const int n = 8 + static_cast<int>(uniform_index(rng, 25));
        const auto cycle = generate_instance(n, 0.3, 6.0, rng);
        const auto spec = SpectralDecomposition::decompose(cycle);
        const auto chords = admissible_chords(cycle);
        const Chord c = chords[uniform_index(rng, chords.size())];
        const double w_hat = std::exp(uniform_real(rng, 0.0, 4.0));

        std::vector<double> r_vals, i_vals, l_vals;
        for (int k = 1; k <= 5; ++k) {
            const double w = 0.2 * k * w_hat;
            const ChordCandidate chord(cycle, c, w);
            r_vals.push_back(endpoint_resistance_updated(spec, chord));
            i_vals.push_back(kirchhoff_improvement(spec, chord));
            l_vals.push_back(lambda1_updated(spec, c.p, c.q, w));
        }
        const double r0 = pair_resistance(cycle, c.p, c.q);
        for (int k = 0; k < 5; ++k) {
            const double r_prev = k == 0 ? r0 : r_vals[k - 1];
            if (!(r_vals[k] - r_prev < 0.0)) ++violations;   // R strictly decreasing
            const double i_prev = k == 0 ? 0.0 : i_vals[k - 1];
            if (i_vals[k] - i_prev <= -1e-10) ++violations;  // improvement increasing
            const double l_prev = k == 0 ? spec.lambda1() : l_vals[k - 1];
            if (l_vals[k] - l_prev < -1e-10) ++violations;   // lambda_1 nondecreasing
        }
        for (int k = 2; k < 5; ++k) {
            const double d2r = r_vals[k] - 2 * r_vals[k - 1] + r_vals[k - 2];
            if (d2r < -1e-10) ++violations;                  // R convex
            const double d2i = i_vals[k] - 2 * i_vals[k - 1] + i_vals[k - 2];
            if (d2i > 1e-10) ++violations;                   // improvement concave
            const double d2l = l_vals[k] - 2 * l_vals[k - 1] + l_vals[k - 2];
            if (d2l > 1e-10) ++violations;                   // lambda_1 concave
        }
    }
    h.report(3, violations == 0,
             fmt("monotonicity/concavity grids on 100 instances: %d violations beyond 1e-10",
                 violations));
}

void criterion_4_closed_forms(Harness& h) {
    double worst_kf = 0.0, worst_modal = 0.0;
    std::mt19937_64 rng(44);
    for (int inst = 0; inst < 12; ++inst) {
        const int n = 10 + static_cast<int>(uniform_index(rng, 191));
        const auto cycle = generate_instance(n, 0.1, 10.0, rng);
        const auto spec = SpectralDecomposition::decompose(cycle, false);
        const double closed = kirchhoff_index_closed_form(cycle);
        const double spectral = n * spec.eigenvalues().tail(n - 1).cwiseInverse().sum();
        worst_kf = std::max(worst_kf, std::abs(closed - spectral) / spectral);

        const auto chords = admissible_chords(cycle);
        const Chord c = chords[uniform_index(rng, chords.size())];
        const auto jumps = mode_jumps(spec, c.p, c.q);
        double modal = 0.0;
        for (int k = 1; k < n; ++k) {
            modal += jumps.beta[k - 1] * jumps.beta[k - 1] / spec.eigenvalue(k);
        }
        const double direct = pair_resistance(cycle, c.p, c.q);
        worst_modal = std::max(worst_modal, std::abs(modal - direct) / direct);
    }
    const auto u4 = WeightedCycle(4, {1, 1, 1, 1});
    const auto u5 = WeightedCycle(5, {1, 1, 1, 1, 1});
    const double kf4 = kirchhoff_index_closed_form(u4);
    const double kf5 = kirchhoff_index_closed_form(u5);
    const bool ok = worst_kf <= 1e-8 && worst_modal <= 1e-8 && std::abs(kf4 - 5.0) <= 1e-10 &&
                    std::abs(kf5 - 10.0) <= 1e-10;
    h.report(4, ok,
             fmt("closed forms: K_f rel err %.2e, modal identity rel err %.2e (<=1e-8), "
                 "uniform K_f(4)=%.12g, K_f(5)=%.12g",
                 worst_kf, worst_modal, kf4, kf5));
}

CampaignConfig default_gain_config() {
    CampaignConfig cfg;
    cfg.n = 200;
    cfg.conductance_lo = 1.0;
    cfg.conductance_hi = 100.0;
    cfg.budget_rule = BudgetRule::RangeUpper;
    cfg.tau = 0.1;
    cfg.m = 12;
    cfg.mode = CampaignMode::GainScreening;
    return cfg;
}

void criterion_5_table_reproduction(Harness& h) {
    const auto t0 = std::chrono::steady_clock::now();
    auto cfg = default_gain_config();
    cfg.trials = 100;
    cfg.master_seed = 20260501;
    const auto result = run_gain_campaign(cfg);

    double random_mean = 0, fiedler_mean = 0, rbaps_mean = 0, aw_mean = 0;
    for (const auto& agg : result.gain_aggregates) {
        switch (agg.strategy) {
            case Strategy::Random: random_mean = agg.mean; break;
            case Strategy::Fiedler: fiedler_mean = agg.mean; break;
            case Strategy::Rbaps: rbaps_mean = agg.mean; break;
            case Strategy::AwRbaps: aw_mean = agg.mean; break;
        }
    }
    const double secs = elapsed_s(t0);
    const bool ordered = fiedler_mean < rbaps_mean && rbaps_mean < aw_mean;
    const bool ok = random_mean >= 0.30 && random_mean <= 0.60 && fiedler_mean >= 0.985 &&
                    rbaps_mean >= 0.993 && aw_mean >= 0.997 && ordered && secs < 1200.0;
    h.report(5, ok,
             fmt("table reproduction (100 trials, n=200): random %.4f in [0.30,0.60], "
                 "fiedler %.4f>=0.985, rbaps %.4f>=0.993, aw %.4f>=0.997, ordered %s, %.0fs",
                 random_mean, fiedler_mean, rbaps_mean, aw_mean, ordered ? "yes" : "no", secs));
}

void criterion_6_heterogeneity(Harness& h) {
    auto cfg = default_gain_config();
    cfg.conductance_hi = 1e8;
    cfg.trials = 50;
    cfg.master_seed = 20260502;
    cfg.strategies = {Strategy::AwRbaps};
    const auto result = run_gain_campaign(cfg);
    const double mean = result.gain_aggregates.front().mean;
    h.report(6, mean >= 0.985,
             fmt("heterogeneity stress [1,1e8] (50 trials): AW-RBAPS mean %.4f >= 0.985", mean));
}

void criterion_7_size_sweep(Harness& h) {
    auto cfg = default_gain_config();
    cfg.n = 400;
    cfg.trials = 50;
    cfg.master_seed = 20260503;
    cfg.strategies = {Strategy::AwRbaps};
    const auto result = run_gain_campaign(cfg);
    const double mean = result.gain_aggregates.front().mean;
    h.report(7, mean >= 0.9995,
             fmt("size sweep n=400 (50 trials): AW-RBAPS mean %.5f >= 0.9995", mean));
}

void criterion_8_pareto_monte_carlo(Harness& h) {
    auto cfg = default_gain_config();
    cfg.mode = CampaignMode::Pareto;
    cfg.trials = 30;
    cfg.master_seed = 20260504;
    const auto result = run_pareto_campaign(cfg);
    const auto& agg = *result.pareto_aggregates;

    bool ratio_ok = true;
    for (const auto& rep : result.trials) {
        const double r = rep.pareto->candidate_ratio;
        if (r < 0.05 || r > 0.15) ratio_ok = false;
    }
    const bool ok = agg.hv_mean >= 0.99 && agg.eps_mean <= 1e-2 && ratio_ok &&
                    agg.exact_coverage_fraction >= 0.8;
    h.report(8, ok,
             fmt("pareto Monte Carlo (30 trials, n=200): HV mean %.4f (>=0.99), eps mean %.2e "
                 "(<=1e-2), ratio per trial in [0.05,0.15] %s, coverage==1 fraction %.2f "
                 "(>=0.8; coverage mean %.3f, front-level coverage mean %.3f, knee capture %.2f)",
                 agg.hv_mean, agg.eps_mean, ratio_ok ? "yes" : "no",
                 agg.exact_coverage_fraction, agg.coverage_mean, agg.front_coverage_mean,
                 agg.knee_capture_fraction));
}

void criterion_9_correlation(Harness& h) {
    bool ok = true;
    std::ostringstream detail;
    for (int batch = 0; batch < 4; ++batch) {
        auto cfg = default_gain_config();
        cfg.mode = CampaignMode::Correlation;
        cfg.trials = 50;
        cfg.master_seed = 20260510 + static_cast<std::uint64_t>(batch);
        const auto result = run_correlation_campaign(cfg);
        const double mean = *result.pearson_mean;
        if (mean < 0.50 || mean > 0.72) ok = false;
        detail << (batch ? ", " : "") << fmt("%.3f", mean);
    }
    h.report(9, ok, "objective correlation, per-batch mean r in [0.50,0.72]: " + detail.str());
}

void criterion_10_simulator(Harness& h) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto cycle = oracle::random_cycle(20, 0.8, 2.0, 20261010);
    const Eigen::MatrixXd L = oracle::laplacian(cycle);
    const int p = 3, q = 13;
    const double w = 2.0;
    const Eigen::MatrixXd Lw = oracle::with_chord(L, p, q, w);

    bool ok = true;
    std::ostringstream detail;

    // Coherence on the base cycle, exact-transition ensemble.
    {
        const double lambda1 = oracle::lambda1(L);
        SimConfig cfg;
        cfg.sigma = 1.0;
        cfg.dt = 1.0 / lambda1;
        cfg.horizon = 150.0 / lambda1;
        cfg.n_paths = 200;
        cfg.seed = 71;
        cfg.mode = Integrator::ExactTransition;
        const auto est = estimate_coherence(simulate(L, cfg));
        const double predicted = oracle::kirchhoff_index(L) / (2.0 * 20.0 * 20.0);
        const double rel = std::abs(est.value - predicted) / predicted;
        if (rel > 0.05) ok = false;
        detail << fmt("H rel err %.3f (<=0.05)", rel);
    }

    // Endpoint pair variance before and after the chord.
    for (const Eigen::MatrixXd* mat : {&L, &Lw}) {
        const double lambda1 = oracle::lambda1(*mat);
        SimConfig cfg;
        cfg.sigma = 1.0;
        cfg.dt = 1.0 / lambda1;
        cfg.horizon = 150.0 / lambda1;
        cfg.n_paths = 200;
        cfg.seed = 72;
        cfg.mode = Integrator::ExactTransition;
        const auto est = estimate_pair_variance(simulate(*mat, cfg), p, q);
        const double predicted = 0.5 * oracle::resistance(oracle::pseudoinverse(*mat), p, q);
        const double rel = std::abs(est.value - predicted) / predicted;
        if (rel > 0.07) ok = false;
        detail << fmt(", pair var rel err %.3f (<=0.07)", rel);
    }

    // Noiseless decay envelope under Euler-Maruyama.
    {
        const double lambda1 = oracle::lambda1(L);
        SimConfig cfg;
        cfg.sigma = 0.0;
        cfg.dt = 0.2 / oracle::spectrum(L)(19);
        cfg.horizon = 10.0 / lambda1;
        cfg.burn_in = 0.0;
        cfg.n_paths = 1;
        cfg.seed = 73;
        cfg.initial = Eigen::VectorXd::LinSpaced(20, -1.0, 1.0);
        const auto ens = simulate(L, cfg);
        Eigen::VectorXd x0 = cfg.initial;
        x0.array() -= x0.mean();
        bool decay_ok = true;
        for (std::size_t k = 0; k < ens.states[0].size(); ++k) {
            const double t = ens.sample_start + static_cast<double>(k) * ens.sample_stride;
            if (ens.states[0][k].norm() > std::exp(-lambda1 * t) * x0.norm() * 1.05) {
                decay_ok = false;
            }
        }
        if (!decay_ok) ok = false;
        detail << fmt(", decay envelope %s", decay_ok ? "held" : "violated");
    }

    const double secs = elapsed_s(t0);
    if (secs >= 300.0) ok = false;
    h.report(10, ok,
             fmt("simulator validation (n=20): %s, %.0fs (<300s)", detail.str().c_str(), secs));
}

void criterion_11_discrepancy_scaling(Harness& h) {
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
    };
    std::vector<double> med_delta, med_residual;
    for (int n : {100, 400, 1600}) {
        std::vector<double> deltas, residuals;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            std::mt19937_64 rng(substream_seed(20261100 + static_cast<std::uint64_t>(n), seed));
            const auto cycle = generate_instance(n, 1.0, 100.0, rng);
            deltas.push_back(discrepancy(cycle).delta_n);
            const auto spec = SpectralDecomposition::decompose(cycle, false);
            residuals.push_back(fiedler_mode_fit(spec).sup_error_mode1 * std::sqrt(n));
        }
        med_delta.push_back(median(deltas));
        med_residual.push_back(median(residuals));
    }
    const bool delta_down = med_delta[0] > med_delta[1] && med_delta[1] > med_delta[2];
    const double ratio = med_delta[2] / med_delta[0];
    const bool residual_down =
        med_residual[0] > med_residual[1] && med_residual[1] > med_residual[2];
    const bool ok = delta_down && ratio <= 0.5 && residual_down;
    h.report(11, ok,
             fmt("discrepancy scaling: median delta_n %.4f > %.4f > %.4f, ratio %.3f (<=0.5); "
                 "fit residual*sqrt(n) %.4f > %.4f > %.4f",
                 med_delta[0], med_delta[1], med_delta[2], ratio, med_residual[0],
                 med_residual[1], med_residual[2]));
}

void criterion_12_determinism(Harness& h) {
    auto render = [](const CampaignResult& result) {
        std::ostringstream csv;
        result.write_trials_csv(csv);
        return csv.str() + "\n---\n" + result.summary_json();
    };

    auto cfg = default_gain_config();
    cfg.n = 100;
    cfg.trials = 20;
    cfg.master_seed = 20261201;

    auto pareto_cfg = default_gain_config();
    pareto_cfg.mode = CampaignMode::Pareto;
    pareto_cfg.n = 60;
    pareto_cfg.trials = 10;
    pareto_cfg.master_seed = 20261202;

    setenv("RING_CHORD_THREADS", "1", 1);
    const std::string gain_serial = render(run_gain_campaign(cfg));
    const std::string pareto_serial = render(run_pareto_campaign(pareto_cfg));
    setenv("RING_CHORD_THREADS", "2", 1);
    const std::string gain_parallel = render(run_gain_campaign(cfg));
    const std::string pareto_parallel = render(run_pareto_campaign(pareto_cfg));
    const std::string gain_repeat = render(run_gain_campaign(cfg));
    unsetenv("RING_CHORD_THREADS");

    const bool ok = gain_serial == gain_parallel && gain_serial == gain_repeat &&
                    pareto_serial == pareto_parallel;
    h.report(12, ok,
             fmt("determinism: gain CSV/JSON identical across 1 vs 2 workers %s, repeat %s, "
                 "pareto identical %s",
                 gain_serial == gain_parallel ? "yes" : "no",
                 gain_serial == gain_repeat ? "yes" : "no",
                 pareto_serial == pareto_parallel ? "yes" : "no"));
}

} // namespace

int main() {
    Harness h;
    const auto triples = random_triples(200, 20260000);
    criterion_1_update_oracles(h, triples);
    criterion_2_spectral_oracles(h, triples);
    criterion_3_monotonicity(h);
    criterion_4_closed_forms(h);
    criterion_5_table_reproduction(h);
    criterion_6_heterogeneity(h);
    criterion_7_size_sweep(h);
    criterion_8_pareto_monte_carlo(h);
    criterion_9_correlation(h);
    criterion_10_simulator(h);
    criterion_11_discrepancy_scaling(h);
    criterion_12_determinism(h);

    std::printf("%d of 12 criteria passed\n", 12 - h.failures);
    return h.failures == 0 ? 0 : 1;
}
