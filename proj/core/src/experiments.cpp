#include "ringchord/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "ringchord/rng.hpp"

namespace ringchord {

namespace {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Strategy strategy_from_string(const std::string& s) {
    if (s == "random") return Strategy::Random;
    if (s == "fiedler") return Strategy::Fiedler;
    if (s == "rbaps") return Strategy::Rbaps;
    if (s == "aw_rbaps") return Strategy::AwRbaps;
    throw std::invalid_argument("unknown strategy: " + s);
}

CampaignMode mode_from_string(const std::string& s) {
    if (s == "gain_screening") return CampaignMode::GainScreening;
    if (s == "correlation") return CampaignMode::Correlation;
    if (s == "pareto") return CampaignMode::Pareto;
    throw std::invalid_argument("unknown campaign mode: " + s);
}

/// Runs body(trial) for every trial on up to campaign_worker_count()
/// threads. Any exception is rethrown on the caller thread.
template <typename Body>
void parallel_trials(int trials, Body&& body) {
    const int workers = std::min(campaign_worker_count(), trials);
    if (workers <= 1) {
        for (int t = 0; t < trials; ++t) body(t);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        for (;;) {
            const int t = next.fetch_add(1);
            if (t >= trials) return;
            try {
                body(t);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(run);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

double mean_of(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return v.empty() ? 0.0 : acc / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

} // namespace

double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("Pearson correlation needs two equal-length series");
    }
    const double mx = mean_of(x), my = mean_of(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) {
        throw std::invalid_argument("Pearson correlation undefined: degenerate variance");
    }
    return sxy / std::sqrt(sxx * syy);
}

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::Random: return "random";
        case Strategy::Fiedler: return "fiedler";
        case Strategy::Rbaps: return "rbaps";
        case Strategy::AwRbaps: return "aw_rbaps";
    }
    return "?";
}

std::string to_string(CampaignMode m) {
    switch (m) {
        case CampaignMode::GainScreening: return "gain_screening";
        case CampaignMode::Correlation: return "correlation";
        case CampaignMode::Pareto: return "pareto";
    }
    return "?";
}

double CampaignConfig::budget_for(const WeightedCycle& cycle) const {
    switch (budget_rule) {
        case BudgetRule::RangeUpper:
            return conductance_hi;
        case BudgetRule::MaxConductance:
            return *std::max_element(cycle.conductances().begin(), cycle.conductances().end());
        case BudgetRule::Fixed:
            return budget_value;
    }
    return conductance_hi;
}

CampaignConfig CampaignConfig::from_json(const std::string& text) {
    const json j = json::parse(text);
    CampaignConfig cfg;
    if (!j.contains("master_seed")) {
        throw std::invalid_argument("campaign config must set master_seed (runs are reproducible)");
    }
    cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    cfg.n = j.value("n", cfg.n);
    cfg.conductance_lo = j.value("conductance_lo", cfg.conductance_lo);
    cfg.conductance_hi = j.value("conductance_hi", cfg.conductance_hi);
    cfg.tau = j.value("tau", cfg.tau);
    cfg.m = j.value("m", cfg.m);
    cfg.trials = j.value("trials", cfg.trials);
    cfg.write_fronts = j.value("write_fronts", cfg.write_fronts);
    if (j.contains("mode")) cfg.mode = mode_from_string(j.at("mode").get<std::string>());
    if (j.contains("budget_rule")) {
        const auto& rule = j.at("budget_rule");
        if (rule.is_number()) {
            cfg.budget_rule = BudgetRule::Fixed;
            cfg.budget_value = rule.get<double>();
        } else {
            const auto name = rule.get<std::string>();
            if (name == "range_upper") {
                cfg.budget_rule = BudgetRule::RangeUpper;
            } else if (name == "max_conductance") {
                cfg.budget_rule = BudgetRule::MaxConductance;
            } else {
                throw std::invalid_argument("unknown budget_rule: " + name);
            }
        }
    }
    if (j.contains("strategies")) {
        cfg.strategies.clear();
        for (const auto& s : j.at("strategies")) {
            cfg.strategies.push_back(strategy_from_string(s.get<std::string>()));
        }
    }
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (!(cfg.conductance_lo > 0.0) || cfg.conductance_lo > cfg.conductance_hi) {
        throw std::invalid_argument("need 0 < conductance_lo <= conductance_hi");
    }
    return cfg;
}

std::string CampaignConfig::to_json() const {
    json j;
    j["n"] = n;
    j["conductance_lo"] = conductance_lo;
    j["conductance_hi"] = conductance_hi;
    if (budget_rule == BudgetRule::Fixed) {
        j["budget_rule"] = budget_value;
    } else {
        j["budget_rule"] = budget_rule == BudgetRule::RangeUpper ? "range_upper" : "max_conductance";
    }
    j["tau"] = tau;
    j["m"] = m;
    j["trials"] = trials;
    j["master_seed"] = master_seed;
    json strat = json::array();
    for (Strategy s : strategies) strat.push_back(to_string(s));
    j["strategies"] = strat;
    j["mode"] = to_string(mode);
    j["write_fronts"] = write_fronts;
    return j.dump(2);
}

WeightedCycle generate_instance(int n, double lo, double hi, std::mt19937_64& stream) {
    if (!(lo > 0.0) || lo > hi) {
        throw std::invalid_argument("need 0 < lo <= hi for conductance sampling");
    }
    std::vector<double> c(static_cast<std::size_t>(n));
    for (auto& v : c) v = uniform_real(stream, lo, hi);
    return WeightedCycle(n, std::move(c));
}

CampaignResult run_gain_campaign(const CampaignConfig& cfg) {
    CampaignResult result;
    result.config = cfg;
    result.trials.resize(static_cast<std::size_t>(cfg.trials));

    parallel_trials(cfg.trials, [&](int t) {
        TrialReport rep;
        rep.trial = t;
        rep.seed = substream_seed(cfg.master_seed, static_cast<std::uint64_t>(t));
        std::mt19937_64 rng(rep.seed);

        const WeightedCycle cycle = generate_instance(cfg.n, cfg.conductance_lo,
                                                      cfg.conductance_hi, rng);
        const auto spec = SpectralDecomposition::decompose(cycle, /*build_pseudoinverse=*/false);
        const double w = cfg.budget_for(cycle);
        const int m = std::min(cfg.m, cfg.n - 1);

        const auto score = [&](const Chord& c) { return lowfreq_gain(spec, c.p, c.q, w, m); };

        double best = 0.0;
        for (const Chord& c : admissible_chords(cycle)) best = std::max(best, score(c));
        // Degenerate instances (uniform cycles) have zero gain everywhere;
        // every chord is then optimal.
        const auto theta = [&](const Chord& c) { return best > 0.0 ? score(c) / best : 1.0; };

        for (Strategy s : cfg.strategies) {
            StrategyOutcome outcome;
            outcome.strategy = s;
            switch (s) {
                case Strategy::Random:
                    outcome.chord = random_baseline(cycle, rng);
                    break;
                case Strategy::Fiedler:
                    outcome.chord = fiedler_baseline(spec, cycle);
                    break;
                case Strategy::Rbaps:
                    outcome.chord = select_screened(cycle, spec, {.tau = 0.0, .modes = m}, w);
                    break;
                case Strategy::AwRbaps:
                    outcome.chord = select_screened(cycle, spec, {.tau = cfg.tau, .modes = m}, w);
                    break;
            }
            outcome.theta_hat = theta(outcome.chord);
            rep.strategies.push_back(outcome);
        }
        result.trials[static_cast<std::size_t>(t)] = std::move(rep);
    });

    for (Strategy s : cfg.strategies) {
        std::vector<double> thetas;
        thetas.reserve(result.trials.size());
        for (const auto& rep : result.trials) {
            for (const auto& outcome : rep.strategies) {
                if (outcome.strategy == s) thetas.push_back(outcome.theta_hat);
            }
        }
        StrategyAggregate agg;
        agg.strategy = s;
        agg.mean = mean_of(thetas);
        agg.sd = sd_of(thetas, agg.mean);
        result.gain_aggregates.push_back(agg);
    }
    return result;
}

CampaignResult run_correlation_campaign(const CampaignConfig& cfg) {
    CampaignResult result;
    result.config = cfg;
    result.trials.resize(static_cast<std::size_t>(cfg.trials));

    parallel_trials(cfg.trials, [&](int t) {
        TrialReport rep;
        rep.trial = t;
        rep.seed = substream_seed(cfg.master_seed, static_cast<std::uint64_t>(t));
        std::mt19937_64 rng(rep.seed);

        const WeightedCycle cycle = generate_instance(cfg.n, cfg.conductance_lo,
                                                      cfg.conductance_hi, rng);
        const auto spec = SpectralDecomposition::decompose(cycle);
        const double w = cfg.budget_for(cycle);

        const auto points = evaluate_objectives(spec, cycle, admissible_chords(cycle), w);
        std::vector<double> gains, improvements;
        gains.reserve(points.size());
        improvements.reserve(points.size());
        for (const auto& pt : points) {
            gains.push_back(pt.raw_gain);
            improvements.push_back(pt.raw_improvement);
        }
        rep.pearson_r = pearson_correlation(gains, improvements);
        result.trials[static_cast<std::size_t>(t)] = std::move(rep);
    });

    std::vector<double> rs;
    rs.reserve(result.trials.size());
    for (const auto& rep : result.trials) rs.push_back(*rep.pearson_r);
    result.pearson_mean = mean_of(rs);
    result.pearson_min = *std::min_element(rs.begin(), rs.end());
    result.pearson_max = *std::max_element(rs.begin(), rs.end());
    return result;
}

namespace {

json front_to_json(const ParetoAnalysis& analysis) {
    json j;
    json front = json::array();
    for (const auto& pt : analysis.full.efficient) {
        front.push_back({{"p", pt.chord.p},
                         {"q", pt.chord.q},
                         {"nI", pt.norm_improvement},
                         {"nD", pt.norm_gain}});
    }
    j["front"] = front;
    json screened = json::array();
    for (const auto& pt : analysis.screened.efficient) {
        screened.push_back({{"p", pt.chord.p},
                            {"q", pt.chord.q},
                            {"nI", pt.norm_improvement},
                            {"nD", pt.norm_gain}});
    }
    j["screened_front"] = screened;
    if (analysis.full.knee) {
        j["knee"] = {{"p", analysis.full.knee->p}, {"q", analysis.full.knee->q}};
    } else {
        j["knee"] = nullptr;
    }
    j["hv_ratio"] = analysis.hv_ratio;
    j["eps_plus"] = analysis.epsilon_plus;
    j["coverage"] = analysis.coverage;
    j["front_coverage"] = analysis.front_coverage;
    j["candidate_ratio"] = analysis.candidate_ratio;
    j["degenerate"] = analysis.degenerate;
    return j;
}

} // namespace

CampaignResult run_pareto_campaign(const CampaignConfig& cfg) {
    CampaignResult result;
    result.config = cfg;
    result.trials.resize(static_cast<std::size_t>(cfg.trials));

    parallel_trials(cfg.trials, [&](int t) {
        TrialReport rep;
        rep.trial = t;
        rep.seed = substream_seed(cfg.master_seed, static_cast<std::uint64_t>(t));
        std::mt19937_64 rng(rep.seed);

        const WeightedCycle cycle = generate_instance(cfg.n, cfg.conductance_lo,
                                                      cfg.conductance_hi, rng);
        const auto spec = SpectralDecomposition::decompose(cycle);
        const double w = cfg.budget_for(cycle);

        const auto analysis = analyze_instance(spec, cycle, w, cfg.tau);
        ParetoTrialMetrics metrics;
        metrics.coverage = analysis.coverage;
        metrics.front_coverage = analysis.front_coverage;
        metrics.epsilon_plus = analysis.epsilon_plus;
        metrics.hv_ratio = analysis.hv_ratio;
        metrics.candidate_ratio = analysis.candidate_ratio;
        metrics.full_front_size = static_cast<int>(analysis.full.efficient.size());
        metrics.screened_front_size = static_cast<int>(analysis.screened.efficient.size());
        metrics.knee_captured = analysis.knee_captured;
        metrics.degenerate = analysis.degenerate;
        rep.pareto = metrics;
        if (cfg.write_fronts) rep.front_json = front_to_json(analysis).dump(2);
        result.trials[static_cast<std::size_t>(t)] = std::move(rep);
    });

    ParetoAggregates agg;
    std::vector<double> cov, fcov, eps, hv, ratio, full_sz, scr_sz;
    int knees = 0;
    for (const auto& rep : result.trials) {
        const auto& m = *rep.pareto;
        cov.push_back(m.coverage);
        fcov.push_back(m.front_coverage);
        eps.push_back(m.epsilon_plus);
        ratio.push_back(m.candidate_ratio);
        full_sz.push_back(m.full_front_size);
        scr_sz.push_back(m.screened_front_size);
        if (m.degenerate) {
            ++agg.degenerate_excluded;
        } else {
            hv.push_back(m.hv_ratio);
        }
        if (m.knee_captured) ++knees;
    }
    const auto fraction = [&](const std::vector<double>& v, auto pred) {
        if (v.empty()) return 0.0;
        std::size_t hits = 0;
        for (double x : v) {
            if (pred(x)) ++hits;
        }
        return static_cast<double>(hits) / static_cast<double>(v.size());
    };
    agg.coverage_mean = mean_of(cov);
    agg.coverage_median = median_of(cov);
    agg.coverage_min = cov.empty() ? 0.0 : *std::min_element(cov.begin(), cov.end());
    agg.exact_coverage_fraction = fraction(cov, [](double x) { return x >= 1.0; });
    agg.front_coverage_mean = mean_of(fcov);
    agg.front_coverage_median = median_of(fcov);
    agg.eps_mean = mean_of(eps);
    agg.eps_median = median_of(eps);
    agg.eps_below_1e2_fraction = fraction(eps, [](double x) { return x <= 1e-2; });
    agg.hv_mean = mean_of(hv);
    agg.hv_median = median_of(hv);
    agg.hv_min = hv.empty() ? 0.0 : *std::min_element(hv.begin(), hv.end());
    agg.hv_above_099_fraction = fraction(hv, [](double x) { return x >= 0.99; });
    agg.candidate_ratio_mean = mean_of(ratio);
    agg.candidate_ratio_sd = sd_of(ratio, agg.candidate_ratio_mean);
    agg.candidate_ratio_min = ratio.empty() ? 0.0 : *std::min_element(ratio.begin(), ratio.end());
    agg.candidate_ratio_max = ratio.empty() ? 0.0 : *std::max_element(ratio.begin(), ratio.end());
    agg.knee_capture_fraction =
        static_cast<double>(knees) / static_cast<double>(result.trials.size());
    agg.full_front_size_mean = mean_of(full_sz);
    agg.screened_front_size_mean = mean_of(scr_sz);
    result.pareto_aggregates = agg;
    return result;
}

CampaignResult run_campaign(const CampaignConfig& cfg) {
    switch (cfg.mode) {
        case CampaignMode::GainScreening: return run_gain_campaign(cfg);
        case CampaignMode::Correlation: return run_correlation_campaign(cfg);
        case CampaignMode::Pareto: return run_pareto_campaign(cfg);
    }
    throw std::invalid_argument("unknown campaign mode");
}

void CampaignResult::write_trials_csv(std::ostream& out) const {
    switch (config.mode) {
        case CampaignMode::GainScreening:
            out << "trial,seed,strategy,p,q,theta_hat\n";
            for (const auto& rep : trials) {
                for (const auto& o : rep.strategies) {
                    out << rep.trial << ',' << rep.seed << ',' << to_string(o.strategy) << ','
                        << o.chord.p << ',' << o.chord.q << ',' << format_double(o.theta_hat)
                        << '\n';
                }
            }
            break;
        case CampaignMode::Correlation:
            out << "trial,seed,pearson_r\n";
            for (const auto& rep : trials) {
                out << rep.trial << ',' << rep.seed << ',' << format_double(*rep.pearson_r) << '\n';
            }
            break;
        case CampaignMode::Pareto:
            out << "trial,seed,coverage,front_coverage,eps_plus,hv_ratio,candidate_ratio,"
                   "full_front_size,screened_front_size,knee_captured,degenerate\n";
            for (const auto& rep : trials) {
                const auto& m = *rep.pareto;
                out << rep.trial << ',' << rep.seed << ',' << format_double(m.coverage) << ','
                    << format_double(m.front_coverage) << ','
                    << format_double(m.epsilon_plus) << ',' << format_double(m.hv_ratio) << ','
                    << format_double(m.candidate_ratio) << ',' << m.full_front_size << ','
                    << m.screened_front_size << ',' << (m.knee_captured ? 1 : 0) << ','
                    << (m.degenerate ? 1 : 0) << '\n';
            }
            break;
    }
}

std::string CampaignResult::summary_json() const {
    json j;
    j["config"] = json::parse(config.to_json());
    switch (config.mode) {
        case CampaignMode::GainScreening: {
            json per_strategy;
            for (const auto& agg : gain_aggregates) {
                per_strategy[to_string(agg.strategy)] = {{"mean", agg.mean}, {"sd", agg.sd}};
            }
            j["theta_hat"] = per_strategy;
            break;
        }
        case CampaignMode::Correlation:
            j["pearson"] = {{"mean", *pearson_mean}, {"min", *pearson_min}, {"max", *pearson_max}};
            break;
        case CampaignMode::Pareto: {
            const auto& a = *pareto_aggregates;
            j["pareto"] = {
                {"coverage", {{"mean", a.coverage_mean}, {"median", a.coverage_median},
                              {"min", a.coverage_min}, {"exact_fraction", a.exact_coverage_fraction}}},
                {"front_coverage", {{"mean", a.front_coverage_mean},
                                    {"median", a.front_coverage_median}}},
                {"eps_plus", {{"mean", a.eps_mean}, {"median", a.eps_median},
                              {"below_1e-2_fraction", a.eps_below_1e2_fraction}}},
                {"hv_ratio", {{"mean", a.hv_mean}, {"median", a.hv_median}, {"min", a.hv_min},
                              {"above_0.99_fraction", a.hv_above_099_fraction}}},
                {"candidate_ratio", {{"mean", a.candidate_ratio_mean}, {"sd", a.candidate_ratio_sd},
                                     {"min", a.candidate_ratio_min}, {"max", a.candidate_ratio_max}}},
                {"knee_capture_fraction", a.knee_capture_fraction},
                {"full_front_size_mean", a.full_front_size_mean},
                {"screened_front_size_mean", a.screened_front_size_mean},
                {"degenerate_excluded", a.degenerate_excluded},
            };
            break;
        }
    }
    return j.dump(2);
}

void write_campaign_outputs(const CampaignResult& result, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    std::ofstream csv(fs::path(out_dir) / "trials.csv");
    if (!csv) throw std::invalid_argument("cannot write to output directory " + out_dir);
    result.write_trials_csv(csv);

    std::ofstream summary(fs::path(out_dir) / "summary.json");
    summary << result.summary_json() << '\n';

    if (result.config.write_fronts) {
        for (const auto& rep : result.trials) {
            if (rep.front_json.empty()) continue;
            std::ofstream front(fs::path(out_dir) / ("front_" + std::to_string(rep.seed) + ".json"));
            front << rep.front_json << '\n';
        }
    }
}

int campaign_worker_count() {
    if (const char* env = std::getenv("RING_CHORD_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace ringchord
