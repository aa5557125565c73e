#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ringchord/pareto.hpp"

namespace ringchord {

enum class BudgetRule { RangeUpper, MaxConductance, Fixed };
enum class Strategy { Random, Fiedler, Rbaps, AwRbaps };
enum class CampaignMode { GainScreening, Correlation, Pareto };

std::string to_string(Strategy s);
std::string to_string(CampaignMode m);

/// Monte Carlo campaign description; mirrors the JSON config accepted by
/// the `campaign` subcommand field-for-field.
struct CampaignConfig {
    int n = 200;
    double conductance_lo = 1.0;
    double conductance_hi = 100.0;
    BudgetRule budget_rule = BudgetRule::RangeUpper;
    double budget_value = 0.0;  ///< only read when budget_rule == Fixed
    double tau = 0.1;
    int m = 12;
    int trials = 100;
    std::uint64_t master_seed = 0;
    std::vector<Strategy> strategies = {Strategy::Random, Strategy::Fiedler, Strategy::Rbaps,
                                        Strategy::AwRbaps};
    CampaignMode mode = CampaignMode::GainScreening;
    bool write_fronts = false;

    double budget_for(const WeightedCycle& cycle) const;
    static CampaignConfig from_json(const std::string& text);
    std::string to_json() const;
};

struct StrategyOutcome {
    Strategy strategy = Strategy::Random;
    Chord chord;
    double theta_hat = 0.0;  ///< normalized low-frequency gain of the pick
};

struct ParetoTrialMetrics {
    double coverage = 0.0;
    double front_coverage = 0.0;
    double epsilon_plus = 0.0;
    double hv_ratio = 0.0;
    double candidate_ratio = 0.0;
    int full_front_size = 0;
    int screened_front_size = 0;
    bool knee_captured = false;
    bool degenerate = false;
};

struct TrialReport {
    int trial = 0;
    std::uint64_t seed = 0;
    std::vector<StrategyOutcome> strategies;     // gain mode
    std::optional<double> pearson_r;             // correlation mode
    std::optional<ParetoTrialMetrics> pareto;    // pareto mode
    std::string front_json;                      // pareto mode, when requested
};

struct StrategyAggregate {
    Strategy strategy = Strategy::Random;
    double mean = 0.0;
    double sd = 0.0;
};

struct ParetoAggregates {
    double coverage_mean = 0.0, coverage_median = 0.0, coverage_min = 0.0;
    double exact_coverage_fraction = 0.0;  ///< fraction of trials with coverage == 1
    double front_coverage_mean = 0.0, front_coverage_median = 0.0;
    double eps_mean = 0.0, eps_median = 0.0;
    double eps_below_1e2_fraction = 0.0;
    double hv_mean = 0.0, hv_median = 0.0, hv_min = 0.0;
    double hv_above_099_fraction = 0.0;
    double candidate_ratio_mean = 0.0, candidate_ratio_sd = 0.0;
    double candidate_ratio_min = 0.0, candidate_ratio_max = 0.0;
    double knee_capture_fraction = 0.0;
    double full_front_size_mean = 0.0, screened_front_size_mean = 0.0;
    int degenerate_excluded = 0;  ///< trials excluded from hv aggregates
};

struct CampaignResult {
    CampaignConfig config;
    std::vector<TrialReport> trials;
    std::vector<StrategyAggregate> gain_aggregates;
    std::optional<double> pearson_mean, pearson_min, pearson_max;
    std::optional<ParetoAggregates> pareto_aggregates;

    void write_trials_csv(std::ostream& out) const;
    std::string summary_json() const;
};

/// Conductances i.i.d. uniform on [lo, hi] from the given stream.
WeightedCycle generate_instance(int n, double lo, double hi, std::mt19937_64& stream);

/// Pearson correlation coefficient; throws on degenerate variance.
double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y);

CampaignResult run_gain_campaign(const CampaignConfig& cfg);
CampaignResult run_correlation_campaign(const CampaignConfig& cfg);
CampaignResult run_pareto_campaign(const CampaignConfig& cfg);
CampaignResult run_campaign(const CampaignConfig& cfg);

/// Writes trials.csv, summary.json and (for pareto campaigns with
/// write_fronts) front_<seed>.json files into the directory.
void write_campaign_outputs(const CampaignResult& result, const std::string& out_dir);

/// Worker cap: RING_CHORD_THREADS when set, otherwise all cores. Trial
/// results are identical regardless of the cap.
int campaign_worker_count();

} // namespace ringchord
