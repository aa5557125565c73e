// ring-chord: generate, score, screen and Pareto-analyze single chord
// augmentations of weighted communication cycles, simulate the noisy
// consensus dynamics, and run seeded Monte Carlo campaigns.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "ringchord/chord_update.hpp"
#include "ringchord/consensus_sim.hpp"
#include "ringchord/errors.hpp"
#include "ringchord/experiments.hpp"
#include "ringchord/pareto.hpp"
#include "ringchord/rng.hpp"
#include "ringchord/screening.hpp"
#include "ringchord/spectral.hpp"
#include "ringchord/weighted_cycle.hpp"

using nlohmann::json;
using namespace ringchord;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitComputeError = 2;

void emit(const json& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload.dump(2) << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
        out << payload.dump(2) << '\n';
    }
}

Chord parse_chord_flag(const std::string& text, double* w = nullptr) {
    int p = 0, q = 0;
    double weight = 0.0;
    const int fields = w ? std::sscanf(text.c_str(), "%d,%d,%lf", &p, &q, &weight)
                         : std::sscanf(text.c_str(), "%d,%d", &p, &q);
    const int expected = w ? 3 : 2;
    if (fields != expected) {
        throw std::invalid_argument("chord flag must look like " +
                                    std::string(w ? "p,q,w" : "p,q") + ", got: " + text);
    }
    if (w) *w = weight;
    return Chord(p, q);
}

json front_points_json(const std::vector<ObjectivePoint>& front) {
    json arr = json::array();
    for (const auto& pt : front) {
        arr.push_back({{"p", pt.chord.p},
                       {"q", pt.chord.q},
                       {"nI", pt.norm_improvement},
                       {"nD", pt.norm_gain}});
    }
    return arr;
}

int run_gen(int n, double lo, double hi, std::optional<std::uint64_t> seed,
            const std::string& out) {
    std::uint64_t used_seed;
    if (seed) {
        used_seed = *seed;
    } else {
        std::random_device rd;
        used_seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    std::mt19937_64 rng(used_seed);
    const auto cycle = generate_instance(n, lo, hi, rng);

    json j = json::parse(to_json(cycle));
    j["meta"] = {{"seed", used_seed}};
    emit(j, out);
    return kExitOk;
}

int run_score(const std::string& input, const std::string& chord_flag, double w, int m,
              const std::string& out) {
    const auto cycle = cycle_from_json_file(input);
    const ChordCandidate chord(cycle, parse_chord_flag(chord_flag), w);
    const auto spec = SpectralDecomposition::decompose(cycle);
    m = std::min(m, cycle.n() - 1);
    const auto score = score_chord(spec, chord, m);

    json j;
    j["chord"] = {{"p", chord.chord.p}, {"q", chord.chord.q}, {"w", chord.w}};
    j["m"] = m;
    j["delta_exact"] = score.delta_exact;
    j["delta_lowfreq"] = score.delta_lowfreq;
    j["improvement"] = score.improvement;
    j["r_endpoint"] = score.r_endpoint;
    j["r_endpoint_updated"] = score.r_endpoint_updated;
    emit(j, out);
    return kExitOk;
}

int run_screen(const std::string& input, double tau, const std::string& out) {
    const auto cycle = cycle_from_json_file(input);
    const auto set = screen(cycle, tau);
    json j;
    j["source"] = to_string(set.source);
    j["tau"] = tau;
    json pairs = json::array();
    for (const Chord& c : set.pairs) pairs.push_back({c.p, c.q});
    j["pairs"] = pairs;
    j["count"] = set.pairs.size();
    emit(j, out);
    return kExitOk;
}

int run_pareto(const std::string& input, double tau, double w, const std::string& out,
               const std::string& csv_path) {
    const auto cycle = cycle_from_json_file(input);
    const auto spec = SpectralDecomposition::decompose(cycle);
    const auto analysis = analyze_instance(spec, cycle, w, tau);

    json j;
    j["front"] = front_points_json(analysis.full.efficient);
    j["screened_front"] = front_points_json(analysis.screened.efficient);
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
    emit(j, out);

    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw std::invalid_argument("cannot open CSV path: " + csv_path);
        csv << "p,q,raw_I,raw_D,norm_I,norm_D\n";
        char buf[160];
        for (const auto& pt : analysis.all_points) {
            std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%.17g,%.17g\n", pt.chord.p,
                          pt.chord.q, pt.raw_improvement, pt.raw_gain, pt.norm_improvement,
                          pt.norm_gain);
            csv << buf;
        }
    }
    return kExitOk;
}

int run_simulate(const std::string& input, const std::string& chord_flag, double sigma, double dt,
                 double horizon, int paths, std::uint64_t seed, const std::string& mode,
                 const std::string& out) {
    const auto cycle = cycle_from_json_file(input);
    const auto spec = SpectralDecomposition::decompose(cycle);

    Eigen::MatrixXd L;
    json chord_info = nullptr;
    std::optional<ChordCandidate> chord;
    if (!chord_flag.empty()) {
        double w = 0.0;
        const Chord c = parse_chord_flag(chord_flag, &w);
        chord.emplace(cycle, c, w);
        L = augmented_laplacian(cycle, c, w);
        chord_info = {{"p", c.p}, {"q", c.q}, {"w", w}};
    } else {
        L = cycle_laplacian(cycle);
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
    const double lambda1 = es.eigenvalues()(1);
    const double lambda_max = es.eigenvalues()(cycle.n() - 1);

    SimConfig cfg;
    cfg.sigma = sigma;
    cfg.dt = dt > 0.0 ? dt : (mode == "exact" ? 1.0 / lambda1 : 0.1 / lambda_max);
    cfg.horizon = horizon > 0.0 ? horizon : 60.0 / lambda1;
    cfg.n_paths = paths;
    cfg.seed = seed;
    cfg.mode = mode == "exact" ? Integrator::ExactTransition : Integrator::EulerMaruyama;

    const auto ensemble = simulate(L, cfg);
    const auto coherence = estimate_coherence(ensemble);

    const double kf =
        cycle.n() * Eigen::VectorXd(es.eigenvalues().tail(cycle.n() - 1)).cwiseInverse().sum();
    json predictions;
    predictions["H"] = sigma * sigma * kf / (2.0 * cycle.n() * cycle.n());
    predictions["kirchhoff_index"] = kf;
    predictions["lambda1"] = lambda1;

    json j;
    j["H_hat"] = coherence.value;
    j["stderr"] = coherence.std_error;
    j["samples"] = coherence.samples;
    j["chord"] = chord_info;
    j["integrator"] = mode;
    j["dt"] = cfg.dt;
    j["horizon"] = cfg.horizon;

    if (chord) {
        const auto pair_var = estimate_pair_variance(ensemble, chord->chord.p, chord->chord.q);
        j["endpoint_pair_variance"] = {{"value", pair_var.value}, {"stderr", pair_var.std_error}};
        predictions["endpoint_pair_variance"] =
            0.5 * sigma * sigma * endpoint_resistance_updated(spec, *chord);
    }
    j["predictions"] = predictions;
    emit(j, out);
    return kExitOk;
}

int run_campaign_cmd(const std::string& config_path, const std::string& out_dir,
                     std::optional<std::uint64_t> seed_override) {
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("cannot open config file: " + config_path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    auto cfg = CampaignConfig::from_json(text);
    if (seed_override) cfg.master_seed = *seed_override;
    const auto result = run_campaign(cfg);
    write_campaign_outputs(result, out_dir);
    std::cout << result.summary_json() << '\n';
    return kExitOk;
}

int run_diagnose(const std::string& input, const std::string& chord_flag, double w, double theta0,
                 const std::string& out) {
    const auto cycle = cycle_from_json_file(input);
    const auto spec = SpectralDecomposition::decompose(cycle);
    const auto disc = discrepancy(cycle);
    const auto fit = fiedler_mode_fit(spec);

    json j;
    j["discrepancy"] = {{"D", disc.max_deviation},
                        {"Delta", disc.delta},
                        {"eta", disc.eta},
                        {"delta_n", disc.delta_n}};
    json head = json::array();
    for (int k = 0; k < std::min(8, cycle.n()); ++k) head.push_back(spec.eigenvalue(k));
    j["spectrum_head"] = head;
    j["fiedler_fit"] = {{"degenerate", fit.degenerate},
                        {"phase", fit.phase},
                        {"sign_mode1", fit.sign_mode1},
                        {"sup_error_mode1", fit.sup_error_mode1},
                        {"sign_mode2", fit.sign_mode2},
                        {"sup_error_mode2", fit.sup_error_mode2}};

    if (!chord_flag.empty()) {
        const ChordCandidate chord(cycle, parse_chord_flag(chord_flag), w);
        const auto rep = ceiling_deficit_report(spec, chord, theta0);
        json cd;
        cd["gamma"] = rep.gamma;
        cd["deficit"] = rep.deficit;
        cd["beta1sq"] = rep.beta1sq;
        cd["beta2sq"] = rep.beta2sq;
        cd["epsilon"] = std::isfinite(rep.epsilon) ? json(rep.epsilon) : json("inf");
        cd["t3plus"] = rep.t3plus;
        cd["rho0"] = rep.rho0;
        cd["theta0"] = rep.theta0;
        cd["dominance_holds"] = rep.dominance_holds;
        cd["bound_rhs"] = rep.bound_rhs ? json(*rep.bound_rhs) : json(nullptr);
        j["ceiling_deficit"] = cd;
    }
    emit(j, out);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Chord augmentation toolkit for weighted communication cycles: exact\n"
        "resistance/Kirchhoff updates, spectral gains, resistance-balanced\n"
        "screening, Pareto fronts, consensus simulation, Monte Carlo campaigns."};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a random weighted cycle as JSON");
    int gen_n = 200;
    double gen_lo = 1.0, gen_hi = 100.0;
    std::optional<std::uint64_t> gen_seed;
    std::string gen_out;
    gen->add_option("--n", gen_n, "Vertex count (>= 4)")->required();
    gen->add_option("--lo", gen_lo, "Lower conductance bound")->required();
    gen->add_option("--hi", gen_hi, "Upper conductance bound")->required();
    gen->add_option("--seed", gen_seed, "RNG seed (auto-drawn and echoed in meta when absent)");
    gen->add_option("--out", gen_out, "Output path (stdout when absent)");

    // score
    auto* score = app.add_subcommand("score", "Score one chord on a cycle");
    std::string score_input, score_chord_flag, score_out;
    double score_w = 0.0;
    int score_m = 12;
    score->add_option("--input", score_input, "Cycle JSON path")->required();
    score->add_option("--chord", score_chord_flag, "Chord as p,q")->required();
    score->add_option("--w", score_w,
                      "Chord conductance. Output fields: delta_exact / delta_lowfreq are the "
                      "algebraic-connectivity gain lambda_1(L + w b b^T) - lambda_1(L) (exact "
                      "and m-mode secular), improvement is the Kirchhoff-index reduction "
                      "w n (b^T G^2 b) / (1 + w b^T G b) with G the Laplacian pseudoinverse, "
                      "r_endpoint[_updated] is R_pq before/after, i.e. R and R/(1+wR)")
        ->required();
    score->add_option("--m", score_m, "Low-frequency mode count");
    score->add_option("--out", score_out, "Output path (stdout when absent)");

    // screen
    auto* scr = app.add_subcommand("screen", "Resistance-balanced candidate screening");
    std::string scr_input, scr_out;
    double scr_tau = 0.1;
    scr->add_option("--input", scr_input, "Cycle JSON path")->required();
    scr->add_option("--tau", scr_tau,
                    "Window tolerance: 0 keeps the three half-resistance straddling seeds per "
                    "vertex, tau > 0 also expands while |2 (s_k - s_i) - S| <= tau S");
    scr->add_option("--out", scr_out, "Output path (stdout when absent)");

    // pareto
    auto* par = app.add_subcommand("pareto", "Exhaustive vs screened Pareto fronts");
    std::string par_input, par_out, par_csv;
    double par_tau = 0.1, par_w = 0.0;
    par->add_option("--input", par_input, "Cycle JSON path")->required();
    par->add_option("--tau", par_tau, "Screening tolerance");
    par->add_option("--w", par_w, "Chord budget, fully spent on every candidate")->required();
    par->add_option("--out", par_out,
                    "Output path. Fields: front/screened_front hold normalized points "
                    "(nI = I_e/I*, nD = Delta_e/Delta*), knee minimizes the distance to (1,1), "
                    "hv_ratio compares dominated staircase areas w.r.t. (0,0), eps_plus is the "
                    "additive epsilon-dominance error, coverage counts exhaustive-front chords "
                    "retained in the screened candidate set");
    par->add_option("--csv", par_csv, "Also dump every evaluated point to this CSV");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Noisy consensus ensemble statistics");
    std::string sim_input, sim_chord, sim_out, sim_mode = "em";
    double sim_sigma = 1.0, sim_dt = 0.0, sim_horizon = 0.0;
    int sim_paths = 100;
    std::uint64_t sim_seed = 0;
    sim->add_option("--input", sim_input, "Cycle JSON path")->required();
    sim->add_option("--chord", sim_chord, "Optional chord as p,q,w");
    sim->add_option("--sigma", sim_sigma, "Noise intensity");
    sim->add_option("--dt", sim_dt, "Step size (auto when absent)");
    sim->add_option("--horizon", sim_horizon, "Total time (auto when absent)");
    sim->add_option("--paths", sim_paths, "Trajectory count");
    sim->add_option("--seed", sim_seed, "Master seed; per-path substreams derive from it")
        ->required();
    sim->add_option("--mode", sim_mode,
                    "Integrator: em (Euler-Maruyama with projected noise) or exact (per-mode "
                    "Ornstein-Uhlenbeck transitions, exact in law). H_hat estimates the "
                    "network coherence (1/n) sum_i Var(xi_i - mean), predicted by "
                    "sigma^2 K_f / (2 n^2); the endpoint pair variance is predicted by "
                    "sigma^2 R_pq(w) / 2")
        ->check(CLI::IsMember({"em", "exact"}));
    sim->add_option("--out", sim_out, "Output path (stdout when absent)");

    // campaign
    auto* camp = app.add_subcommand("campaign", "Seeded Monte Carlo campaign");
    std::string camp_config, camp_out;
    std::optional<std::uint64_t> camp_seed;
    camp->add_option("--config", camp_config, "Campaign config JSON (must set master_seed)")
        ->required();
    camp->add_option("--out", camp_out, "Output directory for trials.csv / summary.json")
        ->required();
    camp->add_option("--seed", camp_seed, "Override the config master_seed");

    // diagnose
    auto* diag = app.add_subcommand("diagnose", "Discrepancy, mode-shape, ceiling diagnostics");
    std::string diag_input, diag_chord, diag_out;
    double diag_w = 1.0, diag_theta0 = 0.5;
    diag->add_option("--input", diag_input, "Cycle JSON path")->required();
    diag->add_option("--chord", diag_chord,
                     "Optional chord as p,q for the ceiling-deficit block: gamma is the "
                     "interlacing ceiling lambda_2 - lambda_1, deficit is gamma - Delta_pq(w), "
                     "epsilon = beta_2^2 / beta_1^2, t3plus = sum_{k>=3} beta_k^2 / lambda_k");
    diag->add_option("--w", diag_w, "Chord conductance for the deficit block");
    diag->add_option("--theta0", diag_theta0,
                     "Dominance threshold in (0,1): the bound gamma eps/(1-theta0) is asserted "
                     "only when gamma (1/w + T3+/(1-rho0)) <= theta0 beta_1^2 with "
                     "rho0 = lambda_2/lambda_3");
    diag->add_option("--out", diag_out, "Output path (stdout when absent)");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return run_gen(gen_n, gen_lo, gen_hi, gen_seed, gen_out);
        if (score->parsed())
            return run_score(score_input, score_chord_flag, score_w, score_m, score_out);
        if (scr->parsed()) return run_screen(scr_input, scr_tau, scr_out);
        if (par->parsed()) return run_pareto(par_input, par_tau, par_w, par_out, par_csv);
        if (sim->parsed())
            return run_simulate(sim_input, sim_chord, sim_sigma, sim_dt, sim_horizon, sim_paths,
                                sim_seed, sim_mode, sim_out);
        if (camp->parsed()) return run_campaign_cmd(camp_config, camp_out, camp_seed);
        if (diag->parsed())
            return run_diagnose(diag_input, diag_chord, diag_w, diag_theta0, diag_out);
        return kExitInputError;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const ComputeError& e) {
        std::cerr << "computational error: " << e.what() << '\n';
        return kExitComputeError;
    } catch (const std::exception& e) {
        std::cerr << "computational error: " << e.what() << '\n';
        return kExitComputeError;
    }
}
