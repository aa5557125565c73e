#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace ringchord {

enum class Integrator {
    EulerMaruyama,    ///< x += -L x dt + sigma sqrt(dt) P z
    ExactTransition,  ///< per-mode Ornstein-Uhlenbeck transition, exact in law
};

/// Configuration of one ensemble run of the noisy consensus dynamics
/// d xi = -L xi dt + sigma dW projected onto the disagreement subspace.
struct SimConfig {
    double sigma = 1.0;
    double dt = 0.0;          ///< must satisfy dt * lambda_max < 2 for Euler-Maruyama
    double horizon = 0.0;     ///< total simulated time, >= 10 / lambda_1
    int n_paths = 100;
    std::uint64_t seed = 0;
    Integrator mode = Integrator::EulerMaruyama;
    double burn_in = -1.0;    ///< negative: default 10 / lambda_1
    int max_samples_per_path = 4096;
    Eigen::VectorXd initial;  ///< empty: start at zero disagreement
};

/// Stored tail-window snapshots of the disagreement process, one vector of
/// states per path, plus integration diagnostics.
struct Ensemble {
    int n = 0;
    double sigma = 0.0;
    double dt = 0.0;
    double sample_start = 0.0;              ///< time of first stored sample
    double sample_stride = 0.0;             ///< time between stored samples
    std::vector<std::vector<Eigen::VectorXd>> states;  ///< [path][sample]
    double max_mean_component = 0.0;        ///< max |1^T x| / sqrt(n) seen during integration
};

/// Point estimate with a standard error computed from per-path means
/// (paths are independent).
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    long samples = 0;
};

/// Integrate the projected dynamics for a connected Laplacian (cycle with
/// or without chord). Stability and near-stationarity requirements are
/// validated before integrating.
Ensemble simulate(const Eigen::MatrixXd& laplacian, const SimConfig& cfg);

/// I.i.d. draws from the exact stationary law N(0, sigma^2 L^+ / 2),
/// shaped like an Ensemble. Oracle for the estimators below.
Ensemble sample_stationary(const Eigen::MatrixXd& laplacian, double sigma, int n_paths,
                           int samples_per_path, std::uint64_t seed);

/// Empirical network coherence: mean over paths and stored samples of
/// (1/n) sum_i (x_i - mean(x))^2.
Estimate estimate_coherence(const Ensemble& ensemble);

/// Steady-state estimate of E[(x_i - x_j)^2].
Estimate estimate_pair_variance(const Ensemble& ensemble, int i, int j);

} // namespace ringchord
