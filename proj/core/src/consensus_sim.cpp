#include "ringchord/consensus_sim.hpp"

#include <cmath>
#include <stdexcept>

#include "ringchord/errors.hpp"
#include "ringchord/rng.hpp"

namespace ringchord {

namespace {

struct ModeBasis {
    Eigen::VectorXd lambda;  ///< nonzero eigenvalues, ascending
    Eigen::MatrixXd modes;   ///< corresponding eigenvectors, n x (n-1)
};

ModeBasis disagreement_modes(const Eigen::MatrixXd& L) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L);
    if (solver.info() != Eigen::Success) {
        throw ComputeError("eigendecomposition of the simulation Laplacian failed");
    }
    const int n = static_cast<int>(L.rows());
    if (solver.eigenvalues()(1) <= 0.0) {
        throw std::invalid_argument("simulation Laplacian must belong to a connected graph");
    }
    return {solver.eigenvalues().tail(n - 1), solver.eigenvectors().rightCols(n - 1)};
}

} // namespace

Ensemble simulate(const Eigen::MatrixXd& laplacian, const SimConfig& cfg) {
    const int n = static_cast<int>(laplacian.rows());
    const ModeBasis basis = disagreement_modes(laplacian);
    const double lambda1 = basis.lambda(0);
    const double lambda_max = basis.lambda(n - 2);

    if (!(cfg.dt > 0.0)) {
        throw std::invalid_argument("time step dt must be positive");
    }
    if (cfg.mode == Integrator::EulerMaruyama && cfg.dt * lambda_max >= 2.0) {
        throw std::invalid_argument("explicit scheme unstable: dt * lambda_max = " +
                                    std::to_string(cfg.dt * lambda_max) + " >= 2");
    }
    if (cfg.horizon < 10.0 / lambda1) {
        throw std::invalid_argument("horizon shorter than the near-stationarity window 10/lambda_1");
    }
    if (cfg.n_paths < 1) {
        throw std::invalid_argument("need at least one path");
    }

    const double burn = cfg.burn_in >= 0.0 ? cfg.burn_in : 10.0 / lambda1;
    const long total_steps = static_cast<long>(std::ceil(cfg.horizon / cfg.dt));
    const long first_kept = std::min<long>(static_cast<long>(std::ceil(burn / cfg.dt)), total_steps);
    const long kept = total_steps - first_kept + 1;
    const long stride = std::max<long>(1, (kept + cfg.max_samples_per_path - 1) / cfg.max_samples_per_path);

    Ensemble ens;
    ens.n = n;
    ens.sigma = cfg.sigma;
    ens.dt = cfg.dt;
    ens.sample_start = static_cast<double>(first_kept) * cfg.dt;
    ens.sample_stride = static_cast<double>(stride) * cfg.dt;
    ens.states.resize(static_cast<std::size_t>(cfg.n_paths));

    Eigen::VectorXd x0 = cfg.initial.size() > 0 ? cfg.initial : Eigen::VectorXd::Zero(n);
    if (x0.size() != n) {
        throw std::invalid_argument("initial state has wrong dimension");
    }
    x0.array() -= x0.mean();  // project the start into the disagreement subspace

    const double sqrt_dt = std::sqrt(cfg.dt);
    // Per-mode exact transition coefficients.
    Eigen::VectorXd decay, noise_sd;
    if (cfg.mode == Integrator::ExactTransition) {
        decay = (-cfg.dt * basis.lambda.array()).exp();
        noise_sd = (cfg.sigma * cfg.sigma * (1.0 - decay.array().square()) /
                    (2.0 * basis.lambda.array()))
                       .sqrt();
    }

    for (int path = 0; path < cfg.n_paths; ++path) {
        std::mt19937_64 rng(substream_seed(cfg.seed, static_cast<std::uint64_t>(path)));
        NormalSampler normal(rng);

        auto& stored = ens.states[static_cast<std::size_t>(path)];
        stored.reserve(static_cast<std::size_t>((kept + stride - 1) / stride));

        if (cfg.mode == Integrator::EulerMaruyama) {
            Eigen::VectorXd x = x0;
            Eigen::VectorXd z(n);
            if (first_kept == 0) stored.push_back(x);
            for (long step = 1; step <= total_steps; ++step) {
                for (int i = 0; i < n; ++i) z(i) = normal();
                z.array() -= z.mean();  // projected noise increment
                x = x - cfg.dt * (laplacian * x) + (cfg.sigma * sqrt_dt) * z;
                const double drift = std::abs(x.sum()) / std::sqrt(static_cast<double>(n));
                ens.max_mean_component = std::max(ens.max_mean_component, drift);
                if (step >= first_kept && (step - first_kept) % stride == 0) {
                    stored.push_back(x);
                }
            }
        } else {
            Eigen::VectorXd y = basis.modes.transpose() * x0;  // mode coordinates
            if (first_kept == 0) stored.push_back(basis.modes * y);
            for (long step = 1; step <= total_steps; ++step) {
                for (int k = 0; k < n - 1; ++k) {
                    y(k) = decay(k) * y(k) + noise_sd(k) * normal();
                }
                if (step >= first_kept && (step - first_kept) % stride == 0) {
                    Eigen::VectorXd x = basis.modes * y;
                    const double drift = std::abs(x.sum()) / std::sqrt(static_cast<double>(n));
                    ens.max_mean_component = std::max(ens.max_mean_component, drift);
                    stored.push_back(std::move(x));
                }
            }
        }
    }
    return ens;
}

Ensemble sample_stationary(const Eigen::MatrixXd& laplacian, double sigma, int n_paths,
                           int samples_per_path, std::uint64_t seed) {
    const int n = static_cast<int>(laplacian.rows());
    const ModeBasis basis = disagreement_modes(laplacian);
    const Eigen::VectorXd sd = (sigma * sigma / (2.0 * basis.lambda.array())).sqrt();

    Ensemble ens;
    ens.n = n;
    ens.sigma = sigma;
    ens.states.resize(static_cast<std::size_t>(n_paths));
    for (int path = 0; path < n_paths; ++path) {
        std::mt19937_64 rng(substream_seed(seed, static_cast<std::uint64_t>(path)));
        NormalSampler normal(rng);
        auto& stored = ens.states[static_cast<std::size_t>(path)];
        stored.reserve(static_cast<std::size_t>(samples_per_path));
        Eigen::VectorXd y(n - 1);
        for (int s = 0; s < samples_per_path; ++s) {
            for (int k = 0; k < n - 1; ++k) y(k) = sd(k) * normal();
            stored.push_back(basis.modes * y);
        }
    }
    return ens;
}

namespace {

template <typename PerSample>
Estimate reduce_paths(const Ensemble& ensemble, PerSample&& value_of) {
    std::vector<double> path_means;
    path_means.reserve(ensemble.states.size());
    long total = 0;
    for (const auto& path : ensemble.states) {
        if (path.empty()) continue;
        double acc = 0.0;
        for (const auto& x : path) acc += value_of(x);
        path_means.push_back(acc / static_cast<double>(path.size()));
        total += static_cast<long>(path.size());
    }
    if (path_means.empty()) {
        throw std::invalid_argument("ensemble holds no stored samples");
    }

    Estimate est;
    est.samples = total;
    for (double m : path_means) est.value += m;
    est.value /= static_cast<double>(path_means.size());
    if (path_means.size() > 1) {
        double var = 0.0;
        for (double m : path_means) var += (m - est.value) * (m - est.value);
        var /= static_cast<double>(path_means.size() - 1);
        est.std_error = std::sqrt(var / static_cast<double>(path_means.size()));
    } else {
        // A single path gives no between-path spread; flag the interval wide.
        est.std_error = std::numeric_limits<double>::infinity();
    }
    return est;
}

} // namespace

Estimate estimate_coherence(const Ensemble& ensemble) {
    const double n = static_cast<double>(ensemble.n);
    return reduce_paths(ensemble, [n](const Eigen::VectorXd& x) {
        const double mean = x.mean();
        return (x.array() - mean).square().sum() / n;
    });
}

Estimate estimate_pair_variance(const Ensemble& ensemble, int i, int j) {
    if (i < 0 || i >= ensemble.n || j < 0 || j >= ensemble.n) {
        throw std::invalid_argument("vertex index out of range");
    }
    if (i == j) {
        throw std::invalid_argument("pair variance requires distinct vertices");
    }
    return reduce_paths(ensemble, [i, j](const Eigen::VectorXd& x) {
        const double d = x(i) - x(j);
        return d * d;
    });
}

} // namespace ringchord
