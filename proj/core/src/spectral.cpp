#include "ringchord/spectral.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <stdexcept>

#include "ringchord/errors.hpp"

namespace ringchord {

namespace {

constexpr double kDeflationRel = 1e-24;   // z_k^2 below this times max is deflated
constexpr double kPoleGroupRel = 1e-12;   // poles closer than this times d_max merge

void check_pair(int n, int p, int q) {
    if (p < 0 || p >= n || q < 0 || q >= n) {
        throw std::invalid_argument("vertex index out of range");
    }
    const int d = std::abs(p - q);
    if (p == q || std::min(d, n - d) < 2) {
        throw std::invalid_argument("pair {" + std::to_string(p) + "," + std::to_string(q) +
                                    "} is not an admissible chord");
    }
}

} // namespace

Eigen::MatrixXd cycle_laplacian(const WeightedCycle& cycle) {
    const int n = cycle.n();
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        const double c = cycle.conductance(i);
        L(i, i) += c;
        L(j, j) += c;
        L(i, j) -= c;
        L(j, i) -= c;
    }
    return L;
}

Eigen::MatrixXd augmented_laplacian(const WeightedCycle& cycle, const Chord& chord, double w) {
    Eigen::MatrixXd L = cycle_laplacian(cycle);
    L(chord.p, chord.p) += w;
    L(chord.q, chord.q) += w;
    L(chord.p, chord.q) -= w;
    L(chord.q, chord.p) -= w;
    return L;
}

SpectralDecomposition SpectralDecomposition::decompose(const WeightedCycle& cycle,
                                                       bool build_pseudoinverse) {
    const int n = cycle.n();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cycle_laplacian(cycle));
    if (solver.info() != Eigen::Success) {
        throw ComputeError("eigendecomposition failed to converge for n = " + std::to_string(n));
    }

    SpectralDecomposition spec;
    spec.eigenvalues_ = solver.eigenvalues();
    spec.eigenvectors_ = solver.eigenvectors();
    spec.profile_ = ResistanceProfile::from_cycle(cycle);

    const double lam_max = spec.eigenvalues_(n - 1);
    if (std::abs(spec.eigenvalues_(0)) > 1e-9 * lam_max || spec.eigenvalues_(1) <= 0.0) {
        throw ComputeError("cycle Laplacian spectrum inconsistent: lambda_0 = " +
                           std::to_string(spec.eigenvalues_(0)) + ", lambda_1 = " +
                           std::to_string(spec.eigenvalues_(1)));
    }
    // Canonical sign for the constant mode.
    if (spec.eigenvectors_.col(0).sum() < 0.0) {
        spec.eigenvectors_.col(0) *= -1.0;
    }

    if (build_pseudoinverse) {
        const auto modes = spec.eigenvectors_.rightCols(n - 1);
        const auto lam = spec.eigenvalues_.tail(n - 1);
        spec.pseudoinverse_ = modes * lam.cwiseInverse().asDiagonal() * modes.transpose();
        spec.pseudoinverse_sq_ =
            modes * lam.cwiseAbs2().cwiseInverse().asDiagonal() * modes.transpose();
    }
    return spec;
}

const Eigen::MatrixXd& SpectralDecomposition::G() const {
    if (pseudoinverse_.size() == 0) {
        throw std::logic_error("pseudoinverse was not built for this decomposition");
    }
    return pseudoinverse_;
}

const Eigen::MatrixXd& SpectralDecomposition::M() const {
    if (pseudoinverse_sq_.size() == 0) {
        throw std::logic_error("pseudoinverse square was not built for this decomposition");
    }
    return pseudoinverse_sq_;
}

double smallest_rank_one_eigenvalue(std::span<const double> d,
                                    std::span<const double> z,
                                    double w) {
    const std::size_t m = d.size();
    if (m == 0 || z.size() != m) {
        throw std::invalid_argument("rank-one update needs matching nonempty d and z");
    }
    if (w < 0.0) {
        throw std::invalid_argument("chord conductance w must be nonnegative");
    }
    if (w == 0.0) return d[0];

    double zmax2 = 0.0;
    for (double v : z) zmax2 = std::max(zmax2, v * v);
    if (zmax2 == 0.0) return d[0];
    const double deflate = kDeflationRel * zmax2;

    // Distinct active poles with summed weights; deflated modes and the
    // surplus multiplicity of repeated active poles persist unchanged.
    const double group_tol = kPoleGroupRel * std::max(std::abs(d[m - 1]), DBL_MIN);
    std::vector<double> pole, weight;
    double persisted_min = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m; ++k) {
        const double zk2 = z[k] * z[k];
        if (zk2 <= deflate) {
            persisted_min = std::min(persisted_min, d[k]);
            continue;
        }
        if (!pole.empty() && d[k] - pole.back() <= group_tol) {
            weight.back() += zk2;
            persisted_min = std::min(persisted_min, pole.back());
        } else {
            pole.push_back(d[k]);
            weight.push_back(zk2);
        }
    }
    if (pole.empty()) return d[0];

    double root;
    if (pole.size() == 1) {
        root = pole[0] + w * weight[0];
    } else {
        // First secular root in offset form t = mu - pole_0, t in (0, gap):
        //   g(t) = 1 - w W_0 / t + w sum_g W_g / (D_g - t),  g increasing.
        // Working in offsets keeps the computed gain accurate even when the
        // root sits within rounding distance of the pole.
        const std::size_t g_cnt = pole.size();
        const double gap = pole[1] - pole[0];
        std::vector<double> offset(g_cnt);
        for (std::size_t g = 1; g < g_cnt; ++g) offset[g] = pole[g] - pole[0];

        double tail = 0.0;
        for (std::size_t g = 1; g < g_cnt; ++g) tail += weight[g] / offset[g];
        double t = w * weight[0] / (1.0 + w * tail);
        if (!(t > 0.0 && t < gap)) t = 0.5 * gap;

        double lo = 0.0, hi = gap;
        for (int it = 0; it < 200; ++it) {
            double val = 1.0 - w * weight[0] / t;
            double der = w * weight[0] / (t * t);
            for (std::size_t g = 1; g < g_cnt; ++g) {
                const double den = offset[g] - t;
                val += w * weight[g] / den;
                der += w * weight[g] / (den * den);
            }
            if (val == 0.0) break;
            if (val < 0.0) lo = t; else hi = t;

            double next = t - val / der;
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            const bool converged = std::abs(next - t) <= DBL_EPSILON * t;
            t = next;
            if (converged || hi - lo <= 4.0 * DBL_EPSILON * hi) break;
        }
        root = pole[0] + t;
    }
    return std::min(persisted_min, root);
}

double lambda1_updated(const SpectralDecomposition& spec, int p, int q, double w) {
    const int n = spec.n();
    check_pair(n, p, q);
    if (w < 0.0) {
        throw std::invalid_argument("chord conductance w must be nonnegative");
    }

    std::vector<double> d(static_cast<std::size_t>(n) - 1), z(static_cast<std::size_t>(n) - 1);
    for (int k = 1; k < n; ++k) {
        d[k - 1] = spec.eigenvalue(k);
        z[k - 1] = spec.eigenvectors()(p, k) - spec.eigenvectors()(q, k);
    }
    double mu = smallest_rank_one_eigenvalue(d, z, w);

    // Interlacing can only be violated by rounding; clamp within slack.
    const double slack = 1e-10 * std::max(1.0, spec.lambda2());
    if (mu < spec.lambda1() && mu >= spec.lambda1() - slack) mu = spec.lambda1();
    if (mu > spec.lambda2() && mu <= spec.lambda2() + slack) mu = spec.lambda2();
    return mu;
}

double exact_gain(const SpectralDecomposition& spec, int p, int q, double w) {
    const double ceiling = spec.lambda2() - spec.lambda1();
    // Degenerate ceiling (uniform cycles): interlacing forces zero gain.
    if (ceiling <= 1e-12 * std::max(spec.lambda2(), DBL_MIN)) {
        check_pair(spec.n(), p, q);
        if (w < 0.0) throw std::invalid_argument("chord conductance w must be nonnegative");
        return 0.0;
    }
    double gain = lambda1_updated(spec, p, q, w) - spec.lambda1();
    const double slack = 1e-10 * std::max(1.0, spec.lambda2());
    if (gain < 0.0 && gain >= -slack) gain = 0.0;
    if (gain > ceiling && gain <= ceiling + slack) gain = ceiling;
    return gain;
}

double lowfreq_gain(const SpectralDecomposition& spec, int p, int q, double w, int m) {
    const int n = spec.n();
    check_pair(n, p, q);
    if (m < 1 || m > n - 1) {
        throw std::invalid_argument("mode count m must satisfy 1 <= m <= n-1");
    }
    if (w < 0.0) {
        throw std::invalid_argument("chord conductance w must be nonnegative");
    }

    std::vector<double> d(static_cast<std::size_t>(m)), z(static_cast<std::size_t>(m));
    for (int k = 1; k <= m; ++k) {
        d[k - 1] = spec.eigenvalue(k);
        z[k - 1] = spec.eigenvectors()(p, k) - spec.eigenvectors()(q, k);
    }
    double gain = smallest_rank_one_eigenvalue(d, z, w) - spec.lambda1();
    return gain < 0.0 ? 0.0 : gain;
}

ModeJumps mode_jumps(const SpectralDecomposition& spec, int p, int q) {
    const int n = spec.n();
    check_pair(n, p, q);
    ModeJumps jumps;
    jumps.beta.resize(static_cast<std::size_t>(n) - 1);
    for (int k = 1; k < n; ++k) {
        const double beta = spec.eigenvectors()(p, k) - spec.eigenvectors()(q, k);
        jumps.beta[k - 1] = beta;
        if (k >= 3) jumps.t3plus += beta * beta / spec.eigenvalue(k);
    }
    return jumps;
}

FiedlerFitReport fiedler_mode_fit(const SpectralDecomposition& spec) {
    const int n = spec.n();
    const auto& prof = spec.profile();
    const double S = prof.total;

    FiedlerFitReport rep;
    rep.degenerate = (spec.lambda2() - spec.lambda1()) <= 1e-9 * std::max(spec.lambda2(), DBL_MIN);

    std::vector<double> theta(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) theta[i] = 2.0 * M_PI * prof.s[i] / S;

    // The amplitude-constrained least-squares problem reduces to a single
    // phase: maximize sum_i u_i sin(theta_i + phi) = A cos(phi - phi*).
    double cs = 0.0, cc = 0.0;
    for (int i = 0; i < n; ++i) {
        cs += spec.eigenvectors()(i, 1) * std::sin(theta[i]);
        cc += spec.eigenvectors()(i, 1) * std::cos(theta[i]);
    }
    double phi = std::atan2(cc, cs);
    if (phi < 0.0) phi += 2.0 * M_PI;
    rep.phase = phi;
    rep.sign_mode1 = 1;

    const double amp = std::sqrt(2.0 / n);
    for (int i = 0; i < n; ++i) {
        const double fit = amp * std::sin(theta[i] + phi);
        rep.sup_error_mode1 = std::max(rep.sup_error_mode1,
                                       std::abs(spec.eigenvectors()(i, 1) - fit));
    }

    double align = 0.0;
    for (int i = 0; i < n; ++i) {
        align += spec.eigenvectors()(i, 2) * std::cos(theta[i] + phi);
    }
    rep.sign_mode2 = align >= 0.0 ? 1 : -1;
    for (int i = 0; i < n; ++i) {
        const double fit = rep.sign_mode2 * amp * std::cos(theta[i] + phi);
        rep.sup_error_mode2 = std::max(rep.sup_error_mode2,
                                       std::abs(spec.eigenvectors()(i, 2) - fit));
    }
    return rep;
}

} // namespace ringchord
