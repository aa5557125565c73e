#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "ringchord/weighted_cycle.hpp"

namespace ringchord {

/// Laplacian L = D - A of the bare cycle.
Eigen::MatrixXd cycle_laplacian(const WeightedCycle& cycle);

/// L + w b b^T with b = e_p - e_q.
Eigen::MatrixXd augmented_laplacian(const WeightedCycle& cycle, const Chord& chord, double w);

/// Dense eigendecomposition of the cycle Laplacian plus the derived
/// pseudoinverse quantities. Immutable once built; chord scoring only reads.
class SpectralDecomposition {
public:
    /// Full symmetric eigensolve of L. G = L^+ and M = G^2 are assembled
    /// from the nonzero modes; pass build_pseudoinverse = false to skip
    /// them (two n^3 products) when only eigenpairs are needed.
    static SpectralDecomposition decompose(const WeightedCycle& cycle,
                                           bool build_pseudoinverse = true);

    int n() const { return static_cast<int>(eigenvalues_.size()); }
    const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
    const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }
    double eigenvalue(int k) const { return eigenvalues_(k); }
    double lambda1() const { return eigenvalues_(1); }
    double lambda2() const { return eigenvalues_(2); }

    bool has_pseudoinverse() const { return pseudoinverse_.size() > 0; }
    /// Moore-Penrose pseudoinverse L^+.
    const Eigen::MatrixXd& G() const;
    /// M = (L^+)^2, used by the four-entry coherence score.
    const Eigen::MatrixXd& M() const;

    /// Resistance prefix data of the underlying cycle (shared by the
    /// screening rules and the mode-shape diagnostics).
    const ResistanceProfile& profile() const { return profile_; }

private:
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd eigenvectors_;
    Eigen::MatrixXd pseudoinverse_;
    Eigen::MatrixXd pseudoinverse_sq_;
    ResistanceProfile profile_;
};

/// Mode jumps beta_k = u_{k,p} - u_{k,q} for k = 1..n-1 and the high-mode
/// tail T_{3+} = sum_{k>=3} beta_k^2 / lambda_k. The full weighted sum
/// sum_k beta_k^2 / lambda_k equals the endpoint effective resistance.
struct ModeJumps {
    std::vector<double> beta;   ///< beta[k-1] holds beta_k, k = 1..n-1
    double t3plus = 0.0;
};

/// Smallest eigenvalue of diag(d) + w z z^T for ascending d and w >= 0.
/// Modes with negligible z are deflated and persist at d_k; repeated pole
/// values are grouped so that multiplicities survive the update. The
/// remaining root is bracketed between the first two distinct poles and
/// solved by bisection refined with safeguarded Newton.
double smallest_rank_one_eigenvalue(std::span<const double> d,
                                    std::span<const double> z,
                                    double w);

/// lambda_1 of L + w b b^T via the secular equation on the disagreement
/// modes. Respects interlacing lambda_1 <= result <= lambda_2.
double lambda1_updated(const SpectralDecomposition& spec, int p, int q, double w);

/// Algebraic-connectivity gain lambda_1(L + w b b^T) - lambda_1(L),
/// clamped into [0, lambda_2 - lambda_1] only within rounding slack.
double exact_gain(const SpectralDecomposition& spec, int p, int q, double w);

/// Low-frequency approximation of the gain: smallest eigenvalue of
/// diag(lambda_1..lambda_m) + w a a^T minus lambda_1, with
/// a_k = u_{k,p} - u_{k,q}. m = n-1 recovers the exact gain.
double lowfreq_gain(const SpectralDecomposition& spec, int p, int q, double w, int m);

ModeJumps mode_jumps(const SpectralDecomposition& spec, int p, int q);

/// Least-squares fit of the first two modes to a fixed-amplitude sinusoid
/// in resistance arclength. The phase is fitted on mode 1 and reused for
/// the cosine fit of mode 2; the (sigma, phi) ambiguity is resolved by
/// fixing sigma = +1 and phi in [0, 2pi).
struct FiedlerFitReport {
    bool degenerate = false;    ///< lambda_1 ~ lambda_2, fit not asserted
    double phase = 0.0;
    int sign_mode1 = 1;
    double sup_error_mode1 = 0.0;
    int sign_mode2 = 1;
    double sup_error_mode2 = 0.0;
};

FiedlerFitReport fiedler_mode_fit(const SpectralDecomposition& spec);

} // namespace ringchord
