#pragma once

#include <optional>

#include "ringchord/spectral.hpp"
#include "ringchord/weighted_cycle.hpp"

namespace ringchord {

/// Admissible chord {p,q} with conductance w >= 0.
struct ChordCandidate {
    Chord chord;
    double w = 0.0;

    ChordCandidate(const WeightedCycle& cycle, Chord c, double weight);
};

/// Per-chord objective values at a fixed conductance.
struct ChordScore {
    double delta_exact = 0.0;         ///< algebraic-connectivity gain
    double delta_lowfreq = 0.0;       ///< m-mode approximation of the gain
    double improvement = 0.0;         ///< Kirchhoff-index reduction
    double r_endpoint = 0.0;          ///< R_pq before the chord
    double r_endpoint_updated = 0.0;  ///< R_pq after the chord
};

/// Endpoint resistance after the chord: R_pq / (1 + w R_pq).
double endpoint_resistance_updated(const SpectralDecomposition& spec, const ChordCandidate& chord);

/// Exact updated resistance of any pair {u,v}:
/// R_uv - w (R_uq + R_vp - R_up - R_vq)^2 / (4 (1 + w R_pq)).
double pairwise_resistance_updated(const SpectralDecomposition& spec, const ChordCandidate& chord,
                                   int u, int v);

/// Kirchhoff-index reduction by the four-endpoint-entry form
/// w n Q_e / (1 + w R_e) with R_e = b^T G b and Q_e = b^T M b.
double kirchhoff_improvement(const SpectralDecomposition& spec, const ChordCandidate& chord);

/// Test-oracle form of the same quantity: the O(n^2) pair sum
/// w sum_{u<v} (R_uq + R_vp - R_up - R_vq)^2 / (4 (1 + w R_pq)).
double kirchhoff_improvement_pair_sum(const SpectralDecomposition& spec,
                                      const ChordCandidate& chord);

/// How close the chord comes to the interlacing ceiling gamma = lambda_2 -
/// lambda_1, and whether the checkable two-mode comparison hypotheses hold
/// for the supplied theta0. The bound gamma eps / (1 - theta0) is reported
/// only when they do; epsilon is infinite when beta_1 vanishes.
struct CeilingDeficitReport {
    double gamma = 0.0;
    double deficit = 0.0;
    double beta1sq = 0.0;
    double beta2sq = 0.0;
    double epsilon = 0.0;           ///< beta_2^2 / beta_1^2, +inf if beta_1 = 0
    double t3plus = 0.0;
    double rho0 = 0.0;              ///< lambda_2 / lambda_3
    double theta0 = 0.0;
    bool dominance_holds = false;   ///< gamma (1/w + T3+/(1-rho0)) <= theta0 beta_1^2
    std::optional<double> bound_rhs; ///< gamma eps / (1 - theta0) when asserted
};

CeilingDeficitReport ceiling_deficit_report(const SpectralDecomposition& spec,
                                            const ChordCandidate& chord, double theta0);

/// Budget rule: both objectives are monotone in w, so a Pareto-efficient
/// chord always uses the full budget.
double saturate_budget(double budget);

/// All per-chord scores in one pass (m low-frequency modes).
ChordScore score_chord(const SpectralDecomposition& spec, const ChordCandidate& chord, int m);

} // namespace ringchord
