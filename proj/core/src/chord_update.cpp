#include "ringchord/chord_update.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ringchord {

namespace {

inline double resistance_from(const Eigen::MatrixXd& G, int a, int b) {
    return G(a, a) + G(b, b) - 2.0 * G(a, b);
}

} // namespace

ChordCandidate::ChordCandidate(const WeightedCycle& cycle, Chord c, double weight)
    : chord(c), w(weight) {
    if (!cycle.admissible(c.p, c.q)) {
        throw std::invalid_argument("chord {" + std::to_string(c.p) + "," + std::to_string(c.q) +
                                    "} is not admissible on a cycle of " +
                                    std::to_string(cycle.n()) + " vertices");
    }
    if (!(weight >= 0.0) || !std::isfinite(weight)) {
        throw std::invalid_argument("chord conductance must be finite and nonnegative");
    }
}

double endpoint_resistance_updated(const SpectralDecomposition& spec, const ChordCandidate& chord) {
    const double r = resistance_from(spec.G(), chord.chord.p, chord.chord.q);
    return r / (1.0 + chord.w * r);
}

double pairwise_resistance_updated(const SpectralDecomposition& spec, const ChordCandidate& chord,
                                   int u, int v) {
    const int n = spec.n();
    if (u < 0 || u >= n || v < 0 || v >= n) {
        throw std::invalid_argument("vertex index out of range");
    }
    if (u == v) {
        throw std::invalid_argument("pairwise resistance requires distinct vertices");
    }
    const auto& G = spec.G();
    const int p = chord.chord.p, q = chord.chord.q;
    const double r_uv = resistance_from(G, u, v);
    const double r_pq = resistance_from(G, p, q);
    const double cross = resistance_from(G, u, q) + resistance_from(G, v, p) -
                         resistance_from(G, u, p) - resistance_from(G, v, q);
    return r_uv - chord.w * cross * cross / (4.0 * (1.0 + chord.w * r_pq));
}

double kirchhoff_improvement(const SpectralDecomposition& spec, const ChordCandidate& chord) {
    const int p = chord.chord.p, q = chord.chord.q;
    const double r_e = resistance_from(spec.G(), p, q);
    const auto& M = spec.M();
    const double q_e = M(p, p) + M(q, q) - 2.0 * M(p, q);
    return chord.w * spec.n() * q_e / (1.0 + chord.w * r_e);
}

double kirchhoff_improvement_pair_sum(const SpectralDecomposition& spec,
                                      const ChordCandidate& chord) {
    const int n = spec.n();
    const auto& G = spec.G();
    const int p = chord.chord.p, q = chord.chord.q;
    double sq_sum = 0.0;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const double cross = resistance_from(G, u, q) + resistance_from(G, v, p) -
                                 resistance_from(G, u, p) - resistance_from(G, v, q);
            sq_sum += cross * cross;
        }
    }
    const double r_pq = resistance_from(G, p, q);
    return chord.w * sq_sum / (4.0 * (1.0 + chord.w * r_pq));
}

CeilingDeficitReport ceiling_deficit_report(const SpectralDecomposition& spec,
                                            const ChordCandidate& chord, double theta0) {
    if (!(theta0 > 0.0 && theta0 < 1.0)) {
        throw std::invalid_argument("theta0 must lie in (0, 1)");
    }
    const int p = chord.chord.p, q = chord.chord.q;
    const auto jumps = mode_jumps(spec, p, q);

    CeilingDeficitReport rep;
    rep.gamma = spec.lambda2() - spec.lambda1();
    rep.deficit = rep.gamma - exact_gain(spec, p, q, chord.w);
    rep.beta1sq = jumps.beta[0] * jumps.beta[0];
    rep.beta2sq = jumps.beta[1] * jumps.beta[1];
    rep.epsilon = rep.beta1sq > 0.0 ? rep.beta2sq / rep.beta1sq
                                    : std::numeric_limits<double>::infinity();
    rep.t3plus = jumps.t3plus;
    rep.rho0 = spec.lambda2() / spec.eigenvalue(3);
    rep.theta0 = theta0;

    if (rep.rho0 < 1.0 && rep.beta1sq > 0.0 && chord.w > 0.0) {
        const double lhs = rep.gamma * (1.0 / chord.w + rep.t3plus / (1.0 - rep.rho0));
        rep.dominance_holds = lhs <= theta0 * rep.beta1sq;
    }
    if (rep.dominance_holds && std::isfinite(rep.epsilon)) {
        rep.bound_rhs = rep.gamma * rep.epsilon / (1.0 - theta0);
    }
    return rep;
}

double saturate_budget(double budget) {
    if (!(budget >= 0.0)) {
        throw std::invalid_argument("budget must be nonnegative");
    }
    return budget;
}

ChordScore score_chord(const SpectralDecomposition& spec, const ChordCandidate& chord, int m) {
    const int p = chord.chord.p, q = chord.chord.q;
    ChordScore score;
    score.delta_exact = exact_gain(spec, p, q, chord.w);
    score.delta_lowfreq = lowfreq_gain(spec, p, q, chord.w, m);
    score.improvement = kirchhoff_improvement(spec, chord);
    score.r_endpoint = resistance_from(spec.G(), p, q);
    score.r_endpoint_updated = score.r_endpoint / (1.0 + chord.w * score.r_endpoint);
    return score;
}

} // namespace ringchord
