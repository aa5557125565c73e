#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ringchord/spectral.hpp"
#include "ringchord/weighted_cycle.hpp"

namespace ringchord {

/// Screening parameters: tau = 0 keeps only the three straddling seeds per
/// start vertex (RBAPS); tau > 0 additionally expands through the window
/// |2 (s~_k - s~_i) - S| <= tau S (AW-RBAPS). modes is the low-frequency
/// mode count used to pick within the screened set.
struct ScreenConfig {
    double tau = 0.1;
    int modes = 12;

    void validate(int n) const;  ///< tau in [0,1), 1 <= modes <= n-1
};

enum class CandidateSource { RBAPS, AW_RBAPS, FULL, FIEDLER, RANDOM };

std::string to_string(CandidateSource source);

/// Deduplicated admissible pairs in lexicographic order.
struct CandidateSet {
    std::vector<Chord> pairs;
    CandidateSource source = CandidateSource::FULL;
};

/// Resistance-balanced antipodal pair screening over the lifted prefix
/// sums. For each start vertex the first lifted index straddling half the
/// total resistance seeds up to three pairs; with tau > 0 each seed also
/// expands left and right until the window condition first fails.
CandidateSet screen(const WeightedCycle& cycle, double tau);

/// Fiedler endpoint heuristic: the {argmin, argmax} pair of the Fiedler
/// vector when admissible, otherwise the admissible maximizer of the
/// squared Fiedler gap.
Chord fiedler_baseline(const SpectralDecomposition& spec, const WeightedCycle& cycle);

/// One chord uniform over the admissible set, reproducible per stream.
Chord random_baseline(const WeightedCycle& cycle, std::mt19937_64& rng);

/// Maximizer of the score over the candidate set; ties go to the
/// lexicographically smallest pair.
Chord select_best(const CandidateSet& candidates, const std::function<double(const Chord&)>& score);

/// Screen with cfg.tau, then pick the candidate maximizing the cfg.modes
/// low-frequency gain at chord conductance w.
Chord select_screened(const WeightedCycle& cycle, const SpectralDecomposition& spec,
                      const ScreenConfig& cfg, double w);

} // namespace ringchord
