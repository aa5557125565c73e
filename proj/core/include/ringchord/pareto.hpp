#pragma once

#include <optional>
#include <vector>

#include "ringchord/chord_update.hpp"
#include "ringchord/screening.hpp"

namespace ringchord {

/// One chord in the (Kirchhoff improvement, connectivity gain) plane.
/// Raw values come straight from the scorers; the normalized coordinates
/// divide by the exhaustive single-objective optima.
struct ObjectivePoint {
    Chord chord;
    double raw_improvement = 0.0;  ///< I_e
    double raw_gain = 0.0;         ///< Delta_e
    double norm_improvement = 0.0;
    double norm_gain = 0.0;
};

/// Nondominated set in descending normalized-gain order (normalized
/// improvement strictly increases along it), plus the scalar summaries.
struct ParetoFront {
    std::vector<ObjectivePoint> efficient;
    std::optional<Chord> knee;
    double hypervolume = 0.0;
    bool gain_degenerate = false;         ///< Delta* = 0 (e.g. uniform cycles)
    bool improvement_degenerate = false;  ///< I* = 0 (w = 0)
};

/// Raw objective values for every candidate: exact gain via the secular
/// update, Kirchhoff improvement via the four-entry form.
std::vector<ObjectivePoint> evaluate_objectives(const SpectralDecomposition& spec,
                                                const WeightedCycle& cycle,
                                                const std::vector<Chord>& candidates, double w);

/// Fill the normalized coordinates from the supplied single-objective
/// optima (usually the maxima over the exhaustive set).
void normalize_objectives(std::vector<ObjectivePoint>& points, double improvement_star,
                          double gain_star);

/// Record scan: sort by descending gain (ties by descending improvement)
/// and keep the points that set a new improvement record.
std::vector<ObjectivePoint> extract_front(const std::vector<ObjectivePoint>& points);

/// Front point closest to the normalized ideal (1,1); lexicographic
/// tie-break. Undefined when a normalizer vanished.
std::optional<Chord> knee(const std::vector<ObjectivePoint>& front, bool degenerate);

/// Fraction of the exhaustive front literally retained in the screened
/// candidate set.
double coverage(const std::vector<ObjectivePoint>& full_front,
                const std::vector<Chord>& screened_candidates);

/// Additive epsilon-dominance error of the screened front against the full
/// front, in normalized coordinates.
double epsilon_plus(const std::vector<ObjectivePoint>& full_front,
                    const std::vector<ObjectivePoint>& screened_front);

/// 2-D dominated hypervolume w.r.t. (0,0) of a front in normalized
/// coordinates (exact staircase sum).
double hypervolume(const std::vector<ObjectivePoint>& front);

/// hypervolume(screened) / hypervolume(full).
double hypervolume_ratio(const std::vector<ObjectivePoint>& full_front,
                         const std::vector<ObjectivePoint>& screened_front);

/// Exhaustive-vs-screened analysis of one instance: evaluates all
/// admissible chords, normalizes, extracts both fronts and the metrics.
struct ParetoAnalysis {
    std::vector<ObjectivePoint> all_points;   ///< exhaustive, normalized
    ParetoFront full;
    ParetoFront screened;
    std::vector<Chord> screened_candidates;
    double coverage = 0.0;        ///< full front vs screened candidate set
    double front_coverage = 0.0;  ///< full front vs screened front (chord sets)
    double epsilon_plus = 0.0;
    double hv_ratio = 0.0;
    double candidate_ratio = 0.0;
    bool knee_captured = false;
    bool degenerate = false;  ///< gain normalizer vanished; hv/knee skipped
};

ParetoAnalysis analyze_instance(const SpectralDecomposition& spec, const WeightedCycle& cycle,
                                double w, double tau);

} // namespace ringchord
