#include "ringchord/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ringchord {

std::vector<ObjectivePoint> evaluate_objectives(const SpectralDecomposition& spec,
                                                const WeightedCycle& cycle,
                                                const std::vector<Chord>& candidates, double w) {
    std::vector<ObjectivePoint> points;
    points.reserve(candidates.size());
    for (const Chord& c : candidates) {
        const ChordCandidate cand(cycle, c, w);
        ObjectivePoint pt;
        pt.chord = c;
        pt.raw_gain = exact_gain(spec, c.p, c.q, w);
        pt.raw_improvement = kirchhoff_improvement(spec, cand);
        points.push_back(pt);
    }
    return points;
}

void normalize_objectives(std::vector<ObjectivePoint>& points, double improvement_star,
                          double gain_star) {
    for (auto& pt : points) {
        pt.norm_improvement = improvement_star > 0.0 ? pt.raw_improvement / improvement_star
                                                     : pt.raw_improvement;
        pt.norm_gain = gain_star > 0.0 ? pt.raw_gain / gain_star : pt.raw_gain;
    }
}

std::vector<ObjectivePoint> extract_front(const std::vector<ObjectivePoint>& points) {
    if (points.empty()) {
        throw std::invalid_argument("extract_front needs a nonempty point set");
    }
    std::vector<ObjectivePoint> sorted = points;
    std::sort(sorted.begin(), sorted.end(), [](const ObjectivePoint& a, const ObjectivePoint& b) {
        if (a.raw_gain != b.raw_gain) return a.raw_gain > b.raw_gain;
        if (a.raw_improvement != b.raw_improvement) return a.raw_improvement > b.raw_improvement;
        return a.chord < b.chord;
    });

    std::vector<ObjectivePoint> front;
    double record = -std::numeric_limits<double>::infinity();
    for (const auto& pt : sorted) {
        if (pt.raw_improvement > record) {
            record = pt.raw_improvement;
            front.push_back(pt);
        }
    }
    return front;
}

std::optional<Chord> knee(const std::vector<ObjectivePoint>& front, bool degenerate) {
    if (front.empty() || degenerate) return std::nullopt;
    const ObjectivePoint* best = nullptr;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const auto& pt : front) {
        const double di = 1.0 - pt.norm_improvement;
        const double dg = 1.0 - pt.norm_gain;
        const double dist = std::sqrt(di * di + dg * dg);
        if (dist < best_dist || (dist == best_dist && best && pt.chord < best->chord)) {
            best_dist = dist;
            best = &pt;
        }
    }
    return best->chord;
}

double coverage(const std::vector<ObjectivePoint>& full_front,
                const std::vector<Chord>& screened_candidates) {
    if (full_front.empty()) {
        throw std::invalid_argument("coverage needs a nonempty exhaustive front");
    }
    std::size_t hits = 0;
    for (const auto& pt : full_front) {
        if (std::binary_search(screened_candidates.begin(), screened_candidates.end(), pt.chord)) {
            ++hits;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(full_front.size());
}

double epsilon_plus(const std::vector<ObjectivePoint>& full_front,
                    const std::vector<ObjectivePoint>& screened_front) {
    if (full_front.empty() || screened_front.empty()) {
        throw std::invalid_argument("epsilon_plus needs two nonempty fronts");
    }
    double eps = 0.0;
    for (const auto& target : full_front) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& cand : screened_front) {
            const double gap = std::max({target.norm_improvement - cand.norm_improvement,
                                         target.norm_gain - cand.norm_gain, 0.0});
            best = std::min(best, gap);
        }
        eps = std::max(eps, best);
    }
    return eps;
}

double hypervolume(const std::vector<ObjectivePoint>& front) {
    std::vector<ObjectivePoint> sorted = front;
    std::sort(sorted.begin(), sorted.end(), [](const ObjectivePoint& a, const ObjectivePoint& b) {
        return a.norm_improvement < b.norm_improvement;
    });
    double area = 0.0;
    double prev_i = 0.0;
    for (const auto& pt : sorted) {
        area += (pt.norm_improvement - prev_i) * pt.norm_gain;
        prev_i = pt.norm_improvement;
    }
    return area;
}

double hypervolume_ratio(const std::vector<ObjectivePoint>& full_front,
                         const std::vector<ObjectivePoint>& screened_front) {
    const double full = hypervolume(full_front);
    if (full <= 0.0) {
        throw std::invalid_argument("hypervolume ratio undefined for a zero-volume full front");
    }
    return hypervolume(screened_front) / full;
}

ParetoAnalysis analyze_instance(const SpectralDecomposition& spec, const WeightedCycle& cycle,
                                double w, double tau) {
    ParetoAnalysis out;

    const auto chords = admissible_chords(cycle);
    out.all_points = evaluate_objectives(spec, cycle, chords, w);

    double gain_star = 0.0, improvement_star = 0.0;
    for (const auto& pt : out.all_points) {
        gain_star = std::max(gain_star, pt.raw_gain);
        improvement_star = std::max(improvement_star, pt.raw_improvement);
    }
    normalize_objectives(out.all_points, improvement_star, gain_star);
    out.degenerate = gain_star <= 0.0 || improvement_star <= 0.0;

    out.full.efficient = extract_front(out.all_points);
    out.full.gain_degenerate = gain_star <= 0.0;
    out.full.improvement_degenerate = improvement_star <= 0.0;
    out.full.knee = knee(out.full.efficient, out.degenerate);
    out.full.hypervolume = out.degenerate ? 0.0 : hypervolume(out.full.efficient);

    out.screened_candidates = screen(cycle, tau).pairs;
    std::vector<ObjectivePoint> screened_points;
    screened_points.reserve(out.screened_candidates.size());
    // Screened pairs are a subset of the admissible set, which is stored in
    // the same lexicographic order; reuse the evaluated points.
    std::size_t cursor = 0;
    for (const auto& pt : out.all_points) {
        if (cursor < out.screened_candidates.size() && pt.chord == out.screened_candidates[cursor]) {
            screened_points.push_back(pt);
            ++cursor;
        }
    }
    if (cursor != out.screened_candidates.size()) {
        throw std::logic_error("screened candidates are not a subset of the admissible set");
    }
    out.screened.efficient = extract_front(screened_points);
    out.screened.gain_degenerate = out.full.gain_degenerate;
    out.screened.improvement_degenerate = out.full.improvement_degenerate;
    out.screened.hypervolume = out.degenerate ? 0.0 : hypervolume(out.screened.efficient);

    out.coverage = coverage(out.full.efficient, out.screened_candidates);
    std::vector<Chord> screened_front_chords;
    screened_front_chords.reserve(out.screened.efficient.size());
    for (const auto& pt : out.screened.efficient) screened_front_chords.push_back(pt.chord);
    std::sort(screened_front_chords.begin(), screened_front_chords.end());
    out.front_coverage = coverage(out.full.efficient, screened_front_chords);
    out.epsilon_plus = epsilon_plus(out.full.efficient, out.screened.efficient);
    out.hv_ratio = out.degenerate ? 0.0 : out.screened.hypervolume / out.full.hypervolume;
    out.candidate_ratio =
        static_cast<double>(out.screened_candidates.size()) / static_cast<double>(chords.size());
    if (out.full.knee) {
        out.knee_captured = std::binary_search(out.screened_candidates.begin(),
                                               out.screened_candidates.end(), *out.full.knee);
    }
    return out;
}

} // namespace ringchord
