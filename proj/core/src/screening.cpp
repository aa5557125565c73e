#include "ringchord/screening.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ringchord/rng.hpp"

namespace ringchord {

void ScreenConfig::validate(int n) const {
    if (!(tau >= 0.0 && tau < 1.0)) {
        throw std::invalid_argument("screening tolerance tau must lie in [0, 1)");
    }
    if (modes < 1 || modes > n - 1) {
        throw std::invalid_argument("mode count must satisfy 1 <= modes <= n-1");
    }
}

std::string to_string(CandidateSource source) {
    switch (source) {
        case CandidateSource::RBAPS: return "RBAPS";
        case CandidateSource::AW_RBAPS: return "AW-RBAPS";
        case CandidateSource::FULL: return "FULL";
        case CandidateSource::FIEDLER: return "FIEDLER";
        case CandidateSource::RANDOM: return "RANDOM";
    }
    return "?";
}

CandidateSet screen(const WeightedCycle& cycle, double tau) {
    if (tau < 0.0) {
        throw std::invalid_argument("screening tolerance tau must be nonnegative");
    }
    const int n = cycle.n();
    const auto prof = ResistanceProfile::from_cycle(cycle);
    const double S = prof.total;

    // Lifted prefix sums over two laps so every forward window from i is a
    // contiguous index range.
    std::vector<double> lifted(static_cast<std::size_t>(2 * n) + 1);
    lifted[0] = 0.0;
    for (int k = 0; k < 2 * n; ++k) {
        lifted[k + 1] = lifted[k] + prof.r[k % n];
    }

    std::set<Chord> pairs;
    auto add_pair = [&](int i, int k) {
        const int v = k % n;
        if (cycle.admissible(i, v)) pairs.insert(Chord(i, v));
    };
    auto in_window = [&](int i, int k) {
        return std::abs(2.0 * (lifted[k] - lifted[i]) - S) <= tau * S;
    };

    for (int i = 0; i < n; ++i) {
        const double target = lifted[i] + 0.5 * S;
        // First lifted index in {i+1, ..., i+n} with s~_k >= target.
        const auto begin = lifted.begin() + i + 1;
        const auto end = lifted.begin() + i + n + 1;
        const int j = static_cast<int>(std::lower_bound(begin, end, target) - lifted.begin());

        for (int k0 : {j - 1, j, j + 1}) {
            if (k0 < i + 1 || k0 > i + n - 1) continue;
            add_pair(i, k0);
            if (tau > 0.0) {
                // The window predicate is monotone along each direction, so
                // stopping at the first violation loses nothing.
                for (int k = k0 - 1; k >= i + 1 && in_window(i, k); --k) add_pair(i, k);
                for (int k = k0 + 1; k <= i + n - 1 && in_window(i, k); ++k) add_pair(i, k);
            }
        }
    }

    CandidateSet out;
    out.pairs.assign(pairs.begin(), pairs.end());
    out.source = tau > 0.0 ? CandidateSource::AW_RBAPS : CandidateSource::RBAPS;
    return out;
}

Chord fiedler_baseline(const SpectralDecomposition& spec, const WeightedCycle& cycle) {
    const int n = spec.n();
    const auto fiedler = spec.eigenvectors().col(1);

    int lo = 0, hi = 0;
    for (int i = 1; i < n; ++i) {
        if (fiedler(i) < fiedler(lo)) lo = i;
        if (fiedler(i) > fiedler(hi)) hi = i;
    }
    if (cycle.admissible(lo, hi)) return Chord(lo, hi);

    // Endpoints adjacent (or equal): fall back to the admissible maximizer
    // of the squared Fiedler gap.
    Chord best(0, 2);
    double best_gap = -1.0;
    for (int p = 0; p < n; ++p) {
        for (int q = p + 2; q < n; ++q) {
            if (p == 0 && q == n - 1) continue;
            const double diff = fiedler(p) - fiedler(q);
            const double gap = diff * diff;
            if (gap > best_gap) {
                best_gap = gap;
                best = Chord(p, q);
            }
        }
    }
    return best;
}

Chord random_baseline(const WeightedCycle& cycle, std::mt19937_64& rng) {
    const auto chords = admissible_chords(cycle);
    return chords[uniform_index(rng, chords.size())];
}

Chord select_screened(const WeightedCycle& cycle, const SpectralDecomposition& spec,
                      const ScreenConfig& cfg, double w) {
    cfg.validate(cycle.n());
    return select_best(screen(cycle, cfg.tau), [&](const Chord& c) {
        return lowfreq_gain(spec, c.p, c.q, w, cfg.modes);
    });
}

Chord select_best(const CandidateSet& candidates, const std::function<double(const Chord&)>& score) {
    if (candidates.pairs.empty()) {
        throw std::invalid_argument("select_best needs a nonempty candidate set");
    }
    // Candidates are kept sorted, so strict improvement leaves the
    // lexicographically smallest maximizer in place on ties.
    Chord best = candidates.pairs.front();
    double best_score = score(best);
    for (std::size_t i = 1; i < candidates.pairs.size(); ++i) {
        const double s = score(candidates.pairs[i]);
        if (s > best_score) {
            best_score = s;
            best = candidates.pairs[i];
        }
    }
    return best;
}

} // namespace ringchord
