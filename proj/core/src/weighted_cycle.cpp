#include "ringchord/weighted_cycle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ringchord {

namespace {

void check_vertex(int v, int n, const char* name) {
    if (v < 0 || v >= n) {
        throw std::invalid_argument(std::string(name) + " index " + std::to_string(v) +
                                    " out of range [0, " + std::to_string(n) + ")");
    }
}

} // namespace

WeightedCycle::WeightedCycle(int n, std::vector<double> conductances)
    : n_(n), conductances_(std::move(conductances)) {
    if (n_ < 4) {
        throw std::invalid_argument("weighted cycle needs n >= 4, got n = " + std::to_string(n_));
    }
    if (static_cast<int>(conductances_.size()) != n_) {
        throw std::invalid_argument("expected " + std::to_string(n_) + " conductances, got " +
                                    std::to_string(conductances_.size()));
    }
    for (double c : conductances_) {
        if (!(c > 0.0) || !std::isfinite(c)) {
            throw std::invalid_argument("conductances must be positive and finite");
        }
    }
}

bool WeightedCycle::admissible(int p, int q) const {
    if (p == q) return false;
    const int d = std::abs(p - q);
    return std::min(d, n_ - d) >= 2;
}

ResistanceProfile ResistanceProfile::from_cycle(const WeightedCycle& cycle) {
    const int n = cycle.n();
    ResistanceProfile prof;
    prof.r.resize(static_cast<std::size_t>(n));
    prof.s.resize(static_cast<std::size_t>(n) + 1);
    prof.s[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        prof.r[i] = 1.0 / cycle.conductance(i);
        prof.s[i + 1] = prof.s[i] + prof.r[i];
        prof.r_max = std::max(prof.r_max, prof.r[i]);
    }
    prof.total = prof.s[static_cast<std::size_t>(n)];
    prof.r_bar = prof.total / n;
    return prof;
}

double arc_resistance(const ResistanceProfile& prof, int a, int b) {
    const int n = static_cast<int>(prof.r.size());
    check_vertex(a, n, "vertex a");
    check_vertex(b, n, "vertex b");
    if (a == b) return 0.0;
    if (a < b) return prof.s[b] - prof.s[a];
    return prof.total - (prof.s[a] - prof.s[b]);
}

double arc_resistance(const WeightedCycle& cycle, int a, int b) {
    return arc_resistance(ResistanceProfile::from_cycle(cycle), a, b);
}

double pair_resistance(const ResistanceProfile& prof, int n, int a, int b) {
    check_vertex(a, n, "vertex a");
    check_vertex(b, n, "vertex b");
    if (a == b) {
        throw std::invalid_argument("pair_resistance requires distinct vertices");
    }
    const double forward = arc_resistance(prof, a, b);
    return forward * (prof.total - forward) / prof.total;
}

double pair_resistance(const WeightedCycle& cycle, int a, int b) {
    return pair_resistance(ResistanceProfile::from_cycle(cycle), cycle.n(), a, b);
}

double kirchhoff_index_closed_form(const WeightedCycle& cycle) {
    const auto prof = ResistanceProfile::from_cycle(cycle);
    const int n = cycle.n();
    const double S = prof.total;
    double acc = 0.0;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const double d = prof.s[v] - prof.s[u];
            acc += d * (S - d);
        }
    }
    return acc / S;
}

DiscrepancyReport discrepancy(const WeightedCycle& cycle) {
    const auto prof = ResistanceProfile::from_cycle(cycle);
    const int n = cycle.n();
    const double S = prof.total;

    // A_{p,l} = s~_{p+l} - s~_p on the lifted (doubled) prefix array.
    std::vector<double> lifted(static_cast<std::size_t>(2 * n) + 1);
    lifted[0] = 0.0;
    for (int k = 0; k < 2 * n; ++k) {
        lifted[k + 1] = lifted[k] + prof.r[k % n];
    }

    double max_dev = 0.0;
    for (int p = 0; p < n; ++p) {
        for (int len = 1; len <= n; ++len) {
            const double window = lifted[p + len] - lifted[p];
            max_dev = std::max(max_dev, std::abs(window - static_cast<double>(len) / n * S));
        }
    }

    DiscrepancyReport rep;
    rep.max_deviation = max_dev;
    rep.delta = max_dev / S;
    rep.eta = prof.r_max / S;
    rep.delta_n = rep.delta + rep.eta;
    return rep;
}

std::vector<Chord> admissible_chords(const WeightedCycle& cycle) {
    const int n = cycle.n();
    std::vector<Chord> chords;
    chords.reserve(static_cast<std::size_t>(n) * (n - 3) / 2);
    for (int p = 0; p < n; ++p) {
        for (int q = p + 2; q < n; ++q) {
            if (p == 0 && q == n - 1) continue; // cycle edge, not a chord
            chords.emplace_back(p, q);
        }
    }
    return chords;
}

std::string to_json(const WeightedCycle& cycle) {
    nlohmann::json j;
    j["n"] = cycle.n();
    j["conductances"] = cycle.conductances();
    return j.dump(2);
}

WeightedCycle cycle_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (!j.contains("n") || !j.contains("conductances")) {
        throw std::invalid_argument("cycle JSON must contain \"n\" and \"conductances\"");
    }
    return WeightedCycle(j.at("n").get<int>(), j.at("conductances").get<std::vector<double>>());
}

WeightedCycle cycle_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open cycle file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return cycle_from_json(buf.str());
}

} // namespace ringchord
