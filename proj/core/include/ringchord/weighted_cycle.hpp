#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ringchord {

/// Unordered nonadjacent vertex pair, stored canonically as (min, max).
struct Chord {
    int p = 0;
    int q = 0;

    Chord() = default;
    Chord(int a, int b) : p(a < b ? a : b), q(a < b ? b : a) {}

    friend bool operator==(const Chord&, const Chord&) = default;
    friend auto operator<=>(const Chord& a, const Chord& b) = default;
};

/// Ring graph on n >= 4 vertices with strictly positive edge conductances;
/// edge i joins v_i and v_{i+1 mod n}.
class WeightedCycle {
public:
    WeightedCycle(int n, std::vector<double> conductances);

    int n() const { return n_; }
    const std::vector<double>& conductances() const { return conductances_; }
    double conductance(int edge) const { return conductances_[static_cast<std::size_t>(edge)]; }

    /// True when min(|p-q|, n-|p-q|) >= 2, i.e. {p,q} is a valid chord.
    bool admissible(int p, int q) const;

private:
    int n_;
    std::vector<double> conductances_;
};

/// Per-edge resistances r_i = 1/c_i with prefix sums s_0 = 0, s_i = sum of
/// r_0..r_{i-1}, total S = s_n. The prefix array makes every directed arc
/// resistance a two-term difference.
struct ResistanceProfile {
    std::vector<double> r;      ///< edge resistances, size n
    std::vector<double> s;      ///< prefix sums, size n+1, s[n] == total
    double total = 0.0;         ///< S
    double r_max = 0.0;
    double r_bar = 0.0;         ///< mean edge resistance S/n

    static ResistanceProfile from_cycle(const WeightedCycle& cycle);
};

/// Deviation of the cumulative-resistance coordinates from uniform spacing.
struct DiscrepancyReport {
    double max_deviation = 0.0;  ///< D: max over (p, l) of |A_{p,l} - l S / n|
    double delta = 0.0;          ///< D / S
    double eta = 0.0;            ///< r_max / S
    double delta_n = 0.0;        ///< delta + eta
};

/// Directed arc resistance d(a,b): resistance of the a -> b arc walked in
/// increasing index order. d(a,a) = 0 and d(a,b) + d(b,a) = S.
double arc_resistance(const WeightedCycle& cycle, int a, int b);
double arc_resistance(const ResistanceProfile& prof, int a, int b);

/// Effective resistance between two distinct vertices of the bare cycle:
/// the two complementary arcs in parallel, d(a,b) d(b,a) / S.
/// a == b is an input error; diagonal queries indicate a caller bug.
double pair_resistance(const WeightedCycle& cycle, int a, int b);
double pair_resistance(const ResistanceProfile& prof, int n, int a, int b);

/// Kirchhoff index of the cycle by the closed-form pair sum
/// (1/S) * sum_{u<v} d(u,v) (S - d(u,v)).
double kirchhoff_index_closed_form(const WeightedCycle& cycle);

/// Discrepancy measures over all cyclic windows A_{p,l}, 0 <= p < n,
/// 1 <= l <= n. O(n^2); fine at desk scale.
DiscrepancyReport discrepancy(const WeightedCycle& cycle);

/// All admissible chords {p,q} in lexicographic order; n(n-3)/2 of them.
std::vector<Chord> admissible_chords(const WeightedCycle& cycle);

/// JSON serialization: {"n": int, "conductances": [..]}. Extra keys (e.g.
/// a "meta" object) are ignored on input. Numbers round-trip exactly.
std::string to_json(const WeightedCycle& cycle);
WeightedCycle cycle_from_json(const std::string& text);
WeightedCycle cycle_from_json_file(const std::string& path);

} // namespace ringchord
