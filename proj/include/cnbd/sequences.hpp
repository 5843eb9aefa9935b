#ifndef CNBD_SEQUENCES_HPP
#define CNBD_SEQUENCES_HPP

#include <vector>

#include "cnbd/information.hpp"
#include "cnbd/rational.hpp"

namespace cnbd {

// Largest per-block trace attainable by a sequence using exactly v distinct
// treatments, all occurrences of a treatment adjacent:
//   f(v) = -1 + k - v/2 - (2 - v/k) floor(k/v) + (v/k) floor(k/v)^2
Rat f_value(int k, int v);

// Two-sided analogue over compositions (v1 singles, v2 multiples). The
// all-binary point (v1=k, v2=0) is the limit value (k-3)/3.
Rat f_tilde_value(int k, int v1, int v2);

struct M1Maximizer {
    int v_star = 0;   // distinct treatments
    int v_minus = 0;  // treatments occurring n_minus times
    int v_plus = 0;   // treatments occurring n_plus times
    int n_minus = 0;  // floor(k / v_star)
    int n_plus = 0;   // n_minus + 1
};

struct M2Maximizer {
    int v1 = 0;                    // treatments occurring once
    int v2 = 0;                    // treatments occurring at least twice
    std::vector<int> run_lengths;  // ascending, one per multiple treatment
};

struct OptimalComposition {
    EffectModel model = EffectModel::M1;
    int k = 0;
    int t = 0;
    Rat value;                       // the maximum of f or f~
    double sqrt_bound = 0.0;         // k - sqrt(2k)
    std::vector<M1Maximizer> m1;     // all ties, ascending v_star
    std::vector<M2Maximizer> m2;     // all ties, lexicographic (v1, v2)
};

// All maximizing compositions for blocks of size k with at most t treatments.
// One-sided needs k >= 3, two-sided k >= 4; t >= 2 always.
OptimalComposition optimal_composition(int k, int t, EffectModel model);

std::vector<int> representative_sequence(const M1Maximizer& m, int k);
std::vector<int> representative_sequence(const M2Maximizer& m, int k);
// First maximizer of the composition.
std::vector<int> representative_sequence(const OptimalComposition& c);

struct BruteForceResult {
    Rat max_value;
    std::vector<std::vector<int>> maximizers;  // restricted growth strings, sorted
};

// Exhaustive scan of every restricted growth string of length k over at most
// t symbols. Independent of the f/f~ route. Enumeration capped at k <= 12.
BruteForceResult brute_force_best(int k, int t, EffectModel model);

// b * (value of the optimal composition).
Rat upper_bound_trace(int b, int k, int t, EffectModel model);

}  // namespace cnbd

#endif
