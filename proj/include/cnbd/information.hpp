#ifndef CNBD_INFORMATION_HPP
#define CNBD_INFORMATION_HPP

#include <vector>

#include "cnbd/designs.hpp"
#include "cnbd/matrixkit.hpp"

namespace cnbd {

// M1: block + treatment + left-neighbor effects (total effect tau + lambda).
// M2: adds right-neighbor effects (total effect tau + lambda + rho).
enum class EffectModel { M1, M2 };

inline int component_count(EffectModel m) { return m == EffectModel::M1 ? 2 : 3; }
inline const char* model_name(EffectModel m) { return m == EffectModel::M1 ? "m1" : "m2"; }

enum class InfoTag { Joint, TotalExact, TotalUpper };

struct InfoMatrix {
    RatMatrix m;  // order t for total tags, order 2t/3t for Joint
    InfoTag tag = InfoTag::Joint;
    EffectModel model = EffectModel::M1;
    int t = 0;
};

// Information matrix of the stacked treatment and neighbor effects:
// A' pr_perp(B) A with A = [T|L] or [T|L|R]. Order 2t or 3t.
InfoMatrix info_joint(const Design& d, EffectModel model);

// Exact information matrix of the total effects, with block effects and the
// within-sum nuisance direction both projected out. Order t, row sums zero.
InfoMatrix info_total_exact(const Design& d, EffectModel model);

// The averaging upper bound (1/m^2) K' C[alpha] K. Coincides with the exact
// matrix exactly when C[alpha] commutes with the averaging projector.
InfoMatrix info_total_upper(const Design& d, EffectModel model);

// Per-block summands of the upper bound, built with Q_k in place of
// pr_perp(B); they sum to info_total_upper.
std::vector<RatMatrix> info_total_upper_blocks(const Design& d, EffectModel model);

// Closed forms for neighbor-balanced designs:
//   one-sided, 3 <= k <= t:  b(k-2) / (2(t-1)) * Q_t
//   two-sided, 4 <= k <= t:  b(k-3) / (3(t-1)) * Q_t
InfoMatrix closed_form_cnbd(int t, int b, int k, EffectModel model);

// Trace of the per-block bound from the circular occupancy counts:
//   c  = (1/2) (k - (2/k) sum n_i^2 + sum m_i)
//   c~ = (1/9) (3k - (9/k) sum n_i^2 + 4 sum m_i + 2 sum p_i)
Rat c_value(const BlockCounts& counts, int k, EffectModel model);
Rat c_value(const std::vector<int>& seq, EffectModel model);

// Equality condition for exact == upper: C[alpha] commutes with the
// averaging projector (1/m) J_m (x) I_t.
bool commutes_with_averaging(const InfoMatrix& joint);

// Sum of the m x m grid of t x t blocks, scaled by 1/m^2.
InfoMatrix compress_to_total(const InfoMatrix& joint);

// Dimension of the null space of a total-effect matrix beyond span(1).
int extra_null_dimension(const InfoMatrix& total);

}  // namespace cnbd

#endif
