#ifndef CNBD_OPTIMALITY_HPP
#define CNBD_OPTIMALITY_HPP

#include <string>

#include "cnbd/information.hpp"
#include "cnbd/sequences.hpp"

namespace cnbd {

struct CriterionResult {
    double p = 1.0;        // criterion exponent, -1 <= p <= infinity
    double value = 0.0;
    bool singular = false;  // contrast rank < t-1
    std::string alias;      // "D", "A", "E", "trace-reciprocal" or empty
};

// Phi_p of a total-effect matrix, from its t-1 contrast-space eigenvalues:
//   Phi_p = ((1/(t-1)) sum lambda_i^-p)^(1/p), Phi_0 the geometric-mean
//   limit, Phi_inf = 1/lambda_min. Constant in p when the matrix is
//   completely symmetric.
CriterionResult phi_p(const InfoMatrix& c, double p);

enum class DesignClass { NoSelfNeighbor, Unrestricted };

struct OptimalityVerdict {
    bool completely_symmetric = false;
    Rat trace;
    Rat trace_bound;
    DesignClass class_kind = DesignClass::NoSelfNeighbor;
    bool bound_based = false;     // two-sided unrestricted verdicts compare
                                  // against a bound that is not always tight
    bool class_violation = false; // design breaks the class constraint
    bool conclusive = false;      // completely symmetric and trace == bound
};

// Trace criterion: a completely symmetric information matrix together with
// maximal trace settles optimality over the class.
//   NoSelfNeighbor: bound b(k-2)/2 resp. b(k-3)/3
//   Unrestricted:   bound b * (best per-block value)
OptimalityVerdict kiefer_verdict(const Design& d, EffectModel model, DesignClass cls);

struct EfficiencyResult {
    Rat value;                // tr(exact) / (b * optimal per-block value)
    std::string rounded2;     // two-decimal rendering
    double approximation = 0; // (k-2) / (2(k - sqrt(2k))), one-sided only
    bool has_approximation = false;
};

EfficiencyResult efficiency(const Design& d, EffectModel model);

// Efficiency of a neighbor-balanced design per block, without a concrete
// design: (k-2)/2 over max f, resp. (k-3)/3 over max f~.
Rat table_efficiency(int k, EffectModel model);

// All distinct relabelings of the optimal representative sequence, one block
// each. The result is completely symmetric by construction; for the
// one-sided model its exact information meets the unrestricted bound.
Design symmetric_design(int k, int t, EffectModel model);

}  // namespace cnbd

#endif
