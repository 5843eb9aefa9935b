// Acceptance suite: every check below runs at fixed tolerances and prints
// one PASS/FAIL line. Run with a criterion number to run just that one.

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cnbd/estimation.hpp"
#include "cnbd/optimality.hpp"

using namespace cnbd;

#ifndef FIXTURES_DIR
#define FIXTURES_DIR "fixtures"
#endif

namespace {

struct Criterion {
    int number;
    std::string title;
    std::function<bool(std::string&)> check;
};

Design fixture(const char* name) { return parse_design_file(std::string(FIXTURES_DIR) + name); }

bool check_table1(std::string& detail) {
    struct Row {
        int k, v, vm, vp, nm, np;
    };
    const Row want[] = {{3, 3, 3, 0, 1, 2},   {4, 2, 2, 0, 2, 3},   {4, 3, 2, 1, 1, 2},  {4, 4, 4, 0, 1, 2},
                        {5, 3, 1, 2, 1, 2},   {6, 3, 3, 0, 2, 3},   {7, 4, 1, 3, 1, 2},  {8, 4, 4, 0, 2, 3},
                        {9, 4, 3, 1, 2, 3},   {10, 5, 5, 0, 2, 3},  {11, 5, 4, 1, 2, 3}, {12, 4, 4, 0, 3, 4},
                        {12, 5, 3, 2, 2, 3},  {12, 6, 6, 0, 2, 3},  {13, 5, 2, 3, 2, 3}, {14, 5, 1, 4, 2, 3},
                        {15, 5, 5, 0, 3, 4},  {16, 5, 4, 1, 3, 4},  {16, 6, 2, 4, 2, 3}};
    std::vector<Row> got;
    for (int k = 3; k <= 16; ++k) {
        OptimalComposition c = optimal_composition(k, k, EffectModel::M1);
        for (const M1Maximizer& m : c.m1) got.push_back({k, m.v_star, m.v_minus, m.v_plus, m.n_minus, m.n_plus});
    }
    if (got.size() != std::size(want)) {
        detail = "expected 19 columns, got " + std::to_string(got.size());
        return false;
    }
    for (size_t i = 0; i < got.size(); ++i) {
        const Row& a = got[i];
        const Row& w = want[i];
        if (a.k != w.k || a.v != w.v || a.vm != w.vm || a.vp != w.vp || a.nm != w.nm || a.np != w.np) {
            detail = "column " + std::to_string(i + 1) + " (k=" + std::to_string(w.k) + ") differs";
            return false;
        }
    }
    detail = "19 columns, ties at k=4, 12, 16";
    return true;
}

bool check_efficiency_row(EffectModel model, int k_lo, const std::vector<int>& cents, std::string& detail) {
    std::ostringstream mismatches;
    bool ok = true;
    for (size_t i = 0; i < cents.size(); ++i) {
        int k = k_lo + static_cast<int>(i);
        Rat eff = table_efficiency(k, model);
        Rat rounded = round_decimal(eff, 2);
        if (rounded != make_rat(cents[i], 100)) {
            ok = false;
            mismatches << (mismatches.str().empty() ? "" : "; ") << "k=" << k << ": computed " << to_string(eff)
                       << " -> " << format_decimal(eff, 2) << ", reference row says "
                       << format_decimal(make_rat(cents[i], 100), 2);
        }
    }
    detail = ok ? std::to_string(cents.size()) + " entries" : mismatches.str();
    return ok;
}

bool check_table2(std::string& detail) {
    return check_efficiency_row(EffectModel::M1, 3, {100, 100, 88, 80, 80, 75, 75, 73, 72, 71, 70, 69, 68}, detail);
}

bool check_table3(std::string& detail) {
    bool ok = check_efficiency_row(EffectModel::M2, 4, {100, 88, 75, 70, 65, 60, 59, 57, 55, 54, 53}, detail);
    if (!ok)
        detail += " (the exhaustive sequence enumeration confirms the computed maximum; see the k=11 note in the"
                  " README)";
    return ok;
}

bool check_fixture_classification(std::string& detail) {
    for (const char* name : {"/cnbd2_t5.design", "/cnbd2_t4.design"}) {
        ClassificationReport r = classify(fixture(name));
        if (!r.is_cnbd2 || r.ell != 1) {
            detail = std::string(name) + " did not classify as CNBD2 with unit pair count";
            return false;
        }
    }
    detail = "both fixtures CNBD2 with ℓ = 1";
    return true;
}

bool check_closed_forms(std::string& detail) {
    Design d1 = fixture("/cnbd2_t5.design");
    Design d2 = fixture("/cnbd2_t4.design");
    if (info_total_exact(d1, EffectModel::M1).m != closed_form_cnbd(5, 4, 5, EffectModel::M1).m) {
        detail = "t=5 fixture, one-sided: exact != closed form";
        return false;
    }
    if (info_total_exact(d1, EffectModel::M2).m != closed_form_cnbd(5, 4, 5, EffectModel::M2).m) {
        detail = "t=5 fixture, two-sided: exact != closed form";
        return false;
    }
    if (info_total_exact(d2, EffectModel::M1).m != closed_form_cnbd(4, 4, 3, EffectModel::M1).m) {
        detail = "t=4 fixture, one-sided: exact != closed form";
        return false;
    }
    detail = "exact rational equality on both fixtures (two-sided on the t=5 fixture; k=3 has no two-sided form)";
    return true;
}

bool check_oracle(std::string& detail) {
    for (int k = 3; k <= 10; ++k) {
        if (brute_force_best(k, k, EffectModel::M1).max_value != optimal_composition(k, k, EffectModel::M1).value) {
            detail = "one-sided mismatch at k=" + std::to_string(k);
            return false;
        }
    }
    for (int k = 4; k <= 9; ++k) {
        if (brute_force_best(k, k, EffectModel::M2).max_value != optimal_composition(k, k, EffectModel::M2).value) {
            detail = "two-sided mismatch at k=" + std::to_string(k);
            return false;
        }
    }
    detail = "exhaustive enumeration equals the formula maxima, k <= 10 one-sided and k <= 9 two-sided";
    return true;
}

bool check_bound_tightness(std::string& detail) {
    for (int k = 3; k <= 16; ++k) {
        Rat best = optimal_composition(k, k, EffectModel::M1).value;
        double bound = k - std::sqrt(2.0 * k);
        double gap = bound - to_double(best);
        if (k == 8) {
            if (best != 4 || std::fabs(gap) > 1e-9) {
                detail = "k=8 should meet the ceiling exactly at 4";
                return false;
            }
        } else if (gap <= 1e-9) {
            detail = "k=" + std::to_string(k) + " should be strictly below the ceiling";
            return false;
        }
    }
    detail = "equality exactly at k=8, strict elsewhere in 3..16";
    return true;
}

bool check_equality_characterization(std::string& detail) {
    Design balanced = fixture("/cnbd2_t5.design");
    if (!commutes_with_averaging(info_joint(balanced, EffectModel::M1))) {
        detail = "balanced fixture: commutation should hold";
        return false;
    }
    if (info_total_upper(balanced, EffectModel::M1).m != info_total_exact(balanced, EffectModel::M1).m) {
        detail = "balanced fixture: bound should equal the exact matrix";
        return false;
    }
    Design self = fixture("/selfneighbor_t5.design");
    if (commutes_with_averaging(info_joint(self, EffectModel::M1))) {
        detail = "self-neighbor fixture: commutation should fail";
        return false;
    }
    RatMatrix gap = info_total_upper(self, EffectModel::M1).m - info_total_exact(self, EffectModel::M1).m;
    if (gap.is_zero() || !is_psd(gap, 1e-9)) {
        detail = "self-neighbor fixture: bound should strictly dominate";
        return false;
    }
    detail = "equality + commutation on the balanced fixture; strict PSD gap + failed commutation on the other";
    return true;
}

bool check_phi_p_constancy(std::string& detail) {
    const double inf = std::numeric_limits<double>::infinity();
    Design d1 = fixture("/cnbd2_t5.design");
    for (EffectModel model : {EffectModel::M1, EffectModel::M2}) {
        InfoMatrix c = info_total_exact(d1, model);
        double base = phi_p(c, 1.0).value;
        for (double p : {-1.0, 0.0, 0.5, 1.0, 2.0, 10.0, inf}) {
            CriterionResult r = phi_p(c, p);
            if (r.singular || std::fabs(r.value - base) > 1e-9 * std::fabs(base)) {
                detail = "phi_p varies with p on a completely symmetric matrix";
                return false;
            }
        }
    }
    detail = "constant across p in {-1, 0, 1/2, 1, 2, 10, inf} within 1e-9 relative";
    return true;
}

bool check_monte_carlo(std::string& detail) {
    Design d = fixture("/cnbd2_t5.design");
    std::vector<double> h{1, -1, 0, 0, 0};

    // independent theoretical values: (a Q)+ = a^-1 Q, h'Qh = 2
    Rat want_m1 = Rat(2) / make_rat(3, 2);  // 4/3
    Rat want_m2 = Rat(2) / make_rat(2, 3);  // 3
    MonteCarloResult r1 = monte_carlo_check(d, EffectModel::M1, h, 1.0, 20000, 20240817);
    if (std::fabs(r1.theoretical_variance - to_double(want_m1)) > 1e-12) {
        detail = "one-sided theoretical variance should be 4/3";
        return false;
    }
    MonteCarloResult r2 = monte_carlo_check(d, EffectModel::M2, h, 1.0, 20000, 20240817);
    if (std::fabs(r2.theoretical_variance - to_double(want_m2)) > 1e-12) {
        detail = "two-sided theoretical variance should be 3";
        return false;
    }
    if (r1.ratio < 0.95 || r1.ratio > 1.05 || r2.ratio < 0.95 || r2.ratio > 1.05) {
        std::ostringstream s;
        s << "variance ratios " << r1.ratio << ", " << r2.ratio << " outside [0.95, 1.05]";
        detail = s.str();
        return false;
    }
    std::ostringstream s;
    s.precision(4);
    s << "N=20000 ratios " << r1.ratio << " (theory 4/3) and " << r2.ratio << " (theory 3)";
    detail = s.str();
    return true;
}

bool check_symmetric_design(std::string& detail) {
    Design d = symmetric_design(5, 5, EffectModel::M1);
    if (d.b != 60) {
        detail = "expected 60 blocks, got " + std::to_string(d.b);
        return false;
    }
    InfoMatrix exact = info_total_exact(d, EffectModel::M1);
    if (!complete_symmetry(exact.m).is_cs) {
        detail = "information matrix is not completely symmetric";
        return false;
    }
    if (exact.m.trace() != 102) {
        detail = "trace should be 102 exactly, got " + to_string(exact.m.trace());
        return false;
    }
    OptimalityVerdict v = kiefer_verdict(d, EffectModel::M1, DesignClass::Unrestricted);
    if (!v.conclusive) {
        detail = "unrestricted verdict should be conclusive";
        return false;
    }
    detail = "60 blocks, completely symmetric, trace 102, conclusive unrestricted verdict";
    return true;
}

bool check_small_k_unrestricted(std::string& detail) {
    Design k3 = fixture("/cnbd2_t4.design");
    OptimalityVerdict v3 = kiefer_verdict(k3, EffectModel::M1, DesignClass::Unrestricted);
    Design k4 = fixture("/cnbd_k4_t5.design");
    OptimalityVerdict v4 = kiefer_verdict(k4, EffectModel::M1, DesignClass::Unrestricted);
    if (!v3.conclusive || !v4.conclusive) {
        detail = "k=3 and k=4 balanced designs should be unrestricted-conclusive";
        return false;
    }
    detail = "k=3 (trace " + to_string(v3.trace) + ") and k=4 (trace " + to_string(v4.trace) +
             ") conclusive without class restriction";
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> criteria = {
        {1, "reference table 1: optimal compositions for k = 3..16", check_table1},
        {2, "reference table 2: one-sided efficiencies for k = 3..15", check_table2},
        {3, "reference table 3: two-sided efficiency bounds for k = 4..14", check_table3},
        {4, "bundled fixtures classify as CNBD2 with unit pair count", check_fixture_classification},
        {5, "exact information equals the closed forms on the fixtures", check_closed_forms},
        {6, "exhaustive sequence enumeration matches the formula maxima", check_oracle},
        {7, "per-block ceiling k - sqrt(2k): equality only at k = 8", check_bound_tightness},
        {8, "averaging bound equality holds iff commutation holds", check_equality_characterization},
        {9, "phi_p constant on completely symmetric information", check_phi_p_constancy},
        {10, "simulated variance matches pseudoinverse theory", check_monte_carlo},
        {11, "sixty-block symmetric design: trace 102, conclusive", check_symmetric_design},
        {12, "k = 3 and k = 4 balanced designs optimal without restriction", check_small_k_unrestricted},
    };

    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (only != 0 && c.number != only) continue;
        std::string detail;
        bool ok = false;
        try {
            ok = c.check(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("%s %2d  %s", ok ? "PASS" : "FAIL", c.number, c.title.c_str());
        if (!detail.empty()) std::printf("  [%s]", detail.c_str());
        std::printf("\n");
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
