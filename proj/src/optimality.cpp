#include "cnbd/optimality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace cnbd {

CriterionResult phi_p(const InfoMatrix& c, double p) {
    if (c.tag == InfoTag::Joint) throw DesignError("phi_p expects a total-effect matrix");
    CriterionResult out;
    out.p = p;
    if (p == 0.0)
        out.alias = "D";
    else if (p == 1.0)
        out.alias = "A";
    else if (std::isinf(p))
        out.alias = "E";
    else if (p == -1.0)
        out.alias = "trace-reciprocal";

    int t = c.t;
    std::vector<double> ev = eig_sym(to_dmatrix(c.m));
    if (t < 2) {
        out.singular = true;
        return out;
    }
    // drop the known null direction along 1
    size_t drop = 0;
    for (size_t i = 1; i < ev.size(); ++i)
        if (std::fabs(ev[i]) < std::fabs(ev[drop])) drop = i;
    std::vector<double> lam;
    for (size_t i = 0; i < ev.size(); ++i)
        if (i != drop) lam.push_back(ev[i]);
    double maxabs = 0.0;
    for (double l : lam) maxabs = std::max(maxabs, std::fabs(l));
    for (double& l : lam) {
        if (l <= 1e-10 * maxabs) {
            out.singular = true;
            l = 0.0;
        }
    }
    int n = static_cast<int>(lam.size());
    if (out.singular && p > -1.0) {
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    if (std::isinf(p)) {
        out.value = 1.0 / *std::min_element(lam.begin(), lam.end());
    } else if (p == 0.0) {
        double mean_log = 0.0;
        for (double l : lam) mean_log += std::log(l);
        out.value = std::exp(-mean_log / n);
    } else {
        double s = 0.0;
        for (double l : lam) s += std::pow(l, -p);
        out.value = std::pow(s / n, 1.0 / p);
    }
    return out;
}

OptimalityVerdict kiefer_verdict(const Design& d, EffectModel model, DesignClass cls) {
    OptimalityVerdict out;
    out.class_kind = cls;
    InfoMatrix exact = info_total_exact(d, model);
    out.completely_symmetric = complete_symmetry(exact.m).is_cs;
    out.trace = exact.m.trace();

    if (cls == DesignClass::NoSelfNeighbor) {
        ClassificationReport rep = classify(d);
        bool in_class = model == EffectModel::M1 ? rep.no_self_neighbor_d1
                                                 : rep.no_self_neighbor_d1 && rep.no_self_neighbor_d2;
        out.class_violation = !in_class;
        out.trace_bound = model == EffectModel::M1 ? make_rat(static_cast<long long>(d.b) * (d.k - 2), 2)
                                                   : make_rat(static_cast<long long>(d.b) * (d.k - 3), 3);
    } else {
        out.trace_bound = upper_bound_trace(d.b, d.k, d.t, model);
        out.bound_based = model == EffectModel::M2;
    }
    out.conclusive = out.completely_symmetric && !out.class_violation && out.trace == out.trace_bound;
    return out;
}

EfficiencyResult efficiency(const Design& d, EffectModel model) {
    EfficiencyResult out;
    Rat trace = info_total_exact(d, model).m.trace();
    Rat denom = upper_bound_trace(d.b, d.k, d.t, model);
    if (denom <= 0) throw DesignError("optimal trace bound is not positive");
    out.value = trace / denom;
    out.rounded2 = format_decimal(out.value, 2);
    if (model == EffectModel::M1 && d.k >= 3) {
        out.approximation = (d.k - 2) / (2.0 * (d.k - std::sqrt(2.0 * d.k)));
        out.has_approximation = true;
    }
    return out;
}

Rat table_efficiency(int k, EffectModel model) {
    OptimalComposition comp = optimal_composition(k, k, model);
    Rat numer = model == EffectModel::M1 ? make_rat(k - 2, 2) : make_rat(k - 3, 3);
    return numer / comp.value;
}

Design symmetric_design(int k, int t, EffectModel model) {
    // the composition search is capped by t, so rank the classes without
    // that cap first and demand the best one be realizable
    OptimalComposition comp = optimal_composition(k, k, model);
    std::vector<int> rep = representative_sequence(comp);
    int v = 0;
    for (int x : rep) v = std::max(v, x);
    if (t < v)
        throw DesignError("symmetric design needs t >= " + std::to_string(v) + " treatments (got t=" +
                          std::to_string(t) + ")");
    long long count = 1;
    for (int i = 0; i < v; ++i) {
        count *= (t - i);
        if (count > 100000) throw DesignError("symmetric design would exceed 100000 blocks");
    }

    // every injective relabeling of the representative, one block each
    std::set<std::vector<int>> blocks;
    std::vector<int> image(v, 0);
    std::vector<bool> used(t + 1, false);
    auto emit = [&]() {
        std::vector<int> row(rep.size());
        for (size_t j = 0; j < rep.size(); ++j) row[j] = image[rep[j] - 1];
        blocks.insert(std::move(row));
    };
    // iterative selection of ordered injections {1..v} -> {1..t}
    std::vector<int> choice(v, 0);
    int depth = 0;
    while (depth >= 0) {
        if (depth == v) {
            emit();
            --depth;
            continue;
        }
        if (choice[depth] != 0) used[choice[depth]] = false;
        int next = choice[depth] + 1;
        while (next <= t && used[next]) ++next;
        if (next > t) {
            choice[depth] = 0;
            --depth;
            continue;
        }
        choice[depth] = next;
        used[next] = true;
        image[depth] = next;
        ++depth;
    }

    return make_design(t, std::vector<std::vector<int>>(blocks.begin(), blocks.end()));
}

}  // namespace cnbd
