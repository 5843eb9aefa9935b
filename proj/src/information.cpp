#include "cnbd/information.hpp"

#include <stdexcept>

namespace cnbd {

namespace {

RatMatrix stack_columns(const IncidenceSet& inc, EffectModel model) {
    int n = inc.T.rows();
    int t = inc.T.cols();
    int m = component_count(model);
    RatMatrix a(n, m * t);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < t; ++j) {
            a(i, j) = inc.T(i, j);
            a(i, t + j) = inc.L(i, j);
            if (m == 3) a(i, 2 * t + j) = inc.R(i, j);
        }
    }
    return a;
}

// (1/m) J_m (x) I_t
RatMatrix averaging_projector(int m, int t) {
    RatMatrix p(m * t, m * t);
    Rat w = make_rat(1, m);
    for (int g = 0; g < m; ++g)
        for (int h = 0; h < m; ++h)
            for (int i = 0; i < t; ++i) p(g * t + i, h * t + i) = w;
    return p;
}

}  // namespace

InfoMatrix info_joint(const Design& d, EffectModel model) {
    IncidenceSet inc = incidence_matrices(d);
    RatMatrix a = stack_columns(inc, model);
    RatMatrix bta = inc.B.transpose() * a;
    RatMatrix c = a.transpose() * a - make_rat(1, d.k) * (bta.transpose() * bta);
    return InfoMatrix{std::move(c), InfoTag::Joint, model, d.t};
}

InfoMatrix compress_to_total(const InfoMatrix& joint) {
    int t = joint.t;
    int m = component_count(joint.model);
    RatMatrix out(t, t);
    for (int g = 0; g < m; ++g)
        for (int h = 0; h < m; ++h)
            for (int i = 0; i < t; ++i)
                for (int j = 0; j < t; ++j) out(i, j) += joint.m(g * t + i, h * t + j);
    out = make_rat(1, m * m) * out;
    return InfoMatrix{std::move(out), InfoTag::TotalUpper, joint.model, t};
}

InfoMatrix info_total_upper(const Design& d, EffectModel model) {
    return compress_to_total(info_joint(d, model));
}

InfoMatrix info_total_exact(const Design& d, EffectModel model) {
    if (d.k < 2) throw DesignError("total-effect information requires k >= 2");
    InfoMatrix joint = info_joint(d, model);
    int t = d.t;
    int m = component_count(model);
    // Residual direction within the effect stack: M = I - (1/m) J_m (x) I_t.
    // The exact matrix projects A*M out along with the blocks:
    //   C = (1/m^2) K' (C_a - C_a M (M C_a M)+ M C_a) K.
    RatMatrix mm = RatMatrix::identity(m * t) - averaging_projector(m, t);
    const RatMatrix& ca = joint.m;
    RatMatrix cam = ca * mm;
    RatMatrix core = cam * pinv(mm * ca * mm) * cam.transpose();
    InfoMatrix out = compress_to_total(InfoMatrix{ca - core, InfoTag::Joint, model, t});
    out.tag = InfoTag::TotalExact;
    return out;
}

std::vector<RatMatrix> info_total_upper_blocks(const Design& d, EffectModel model) {
    std::vector<RatMatrix> out;
    out.reserve(d.b);
    RatMatrix qk = q_matrix(d.k);
    for (int u = 0; u < d.b; ++u) {
        RatMatrix t(d.k, d.t), l(d.k, d.t), r(d.k, d.t);
        for (int j = 1; j <= d.k; ++j) {
            t(j - 1, d.at(u, j) - 1) = 1;
            l(j - 1, d.at(u, j - 1) - 1) = 1;
            r(j - 1, d.at(u, j + 1) - 1) = 1;
        }
        RatMatrix tt = t.transpose() * t;
        RatMatrix tl = t.transpose() * l;
        RatMatrix tqt = t.transpose() * qk * t;
        if (model == EffectModel::M1) {
            out.push_back(make_rat(1, 4) * (Rat(4) * tqt + tl + tl.transpose() - Rat(2) * tt));
        } else {
            RatMatrix lr = l.transpose() * r;
            out.push_back(make_rat(1, 9) *
                          (Rat(9) * tqt + Rat(2) * (tl + tl.transpose()) + lr + lr.transpose() - Rat(6) * tt));
        }
    }
    return out;
}

InfoMatrix closed_form_cnbd(int t, int b, int k, EffectModel model) {
    if (t < 2) throw DesignError("closed form requires t >= 2");
    if (b < 1) throw DesignError("closed form requires b >= 1");
    if (model == EffectModel::M1) {
        if (k < 3 || k > t)
            throw DesignError("one-sided closed form requires 3 <= k <= t (got k=" + std::to_string(k) +
                              ", t=" + std::to_string(t) + ")");
        Rat scale = make_rat(static_cast<long long>(b) * (k - 2), 2LL * (t - 1));
        return InfoMatrix{scale * q_matrix(t), InfoTag::TotalExact, model, t};
    }
    if (k < 4 || k > t)
        throw DesignError("two-sided closed form requires 4 <= k <= t (got k=" + std::to_string(k) +
                          ", t=" + std::to_string(t) + ")");
    Rat scale = make_rat(static_cast<long long>(b) * (k - 3), 3LL * (t - 1));
    return InfoMatrix{scale * q_matrix(t), InfoTag::TotalExact, model, t};
}

Rat c_value(const BlockCounts& counts, int k, EffectModel model) {
    long long sum_n = 0, sum_n2 = 0, sum_m = 0, sum_p = 0;
    for (size_t i = 0; i < counts.n.size(); ++i) {
        sum_n += counts.n[i];
        sum_n2 += static_cast<long long>(counts.n[i]) * counts.n[i];
        sum_m += counts.m[i];
        sum_p += counts.p[i];
    }
    if (sum_n != k) throw DesignError("occupancy counts do not sum to k");
    if (model == EffectModel::M1) return make_rat(static_cast<long long>(k) * k - 2 * sum_n2 + k * sum_m, 2LL * k);
    return make_rat(3LL * k * k - 9 * sum_n2 + 4 * k * sum_m + 2 * k * sum_p, 9LL * k);
}

Rat c_value(const std::vector<int>& seq, EffectModel model) {
    int t = 0;
    for (int x : seq) t = std::max(t, x);
    return c_value(block_counts(seq, t), static_cast<int>(seq.size()), model);
}

bool commutes_with_averaging(const InfoMatrix& joint) {
    if (joint.tag != InfoTag::Joint) throw DesignError("commutation test expects the joint matrix");
    RatMatrix p = averaging_projector(component_count(joint.model), joint.t);
    return joint.m * p == p * joint.m;
}

int extra_null_dimension(const InfoMatrix& total) {
    return total.t - 1 - (rank(total.m));
}

}  // namespace cnbd
