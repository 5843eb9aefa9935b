#include "cnbd/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cnbd {

namespace {

// 2k * f(v); shared denominator lets maxima be compared in integers
long long f_numerator(long long k, long long v) {
    long long q = k / v;
    return 2 * k * (k - 1) - k * v - 2 * q * (2 * k - v) + 2 * v * q * q;
}

// 9k * f~(v1, v2) for v2 >= 1; the binary point is handled by the caller
long long f_tilde_numerator(long long k, long long v1, long long v2) {
    long long q = (k - v1) / v2;
    return 9 * k * (k - 1) - 6 * k * v1 - 8 * k * v2 - 9 * q * (2 * k - 2 * v1 - v2) + 9 * v2 * q * q;
}

}  // namespace

Rat f_value(int k, int v) {
    if (k < 3) throw DesignError("f is defined for k >= 3");
    if (v < 1 || v > k) throw DesignError("f needs 1 <= v <= k");
    return make_rat(f_numerator(k, v), 2LL * k);
}

Rat f_tilde_value(int k, int v1, int v2) {
    if (k < 4) throw DesignError("f~ is defined for k >= 4");
    if (v2 == 0) {
        if (v1 != k) throw DesignError("f~ with no repeated treatment means the binary point v1 = k");
        return make_rat(k - 3, 3);
    }
    if (v1 < 0 || v2 < 1 || v1 + 2 * v2 > k) throw DesignError("f~ needs v1 >= 0, v2 >= 1, v1 + 2 v2 <= k");
    return make_rat(f_tilde_numerator(k, v1, v2), 9LL * k);
}

OptimalComposition optimal_composition(int k, int t, EffectModel model) {
    if (t < 2) throw DesignError("optimal composition requires t >= 2");
    OptimalComposition out;
    out.model = model;
    out.k = k;
    out.t = t;
    out.sqrt_bound = k - std::sqrt(2.0 * k);
    if (model == EffectModel::M1) {
        if (k < 3) throw DesignError("one-sided optimal composition requires k >= 3");
        int vmax = std::min(t, k);
        long long best = 0;
        std::vector<int> arg;
        for (int v = 2; v <= vmax; ++v) {
            long long num = f_numerator(k, v);
            if (arg.empty() || num > best) {
                best = num;
                arg = {v};
            } else if (num == best) {
                arg.push_back(v);
            }
        }
        out.value = make_rat(best, 2LL * k);
        for (int v : arg) {
            M1Maximizer m;
            m.v_star = v;
            m.n_minus = k / v;
            m.n_plus = m.n_minus + 1;
            m.v_plus = k - v * m.n_minus;
            m.v_minus = v - m.v_plus;
            out.m1.push_back(m);
        }
        return out;
    }
    if (k < 4) throw DesignError("two-sided optimal composition requires k >= 4");
    long long best = 0;
    bool have = false;
    std::vector<std::pair<int, int>> arg;
    auto consider = [&](int v1, int v2, long long num) {
        if (!have || num > best) {
            best = num;
            arg = {{v1, v2}};
            have = true;
        } else if (num == best) {
            arg.emplace_back(v1, v2);
        }
    };
    for (int v1 = 0; v1 <= k - 2; ++v1)
        for (int v2 = 1; v1 + 2 * v2 <= k; ++v2)
            if (v1 + v2 <= t) consider(v1, v2, f_tilde_numerator(k, v1, v2));
    if (t >= k) consider(k, 0, 3LL * k * (k - 3));  // binary point over the same denominator 9k
    if (!have) throw DesignError("no attainable two-sided composition");
    out.value = make_rat(best, 9LL * k);
    std::sort(arg.begin(), arg.end());
    for (auto [v1, v2] : arg) {
        M2Maximizer m;
        m.v1 = v1;
        m.v2 = v2;
        if (v2 > 0) {
            int q = (k - v1) / v2;
            int extra = (k - v1) - q * v2;  // this many runs get q+1
            for (int i = 0; i < v2 - extra; ++i) m.run_lengths.push_back(q);
            for (int i = 0; i < extra; ++i) m.run_lengths.push_back(q + 1);
        }
        out.m2.push_back(std::move(m));
    }
    return out;
}

std::vector<int> representative_sequence(const M1Maximizer& m, int k) {
    std::vector<int> seq;
    seq.reserve(k);
    int label = 1;
    for (int i = 0; i < m.v_minus; ++i, ++label)
        for (int r = 0; r < m.n_minus; ++r) seq.push_back(label);
    for (int i = 0; i < m.v_plus; ++i, ++label)
        for (int r = 0; r < m.n_plus; ++r) seq.push_back(label);
    if (static_cast<int>(seq.size()) != k) throw DesignError("composition does not fill the block");
    return seq;
}

std::vector<int> representative_sequence(const M2Maximizer& m, int k) {
    std::vector<int> seq;
    seq.reserve(k);
    int label = 1;
    for (int i = 0; i < m.v1; ++i, ++label) seq.push_back(label);
    for (int len : m.run_lengths) {
        for (int r = 0; r < len; ++r) seq.push_back(label);
        ++label;
    }
    if (static_cast<int>(seq.size()) != k) throw DesignError("composition does not fill the block");
    return seq;
}

std::vector<int> representative_sequence(const OptimalComposition& c) {
    if (c.model == EffectModel::M1) return representative_sequence(c.m1.front(), c.k);
    return representative_sequence(c.m2.front(), c.k);
}

BruteForceResult brute_force_best(int k, int t, EffectModel model) {
    if (k < 1) throw DesignError("brute force needs k >= 1");
    if (k > 12) throw DesignError("enumeration budget exceeded: brute force is capped at k <= 12");
    if (t < 1) throw DesignError("brute force needs t >= 1");

    // c and c~ share one denominator (2k resp. 9k) across sequences of a
    // common length, so the scan compares integer numerators only.
    std::vector<int> seq(k, 0);
    std::vector<int> n(k + 1, 0), m(k + 1, 0), p(k + 1, 0);
    long long best = 0;
    bool have = false;
    std::vector<std::vector<int>> arg;
    int max_symbols = std::min(t, k);

    auto evaluate = [&]() {
        int used = 0;
        for (int j = 0; j < k; ++j) used = std::max(used, seq[j]);
        std::fill(n.begin(), n.begin() + used + 1, 0);
        std::fill(m.begin(), m.begin() + used + 1, 0);
        std::fill(p.begin(), p.begin() + used + 1, 0);
        for (int j = 0; j < k; ++j) {
            n[seq[j]] += 1;
            int left = seq[(j + k - 1) % k];
            if (left == seq[j]) m[seq[j]] += 1;
            if (left == seq[(j + 1) % k]) p[left] += 1;
        }
        long long sn2 = 0, sm = 0, sp = 0;
        for (int i = 1; i <= used; ++i) {
            sn2 += static_cast<long long>(n[i]) * n[i];
            sm += m[i];
            sp += p[i];
        }
        long long num = model == EffectModel::M1 ? static_cast<long long>(k) * k - 2 * sn2 + k * sm
                                                 : 3LL * k * k - 9 * sn2 + 4 * k * sm + 2 * k * sp;
        if (!have || num > best) {
            best = num;
            arg = {seq};
            have = true;
        } else if (num == best) {
            arg.push_back(seq);
        }
    };

    // depth-first over restricted growth strings with at most max_symbols
    std::vector<int> mx(k + 1, 0);
    int j = 0;
    mx[0] = 0;
    while (j >= 0) {
        if (j == k) {
            evaluate();
            --j;
            continue;
        }
        if (seq[j] == 0) {
            seq[j] = 1;
        } else {
            ++seq[j];
        }
        int cap = std::min(mx[j] + 1, max_symbols);
        if (seq[j] > cap) {
            seq[j] = 0;
            --j;
            continue;
        }
        mx[j + 1] = std::max(mx[j], seq[j]);
        ++j;
    }

    BruteForceResult out;
    out.max_value = make_rat(best, model == EffectModel::M1 ? 2LL * k : 9LL * k);
    std::sort(arg.begin(), arg.end());
    out.maximizers = std::move(arg);
    return out;
}

Rat upper_bound_trace(int b, int k, int t, EffectModel model) {
    if (b < 1) throw DesignError("upper bound needs b >= 1");
    return Rat(b) * optimal_composition(k, t, model).value;
}

}  // namespace cnbd
