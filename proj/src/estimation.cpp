#include "cnbd/estimation.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace cnbd {

DMatrix model_matrix(const Design& d, EffectModel model) {
    IncidenceSet inc = incidence_matrices(d);
    int n = d.b * d.k;
    int m = component_count(model);
    DMatrix x(n, d.b + m * d.t);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d.b; ++j) x(i, j) = to_double(inc.B(i, j));
        for (int j = 0; j < d.t; ++j) {
            x(i, d.b + j) = to_double(inc.T(i, j));
            x(i, d.b + d.t + j) = to_double(inc.L(i, j));
            if (m == 3) x(i, d.b + 2 * d.t + j) = to_double(inc.R(i, j));
        }
    }
    return x;
}

std::vector<double> simulate_responses(const Design& d, EffectModel model, const ModelParams& params) {
    int m = component_count(model);
    if (static_cast<int>(params.beta.size()) != d.b) throw DesignError("beta length must equal b");
    if (static_cast<int>(params.tau.size()) != d.t) throw DesignError("tau length must equal t");
    if (static_cast<int>(params.lambda.size()) != d.t) throw DesignError("lambda length must equal t");
    if (m == 3 && static_cast<int>(params.rho.size()) != d.t) throw DesignError("rho length must equal t");
    if (params.sigma < 0) throw DesignError("sigma must be nonnegative");

    std::vector<double> y(static_cast<size_t>(d.b) * d.k);
    for (int i = 0; i < d.b; ++i) {
        for (int j = 1; j <= d.k; ++j) {
            double mean = params.beta[i] + params.tau[d.at(i, j) - 1] + params.lambda[d.at(i, j - 1) - 1];
            if (m == 3) mean += params.rho[d.at(i, j + 1) - 1];
            y[static_cast<size_t>(i) * d.k + (j - 1)] = mean;
        }
    }
    if (params.sigma > 0) {
        std::mt19937_64 rng(params.seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (double& v : y) v += params.sigma * gauss(rng);
    }
    return y;
}

namespace {

// Everything that does not depend on Y, built once per (design, model):
// gamma_hat = pipe * z with z = A'Y - (1/k) (B'A)' (B'Y).
struct ContrastSolver {
    DMatrix pipe;      // t x mt
    RatMatrix c;       // exact total information
    RatMatrix c_pinv;
    DMatrix bta;       // b x mt
    const Design* d;
    EffectModel model;

    explicit ContrastSolver(const Design& design, EffectModel m) : d(&design), model(m) {
        int t = design.t;
        int comps = component_count(m);
        InfoMatrix joint = info_joint(design, m);
        RatMatrix mm(comps * t, comps * t);
        Rat w = make_rat(1, comps);
        for (int g = 0; g < comps; ++g)
            for (int h = 0; h < comps; ++h)
                for (int i = 0; i < t; ++i) mm(g * t + i, h * t + i) = (g == h ? Rat(1) : Rat(0)) - w;
        RatMatrix cam = joint.m * mm;
        RatMatrix reduce = RatMatrix::identity(comps * t) - cam * pinv(mm * joint.m * mm) * mm;
        InfoMatrix exact = info_total_exact(design, m);
        c = exact.m;
        c_pinv = pinv(c);
        // K' collapses the effect stack onto totals; 1/comps from (K'K)+ K'
        RatMatrix kt(t, comps * t);
        for (int g = 0; g < comps; ++g)
            for (int i = 0; i < t; ++i) kt(i, g * t + i) = w;
        pipe = to_dmatrix(c_pinv * (kt * reduce));

        IncidenceSet inc = incidence_matrices(design);
        RatMatrix a(design.b * design.k, comps * t);
        for (int i = 0; i < design.b * design.k; ++i)
            for (int j = 0; j < t; ++j) {
                a(i, j) = inc.T(i, j);
                a(i, t + j) = inc.L(i, j);
                if (comps == 3) a(i, 2 * t + j) = inc.R(i, j);
            }
        bta = to_dmatrix(inc.B.transpose() * a);
    }

    std::vector<double> reduced_rhs(const std::vector<double>& y) const {
        int t = d->t;
        int comps = component_count(model);
        int mt = comps * t;
        std::vector<double> aty(mt, 0.0), bty(d->b, 0.0);
        for (int i = 0; i < d->b; ++i) {
            for (int j = 1; j <= d->k; ++j) {
                double v = y[static_cast<size_t>(i) * d->k + (j - 1)];
                bty[i] += v;
                aty[d->at(i, j) - 1] += v;
                aty[t + d->at(i, j - 1) - 1] += v;
                if (comps == 3) aty[2 * t + d->at(i, j + 1) - 1] += v;
            }
        }
        std::vector<double> z(mt, 0.0);
        for (int j = 0; j < mt; ++j) {
            double s = 0.0;
            for (int i = 0; i < d->b; ++i) s += bta(i, j) * bty[i];
            z[j] = aty[j] - s / d->k;
        }
        return z;
    }

    double estimate(const std::vector<double>& y, const std::vector<double>& h) const {
        std::vector<double> gamma = pipe.apply(reduced_rhs(y));
        double e = 0.0;
        for (size_t i = 0; i < h.size(); ++i) e += h[i] * gamma[i];
        return e;
    }

    bool estimable(const std::vector<double>& h) const {
        // h must lie in the range of C: C C+ h == h
        DMatrix proj = to_dmatrix(c * c_pinv);
        std::vector<double> r = proj.apply(h);
        double scale = 0.0, err = 0.0;
        for (size_t i = 0; i < h.size(); ++i) {
            scale = std::max(scale, std::fabs(h[i]));
            err = std::max(err, std::fabs(r[i] - h[i]));
        }
        return err <= 1e-9 * std::max(1.0, scale);
    }

    double variance_factor(const std::vector<double>& h) const {
        std::vector<double> cph = to_dmatrix(c_pinv).apply(h);
        double s = 0.0;
        for (size_t i = 0; i < h.size(); ++i) s += h[i] * cph[i];
        return s;
    }
};

void check_contrast(const std::vector<double>& h, int t) {
    if (static_cast<int>(h.size()) != t) throw DesignError("contrast length must equal t");
    double sum = 0.0, scale = 0.0;
    for (double v : h) {
        sum += v;
        scale = std::max(scale, std::fabs(v));
    }
    if (std::fabs(sum) > 1e-12 * std::max(1.0, scale)) throw DesignError("contrast entries must sum to zero");
}

}  // namespace

ContrastEstimate estimate_contrast(const Design& d, EffectModel model, const std::vector<double>& y,
                                   const std::vector<double>& h, double sigma) {
    check_contrast(h, d.t);
    if (static_cast<int>(y.size()) != d.b * d.k) throw DesignError("response length must equal b*k");
    ContrastSolver solver(d, model);
    ContrastEstimate out;
    out.h = h;
    out.estimable = solver.estimable(h);
    out.estimate = solver.estimate(y, h);
    out.variance_factor = solver.variance_factor(h);
    out.theoretical_variance = sigma * sigma * out.variance_factor;
    return out;
}

MonteCarloResult monte_carlo_check(const Design& d, EffectModel model, const std::vector<double>& h, double sigma,
                                   int n, std::uint64_t seed) {
    check_contrast(h, d.t);
    if (n < 1000) throw DesignError("monte carlo check needs at least 1000 replicates");
    if (sigma < 0) throw DesignError("sigma must be nonnegative");
    ContrastSolver solver(d, model);
    if (!solver.estimable(h)) throw DesignError("contrast is not estimable under this design");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> y(static_cast<size_t>(d.b) * d.k, 0.0);
    std::vector<double> estimates(n);
    for (int r = 0; r < n; ++r) {
        for (double& v : y) v = sigma * gauss(rng);
        estimates[r] = solver.estimate(y, h);
    }
    MonteCarloResult out;
    double mean = 0.0;
    for (double e : estimates) mean += e;
    mean /= n;
    out.mean_estimate = mean;
    double ss = 0.0;
    for (double e : estimates) ss += (e - mean) * (e - mean);
    out.empirical_variance = ss / (n - 1);
    out.theoretical_variance = sigma * sigma * solver.variance_factor(h);
    out.ratio = out.empirical_variance == 0.0 ? 0.0 : out.empirical_variance / out.theoretical_variance;
    return out;
}

}  // namespace cnbd
