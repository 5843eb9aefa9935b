// Command-line front end: classify circular block designs, compute their
// total-effect information and efficiency, characterize optimal sequences,
// and validate estimator variances by simulation.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cnbd/estimation.hpp"
#include "cnbd/optimality.hpp"

using namespace cnbd;

namespace {

std::string yes_no(bool v) { return v ? "yes" : "no"; }

std::string letters(const std::vector<int>& seq) {
    int top = 0;
    for (int x : seq) top = std::max(top, x);
    std::ostringstream out;
    out << "(";
    for (size_t i = 0; i < seq.size(); ++i) {
        if (i) out << ", ";
        if (top <= 26)
            out << static_cast<char>('a' + seq[i] - 1);
        else
            out << seq[i];
    }
    out << ")";
    return out.str();
}

EffectModel parse_model(const std::string& name) {
    return name == "m2" ? EffectModel::M2 : EffectModel::M1;
}

void print_matrix(const RatMatrix& m, const std::string& indent) {
    size_t width = 1;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) width = std::max(width, to_string(m(i, j)).size());
    for (int i = 0; i < m.rows(); ++i) {
        std::cout << indent << "[";
        for (int j = 0; j < m.cols(); ++j) {
            std::string s = to_string(m(i, j));
            std::cout << " " << std::string(width - s.size(), ' ') << s;
        }
        std::cout << " ]\n";
    }
}

void csv_matrix(const char* tag, const RatMatrix& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            std::cout << tag << "," << i << "," << j << "," << to_string(m(i, j)) << "\n";
}

std::vector<double> parse_contrast(const std::string& text) {
    std::vector<double> h;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            h.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw DesignError("cannot parse contrast entry \"" + item + "\"");
        }
    }
    return h;
}

int run_verify(const std::string& path, const std::string& format) {
    Design d = parse_design_file(path);
    ClassificationReport r = classify(d);
    if (format == "csv") {
        std::cout << "t,b,k,binary,balanced_block,ell,ell_integral,cnbd,cnbd2,self_neighbor_d1,self_neighbor_d2\n"
                  << d.t << "," << d.b << "," << d.k << "," << r.is_binary << "," << r.is_balanced_block << ","
                  << to_string(r.ell) << "," << r.ell_integral << "," << r.is_cnbd << "," << r.is_cnbd2 << ","
                  << !r.no_self_neighbor_d1 << "," << !r.no_self_neighbor_d2 << "\n";
        return 0;
    }
    std::cout << "design: t=" << d.t << " b=" << d.b << " k=" << d.k << "\n"
              << "binary: " << yes_no(r.is_binary) << "\n"
              << "balanced block: " << yes_no(r.is_balanced_block) << "\n";
    if (d.t >= 2)
        std::cout << "ℓ = bk/(t(t-1)) = " << to_string(r.ell) << (r.ell_integral ? "" : " (not an integer)")
                  << "\n";
    std::cout << "CNBD: " << (r.is_cnbd ? "yes, ℓ = " + to_string(r.ell) : "no") << "\n"
              << "CNBD2: " << (r.is_cnbd2 ? "yes, ℓ = " + to_string(r.ell) : "no") << "\n"
              << "self neighbors at distance 1: " << (r.no_self_neighbor_d1 ? "none" : "present") << "\n"
              << "self neighbors at distance 2: " << (r.no_self_neighbor_d2 ? "none" : "present") << "\n";
    return 0;
}

int run_info(const std::string& path, const std::string& model_name, bool per_block, const std::string& format) {
    Design d = parse_design_file(path);
    EffectModel model = parse_model(model_name);
    InfoMatrix exact = info_total_exact(d, model);
    InfoMatrix upper = info_total_upper(d, model);
    bool commutes = commutes_with_averaging(info_joint(d, model));
    CompleteSymmetry cs = complete_symmetry(exact.m);
    SequenceProfile prof = sequence_profile(d);

    if (format == "csv") {
        std::cout << "field,row,col,value\n"
                  << "t,,," << d.t << "\nb,,," << d.b << "\nk,,," << d.k << "\nmodel,,," << model_name << "\n"
                  << "trace_exact,,," << to_string(exact.m.trace()) << "\n"
                  << "trace_upper,,," << to_string(upper.m.trace()) << "\n"
                  << "completely_symmetric,,," << cs.is_cs << "\n"
                  << "upper_equals_exact,,," << (exact.m == upper.m) << "\n"
                  << "commutes,,," << commutes << "\n"
                  << "extra_null_dim,,," << extra_null_dimension(exact) << "\n";
        csv_matrix("exact", exact.m);
        csv_matrix("upper", upper.m);
        if (per_block) {
            std::vector<RatMatrix> blocks = info_total_upper_blocks(d, model);
            for (size_t u = 0; u < blocks.size(); ++u)
                std::cout << "block_trace," << u << ",," << to_string(blocks[u].trace()) << "\n";
        }
        return 0;
    }
    std::cout << "design: t=" << d.t << " b=" << d.b << " k=" << d.k << ", model: " << model_name << "\n";
    std::cout << "total-effect information, exact:\n";
    print_matrix(exact.m, "  ");
    std::cout << "trace: " << to_string(exact.m.trace()) << "\n";
    if (cs.is_cs)
        std::cout << "completely symmetric: yes (a = " << to_string(cs.a) << ", b = " << to_string(cs.b) << ")\n";
    else
        std::cout << "completely symmetric: no\n";
    std::cout << "averaging upper bound trace: " << to_string(upper.m.trace()) << "\n"
              << "upper bound equals exact: " << yes_no(exact.m == upper.m) << "\n"
              << "averaging commutation holds: " << yes_no(commutes) << "\n"
              << "null directions beyond constants: " << extra_null_dimension(exact) << "\n";
    if (per_block) {
        std::vector<RatMatrix> blocks = info_total_upper_blocks(d, model);
        std::cout << "per-block bound traces:\n";
        for (size_t u = 0; u < blocks.size(); ++u)
            std::cout << "  block " << u + 1 << " " << letters(prof.block_class[u]) << ": "
                      << to_string(blocks[u].trace()) << "\n";
    }
    return 0;
}

int run_eff(const std::string& path, const std::string& model_name, const std::string& format) {
    Design d = parse_design_file(path);
    EffectModel model = parse_model(model_name);
    EfficiencyResult e = efficiency(d, model);
    Rat trace = info_total_exact(d, model).m.trace();
    Rat bound = upper_bound_trace(d.b, d.k, d.t, model);
    if (format == "csv") {
        std::cout << "field,value\n"
                  << "t," << d.t << "\nb," << d.b << "\nk," << d.k << "\nmodel," << model_name << "\n"
                  << "trace_exact," << to_string(trace) << "\n"
                  << "trace_bound," << to_string(bound) << "\n"
                  << "efficiency," << to_string(e.value) << "\n"
                  << "efficiency_2dp," << format_decimal(e.value, 2) << "\n";
        if (e.has_approximation) std::printf("large_k_approximation,%.10g\n", e.approximation);
        return 0;
    }
    std::cout << "design: t=" << d.t << " b=" << d.b << " k=" << d.k << ", model: " << model_name << "\n"
              << "exact information trace: " << to_string(trace) << "\n"
              << "continuous-optimal trace bound: " << to_string(bound) << "\n"
              << "efficiency: " << to_string(e.value) << " = " << format_decimal(e.value, 2);
    if (model == EffectModel::M2) std::cout << " (lower bound: the trace bound is not always attained)";
    std::cout << "\n";
    if (e.has_approximation)
        std::printf("large-k approximation (k-2)/(2(k-sqrt(2k))): %.4f (tends to 0.5)\n", e.approximation);
    return 0;
}

int run_optseq(int k, int t, int b, const std::string& model_name, const std::string& format) {
    EffectModel model = parse_model(model_name);
    if (t <= 0) t = k;
    OptimalComposition comp = optimal_composition(k, t, model);
    if (format == "csv") {
        if (model == EffectModel::M1) {
            std::cout << "k,v_star,v_minus,v_plus,n_minus,n_plus,value,representative\n";
            for (const M1Maximizer& m : comp.m1) {
                std::vector<int> rep = representative_sequence(m, k);
                std::cout << k << "," << m.v_star << "," << m.v_minus << "," << m.v_plus << "," << m.n_minus << ","
                          << m.n_plus << "," << to_string(comp.value) << ",";
                for (size_t i = 0; i < rep.size(); ++i) std::cout << (i ? " " : "") << rep[i];
                std::cout << "\n";
            }
        } else {
            std::cout << "k,v1,v2,run_lengths,value,representative\n";
            for (const M2Maximizer& m : comp.m2) {
                std::vector<int> rep = representative_sequence(m, k);
                std::cout << k << "," << m.v1 << "," << m.v2 << ",";
                for (size_t i = 0; i < m.run_lengths.size(); ++i) std::cout << (i ? " " : "") << m.run_lengths[i];
                std::cout << "," << to_string(comp.value) << ",";
                for (size_t i = 0; i < rep.size(); ++i) std::cout << (i ? " " : "") << rep[i];
                std::cout << "\n";
            }
        }
        return 0;
    }
    std::cout << "model " << model_name << ", k = " << k << ", t = " << t << "\n"
              << "best per-block value: " << to_string(comp.value) << "\n";
    std::printf("ceiling k - sqrt(2k): %.6f\n", comp.sqrt_bound);
    if (b > 0) std::cout << "trace bound for b = " << b << " blocks: " << to_string(Rat(b) * comp.value) << "\n";
    std::cout << "optimal sequence classes:\n";
    if (model == EffectModel::M1) {
        for (const M1Maximizer& m : comp.m1) {
            std::cout << "  v* = " << m.v_star << ": " << m.v_minus << " treatment(s) x " << m.n_minus << ", "
                      << m.v_plus << " treatment(s) x " << m.n_plus << "  ->  "
                      << letters(representative_sequence(m, k)) << "\n";
        }
    } else {
        for (const M2Maximizer& m : comp.m2) {
            std::cout << "  (v1, v2) = (" << m.v1 << ", " << m.v2 << ")";
            if (!m.run_lengths.empty()) {
                std::cout << ", runs ";
                for (size_t i = 0; i < m.run_lengths.size(); ++i)
                    std::cout << (i ? "+" : "") << m.run_lengths[i];
            }
            std::cout << "  ->  " << letters(representative_sequence(m, k)) << "\n";
        }
    }
    return 0;
}

int run_optdesign(int k, int t, const std::string& model_name, bool with_verdict) {
    EffectModel model = parse_model(model_name);
    Design d = symmetric_design(k, t, model);
    std::cout << "# symmetric design from the optimal sequence class: k=" << k << " t=" << t << " model="
              << model_name << "\n";
    if (model == EffectModel::M2)
        std::cout << "# two-sided construction is heuristic; verdict is reported, not asserted\n";
    if (with_verdict) {
        OptimalityVerdict v = kiefer_verdict(d, model, DesignClass::Unrestricted);
        std::cout << "# trace = " << to_string(v.trace) << ", bound = " << to_string(v.trace_bound)
                  << ", completely symmetric: " << yes_no(v.completely_symmetric)
                  << ", conclusive: " << yes_no(v.conclusive) << (v.bound_based ? " (bound-based)" : "") << "\n";
    }
    std::cout << to_design_text(d);
    return 0;
}

int run_tables(int which, const std::string& format) {
    bool csv = format == "csv";
    if (which == 1) {
        if (csv)
            std::cout << "k,v_star,v_minus,v_plus,n_minus,n_plus\n";
        else
            std::cout << "k   v*  v-  v+  n-  n+\n";
        for (int k = 3; k <= 16; ++k) {
            OptimalComposition comp = optimal_composition(k, k, EffectModel::M1);
            for (const M1Maximizer& m : comp.m1) {
                if (csv)
                    std::cout << k << "," << m.v_star << "," << m.v_minus << "," << m.v_plus << "," << m.n_minus
                              << "," << m.n_plus << "\n";
                else
                    std::printf("%-4d%-4d%-4d%-4d%-4d%d\n", k, m.v_star, m.v_minus, m.v_plus, m.n_minus, m.n_plus);
            }
        }
        return 0;
    }
    EffectModel model = which == 2 ? EffectModel::M1 : EffectModel::M2;
    int k_lo = which == 2 ? 3 : 4;
    int k_hi = which == 2 ? 15 : 14;
    if (csv)
        std::cout << "k,eff,eff_2dp\n";
    else
        std::cout << "k   efficiency\n";
    for (int k = k_lo; k <= k_hi; ++k) {
        Rat eff = table_efficiency(k, model);
        if (csv)
            std::cout << k << "," << to_string(eff) << "," << format_decimal(eff, 2) << "\n";
        else
            std::printf("%-4d%s\n", k, format_decimal_trim(eff, 2).c_str());
    }
    return 0;
}

int run_simulate(const std::string& path, const std::string& model_name, const std::string& contrast, double sigma,
                 int replicates, std::uint64_t seed, const std::string& format) {
    Design d = parse_design_file(path);
    EffectModel model = parse_model(model_name);
    std::vector<double> h = parse_contrast(contrast);
    MonteCarloResult r = monte_carlo_check(d, model, h, sigma, replicates, seed);
    if (format == "csv") {
        std::cout << "field,value\n";
        std::printf("sigma,%g\nreplicates,%d\nseed,%llu\n", sigma, replicates,
                    static_cast<unsigned long long>(seed));
        std::printf("theoretical_variance,%.10g\nempirical_variance,%.10g\nratio,%.10g\n", r.theoretical_variance,
                    r.empirical_variance, r.ratio);
        return 0;
    }
    std::cout << "design: t=" << d.t << " b=" << d.b << " k=" << d.k << ", model: " << model_name << "\n"
              << "contrast: " << contrast << "\n";
    std::printf("sigma = %g, replicates = %d, seed = %llu\n", sigma, replicates,
                static_cast<unsigned long long>(seed));
    std::printf("theoretical variance: %.6f\n", r.theoretical_variance);
    std::printf("empirical variance:   %.6f\n", r.empirical_variance);
    std::printf("ratio (empirical / theoretical): %.4f\n", r.ratio);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"circular neighbor-balanced design toolkit"};
    app.require_subcommand(1);
    std::string format = "text";

    std::string path, model_name = "m1", contrast;
    int k = 0, t = 0, b = 0, which = 0, replicates = 20000;
    bool per_block = false, with_verdict = false;
    double sigma = 1.0;
    std::uint64_t seed = 12345;

    CLI::App* verify = app.add_subcommand("verify", "classify a design file");
    verify->add_option("file", path)->required();
    verify->add_option("--format", format)->check(CLI::IsMember({"text", "csv"}));

    CLI::App* info = app.add_subcommand("info", "total-effect information matrices");
    info->add_option("file", path)->required();
    info->add_option("--model", model_name)->check(CLI::IsMember({"m1", "m2"}));
    info->add_flag("--per-block", per_block);
    info->add_option("--format", format)->check(CLI::IsMember({"text", "csv"}));

    CLI::App* eff = app.add_subcommand("eff", "efficiency factor of a design");
    eff->add_option("file", path)->required();
    eff->add_option("--model", model_name)->check(CLI::IsMember({"m1", "m2"}));
    eff->add_option("--format", format)->check(CLI::IsMember({"text", "csv"}));

    CLI::App* optseq = app.add_subcommand("optseq", "optimal block sequences");
    optseq->add_option("--k", k)->required();
    optseq->add_option("--t", t);
    optseq->add_option("--b", b);
    optseq->add_option("--model", model_name)->check(CLI::IsMember({"m1", "m2"}));
    optseq->add_option("--format", format)->check(CLI::IsMember({"text", "csv"}));

    CLI::App* optdesign = app.add_subcommand("optdesign", "symmetric design from the optimal class");
    optdesign->add_option("--k", k)->required();
    optdesign->add_option("--t", t)->required();
    optdesign->add_option("--model", model_name)->check(CLI::IsMember({"m1", "m2"}));
    optdesign->add_flag("--verdict", with_verdict);

    CLI::App* tables = app.add_subcommand("tables", "reference tables");
    tables->add_option("--which", which)->required()->check(CLI::Range(1, 3));
    tables->add_option("--format", format)->check(CLI::IsMember({"text", "csv"}));

    CLI::App* simulate = app.add_subcommand("simulate", "estimator variance by simulation");
    simulate->add_option("file", path)->required();
    simulate->add_option("--model", model_name)->check(CLI::IsMember({"m1", "m2"}));
    simulate->add_option("--contrast", contrast)->required();
    simulate->add_option("--sigma", sigma);
    simulate->add_option("--replicates", replicates);
    simulate->add_option("--seed", seed);
    simulate->add_option("--format", format)->check(CLI::IsMember({"text", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*verify) return run_verify(path, format);
        if (*info) return run_info(path, model_name, per_block, format);
        if (*eff) return run_eff(path, model_name, format);
        if (*optseq) return run_optseq(k, t, b, model_name, format);
        if (*optdesign) return run_optdesign(k, t, model_name, with_verdict);
        if (*tables) return run_tables(which, format);
        if (*simulate) return run_simulate(path, model_name, contrast, sigma, replicates, seed, format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
