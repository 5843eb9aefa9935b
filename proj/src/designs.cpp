#include "cnbd/designs.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace cnbd {

Design make_design(int t, std::vector<std::vector<int>> layout) {
    if (t < 1) throw DesignError("treatment count must be positive");
    if (layout.empty()) throw DesignError("design needs at least one block");
    int k = static_cast<int>(layout[0].size());
    if (k < 1) throw DesignError("blocks need at least one inner plot");
    for (size_t i = 0; i < layout.size(); ++i) {
        if (static_cast<int>(layout[i].size()) != k)
            throw DesignError("ragged layout: block " + std::to_string(i + 1) + " has " +
                              std::to_string(layout[i].size()) + " plots, expected " + std::to_string(k));
        for (int label : layout[i])
            if (label < 1 || label > t)
                throw DesignError("label " + std::to_string(label) + " out of range 1.." + std::to_string(t) +
                                  " in block " + std::to_string(i + 1));
    }
    Design d;
    d.t = t;
    d.b = static_cast<int>(layout.size());
    d.k = k;
    d.layout = std::move(layout);
    return d;
}

Design parse_design(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int t = -1, b = -1, k = -1;
    std::vector<std::vector<int>> rows;
    int header_line = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = line;
        size_t start = stripped.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (stripped[start] == '#') continue;
        if (t < 0) {
            int got = std::sscanf(stripped.c_str(), " t=%d b=%d k=%d", &t, &b, &k);
            if (got != 3) throw ParseError("expected header \"t=<int> b=<int> k=<int>\"", lineno);
            if (t < 1 || b < 1 || k < 1) throw ParseError("header values must be positive", lineno);
            header_line = lineno;
            continue;
        }
        std::istringstream row(stripped);
        std::vector<int> labels;
        int x;
        while (row >> x) labels.push_back(x);
        std::string tail;
        row.clear();
        if (row >> tail) throw ParseError("unexpected token \"" + tail + "\"", lineno);
        if (static_cast<int>(labels.size()) == k + 2) {
            // border-annotated row: check circularity, keep the inner plots
            if (labels.front() != labels[k] || labels.back() != labels[1])
                throw ParseError("border plots inconsistent with circularity", lineno);
            labels = std::vector<int>(labels.begin() + 1, labels.end() - 1);
        } else if (static_cast<int>(labels.size()) != k) {
            throw ParseError("expected " + std::to_string(k) + " labels, found " + std::to_string(labels.size()),
                             lineno);
        }
        for (int label : labels)
            if (label < 1 || label > t)
                throw ParseError("label " + std::to_string(label) + " out of range 1.." + std::to_string(t), lineno);
        rows.push_back(std::move(labels));
        if (static_cast<int>(rows.size()) > b) throw ParseError("more than b=" + std::to_string(b) + " blocks", lineno);
    }
    if (t < 0) throw ParseError("missing header", lineno == 0 ? 1 : lineno);
    if (static_cast<int>(rows.size()) != b)
        throw ParseError("found " + std::to_string(rows.size()) + " blocks, header says b=" + std::to_string(b),
                         header_line);
    return make_design(t, std::move(rows));
}

Design parse_design_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DesignError("cannot open design file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_design(buf.str());
}

std::string to_design_text(const Design& d) {
    std::ostringstream out;
    out << "t=" << d.t << " b=" << d.b << " k=" << d.k << "\n";
    for (const auto& row : d.layout) {
        for (size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
        out << "\n";
    }
    return out.str();
}

IncidenceSet incidence_matrices(const Design& d) {
    int n = d.b * d.k;
    IncidenceSet s{RatMatrix(n, d.t), RatMatrix(n, d.t), RatMatrix(n, d.t), RatMatrix(n, d.b)};
    for (int i = 0; i < d.b; ++i) {
        for (int j = 1; j <= d.k; ++j) {
            int row = i * d.k + (j - 1);
            s.T(row, d.at(i, j) - 1) = 1;
            s.L(row, d.at(i, j - 1) - 1) = 1;
            s.R(row, d.at(i, j + 1) - 1) = 1;
            s.B(row, i) = 1;
        }
    }
    return s;
}

BlockCounts block_counts(const std::vector<int>& seq, int t) {
    int k = static_cast<int>(seq.size());
    BlockCounts c{std::vector<int>(t, 0), std::vector<int>(t, 0), std::vector<int>(t, 0)};
    for (int j = 0; j < k; ++j) {
        c.n[seq[j] - 1] += 1;
        int left = seq[(j + k - 1) % k];
        if (left == seq[j]) c.m[seq[j] - 1] += 1;
        int right = seq[(j + 1) % k];
        if (left == right) c.p[left - 1] += 1;
    }
    return c;
}

std::vector<int> canonical_class(const std::vector<int>& seq) {
    std::vector<int> out;
    out.reserve(seq.size());
    std::map<int, int> relabel;
    int next = 1;
    for (int x : seq) {
        auto [it, inserted] = relabel.emplace(x, next);
        if (inserted) ++next;
        out.push_back(it->second);
    }
    return out;
}

std::vector<int> rotation_reflection_canonical(const std::vector<int>& seq) {
    int k = static_cast<int>(seq.size());
    std::vector<int> best;
    for (int rev = 0; rev < 2; ++rev) {
        std::vector<int> base = seq;
        if (rev) std::reverse(base.begin(), base.end());
        for (int r = 0; r < k; ++r) {
            std::vector<int> rot(k);
            for (int j = 0; j < k; ++j) rot[j] = base[(j + r) % k];
            std::vector<int> canon = canonical_class(rot);
            if (best.empty() || canon < best) best = std::move(canon);
        }
    }
    return best;
}

SequenceProfile sequence_profile(const Design& d) {
    SequenceProfile prof;
    std::map<std::vector<int>, int> hist;
    for (const auto& row : d.layout) {
        prof.blocks.push_back(block_counts(row, d.t));
        std::vector<int> cls = canonical_class(row);
        hist[cls] += 1;
        prof.block_class.push_back(std::move(cls));
    }
    Rat denom(d.b);
    for (auto& [cls, count] : hist) prof.class_histogram.emplace_back(cls, Rat(count) / denom);
    return prof;
}

ClassificationReport classify(const Design& d) {
    ClassificationReport rep;
    SequenceProfile prof = sequence_profile(d);

    rep.is_binary = true;
    for (const auto& c : prof.blocks)
        for (int ni : c.n)
            if (ni > 1) rep.is_binary = false;

    int self1 = 0, self2 = 0;
    for (const auto& c : prof.blocks) {
        for (int mi : c.m) self1 += mi;
        for (int pi : c.p) self2 += pi;
    }
    rep.no_self_neighbor_d1 = self1 == 0;
    rep.no_self_neighbor_d2 = self2 == 0;

    // equireplication and equal pairwise concurrence
    std::vector<long long> repl(d.t, 0);
    std::vector<std::vector<long long>> conc(d.t, std::vector<long long>(d.t, 0));
    for (const auto& c : prof.blocks)
        for (int x = 0; x < d.t; ++x) {
            repl[x] += c.n[x];
            for (int y = 0; y < d.t; ++y)
                if (x != y) conc[x][y] += static_cast<long long>(c.n[x]) * c.n[y];
        }
    rep.is_balanced_block = true;
    for (int x = 1; x < d.t; ++x)
        if (repl[x] != repl[0]) rep.is_balanced_block = false;
    if (d.t >= 2) {
        long long c0 = conc[0][1];
        for (int x = 0; x < d.t; ++x)
            for (int y = 0; y < d.t; ++y)
                if (x != y && conc[x][y] != c0) rep.is_balanced_block = false;
    }

    if (d.t >= 2) {
        rep.ell = make_rat(static_cast<long long>(d.b) * d.k, static_cast<long long>(d.t) * (d.t - 1));
        rep.ell_integral = rep.ell.get_den() == 1;
    } else {
        rep.ell = 0;
        rep.ell_integral = false;
    }

    // ordered-pair neighbor counts at distances 1 and 2
    std::vector<std::vector<long long>> d1(d.t, std::vector<long long>(d.t, 0));
    std::vector<std::vector<long long>> d2(d.t, std::vector<long long>(d.t, 0));
    for (int i = 0; i < d.b; ++i) {
        for (int j = 1; j <= d.k; ++j) {
            d1[d.at(i, j) - 1][d.at(i, j + 1) - 1] += 1;       // (plot, right neighbor)
            d2[d.at(i, j - 1) - 1][d.at(i, j + 1) - 1] += 1;   // (left, right) around a plot
        }
    }
    auto all_pairs_equal = [&](const std::vector<std::vector<long long>>& counts, long long want) {
        for (int x = 0; x < d.t; ++x)
            for (int y = 0; y < d.t; ++y)
                if (x != y && counts[x][y] != want) return false;
        return true;
    };
    rep.is_cnbd = d.t >= 2 && rep.is_binary && rep.is_balanced_block && rep.ell_integral &&
                  all_pairs_equal(d1, rep.ell.get_num().get_si());
    rep.is_cnbd2 = rep.is_cnbd && all_pairs_equal(d2, rep.ell.get_num().get_si());
    return rep;
}

}  // namespace cnbd
