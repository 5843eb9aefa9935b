#ifndef CNBD_DESIGNS_HPP
#define CNBD_DESIGNS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cnbd/matrixkit.hpp"
#include "cnbd/rational.hpp"

namespace cnbd {

struct DesignError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : DesignError {
    ParseError(const std::string& msg, int line) : DesignError(msg + " (line " + std::to_string(line) + ")"), line(line) {}
    int line;
};

// A circular block design: b blocks of k inner plots over treatments 1..t.
// Border plots are never stored; d(i,0) = d(i,k) and d(i,k+1) = d(i,1).
struct Design {
    int t = 0;
    int b = 0;
    int k = 0;
    std::vector<std::vector<int>> layout;  // b rows of k labels in 1..t

    int at(int block, int plot) const {  // plot in 0..k+1, 1..k are inner
        if (plot == 0) return layout[block][k - 1];
        if (plot == k + 1) return layout[block][0];
        return layout[block][plot - 1];
    }
};

// Validates labels and shape; throws DesignError.
Design make_design(int t, std::vector<std::vector<int>> layout);

// File format: '#' comment lines, then "t=<int> b=<int> k=<int>", then b rows
// of k labels. Rows of k+2 labels are accepted as border-annotated and the
// borders must agree with circularity.
Design parse_design(const std::string& text);
Design parse_design_file(const std::string& path);

std::string to_design_text(const Design& d);

// Plot-by-column incidence of treatment, left neighbor, right neighbor, block.
struct IncidenceSet {
    RatMatrix T;  // bk x t
    RatMatrix L;  // bk x t
    RatMatrix R;  // bk x t
    RatMatrix B;  // bk x b
};

IncidenceSet incidence_matrices(const Design& d);

// Per-block circular occupancy counts, indexed by treatment (0-based):
//   n[i] occurrences, m[i] plots whose left neighbor carries the same
//   treatment i, p[i] plots flanked by treatment i on both sides.
struct BlockCounts {
    std::vector<int> n, m, p;
};

BlockCounts block_counts(const std::vector<int>& seq, int t);

// Relabel by order of first occurrence: the restricted growth string.
std::vector<int> canonical_class(const std::vector<int>& seq);

// Lexicographically smallest restricted growth string over all rotations
// and reflections; used to merge a circular class for reporting.
std::vector<int> rotation_reflection_canonical(const std::vector<int>& seq);

struct SequenceProfile {
    std::vector<BlockCounts> blocks;
    std::vector<std::vector<int>> block_class;                      // RGS per block
    std::vector<std::pair<std::vector<int>, Rat>> class_histogram;  // sorted by class, sums to 1
};

SequenceProfile sequence_profile(const Design& d);

struct ClassificationReport {
    bool is_binary = false;
    bool is_balanced_block = false;
    bool is_cnbd = false;
    bool is_cnbd2 = false;
    bool no_self_neighbor_d1 = false;
    bool no_self_neighbor_d2 = false;
    Rat ell;                    // bk / (t(t-1)); zero when t < 2
    bool ell_integral = false;
};

ClassificationReport classify(const Design& d);

}  // namespace cnbd

#endif
