#ifndef CNBD_MATRIXKIT_HPP
#define CNBD_MATRIXKIT_HPP

#include <cstddef>
#include <vector>

#include "cnbd/rational.hpp"

namespace cnbd {

// Dense rational matrix, row major. Everything that must be exact
// (information matrices, traces, table entries) lives here; the float
// twin below exists for eigenvalues and Monte Carlo work only.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

    static RatMatrix identity(int n);
    static RatMatrix constant(int rows, int cols, const Rat& value);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const Rat& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    RatMatrix transpose() const;
    RatMatrix block(int row0, int col0, int nrows, int ncols) const;
    Rat trace() const;
    bool is_zero() const;
    bool is_symmetric() const;

    bool operator==(const RatMatrix& other) const;
    bool operator!=(const RatMatrix& other) const { return !(*this == other); }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rat> data_;
};

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const Rat& s, const RatMatrix& a);

// Q_n = I - J/n: projector onto the orthogonal complement of constants.
RatMatrix q_matrix(int n);

// Moore-Penrose inverse of an arbitrary rational matrix, computed through
// a rank factorization A = F G taken from the reduced row echelon form:
// A+ = G'(GG')^-1 (F'F)^-1 F'. All four Penrose identities hold exactly.
RatMatrix pinv(const RatMatrix& a);
inline RatMatrix pinv_sym(const RatMatrix& m) { return pinv(m); }

// Orthogonal projector onto the column span: A (A'A)+ A'.
RatMatrix projector(const RatMatrix& a);

int rank(const RatMatrix& a);

struct CompleteSymmetry {
    bool is_cs = false;
    Rat a;  // M = a I + b J when is_cs
    Rat b;
};

// Exact test: all diagonal entries equal and all off-diagonal entries equal.
CompleteSymmetry complete_symmetry(const RatMatrix& m);

// ---------------------------------------------------------------------------

class DMatrix {
public:
    DMatrix() = default;
    DMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0.0) {}

    static DMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    DMatrix transpose() const;
    std::vector<double> apply(const std::vector<double>& v) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

DMatrix operator+(const DMatrix& a, const DMatrix& b);
DMatrix operator-(const DMatrix& a, const DMatrix& b);
DMatrix operator*(const DMatrix& a, const DMatrix& b);
DMatrix operator*(double s, const DMatrix& a);

DMatrix to_dmatrix(const RatMatrix& m);

// Eigenvalues of a symmetric matrix in ascending order (cyclic Jacobi).
std::vector<double> eig_sym(const DMatrix& m);

struct EigenSystem {
    std::vector<double> values;  // ascending
    DMatrix vectors;             // column i pairs with values[i]
};
EigenSystem eig_sym_full(const DMatrix& m);

// Pseudoinverse of a symmetric matrix via its eigendecomposition.
// Eigenvalues with |lambda| <= 1e-10 * max|lambda| count as zero.
DMatrix pinv_sym(const DMatrix& m);

DMatrix projector(const DMatrix& a);

struct CompleteSymmetryF {
    bool is_cs = false;
    double a = 0.0;
    double b = 0.0;
};

// Fit a,b by entry means; accept when the residual is below
// rel_tol * max(1, max|entry|).
CompleteSymmetryF complete_symmetry(const DMatrix& m, double rel_tol = 1e-9);

// min eigenvalue >= -tol.
bool is_psd(const RatMatrix& m, double tol = 1e-9);

}  // namespace cnbd

#endif
