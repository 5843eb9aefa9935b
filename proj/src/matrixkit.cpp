#include "cnbd/matrixkit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cnbd {

Rat round_decimal(const Rat& r, int places) {
    Rat scale(1);
    for (int i = 0; i < places; ++i) scale *= 10;
    Rat scaled = r * scale;
    mpz_class num = scaled.get_num();
    mpz_class den = scaled.get_den();
    // floor(|scaled| + 1/2), sign restored
    mpz_class twice = 2 * abs(num) + den;
    mpz_class q = twice / (2 * den);
    Rat out(q);
    if (sgn(num) < 0) out = -out;
    return out / scale;
}

std::string format_decimal(const Rat& r, int places) {
    Rat rounded = round_decimal(r, places);
    mpz_class scale(1);
    for (int i = 0; i < places; ++i) scale *= 10;
    mpz_class units = rounded.get_num() * scale / rounded.get_den();
    bool neg = units < 0;
    mpz_class a = abs(units);
    mpz_class whole = a / scale;
    mpz_class frac = a % scale;
    std::string fs = frac.get_str();
    while (static_cast<int>(fs.size()) < places) fs.insert(fs.begin(), '0');
    std::string out = (neg ? "-" : "") + whole.get_str();
    if (places > 0) out += "." + fs;
    return out;
}

std::string format_decimal_trim(const Rat& r, int places) {
    Rat rounded = round_decimal(r, places);
    if (rounded.get_den() == 1) return rounded.get_num().get_str();
    return format_decimal(r, places);
}

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::constant(int rows, int cols, const Rat& value) {
    RatMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = value;
    return m;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

RatMatrix RatMatrix::block(int row0, int col0, int nrows, int ncols) const {
    RatMatrix out(nrows, ncols);
    for (int i = 0; i < nrows; ++i)
        for (int j = 0; j < ncols; ++j) out(i, j) = (*this)(row0 + i, col0 + j);
    return out;
}

Rat RatMatrix::trace() const {
    Rat t(0);
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

bool RatMatrix::is_zero() const {
    for (const Rat& x : data_)
        if (x != 0) return false;
    return true;
}

bool RatMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

bool RatMatrix::operator==(const RatMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) return false;
    return data_ == other.data_;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch in +");
    RatMatrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
    return out;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch in -");
    RatMatrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
    return out;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch in *");
    RatMatrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const Rat& aik = a(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j) {
                const Rat& bkj = b(k, j);
                if (bkj != 0) out(i, j) += aik * bkj;
            }
        }
    }
    return out;
}

RatMatrix operator*(const Rat& s, const RatMatrix& a) {
    RatMatrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = s * a(i, j);
    return out;
}

RatMatrix q_matrix(int n) {
    if (n < 1) throw std::invalid_argument("q_matrix requires order >= 1");
    RatMatrix m(n, n);
    Rat off = make_rat(-1, n);
    Rat diag = make_rat(n - 1, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = (i == j) ? diag : off;
    return m;
}

namespace {

// Reduced row echelon form in place; returns pivot column indices.
std::vector<int> rref(RatMatrix& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int pr = -1;
        for (int i = r; i < m.rows(); ++i) {
            if (m(i, c) != 0) {
                pr = i;
                break;
            }
        }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(pr, j), m(r, j));
        Rat inv = 1 / m(r, c);
        for (int j = 0; j < m.cols(); ++j) m(r, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rat factor = m(i, c);
            for (int j = 0; j < m.cols(); ++j) m(i, j) -= factor * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Gauss-Jordan inverse of a nonsingular matrix.
RatMatrix inverse(const RatMatrix& a) {
    int n = a.rows();
    RatMatrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    std::vector<int> piv = rref(aug);
    for (int i = 0; i < n; ++i)
        if (i >= static_cast<int>(piv.size()) || piv[i] != i) throw std::invalid_argument("matrix is singular");
    return aug.block(0, n, n, n);
}

}  // namespace

int rank(const RatMatrix& a) {
    RatMatrix m = a;
    return static_cast<int>(rref(m).size());
}

RatMatrix pinv(const RatMatrix& a) {
    RatMatrix red = a;
    std::vector<int> piv = rref(red);
    int r = static_cast<int>(piv.size());
    if (r == 0) return RatMatrix(a.cols(), a.rows());
    RatMatrix f(a.rows(), r);  // pivot columns of a
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < r; ++j) f(i, j) = a(i, piv[j]);
    RatMatrix g = red.block(0, 0, r, a.cols());
    RatMatrix gt = g.transpose();
    RatMatrix ft = f.transpose();
    return gt * inverse(g * gt) * inverse(ft * f) * ft;
}

RatMatrix projector(const RatMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("projector requires a nonempty matrix");
    RatMatrix at = a.transpose();
    return a * pinv(at * a) * at;
}

CompleteSymmetry complete_symmetry(const RatMatrix& m) {
    CompleteSymmetry out;
    if (m.rows() != m.cols() || m.rows() == 0) return out;
    int n = m.rows();
    if (n == 1) {
        out.is_cs = true;
        out.a = m(0, 0);
        out.b = 0;
        return out;
    }
    Rat diag = m(0, 0);
    Rat off = m(0, 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if ((m(i, j) != (i == j ? diag : off))) return out;
        }
    }
    out.is_cs = true;
    out.a = diag - off;
    out.b = off;
    return out;
}

// ---------------------------------------------------------------------------

DMatrix DMatrix::identity(int n) {
    DMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DMatrix DMatrix::transpose() const {
    DMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

std::vector<double> DMatrix::apply(const std::vector<double>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("vector length mismatch in apply");
    std::vector<double> out(rows_, 0.0);
    for (int i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

DMatrix operator+(const DMatrix& a, const DMatrix& b) {
    DMatrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
    return out;
}

DMatrix operator-(const DMatrix& a, const DMatrix& b) {
    DMatrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
    return out;
}

DMatrix operator*(const DMatrix& a, const DMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch in *");
    DMatrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

DMatrix operator*(double s, const DMatrix& a) {
    DMatrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = s * a(i, j);
    return out;
}

DMatrix to_dmatrix(const RatMatrix& m) {
    DMatrix out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
    return out;
}

EigenSystem eig_sym_full(const DMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eig_sym requires a square matrix");
    int n = m.rows();
    DMatrix a = m;
    // symmetrize against representation noise
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double avg = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = avg;
            a(j, i) = avg;
        }
    DMatrix v = DMatrix::identity(n);
    auto offnorm = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
        return s;
    };
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::fabs(a(i, j)));
    double stop = (scale * scale) * 1e-30 * n * n;
    for (int sweep = 0; sweep < 128 && offnorm() > stop; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (std::fabs(apq) <= scale * 1e-300) continue;
                double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int i = 0; i < n; ++i) {
                    double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (int j = 0; j < n; ++j) {
                    double apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj - s * aqj;
                    a(q, j) = s * apj + c * aqj;
                }
                for (int i = 0; i < n; ++i) {
                    double vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
    }
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) < a(y, y); });
    EigenSystem out;
    out.values.resize(n);
    out.vectors = DMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]);
        for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

std::vector<double> eig_sym(const DMatrix& m) { return eig_sym_full(m).values; }

DMatrix pinv_sym(const DMatrix& m) {
    EigenSystem es = eig_sym_full(m);
    int n = m.rows();
    double maxabs = 0.0;
    for (double l : es.values) maxabs = std::max(maxabs, std::fabs(l));
    double cut = 1e-10 * maxabs;
    DMatrix out(n, n);
    for (int k = 0; k < n; ++k) {
        if (std::fabs(es.values[k]) <= cut) continue;
        double inv = 1.0 / es.values[k];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out(i, j) += inv * es.vectors(i, k) * es.vectors(j, k);
    }
    return out;
}

DMatrix projector(const DMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("projector requires a nonempty matrix");
    DMatrix at = a.transpose();
    return a * pinv_sym(at * a) * at;
}

CompleteSymmetryF complete_symmetry(const DMatrix& m, double rel_tol) {
    CompleteSymmetryF out;
    if (m.rows() != m.cols() || m.rows() == 0) return out;
    int n = m.rows();
    double diag = 0.0, off = 0.0, maxabs = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            maxabs = std::max(maxabs, std::fabs(m(i, j)));
            (i == j ? diag : off) += m(i, j);
        }
    diag /= n;
    if (n > 1) off /= static_cast<double>(n) * (n - 1);
    double tol = rel_tol * std::max(1.0, maxabs);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) worst = std::max(worst, std::fabs(m(i, j) - (i == j ? diag : off)));
    out.is_cs = worst <= tol;
    out.a = diag - off;
    out.b = off;
    return out;
}

bool is_psd(const RatMatrix& m, double tol) {
    std::vector<double> ev = eig_sym(to_dmatrix(m));
    return ev.empty() || ev.front() >= -tol;
}

}  // namespace cnbd
