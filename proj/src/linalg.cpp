#include "matls/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace matls {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) {
        throw std::invalid_argument(message);
    }
}

std::string dim_string(const Mat& a) {
    return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

}  // namespace

Mat::Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    require(rows >= 1 && cols >= 1, "Mat: dimensions must be positive");
}

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    require(rows >= 1 && cols >= 1, "Mat: dimensions must be positive");
    require(data_.size() == rows * cols, "Mat: entry count does not match rows*cols");
    require(all_finite(), "Mat: entries must be finite");
}

Mat::Mat(std::initializer_list<std::initializer_list<double>> rows) {
    require(rows.size() >= 1, "Mat: need at least one row");
    rows_ = rows.size();
    cols_ = rows.begin()->size();
    require(cols_ >= 1, "Mat: need at least one column");
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        require(r.size() == cols_, "Mat: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    require(all_finite(), "Mat: entries must be finite");
}

Mat Mat::identity(std::size_t n) {
    Mat out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        out(i, i) = 1.0;
    }
    return out;
}

Mat Mat::constant(std::size_t rows, std::size_t cols, double value) {
    Mat out(rows, cols);
    std::fill(out.data_.begin(), out.data_.end(), value);
    return out;
}

bool Mat::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Mat& Mat::operator+=(const Mat& other) {
    require(rows_ == other.rows_ && cols_ == other.cols_,
            "Mat::operator+=: shape mismatch " + dim_string(*this) + " vs " + dim_string(other));
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += other.data_[i];
    }
    return *this;
}

Mat& Mat::operator-=(const Mat& other) {
    require(rows_ == other.rows_ && cols_ == other.cols_,
            "Mat::operator-=: shape mismatch " + dim_string(*this) + " vs " + dim_string(other));
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

Mat& Mat::operator*=(double s) {
    for (double& v : data_) {
        v *= s;
    }
    return *this;
}

Mat operator+(Mat a, const Mat& b) {
    a += b;
    return a;
}

Mat operator-(Mat a, const Mat& b) {
    a -= b;
    return a;
}

Mat operator*(double s, Mat a) {
    a *= s;
    return a;
}

Mat operator*(const Mat& a, const Mat& b) {
    require(a.cols() == b.rows(),
            "Mat::operator*: inner dimension mismatch " + dim_string(a) + " * " + dim_string(b));
    Mat c(a.rows(), b.cols());
    const std::size_t n = b.cols();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double* crow = c.row_ptr(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            const double* brow = b.row_ptr(k);
            for (std::size_t j = 0; j < n; ++j) {
                crow[j] += aik * brow[j];
            }
        }
    }
    return c;
}

Mat transpose(const Mat& a) {
    Mat t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            t(j, i) = a(i, j);
        }
    }
    return t;
}

Mat mul_transpose_lhs(const Mat& a, const Mat& b) {
    require(a.rows() == b.rows(),
            "mul_transpose_lhs: dimension mismatch " + dim_string(a) + "^T * " + dim_string(b));
    Mat c(a.cols(), b.cols());
    const std::size_t n = b.cols();
    for (std::size_t k = 0; k < a.rows(); ++k) {
        const double* arow = a.row_ptr(k);
        const double* brow = b.row_ptr(k);
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double aki = arow[i];
            double* crow = c.row_ptr(i);
            for (std::size_t j = 0; j < n; ++j) {
                crow[j] += aki * brow[j];
            }
        }
    }
    return c;
}

Mat mul_transpose_rhs(const Mat& a, const Mat& b) {
    require(a.cols() == b.cols(),
            "mul_transpose_rhs: dimension mismatch " + dim_string(a) + " * " + dim_string(b) + "^T");
    Mat c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* arow = a.row_ptr(i);
        double* crow = c.row_ptr(i);
        for (std::size_t j = 0; j < b.rows(); ++j) {
            const double* brow = b.row_ptr(j);
            double acc = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) {
                acc += arow[k] * brow[k];
            }
            crow[j] = acc;
        }
    }
    return c;
}

double frobenius_norm(const Mat& a) {
    double acc = 0.0;
    for (double v : a.entries()) {
        acc += v * v;
    }
    return std::sqrt(acc);
}

double max_abs(const Mat& a) {
    double m = 0.0;
    for (double v : a.entries()) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

double trace(const Mat& a) {
    double t = 0.0;
    const std::size_t n = std::min(a.rows(), a.cols());
    for (std::size_t i = 0; i < n; ++i) {
        t += a(i, i);
    }
    return t;
}

double relative_error(const Mat& value, const Mat& reference) {
    require(value.rows() == reference.rows() && value.cols() == reference.cols(),
            "relative_error: shape mismatch");
    return frobenius_norm(value - reference) / (1.0 + frobenius_norm(reference));
}

Mat vec(const Mat& x) {
    Mat v(x.rows() * x.cols(), 1);
    std::size_t idx = 0;
    for (std::size_t j = 0; j < x.cols(); ++j) {
        for (std::size_t i = 0; i < x.rows(); ++i) {
            v(idx++, 0) = x(i, j);
        }
    }
    return v;
}

Mat unvec(const Mat& v, std::size_t rows, std::size_t cols) {
    require(v.cols() == 1, "unvec: input must be a column vector");
    require(v.rows() == rows * cols, "unvec: vector length " + std::to_string(v.rows()) +
                                         " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
    Mat x(rows, cols);
    std::size_t idx = 0;
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < rows; ++i) {
            x(i, j) = v(idx++, 0);
        }
    }
    return x;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia) {
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const double scale = a(ia, ja);
            if (scale == 0.0) {
                continue;
            }
            for (std::size_t ib = 0; ib < b.rows(); ++ib) {
                double* orow = out.row_ptr(ia * b.rows() + ib) + ja * b.cols();
                const double* brow = b.row_ptr(ib);
                for (std::size_t jb = 0; jb < b.cols(); ++jb) {
                    orow[jb] = scale * brow[jb];
                }
            }
        }
    }
    return out;
}

SpdMat::SpdMat(Mat m) : m_(std::move(m)) {
    require(m_.rows() == m_.cols(), "SpdMat: matrix must be square, got " + dim_string(m_));
    const double scale = 1.0 + max_abs(m_);
    for (std::size_t i = 0; i < m_.rows(); ++i) {
        for (std::size_t j = i + 1; j < m_.cols(); ++j) {
            if (std::abs(m_(i, j) - m_(j, i)) > 1e-12 * scale) {
                throw std::invalid_argument("SpdMat: not symmetric at (" + std::to_string(i) + "," +
                                            std::to_string(j) + ")");
            }
        }
    }
}

SpdMat SpdMat::identity(std::size_t n) {
    return SpdMat(Mat::identity(n));
}

SpdMat SpdMat::scaled_identity(std::size_t n, double value) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = value;
    }
    return SpdMat(std::move(m));
}

SpdMat symmetrize(const Mat& m) {
    require(m.rows() == m.cols(), "symmetrize: matrix must be square");
    Mat s(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            s(i, j) = 0.5 * (m(i, j) + m(j, i));
        }
    }
    return SpdMat(std::move(s));
}

Mat block_diag(const std::vector<Mat>& blocks) {
    require(!blocks.empty(), "block_diag: need at least one block");
    std::size_t dim = 0;
    for (const Mat& b : blocks) {
        require(b.rows() == b.cols(), "block_diag: blocks must be square");
        dim += b.rows();
    }
    Mat out(dim, dim);
    std::size_t offset = 0;
    for (const Mat& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i) {
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(offset + i, offset + j) = b(i, j);
            }
        }
        offset += b.rows();
    }
    return out;
}

NotPositiveDefiniteError::NotPositiveDefiniteError(std::size_t pivot_index, double pivot_value,
                                                   const std::string& context)
    : std::runtime_error((context.empty() ? std::string("matrix") : context) +
                         ": not positive definite (pivot " + std::to_string(pivot_index) + " = " +
                         std::to_string(pivot_value) + ")"),
      pivot_index_(pivot_index),
      pivot_value_(pivot_value) {}

Cholesky::Cholesky(const SpdMat& a, const std::string& context) : lower_(a.dim(), a.dim()) {
    const Mat& m = a.matrix();
    const std::size_t n = a.dim();
    // Scale-relative floor: a pivot at or below 1e-13 * trace/dim counts as
    // non-positive.
    const double floor = 1e-13 * trace(m) / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = m(j, j);
        for (std::size_t k = 0; k < j; ++k) {
            d -= lower_(j, k) * lower_(j, k);
        }
        if (!(d > floor) || !std::isfinite(d)) {
            throw NotPositiveDefiniteError(j, d, context);
        }
        const double ljj = std::sqrt(d);
        lower_(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double acc = m(i, j);
            const double* li = lower_.row_ptr(i);
            const double* lj = lower_.row_ptr(j);
            for (std::size_t k = 0; k < j; ++k) {
                acc -= li[k] * lj[k];
            }
            lower_(i, j) = acc / ljj;
        }
    }
}

Mat Cholesky::solve(const Mat& b) const {
    const std::size_t n = dim();
    require(b.rows() == n, "Cholesky::solve: right-hand side has " + std::to_string(b.rows()) +
                               " rows, expected " + std::to_string(n));
    Mat x = b;
    const std::size_t c = b.cols();
    // Forward substitution L z = b.
    for (std::size_t i = 0; i < n; ++i) {
        const double* li = lower_.row_ptr(i);
        double* xi = x.row_ptr(i);
        for (std::size_t k = 0; k < i; ++k) {
            const double lik = li[k];
            const double* xk = x.row_ptr(k);
            for (std::size_t j = 0; j < c; ++j) {
                xi[j] -= lik * xk[j];
            }
        }
        const double inv = 1.0 / li[i];
        for (std::size_t j = 0; j < c; ++j) {
            xi[j] *= inv;
        }
    }
    // Back substitution L^T x = z.
    for (std::size_t ii = n; ii-- > 0;) {
        double* xi = x.row_ptr(ii);
        for (std::size_t k = ii + 1; k < n; ++k) {
            const double lki = lower_(k, ii);
            const double* xk = x.row_ptr(k);
            for (std::size_t j = 0; j < c; ++j) {
                xi[j] -= lki * xk[j];
            }
        }
        const double inv = 1.0 / lower_(ii, ii);
        for (std::size_t j = 0; j < c; ++j) {
            xi[j] *= inv;
        }
    }
    return x;
}

Mat Cholesky::inverse() const {
    return solve(Mat::identity(dim()));
}

Mat spd_solve(const SpdMat& a, const Mat& b) {
    return Cholesky(a, "spd_solve").solve(b);
}

SpdMat spd_inverse(const SpdMat& a) {
    return symmetrize(Cholesky(a, "spd_inverse").inverse());
}

bool is_positive_definite(const SpdMat& a) noexcept {
    try {
        Cholesky chol(a);
        return true;
    } catch (const NotPositiveDefiniteError&) {
        return false;
    }
}

SpdMat woodbury_downdate(const SpdMat& p, const Mat& phi, const SpdMat& gamma) {
    require(phi.cols() == p.dim(), "woodbury_downdate: phi has " + std::to_string(phi.cols()) +
                                       " cols, covariance dim is " + std::to_string(p.dim()));
    require(gamma.dim() == phi.rows(), "woodbury_downdate: gamma dim " + std::to_string(gamma.dim()) +
                                           " does not match phi rows " + std::to_string(phi.rows()));
    const Mat cross = mul_transpose_rhs(p.matrix(), phi);          // p phi^T
    const Mat gram = phi * cross;                                  // phi p phi^T
    const Mat gamma_inv = Cholesky(gamma, "woodbury_downdate: gamma").inverse();
    SpdMat inner = symmetrize(gamma_inv + gram);
    const Mat gain = Cholesky(inner, "woodbury_downdate: inner").solve(transpose(cross));
    return symmetrize(p.matrix() - cross * gain);
}

std::vector<double> sym_eigenvalues(const Mat& m) {
    require(m.rows() == m.cols(), "sym_eigenvalues: matrix must be square");
    const double scale = 1.0 + max_abs(m);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            require(std::abs(m(i, j) - m(j, i)) <= 1e-9 * scale, "sym_eigenvalues: matrix not symmetric");
        }
    }
    Mat a = m;
    const std::size_t n = a.rows();
    if (n == 1) {
        return {a(0, 0)};
    }
    // Cyclic Jacobi sweeps until the off-diagonal mass is negligible.
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                off += a(i, j) * a(i, j);
            }
        }
        if (std::sqrt(off) <= 1e-15 * scale * static_cast<double>(n)) {
            break;
        }
        for (std::size_t p = 0; p < n - 1; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-300) {
                    continue;
                }
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eigs(n);
    for (std::size_t i = 0; i < n; ++i) {
        eigs[i] = a(i, i);
    }
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

double min_eigenvalue(const Mat& symmetric) {
    return sym_eigenvalues(symmetric).front();
}

}  // namespace matls
