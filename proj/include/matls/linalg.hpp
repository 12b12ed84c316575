#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace matls {

/// Dense real matrix, 64-bit entries in row-major order.
///
/// This is the numerical currency of the whole library. Storage is always
/// dense; structured inputs (Kronecker products, block diagonals) are stored
/// and multiplied at full dense cost on purpose, so that measured run times
/// track the classical O(rows*inner*cols) arithmetic model.
class Mat {
public:
    Mat() = default;

    /// Zero-filled rows x cols matrix. Dimensions must be >= 1.
    Mat(std::size_t rows, std::size_t cols);

    /// Takes ownership of row-major entries; entries.size() must equal rows*cols
    /// and every entry must be finite.
    Mat(std::size_t rows, std::size_t cols, std::vector<double> entries);

    Mat(std::initializer_list<std::initializer_list<double>> rows);

    static Mat identity(std::size_t n);
    static Mat constant(std::size_t rows, std::size_t cols, double value);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* row_ptr(std::size_t i) { return data_.data() + i * cols_; }
    const double* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }

    const std::vector<double>& entries() const { return data_; }

    bool all_finite() const;

    Mat& operator+=(const Mat& other);
    Mat& operator-=(const Mat& other);
    Mat& operator*=(double s);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(double s, Mat a);
Mat operator*(const Mat& a, const Mat& b);

Mat transpose(const Mat& a);

/// a^T * b without materializing the transpose.
Mat mul_transpose_lhs(const Mat& a, const Mat& b);

/// a * b^T without materializing the transpose.
Mat mul_transpose_rhs(const Mat& a, const Mat& b);

double frobenius_norm(const Mat& a);
double max_abs(const Mat& a);
double trace(const Mat& a);

/// ||value - reference||_F / (1 + ||reference||_F). The deviation metric used
/// by every agreement check in this library.
double relative_error(const Mat& value, const Mat& reference);

/// Column-stacking operator: columns of x concatenated into a rows*cols x 1 vector.
Mat vec(const Mat& x);

/// Inverse of vec: reshape a (rows*cols x 1) column vector back to rows x cols.
Mat unvec(const Mat& v, std::size_t rows, std::size_t cols);

/// Kronecker product: block (i,j) of the result is a(i,j) * b.
Mat kron(const Mat& a, const Mat& b);

/// Symmetric matrix intended to be positive definite.
///
/// Construction checks squareness and symmetry (tolerance 1e-12 relative to
/// the largest entry). Positive definiteness is enforced where a factorization
/// is actually taken; see Cholesky.
class SpdMat {
public:
    explicit SpdMat(Mat m);

    static SpdMat identity(std::size_t n);
    static SpdMat scaled_identity(std::size_t n, double value);

    std::size_t dim() const { return m_.rows(); }
    const Mat& matrix() const { return m_; }
    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

private:
    Mat m_;
};

/// (m + m^T)/2 as an SpdMat. Covariance updates go through this after every
/// step so floating-point drift cannot break the symmetry invariant.
SpdMat symmetrize(const Mat& m);

/// Block-diagonal assembly of square blocks.
Mat block_diag(const std::vector<Mat>& blocks);

/// Thrown when a Cholesky pivot falls at or below the scale-relative floor
/// 1e-13 * trace/dim. Carries the offending pivot index.
class NotPositiveDefiniteError : public std::runtime_error {
public:
    NotPositiveDefiniteError(std::size_t pivot_index, double pivot_value, const std::string& context);

    std::size_t pivot_index() const { return pivot_index_; }
    double pivot_value() const { return pivot_value_; }

private:
    std::size_t pivot_index_ = 0;
    double pivot_value_ = 0.0;
};

/// Lower-triangular Cholesky factorization of an SpdMat. All solves in the
/// library go through this; explicit inverses are formed only where an
/// algorithm consumes the inverse as a matrix.
class Cholesky {
public:
    explicit Cholesky(const SpdMat& a, const std::string& context = {});

    std::size_t dim() const { return lower_.rows(); }

    /// Solves a * x = b for (possibly multi-column) b.
    Mat solve(const Mat& b) const;

    /// Dense a^{-1} via solves against the identity.
    Mat inverse() const;

    /// Lower-triangular factor L with a = L L^T.
    const Mat& lower_factor() const { return lower_; }

private:
    Mat lower_;
};

/// Solve a * x = b by factorization.
Mat spd_solve(const SpdMat& a, const Mat& b);

/// Dense inverse of an SpdMat, symmetrized.
SpdMat spd_inverse(const SpdMat& a);

/// True iff the Cholesky factorization succeeds.
bool is_positive_definite(const SpdMat& a) noexcept;

/// Matrix-inversion-lemma downdate:
///   p - p phi^T (gamma^{-1} + phi p phi^T)^{-1} phi p,
/// the covariance-form replacement for (p^{-1} + phi^T gamma phi)^{-1}.
/// Result is re-symmetrized by averaging with its transpose.
SpdMat woodbury_downdate(const SpdMat& p, const Mat& phi, const SpdMat& gamma);

/// Eigenvalues of a symmetric matrix (cyclic Jacobi), ascending.
/// Throws std::invalid_argument if m is not symmetric within tolerance.
std::vector<double> sym_eigenvalues(const Mat& m);

double min_eigenvalue(const Mat& symmetric);

}  // namespace matls
