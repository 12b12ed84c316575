#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "matls/linalg.hpp"

/// Online identification of MIMO ARMA models
///   y_k = -sum_{i=1..order} F_i y_{k-i} + sum_{i=0..order} G_i u_{k-i}
/// in the transposed measurement form y_k = theta * phi_k, with
/// theta = [F_1 ... F_order  G_0 ... G_order] and the stacked regressor
/// phi_k = [-y_{k-1}; ...; -y_{k-order}; u_k; ...; u_{k-order}].
namespace matls::arma {

struct ArmaDims {
    std::size_t order = 1;   ///< model order
    std::size_t outputs = 1; ///< p, rows of y
    std::size_t inputs = 1;  ///< m_u, rows of u

    /// Length of phi_k: order * (inputs + outputs) + inputs.
    std::size_t regressor_length() const { return order * (inputs + outputs) + inputs; }
    /// Columns of theta, equal to regressor_length().
    std::size_t coefficient_cols() const { return regressor_length(); }

    bool operator==(const ArmaDims&) const = default;
};

/// Coefficient matrices of the ARMA recursion; validated on construction.
struct ArmaModel {
    ArmaDims dims;
    std::vector<Mat> f;  ///< order matrices, each p x p
    std::vector<Mat> g;  ///< order+1 matrices, each p x m_u

    ArmaModel(ArmaDims dims, std::vector<Mat> f, std::vector<Mat> g);
};

/// theta = [F_1 ... F_order  G_0 ... G_order], p x regressor_length().
Mat pack_coefficients(const ArmaModel& model);

/// Sliding window of past outputs y_{k-1}..y_{k-order} and past inputs
/// u_{k-1}..u_{k-order}, newest first. Pre-history is zero (startup from
/// rest), with fill_count tracking how many real samples have entered.
class RegressorBuffer {
public:
    explicit RegressorBuffer(const ArmaDims& dims);

    const ArmaDims& dims() const { return dims_; }
    std::size_t fill_count() const { return fill_; }
    bool warm() const { return fill_ >= dims_.order; }

    /// y_{k-i} for i = 1..order.
    const Mat& past_output(std::size_t i) const;
    /// u_{k-i} for i = 1..order.
    const Mat& past_input(std::size_t i) const;

    /// Buffer shifted one step after observing (y_k, u_k).
    RegressorBuffer advanced(const Mat& y, const Mat& u) const;

private:
    ArmaDims dims_;
    std::vector<Mat> y_hist_;
    std::vector<Mat> u_hist_;
    std::size_t fill_ = 0;
};

/// phi_k from the buffered history and the current input.
Mat build_regressor(const RegressorBuffer& buffer, const Mat& u_now);

/// One step of the ARMA recursion: returns y_k and the advanced buffer.
std::pair<Mat, RegressorBuffer> simulate_step(const ArmaModel& model, const RegressorBuffer& buffer,
                                              const Mat& u_now);

/// Spectral radius of the companion matrix of the output recursion,
/// estimated by normalized repeated squaring. Test plants are rejection
/// sampled to keep this below 0.95.
double companion_spectral_radius(const ArmaModel& model);

/// Vec-permutation identifier: propagates P_bar over the vectorized
/// coefficients (dimension p * regressor_length()) with the dense regressor
/// phi_bar = phi^T (x) I_p and unit residual weighting.
class VecPermIdentState {
public:
    static VecPermIdentState initialize(const ArmaDims& dims, const SpdMat& pbar0, const Mat& theta0);

    const ArmaDims& dims() const { return dims_; }
    std::size_t step() const { return step_; }
    const SpdMat& pbar() const { return pbar_; }
    /// Vectorized coefficients, (p * q) x 1.
    const Mat& theta_vec() const { return theta_vec_; }
    /// Coefficients reshaped to p x q.
    Mat coefficients() const;
    std::size_t param_count() const { return pbar_.dim() * pbar_.dim() + theta_vec_.size(); }

    friend VecPermIdentState ident_step_vecperm(const VecPermIdentState& state, const Mat& phi,
                                                const Mat& y);

private:
    VecPermIdentState(ArmaDims dims, SpdMat pbar, Mat theta_vec, std::size_t step)
        : dims_(dims), pbar_(std::move(pbar)), theta_vec_(std::move(theta_vec)), step_(step) {}

    ArmaDims dims_;
    SpdMat pbar_;
    Mat theta_vec_;
    std::size_t step_;
};

/// Matrix identifier: rank-one covariance update at dimension
/// regressor_length(). Starting it from P0 matches the vec-permutation
/// identifier started from P_bar0 = P0 (x) I_p, step for step.
class MatrixIdentState {
public:
    static MatrixIdentState initialize(const ArmaDims& dims, const SpdMat& p0, const Mat& theta0);

    const ArmaDims& dims() const { return dims_; }
    std::size_t step() const { return step_; }
    const SpdMat& p() const { return p_; }
    /// Coefficients, p x q.
    const Mat& coefficients() const { return theta_; }
    std::size_t param_count() const { return p_.dim() * p_.dim() + theta_.size(); }

    friend MatrixIdentState ident_step_matrix(const MatrixIdentState& state, const Mat& phi, const Mat& y);

private:
    MatrixIdentState(ArmaDims dims, SpdMat p, Mat theta, std::size_t step)
        : dims_(dims), p_(std::move(p)), theta_(std::move(theta)), step_(step) {}

    ArmaDims dims_;
    SpdMat p_;
    Mat theta_;
    std::size_t step_;
};

VecPermIdentState ident_step_vecperm(const VecPermIdentState& state, const Mat& phi, const Mat& y);
MatrixIdentState ident_step_matrix(const MatrixIdentState& state, const Mat& phi, const Mat& y);

}  // namespace matls::arma
