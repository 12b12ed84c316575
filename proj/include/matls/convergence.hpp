#pragma once

#include <cstddef>

#include "matls/estimators.hpp"
#include "matls/linalg.hpp"

namespace matls {

/// Running average C_k = (1/k) sum_{i<k} phi_i^T Gamma_i phi_i of weighted
/// regressor Grammians. The sequence is persistently exciting when this
/// average converges to a positive-definite limit; min_eig tracks the
/// smallest eigenvalue of the current average.
class PeEstimate {
public:
    static PeEstimate zero(std::size_t n);

    /// Average Grammian so far (symmetric, possibly singular).
    const Mat& average() const { return c_; }
    std::size_t count() const { return k_; }
    double min_eig() const { return min_eig_; }
    std::size_t dim() const { return c_.rows(); }

    friend PeEstimate pe_accumulate(const PeEstimate& est, const Mat& phi, const SpdMat& gamma);
    friend PeEstimate pe_merge(const PeEstimate& a, const PeEstimate& b);

private:
    PeEstimate(Mat c, std::size_t k);

    Mat c_;
    std::size_t k_ = 0;
    double min_eig_ = 0.0;
};

/// Folds one weighted Grammian phi^T gamma phi into the running average.
PeEstimate pe_accumulate(const PeEstimate& est, const Mat& phi, const SpdMat& gamma);

/// Count-weighted merge of two accumulators over disjoint sample sets.
PeEstimate pe_merge(const PeEstimate& a, const PeEstimate& b);

/// True iff the smallest eigenvalue of the average exceeds eps. There is no
/// universal threshold; for iid standard-normal p x n regressors with unit
/// weight the average tends to p * I, so eps = p/2 is a practical choice.
bool is_pe(const PeEstimate& est, double eps);

/// Residual of the exact finite-k error identity for matrix-update RLS on
/// noiseless data:
///   || k (theta_k - theta_true) - (R/k + C_k)^{-1} R (theta0 - theta_true) ||_F
///   / (1 + || R (theta0 - theta_true) ||_F).
/// An algebraic identity: the value stays at rounding level for any PD inputs
/// when theta_k comes from the matrix-update recursion or batch solve and
/// C_k from pe_accumulate over the same weighted regressors.
double scaled_error_identity_residual(const RegSpec& reg, const Mat& theta_true, const PeEstimate& est,
                               const Mat& theta_k, std::size_t k);

/// Asymptotic scaled-error limit under persistent excitation:
///   lim k (theta_k - theta_true) = C^{-1} R (theta0 - theta_true).
Mat scaled_error_limit(const RegSpec& reg, const Mat& theta_true, const SpdMat& c);

}  // namespace matls
