#include "matls/convergence.hpp"

#include <stdexcept>
#include <string>

namespace matls {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) {
        throw std::invalid_argument(message);
    }
}

}  // namespace

PeEstimate::PeEstimate(Mat c, std::size_t k) : c_(std::move(c)), k_(k) {
    min_eig_ = min_eigenvalue(c_);
}

PeEstimate PeEstimate::zero(std::size_t n) {
    return PeEstimate(Mat(n, n), 0);
}

PeEstimate pe_accumulate(const PeEstimate& est, const Mat& phi, const SpdMat& gamma) {
    require(phi.cols() == est.dim(), "pe_accumulate: phi has " + std::to_string(phi.cols()) +
                                         " cols, accumulator dim is " + std::to_string(est.dim()));
    require(gamma.dim() == phi.rows(), "pe_accumulate: gamma dim does not match phi rows");
    const Mat gram = mul_transpose_lhs(phi, gamma.matrix() * phi);
    const double k_next = static_cast<double>(est.k_ + 1);
    // c_{k+1} = c_k + (gram - c_k)/(k+1), kept exactly symmetric.
    Mat c = est.c_;
    for (std::size_t i = 0; i < c.rows(); ++i) {
        for (std::size_t j = i; j < c.cols(); ++j) {
            const double g = 0.5 * (gram(i, j) + gram(j, i));
            const double v = c(i, j) + (g - c(i, j)) / k_next;
            c(i, j) = v;
            c(j, i) = v;
        }
    }
    return PeEstimate(std::move(c), est.k_ + 1);
}

PeEstimate pe_merge(const PeEstimate& a, const PeEstimate& b) {
    require(a.dim() == b.dim(), "pe_merge: dimension mismatch");
    if (a.count() == 0) {
        return b;
    }
    if (b.count() == 0) {
        return a;
    }
    const double ka = static_cast<double>(a.count());
    const double kb = static_cast<double>(b.count());
    Mat c = a.c_;
    for (std::size_t i = 0; i < c.rows(); ++i) {
        for (std::size_t j = 0; j < c.cols(); ++j) {
            c(i, j) = (ka * a.c_(i, j) + kb * b.c_(i, j)) / (ka + kb);
        }
    }
    return PeEstimate(std::move(c), a.count() + b.count());
}

bool is_pe(const PeEstimate& est, double eps) {
    require(eps > 0.0, "is_pe: eps must be positive");
    return est.min_eig() > eps;
}

double scaled_error_identity_residual(const RegSpec& reg, const Mat& theta_true, const PeEstimate& est,
                               const Mat& theta_k, std::size_t k) {
    require(k >= 1, "scaled_error_identity_residual: k must be >= 1");
    const SharedReg& shared = require_shared(reg.blocks);
    const std::size_t n = shared.r.dim();
    require(theta_true.rows() == n && reg.theta0.rows() == n && theta_k.rows() == n,
            "scaled_error_identity_residual: parameter row count must match R");
    require(theta_true.cols() == theta_k.cols() && theta_true.cols() == reg.theta0.cols(),
            "scaled_error_identity_residual: parameter column counts must match");
    require(est.dim() == n, "scaled_error_identity_residual: accumulator dim must match R");

    const Mat prior_pull = shared.r.matrix() * (reg.theta0 - theta_true);
    const double kd = static_cast<double>(k);
    const Mat shrunk_gram = (1.0 / kd) * shared.r.matrix() + est.average();
    const Mat predicted = spd_solve(symmetrize(shrunk_gram), prior_pull);
    const Mat observed = kd * (theta_k - theta_true);
    return frobenius_norm(observed - predicted) / (1.0 + frobenius_norm(prior_pull));
}

Mat scaled_error_limit(const RegSpec& reg, const Mat& theta_true, const SpdMat& c) {
    const SharedReg& shared = require_shared(reg.blocks);
    require(c.dim() == shared.r.dim(), "scaled_error_limit: C dim must match R");
    require(theta_true.rows() == shared.r.dim() && theta_true.cols() == reg.theta0.cols() &&
                theta_true.rows() == reg.theta0.rows(),
            "scaled_error_limit: dimension mismatch");
    return spd_solve(c, shared.r.matrix() * (reg.theta0 - theta_true));
}

}  // namespace matls
