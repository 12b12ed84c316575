#include "matls/arma.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace matls::arma {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) {
        throw std::invalid_argument(message);
    }
}

}  // namespace

ArmaModel::ArmaModel(ArmaDims dims_, std::vector<Mat> f_, std::vector<Mat> g_)
    : dims(dims_), f(std::move(f_)), g(std::move(g_)) {
    require(dims.order >= 1, "ArmaModel: order must be >= 1");
    require(f.size() == dims.order, "ArmaModel: need order F matrices");
    require(g.size() == dims.order + 1, "ArmaModel: need order+1 G matrices");
    for (const Mat& fi : f) {
        require(fi.rows() == dims.outputs && fi.cols() == dims.outputs, "ArmaModel: F blocks must be p x p");
        require(fi.all_finite(), "ArmaModel: entries must be finite");
    }
    for (const Mat& gi : g) {
        require(gi.rows() == dims.outputs && gi.cols() == dims.inputs, "ArmaModel: G blocks must be p x m_u");
        require(gi.all_finite(), "ArmaModel: entries must be finite");
    }
}

Mat pack_coefficients(const ArmaModel& model) {
    const ArmaDims& d = model.dims;
    Mat theta(d.outputs, d.coefficient_cols());
    std::size_t col = 0;
    for (const Mat& fi : model.f) {
        for (std::size_t j = 0; j < d.outputs; ++j) {
            for (std::size_t i = 0; i < d.outputs; ++i) {
                theta(i, col + j) = fi(i, j);
            }
        }
        col += d.outputs;
    }
    for (const Mat& gi : model.g) {
        for (std::size_t j = 0; j < d.inputs; ++j) {
            for (std::size_t i = 0; i < d.outputs; ++i) {
                theta(i, col + j) = gi(i, j);
            }
        }
        col += d.inputs;
    }
    return theta;
}

RegressorBuffer::RegressorBuffer(const ArmaDims& dims) : dims_(dims) {
    require(dims.order >= 1 && dims.outputs >= 1 && dims.inputs >= 1,
            "RegressorBuffer: dims must be positive");
    y_hist_.assign(dims.order, Mat(dims.outputs, 1));
    u_hist_.assign(dims.order, Mat(dims.inputs, 1));
}

const Mat& RegressorBuffer::past_output(std::size_t i) const {
    require(i >= 1 && i <= dims_.order, "RegressorBuffer: lag out of range");
    return y_hist_[i - 1];
}

const Mat& RegressorBuffer::past_input(std::size_t i) const {
    require(i >= 1 && i <= dims_.order, "RegressorBuffer: lag out of range");
    return u_hist_[i - 1];
}

RegressorBuffer RegressorBuffer::advanced(const Mat& y, const Mat& u) const {
    require(y.rows() == dims_.outputs && y.cols() == 1, "RegressorBuffer: y must be p x 1");
    require(u.rows() == dims_.inputs && u.cols() == 1, "RegressorBuffer: u must be m_u x 1");
    RegressorBuffer next(*this);
    for (std::size_t i = dims_.order; i-- > 1;) {
        next.y_hist_[i] = next.y_hist_[i - 1];
        next.u_hist_[i] = next.u_hist_[i - 1];
    }
    next.y_hist_[0] = y;
    next.u_hist_[0] = u;
    next.fill_ += 1;
    return next;
}

Mat build_regressor(const RegressorBuffer& buffer, const Mat& u_now) {
    const ArmaDims& d = buffer.dims();
    require(u_now.rows() == d.inputs && u_now.cols() == 1, "build_regressor: u must be m_u x 1");
    Mat phi(d.regressor_length(), 1);
    std::size_t row = 0;
    for (std::size_t i = 1; i <= d.order; ++i) {
        const Mat& y = buffer.past_output(i);
        for (std::size_t r = 0; r < d.outputs; ++r) {
            phi(row++, 0) = -y(r, 0);
        }
    }
    for (std::size_t r = 0; r < d.inputs; ++r) {
        phi(row++, 0) = u_now(r, 0);
    }
    for (std::size_t i = 1; i <= d.order; ++i) {
        const Mat& u = buffer.past_input(i);
        for (std::size_t r = 0; r < d.inputs; ++r) {
            phi(row++, 0) = u(r, 0);
        }
    }
    return phi;
}

std::pair<Mat, RegressorBuffer> simulate_step(const ArmaModel& model, const RegressorBuffer& buffer,
                                              const Mat& u_now) {
    require(buffer.dims() == model.dims, "simulate_step: buffer and model dims differ");
    const ArmaDims& d = model.dims;
    require(u_now.rows() == d.inputs && u_now.cols() == 1, "simulate_step: u must be m_u x 1");
    Mat y = model.g.front() * u_now;
    for (std::size_t i = 1; i <= d.order; ++i) {
        y -= model.f[i - 1] * buffer.past_output(i);
        y += model.g[i] * buffer.past_input(i);
    }
    return {y, buffer.advanced(y, u_now)};
}

double companion_spectral_radius(const ArmaModel& model) {
    const ArmaDims& d = model.dims;
    const std::size_t dim = d.order * d.outputs;
    Mat companion(dim, dim);
    for (std::size_t blk = 0; blk < d.order; ++blk) {
        for (std::size_t i = 0; i < d.outputs; ++i) {
            for (std::size_t j = 0; j < d.outputs; ++j) {
                companion(i, blk * d.outputs + j) = -model.f[blk](i, j);
            }
        }
    }
    for (std::size_t i = d.outputs; i < dim; ++i) {
        companion(i, i - d.outputs) = 1.0;
    }
    // rho(A) ~ ||A^(2^t)||_F^(1/2^t); normalize between squarings to keep the
    // iterates in range and track the scale in log space.
    double log_norm = 0.0;
    Mat power = companion;
    const int squarings = 8;
    for (int t = 0; t < squarings; ++t) {
        const double scale = max_abs(power);
        if (scale == 0.0) {
            return 0.0;
        }
        power *= 1.0 / scale;
        log_norm = 2.0 * (log_norm + std::log(scale));
        power = power * power;
    }
    const double total = log_norm + std::log(frobenius_norm(power));
    return std::exp(total / std::pow(2.0, squarings));
}

VecPermIdentState VecPermIdentState::initialize(const ArmaDims& dims, const SpdMat& pbar0,
                                                const Mat& theta0) {
    const std::size_t q = dims.coefficient_cols();
    require(theta0.rows() == dims.outputs && theta0.cols() == q,
            "VecPermIdentState: theta0 must be p x regressor_length");
    require(pbar0.dim() == dims.outputs * q, "VecPermIdentState: P_bar0 must be (p*q) x (p*q)");
    return VecPermIdentState(dims, pbar0, vec(theta0), 0);
}

Mat VecPermIdentState::coefficients() const {
    return unvec(theta_vec_, dims_.outputs, dims_.coefficient_cols());
}

VecPermIdentState ident_step_vecperm(const VecPermIdentState& state, const Mat& phi, const Mat& y) {
    const ArmaDims& d = state.dims_;
    require(phi.rows() == d.regressor_length() && phi.cols() == 1,
            "ident_step_vecperm: phi must be regressor_length x 1");
    require(y.rows() == d.outputs && y.cols() == 1, "ident_step_vecperm: y must be p x 1");
    const Mat phi_bar = kron(transpose(phi), Mat::identity(d.outputs));
    SpdMat pbar_next = woodbury_downdate(state.pbar_, phi_bar, SpdMat::identity(d.outputs));
    const Mat residual = y - phi_bar * state.theta_vec_;
    Mat theta_next = state.theta_vec_ + pbar_next.matrix() * mul_transpose_lhs(phi_bar, residual);
    return VecPermIdentState(d, std::move(pbar_next), std::move(theta_next), state.step_ + 1);
}

MatrixIdentState MatrixIdentState::initialize(const ArmaDims& dims, const SpdMat& p0, const Mat& theta0) {
    const std::size_t q = dims.coefficient_cols();
    require(theta0.rows() == dims.outputs && theta0.cols() == q,
            "MatrixIdentState: theta0 must be p x regressor_length");
    require(p0.dim() == q, "MatrixIdentState: P0 must be q x q");
    return MatrixIdentState(dims, p0, theta0, 0);
}

MatrixIdentState ident_step_matrix(const MatrixIdentState& state, const Mat& phi, const Mat& y) {
    const ArmaDims& d = state.dims_;
    const std::size_t q = d.regressor_length();
    require(phi.rows() == q && phi.cols() == 1, "ident_step_matrix: phi must be regressor_length x 1");
    require(y.rows() == d.outputs && y.cols() == 1, "ident_step_matrix: y must be p x 1");

    const Mat gain = state.p_.matrix() * phi;  // P phi, q x 1
    double denom = 1.0;
    for (std::size_t i = 0; i < q; ++i) {
        denom += phi(i, 0) * gain(i, 0);
    }
    if (!(denom > 0.0)) {
        throw NotPositiveDefiniteError(0, denom, "ident_step_matrix: update denominator");
    }
    Mat p_next = state.p_.matrix();
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t j = 0; j < q; ++j) {
            p_next(i, j) -= gain(i, 0) * gain(j, 0) / denom;
        }
    }
    const Mat residual = y - state.theta_ * phi;
    SpdMat p_spd = symmetrize(p_next);
    // theta' = theta + (y - theta phi) phi^T P'.
    const Mat weighted = p_spd.matrix() * phi;  // P' phi == (phi^T P')^T
    Mat theta_next = state.theta_;
    for (std::size_t i = 0; i < d.outputs; ++i) {
        for (std::size_t j = 0; j < q; ++j) {
            theta_next(i, j) += residual(i, 0) * weighted(j, 0);
        }
    }
    return MatrixIdentState(d, std::move(p_spd), std::move(theta_next), state.step_ + 1);
}

}  // namespace matls::arma
