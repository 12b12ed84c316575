#include "matls/estimators.hpp"

#include <string>

namespace matls {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) {
        throw std::invalid_argument(message);
    }
}

void check_measurement(const ProblemDims& dims, const Measurement& meas, const char* who) {
    require(meas.phi.rows() == dims.p && meas.phi.cols() == dims.n,
            std::string(who) + ": phi is " + std::to_string(meas.phi.rows()) + "x" +
                std::to_string(meas.phi.cols()) + ", expected " + std::to_string(dims.p) + "x" +
                std::to_string(dims.n));
    require(meas.y.rows() == dims.p && meas.y.cols() == dims.m,
            std::string(who) + ": y is " + std::to_string(meas.y.rows()) + "x" +
                std::to_string(meas.y.cols()) + ", expected " + std::to_string(dims.p) + "x" +
                std::to_string(dims.m));
}

Mat column(const Mat& a, std::size_t j) {
    Mat c(a.rows(), 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        c(i, 0) = a(i, j);
    }
    return c;
}

void set_column(Mat& a, std::size_t j, const Mat& c) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
        a(i, j) = c(i, 0);
    }
}

/// phi^T * (gamma * x), the weighted-regressor product shared by every update.
Mat weighted_cross(const Mat& phi, const SpdMat& gamma, const Mat& x) {
    return mul_transpose_lhs(phi, gamma.matrix() * x);
}

struct StepResult {
    SpdMat core;
    Mat theta;
};

StepResult information_step(const SpdMat& info, const Mat& theta, const Mat& phi, const SpdMat& gamma,
                            const Mat& y, const std::string& context) {
    SpdMat next = symmetrize(info.matrix() + weighted_cross(phi, gamma, phi));
    const Mat residual = y - phi * theta;
    const Mat rhs = weighted_cross(phi, gamma, residual);
    const Cholesky chol(next, context);
    return {std::move(next), theta + chol.solve(rhs)};
}

StepResult covariance_step(const SpdMat& cov, const Mat& theta, const Mat& phi, const SpdMat& gamma,
                           const Mat& y) {
    SpdMat next = woodbury_downdate(cov, phi, gamma);
    const Mat residual = y - phi * theta;
    return {next, theta + next.matrix() * weighted_cross(phi, gamma, residual)};
}

}  // namespace

UpdateForm default_update_form(const ProblemDims& dims) {
    return dims.n > dims.p ? UpdateForm::Covariance : UpdateForm::Information;
}

RegSpec::RegSpec(const ProblemDims& dims, RegBlocks blocks_)
    : theta0(dims.n, dims.m), blocks(std::move(blocks_)) {}

Measurement::Measurement(Mat phi_, Mat y_) : phi(std::move(phi_)), y(std::move(y_)) {
    require(phi.rows() == y.rows(), "Measurement: phi and y row counts differ");
    require(phi.all_finite() && y.all_finite(), "Measurement: entries must be finite");
}

WeightSchedule::WeightSchedule(WeightSpec constant) : constant_(true) {
    specs_.push_back(std::move(constant));
}

WeightSchedule::WeightSchedule(std::vector<WeightSpec> per_step)
    : specs_(std::move(per_step)), constant_(false) {
    require(!specs_.empty(), "WeightSchedule: per-step sequence must be non-empty");
}

const WeightSpec& WeightSchedule::at(std::size_t k) const {
    if (constant_) {
        return specs_.front();
    }
    require(k < specs_.size(), "WeightSchedule: no weight for step " + std::to_string(k));
    return specs_[k];
}

FullWeight embed_full(const WeightSpec& w, const ProblemDims& dims) {
    const std::size_t mp = dims.m * dims.p;
    if (const auto* full = std::get_if<FullWeight>(&w)) {
        require(full->gamma.dim() == mp, "weight: full block must be " + std::to_string(mp) + "x" +
                                             std::to_string(mp) + ", got " + std::to_string(full->gamma.dim()));
        return *full;
    }
    std::vector<Mat> blocks;
    blocks.reserve(dims.m);
    if (const auto* per_column = std::get_if<PerColumnWeight>(&w)) {
        require(per_column->gamma.size() == dims.m, "weight: need one block per column");
        for (const SpdMat& g : per_column->gamma) {
            require(g.dim() == dims.p, "weight: per-column blocks must be p x p");
            blocks.push_back(g.matrix());
        }
    } else {
        const auto& shared = std::get<SharedWeight>(w);
        require(shared.gamma.dim() == dims.p, "weight: shared block must be p x p");
        blocks.assign(dims.m, shared.gamma.matrix());
    }
    return FullWeight{SpdMat(block_diag(blocks))};
}

PerColumnWeight embed_per_column(const WeightSpec& w, const ProblemDims& dims) {
    if (std::holds_alternative<FullWeight>(w)) {
        throw VariantError("weight: full mp x mp weighting is only valid for the vec-permutation family");
    }
    if (const auto* per_column = std::get_if<PerColumnWeight>(&w)) {
        require(per_column->gamma.size() == dims.m, "weight: need one block per column");
        for (const SpdMat& g : per_column->gamma) {
            require(g.dim() == dims.p, "weight: per-column blocks must be p x p");
        }
        return *per_column;
    }
    const auto& shared = std::get<SharedWeight>(w);
    require(shared.gamma.dim() == dims.p, "weight: shared block must be p x p");
    PerColumnWeight out;
    out.gamma.assign(dims.m, shared.gamma);
    return out;
}

const SharedWeight& require_shared(const WeightSpec& w) {
    if (const auto* shared = std::get_if<SharedWeight>(&w)) {
        return *shared;
    }
    throw VariantError(
        "weight: the matrix-update family requires a single shared p x p weight for all columns");
}

FullReg embed_full(const RegBlocks& r, const ProblemDims& dims) {
    const std::size_t mn = dims.m * dims.n;
    if (const auto* full = std::get_if<FullReg>(&r)) {
        require(full->r.dim() == mn, "reg: full block must be " + std::to_string(mn) + "x" +
                                         std::to_string(mn) + ", got " + std::to_string(full->r.dim()));
        return *full;
    }
    std::vector<Mat> blocks;
    blocks.reserve(dims.m);
    if (const auto* per_column = std::get_if<PerColumnReg>(&r)) {
        require(per_column->r.size() == dims.m, "reg: need one block per column");
        for (const SpdMat& b : per_column->r) {
            require(b.dim() == dims.n, "reg: per-column blocks must be n x n");
            blocks.push_back(b.matrix());
        }
    } else {
        const auto& shared = std::get<SharedReg>(r);
        require(shared.r.dim() == dims.n, "reg: shared block must be n x n");
        blocks.assign(dims.m, shared.r.matrix());
    }
    return FullReg{SpdMat(block_diag(blocks))};
}

PerColumnReg embed_per_column(const RegBlocks& r, const ProblemDims& dims) {
    if (std::holds_alternative<FullReg>(r)) {
        throw VariantError("reg: full mn x mn regularization is only valid for the vec-permutation family");
    }
    if (const auto* per_column = std::get_if<PerColumnReg>(&r)) {
        require(per_column->r.size() == dims.m, "reg: need one block per column");
        for (const SpdMat& b : per_column->r) {
            require(b.dim() == dims.n, "reg: per-column blocks must be n x n");
        }
        return *per_column;
    }
    const auto& shared = std::get<SharedReg>(r);
    require(shared.r.dim() == dims.n, "reg: shared block must be n x n");
    PerColumnReg out;
    out.r.assign(dims.m, shared.r);
    return out;
}

const SharedReg& require_shared(const RegBlocks& r) {
    if (const auto* shared = std::get_if<SharedReg>(&r)) {
        return *shared;
    }
    throw VariantError("reg: the matrix-update family requires a single shared n x n regularization");
}

// ---------------------------------------------------------------------------
// Vec-permutation family
// ---------------------------------------------------------------------------

VecPermState VecPermState::initialize(const ProblemDims& dims, const RegSpec& reg, UpdateForm form) {
    require(reg.theta0.rows() == dims.n && reg.theta0.cols() == dims.m,
            "VecPermState: theta0 must be n x m");
    const FullReg full = embed_full(reg.blocks, dims);
    SpdMat core = form == UpdateForm::Covariance ? spd_inverse(full.r) : full.r;
    return VecPermState(dims, form, std::move(core), vec(reg.theta0), 0);
}

Mat VecPermState::estimate() const {
    return unvec(theta_bar_, dims_.n, dims_.m);
}

SpdMat VecPermState::covariance() const {
    return form_ == UpdateForm::Covariance ? core_ : spd_inverse(core_);
}

VecPermState VecPermState::restore(const ProblemDims& dims, UpdateForm form, SpdMat core, Mat theta_bar,
                                   std::size_t step) {
    require(core.dim() == dims.n * dims.m, "VecPermState::restore: core must be mn x mn");
    require(theta_bar.rows() == dims.n * dims.m && theta_bar.cols() == 1,
            "VecPermState::restore: theta_bar must be mn x 1");
    return VecPermState(dims, form, std::move(core), std::move(theta_bar), step);
}

VecPermState vec_perm_step(const VecPermState& state, const Measurement& meas, const WeightSpec& weight) {
    check_measurement(state.dims_, meas, "vec_perm_step");
    const FullWeight gamma = embed_full(weight, state.dims_);
    const Mat phi_bar = kron(Mat::identity(state.dims_.m), meas.phi);
    const Mat y_bar = vec(meas.y);
    StepResult next = state.form_ == UpdateForm::Information
                          ? information_step(state.core_, state.theta_bar_, phi_bar, gamma.gamma, y_bar,
                                             "vec_perm_step")
                          : covariance_step(state.core_, state.theta_bar_, phi_bar, gamma.gamma, y_bar);
    return VecPermState(state.dims_, state.form_, std::move(next.core), std::move(next.theta),
                        state.step_ + 1);
}

Mat vec_perm_batch(std::span<const Measurement> data, const RegSpec& reg, const WeightSchedule& weights) {
    const ProblemDims dims{data.empty() ? 1 : data.front().phi.rows(), reg.theta0.rows(),
                           reg.theta0.cols()};
    const FullReg full_reg = embed_full(reg.blocks, dims);
    if (data.empty()) {
        return vec(reg.theta0);
    }
    Mat a = full_reg.r.matrix();
    Mat b = full_reg.r.matrix() * vec(reg.theta0);
    const Mat eye_m = Mat::identity(dims.m);
    for (std::size_t i = 0; i < data.size(); ++i) {
        check_measurement(dims, data[i], "vec_perm_batch");
        const FullWeight gamma = embed_full(weights.at(i), dims);
        const Mat phi_bar = kron(eye_m, data[i].phi);
        const Mat weighted = gamma.gamma.matrix() * phi_bar;
        a += mul_transpose_lhs(phi_bar, weighted);
        b += mul_transpose_lhs(weighted, vec(data[i].y));
    }
    return Cholesky(symmetrize(a), "vec_perm_batch").solve(b);
}

// ---------------------------------------------------------------------------
// Column-by-column family
// ---------------------------------------------------------------------------

ColumnwiseState ColumnwiseState::initialize(const ProblemDims& dims, const RegSpec& reg, UpdateForm form) {
    require(reg.theta0.rows() == dims.n && reg.theta0.cols() == dims.m,
            "ColumnwiseState: theta0 must be n x m");
    const PerColumnReg per_column = embed_per_column(reg.blocks, dims);
    std::vector<SpdMat> cores;
    std::vector<Mat> cols;
    cores.reserve(dims.m);
    cols.reserve(dims.m);
    for (std::size_t j = 0; j < dims.m; ++j) {
        cores.push_back(form == UpdateForm::Covariance ? spd_inverse(per_column.r[j]) : per_column.r[j]);
        cols.push_back(column(reg.theta0, j));
    }
    return ColumnwiseState(dims, form, std::move(cores), std::move(cols), 0);
}

Mat ColumnwiseState::estimate() const {
    Mat out(dims_.n, dims_.m);
    for (std::size_t j = 0; j < dims_.m; ++j) {
        set_column(out, j, theta_cols_[j]);
    }
    return out;
}

SpdMat ColumnwiseState::covariance(std::size_t j) const {
    require(j < dims_.m, "ColumnwiseState::covariance: column out of range");
    return form_ == UpdateForm::Covariance ? cores_[j] : spd_inverse(cores_[j]);
}

ColumnwiseState ColumnwiseState::restore(const ProblemDims& dims, UpdateForm form,
                                         std::vector<SpdMat> cores, std::vector<Mat> theta_cols,
                                         std::size_t step) {
    require(cores.size() == dims.m && theta_cols.size() == dims.m,
            "ColumnwiseState::restore: need one core and one column per parameter column");
    for (std::size_t j = 0; j < dims.m; ++j) {
        require(cores[j].dim() == dims.n, "ColumnwiseState::restore: cores must be n x n");
        require(theta_cols[j].rows() == dims.n && theta_cols[j].cols() == 1,
                "ColumnwiseState::restore: columns must be n x 1");
    }
    return ColumnwiseState(dims, form, std::move(cores), std::move(theta_cols), step);
}

ColumnwiseState columnwise_step(const ColumnwiseState& state, const Measurement& meas,
                                const WeightSpec& weight) {
    check_measurement(state.dims_, meas, "columnwise_step");
    const PerColumnWeight gamma = embed_per_column(weight, state.dims_);
    std::vector<SpdMat> cores;
    std::vector<Mat> cols;
    cores.reserve(state.dims_.m);
    cols.reserve(state.dims_.m);
    for (std::size_t j = 0; j < state.dims_.m; ++j) {
        const Mat yj = column(meas.y, j);
        try {
            StepResult next = state.form_ == UpdateForm::Information
                                  ? information_step(state.cores_[j], state.theta_cols_[j], meas.phi,
                                                     gamma.gamma[j], yj, "columnwise_step")
                                  : covariance_step(state.cores_[j], state.theta_cols_[j], meas.phi,
                                                    gamma.gamma[j], yj);
            cores.push_back(std::move(next.core));
            cols.push_back(std::move(next.theta));
        } catch (const NotPositiveDefiniteError& e) {
            throw NotPositiveDefiniteError(e.pivot_index(), e.pivot_value(),
                                           "columnwise_step: column " + std::to_string(j));
        }
    }
    return ColumnwiseState(state.dims_, state.form_, std::move(cores), std::move(cols), state.step_ + 1);
}

Mat columnwise_batch(std::span<const Measurement> data, const RegSpec& reg, const WeightSchedule& weights) {
    const ProblemDims dims{data.empty() ? 1 : data.front().phi.rows(), reg.theta0.rows(),
                           reg.theta0.cols()};
    const PerColumnReg per_reg = embed_per_column(reg.blocks, dims);
    if (data.empty()) {
        return reg.theta0;
    }
    std::vector<Mat> a;
    std::vector<Mat> b;
    a.reserve(dims.m);
    b.reserve(dims.m);
    for (std::size_t j = 0; j < dims.m; ++j) {
        a.push_back(per_reg.r[j].matrix());
        b.push_back(per_reg.r[j].matrix() * column(reg.theta0, j));
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
        check_measurement(dims, data[i], "columnwise_batch");
        const PerColumnWeight gamma = embed_per_column(weights.at(i), dims);
        for (std::size_t j = 0; j < dims.m; ++j) {
            const Mat weighted = gamma.gamma[j].matrix() * data[i].phi;
            a[j] += mul_transpose_lhs(data[i].phi, weighted);
            b[j] += mul_transpose_lhs(weighted, column(data[i].y, j));
        }
    }
    Mat out(dims.n, dims.m);
    for (std::size_t j = 0; j < dims.m; ++j) {
        const Cholesky chol(symmetrize(a[j]), "columnwise_batch: column " + std::to_string(j));
        set_column(out, j, chol.solve(b[j]));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Matrix-update family
// ---------------------------------------------------------------------------

MatrixUpdateState MatrixUpdateState::initialize(const ProblemDims& dims, const RegSpec& reg,
                                                UpdateForm form) {
    require(reg.theta0.rows() == dims.n && reg.theta0.cols() == dims.m,
            "MatrixUpdateState: theta0 must be n x m");
    const SharedReg& shared = require_shared(reg.blocks);
    require(shared.r.dim() == dims.n, "MatrixUpdateState: shared R must be n x n");
    SpdMat core = form == UpdateForm::Covariance ? spd_inverse(shared.r) : shared.r;
    return MatrixUpdateState(dims, form, std::move(core), reg.theta0, 0);
}

SpdMat MatrixUpdateState::covariance() const {
    return form_ == UpdateForm::Covariance ? core_ : spd_inverse(core_);
}

MatrixUpdateState MatrixUpdateState::restore(const ProblemDims& dims, UpdateForm form, SpdMat core,
                                             Mat theta, std::size_t step) {
    require(core.dim() == dims.n, "MatrixUpdateState::restore: core must be n x n");
    require(theta.rows() == dims.n && theta.cols() == dims.m,
            "MatrixUpdateState::restore: theta must be n x m");
    return MatrixUpdateState(dims, form, std::move(core), std::move(theta), step);
}

MatrixUpdateState matrix_step(const MatrixUpdateState& state, const Measurement& meas,
                              const WeightSpec& weight) {
    check_measurement(state.dims_, meas, "matrix_step");
    const SharedWeight& gamma = require_shared(weight);
    require(gamma.gamma.dim() == state.dims_.p, "matrix_step: shared weight must be p x p");
    StepResult next = state.form_ == UpdateForm::Information
                          ? information_step(state.core_, state.theta_, meas.phi, gamma.gamma, meas.y,
                                             "matrix_step")
                          : covariance_step(state.core_, state.theta_, meas.phi, gamma.gamma, meas.y);
    return MatrixUpdateState(state.dims_, state.form_, std::move(next.core), std::move(next.theta),
                             state.step_ + 1);
}

Mat matrix_batch(std::span<const Measurement> data, const RegSpec& reg, const WeightSchedule& weights) {
    const ProblemDims dims{data.empty() ? 1 : data.front().phi.rows(), reg.theta0.rows(),
                           reg.theta0.cols()};
    const SharedReg& shared = require_shared(reg.blocks);
    require(shared.r.dim() == dims.n, "matrix_batch: shared R must be n x n");
    if (data.empty()) {
        return reg.theta0;
    }
    Mat a = shared.r.matrix();
    Mat b = shared.r.matrix() * reg.theta0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        check_measurement(dims, data[i], "matrix_batch");
        const SharedWeight& gamma = require_shared(weights.at(i));
        require(gamma.gamma.dim() == dims.p, "matrix_batch: shared weight must be p x p");
        const Mat weighted = gamma.gamma.matrix() * data[i].phi;
        a += mul_transpose_lhs(data[i].phi, weighted);
        b += mul_transpose_lhs(weighted, data[i].y);
    }
    return Cholesky(symmetrize(a), "matrix_batch").solve(b);
}

// ---------------------------------------------------------------------------
// Vector RLS building block
// ---------------------------------------------------------------------------

std::pair<SpdMat, Mat> vector_rls_step(const SpdMat& p, const Mat& theta, const Mat& phi, const Mat& y,
                                       const SpdMat& gamma, UpdateForm form) {
    require(theta.cols() == 1 && y.cols() == 1, "vector_rls_step: theta and y must be column vectors");
    require(phi.cols() == p.dim() && theta.rows() == p.dim(), "vector_rls_step: dimension mismatch");
    require(phi.rows() == y.rows() && gamma.dim() == phi.rows(), "vector_rls_step: dimension mismatch");
    if (form == UpdateForm::Information) {
        StepResult next = information_step(spd_inverse(p), theta, phi, gamma, y, "vector_rls_step");
        return {spd_inverse(next.core), std::move(next.theta)};
    }
    StepResult next = covariance_step(p, theta, phi, gamma, y);
    return {std::move(next.core), std::move(next.theta)};
}

std::size_t state_param_count(const VecPermState& state) {
    return state.core().dim() * state.core().dim() + state.theta_bar().size();
}

std::size_t state_param_count(const ColumnwiseState& state) {
    std::size_t count = 0;
    for (const SpdMat& core : state.cores()) {
        count += core.dim() * core.dim();
    }
    for (const Mat& col : state.columns()) {
        count += col.size();
    }
    return count;
}

std::size_t state_param_count(const MatrixUpdateState& state) {
    return state.core().dim() * state.core().dim() + state.estimate().size();
}

}  // namespace matls
