#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "matls/linalg.hpp"

namespace matls {

/// Measurement model y_k = phi_k * theta with y_k (p x m), phi_k (p x n),
/// theta (n x m).
struct ProblemDims {
    std::size_t p = 1;  ///< measurement rows
    std::size_t n = 1;  ///< parameter rows
    std::size_t m = 1;  ///< parameter columns

    bool operator==(const ProblemDims&) const = default;
};

/// Which recursion propagates the second-order state: the information matrix
/// P^{-1} (cheap when p >= n) or the covariance P via the matrix inversion
/// lemma (cheap when n > p).
enum class UpdateForm {
    Information,
    Covariance,
};

/// Default form for given dimensions: Covariance when n > p, Information
/// otherwise.
UpdateForm default_update_form(const ProblemDims& dims);

/// Residual weighting at one step, at one of three nesting levels:
///  - Full: a dense mp x mp weight on vec(y - phi theta_hat);
///  - PerColumn: an independent p x p weight per column of the residual;
///  - Shared: one p x p weight applied identically to every column.
struct FullWeight {
    SpdMat gamma;  ///< mp x mp
};
struct PerColumnWeight {
    std::vector<SpdMat> gamma;  ///< m blocks, each p x p
};
struct SharedWeight {
    SpdMat gamma;  ///< p x p
};
using WeightSpec = std::variant<FullWeight, PerColumnWeight, SharedWeight>;

/// Regularization blocks, same three nesting levels as WeightSpec.
struct FullReg {
    SpdMat r;  ///< mn x mn
};
struct PerColumnReg {
    std::vector<SpdMat> r;  ///< m blocks, each n x n
};
struct SharedReg {
    SpdMat r;  ///< n x n
};
using RegBlocks = std::variant<FullReg, PerColumnReg, SharedReg>;

/// Prior estimate theta0 plus regularization weight. theta0 defaults to the
/// zero matrix when only blocks are given.
struct RegSpec {
    Mat theta0;
    RegBlocks blocks;

    RegSpec(Mat theta0_, RegBlocks blocks_) : theta0(std::move(theta0_)), blocks(std::move(blocks_)) {}
    RegSpec(const ProblemDims& dims, RegBlocks blocks_);
};

/// One observation of the measurement process. Validated on construction.
struct Measurement {
    Mat phi;  ///< p x n
    Mat y;    ///< p x m

    Measurement(Mat phi_, Mat y_);
};

/// Thrown when a weight/regularization variant is too general for the
/// estimator family it was passed to (e.g. per-column weights into the
/// matrix-update family). Never silently approximated.
class VariantError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Per-step weights: either one constant spec reused every step or an
/// explicit per-step sequence.
class WeightSchedule {
public:
    explicit WeightSchedule(WeightSpec constant);
    explicit WeightSchedule(std::vector<WeightSpec> per_step);

    const WeightSpec& at(std::size_t k) const;
    bool constant() const { return constant_; }

private:
    std::vector<WeightSpec> specs_;
    bool constant_;
};

/// Variant checks and upward embeddings (specific -> general is always legal,
/// the reverse throws VariantError).
FullWeight embed_full(const WeightSpec& w, const ProblemDims& dims);
PerColumnWeight embed_per_column(const WeightSpec& w, const ProblemDims& dims);
const SharedWeight& require_shared(const WeightSpec& w);
FullReg embed_full(const RegBlocks& r, const ProblemDims& dims);
PerColumnReg embed_per_column(const RegBlocks& r, const ProblemDims& dims);
const SharedReg& require_shared(const RegBlocks& r);

// ---------------------------------------------------------------------------
// Recursive states
// ---------------------------------------------------------------------------

/// Vec-permutation recursion: P_bar (mn x mn) over the vectorized parameters.
/// Accepts any weight variant (embedded upward to Full).
class VecPermState {
public:
    static VecPermState initialize(const ProblemDims& dims, const RegSpec& reg, UpdateForm form);

    const ProblemDims& dims() const { return dims_; }
    UpdateForm form() const { return form_; }
    std::size_t step() const { return step_; }

    /// Vectorized estimate, mn x 1.
    const Mat& theta_bar() const { return theta_bar_; }
    /// Estimate reshaped to n x m.
    Mat estimate() const;
    /// P_bar. In information form this inverts the stored information matrix.
    SpdMat covariance() const;

    /// Stored second-order matrix: P_bar (covariance form) or P_bar^{-1}
    /// (information form). Exposed for checkpointing.
    const SpdMat& core() const { return core_; }
    static VecPermState restore(const ProblemDims& dims, UpdateForm form, SpdMat core, Mat theta_bar,
                                std::size_t step);

    friend VecPermState vec_perm_step(const VecPermState& state, const Measurement& meas,
                                      const WeightSpec& weight);

private:
    VecPermState(ProblemDims dims, UpdateForm form, SpdMat core, Mat theta_bar, std::size_t step)
        : dims_(dims), form_(form), core_(std::move(core)), theta_bar_(std::move(theta_bar)), step_(step) {}

    ProblemDims dims_;
    UpdateForm form_;
    SpdMat core_;
    Mat theta_bar_;
    std::size_t step_;
};

/// Column-by-column recursion: m independent n x n covariances, one per
/// parameter column. Requires per-column (or shared) specs.
class ColumnwiseState {
public:
    static ColumnwiseState initialize(const ProblemDims& dims, const RegSpec& reg, UpdateForm form);

    const ProblemDims& dims() const { return dims_; }
    UpdateForm form() const { return form_; }
    std::size_t step() const { return step_; }

    /// Estimate assembled from the column estimates, n x m.
    Mat estimate() const;
    /// P_{j} for column j.
    SpdMat covariance(std::size_t j) const;

    const std::vector<SpdMat>& cores() const { return cores_; }
    const std::vector<Mat>& columns() const { return theta_cols_; }
    static ColumnwiseState restore(const ProblemDims& dims, UpdateForm form, std::vector<SpdMat> cores,
                                   std::vector<Mat> theta_cols, std::size_t step);

    friend ColumnwiseState columnwise_step(const ColumnwiseState& state, const Measurement& meas,
                                           const WeightSpec& weight);

private:
    ColumnwiseState(ProblemDims dims, UpdateForm form, std::vector<SpdMat> cores, std::vector<Mat> cols,
                    std::size_t step)
        : dims_(dims), form_(form), cores_(std::move(cores)), theta_cols_(std::move(cols)), step_(step) {}

    ProblemDims dims_;
    UpdateForm form_;
    std::vector<SpdMat> cores_;
    std::vector<Mat> theta_cols_;
    std::size_t step_;
};

/// Matrix-update recursion: a single n x n covariance shared by all columns.
/// Requires shared specs.
class MatrixUpdateState {
public:
    static MatrixUpdateState initialize(const ProblemDims& dims, const RegSpec& reg, UpdateForm form);

    const ProblemDims& dims() const { return dims_; }
    UpdateForm form() const { return form_; }
    std::size_t step() const { return step_; }

    const Mat& estimate() const { return theta_; }
    SpdMat covariance() const;

    const SpdMat& core() const { return core_; }
    static MatrixUpdateState restore(const ProblemDims& dims, UpdateForm form, SpdMat core, Mat theta,
                                     std::size_t step);

    friend MatrixUpdateState matrix_step(const MatrixUpdateState& state, const Measurement& meas,
                                         const WeightSpec& weight);

private:
    MatrixUpdateState(ProblemDims dims, UpdateForm form, SpdMat core, Mat theta, std::size_t step)
        : dims_(dims), form_(form), core_(std::move(core)), theta_(std::move(theta)), step_(step) {}

    ProblemDims dims_;
    UpdateForm form_;
    SpdMat core_;
    Mat theta_;
    std::size_t step_;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// One regularized RLS step on vector parameters (the building block every
/// family reduces to at m = 1). Takes and returns the covariance P regardless
/// of form; the two forms agree up to rounding.
std::pair<SpdMat, Mat> vector_rls_step(const SpdMat& p, const Mat& theta, const Mat& phi, const Mat& y,
                                       const SpdMat& gamma, UpdateForm form);

/// Batch minimizers. Each consumes the prefix data[0..k] in one normal-equation
/// solve. vec_perm_batch returns the vectorized estimate (mn x 1); the other
/// two return n x m.
Mat vec_perm_batch(std::span<const Measurement> data, const RegSpec& reg, const WeightSchedule& weights);
Mat columnwise_batch(std::span<const Measurement> data, const RegSpec& reg, const WeightSchedule& weights);
Mat matrix_batch(std::span<const Measurement> data, const RegSpec& reg, const WeightSchedule& weights);

/// Recursive steps; pure functions old state -> new state.
VecPermState vec_perm_step(const VecPermState& state, const Measurement& meas, const WeightSpec& weight);
ColumnwiseState columnwise_step(const ColumnwiseState& state, const Measurement& meas,
                                const WeightSpec& weight);
MatrixUpdateState matrix_step(const MatrixUpdateState& state, const Measurement& meas,
                              const WeightSpec& weight);

/// Number of reals a state keeps in memory (second-order matrix plus
/// estimate, bookkeeping excluded): n^2 m^2 + nm, n^2 m + nm, n^2 + nm.
std::size_t state_param_count(const VecPermState& state);
std::size_t state_param_count(const ColumnwiseState& state);
std::size_t state_param_count(const MatrixUpdateState& state);

}  // namespace matls
