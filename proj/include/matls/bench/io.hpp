#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "matls/estimators.hpp"

namespace matls::bench {

/// Malformed dataset file; the message carries the offending line number.
class DatasetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Checkpoint container problems, typed by what went wrong.
class CheckpointError : public std::runtime_error {
public:
    enum class Kind { BadHeader, TagMismatch, DimMismatch, Parse };

    CheckpointError(Kind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Measurement sequences as CSV with header `k,slot,i,j,value`, slot in
/// {phi,y}, indices 0-based, values at 17 significant digits (lossless for
/// 64-bit doubles).
void dataset_write(const std::string& path, std::span<const Measurement> data);
std::vector<Measurement> dataset_read(const std::string& path);

/// Estimator-state checkpoints: a line-oriented text container carrying the
/// method tag, update form, dims, step and the raw stored matrices at 17
/// significant digits. Loading through the wrong method tag raises
/// CheckpointError{TagMismatch}.
void checkpoint_save(const std::string& path, const VecPermState& state);
void checkpoint_save(const std::string& path, const ColumnwiseState& state);
void checkpoint_save(const std::string& path, const MatrixUpdateState& state);

VecPermState checkpoint_load_vec_perm(const std::string& path);
ColumnwiseState checkpoint_load_columnwise(const std::string& path);
MatrixUpdateState checkpoint_load_matrix(const std::string& path);

/// Method tag stored in a checkpoint ("vec_perm", "columnwise" or "matrix").
std::string checkpoint_method(const std::string& path);

/// Shortest decimal form that round-trips a double (17 significant digits).
std::string format_double(double v);

}  // namespace matls::bench
