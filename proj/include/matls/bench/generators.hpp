#pragma once

#include <vector>

#include "matls/arma.hpp"
#include "matls/bench/commands.hpp"
#include "matls/bench/rng.hpp"
#include "matls/estimators.hpp"

namespace matls::bench {

/// Well-conditioned random SPD matrix: M^T M / dim + I with iid standard
/// normal M.
SpdMat random_spd(Rng& rng, std::size_t dim);

/// One weight spec of the requested variant with dims-consistent blocks.
/// Mixed is not a concrete variant and is rejected.
WeightSpec random_weight(Rng& rng, WeightMode variant, const ProblemDims& dims);

/// Regularization blocks of the requested variant.
RegBlocks random_reg_blocks(Rng& rng, WeightMode variant, const ProblemDims& dims);

/// Unstructured random measurements (iid standard normal phi and y).
std::vector<Measurement> random_measurements(Rng& rng, const ProblemDims& dims, std::size_t count);

/// Random ARMA model rejection-sampled until the companion spectral radius
/// falls below radius_cap.
arma::ArmaModel random_stable_arma(Rng& rng, const arma::ArmaDims& dims, double radius_cap = 0.95);

}  // namespace matls::bench
