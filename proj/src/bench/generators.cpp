#include "matls/bench/generators.hpp"

#include <stdexcept>

namespace matls::bench {

SpdMat random_spd(Rng& rng, std::size_t dim) {
    const Mat m = rng.gaussian_mat(dim, dim);
    Mat a = mul_transpose_lhs(m, m);
    a *= 1.0 / static_cast<double>(dim);
    a += Mat::identity(dim);
    return symmetrize(a);
}

WeightSpec random_weight(Rng& rng, WeightMode variant, const ProblemDims& dims) {
    switch (variant) {
        case WeightMode::Shared:
            return SharedWeight{random_spd(rng, dims.p)};
        case WeightMode::PerColumn: {
            PerColumnWeight w;
            w.gamma.reserve(dims.m);
            for (std::size_t j = 0; j < dims.m; ++j) {
                w.gamma.push_back(random_spd(rng, dims.p));
            }
            return w;
        }
        case WeightMode::Full:
            return FullWeight{random_spd(rng, dims.m * dims.p)};
        case WeightMode::Mixed:
            break;
    }
    throw std::invalid_argument("random_weight: 'mixed' is not a concrete weight variant");
}

RegBlocks random_reg_blocks(Rng& rng, WeightMode variant, const ProblemDims& dims) {
    switch (variant) {
        case WeightMode::Shared:
            return SharedReg{random_spd(rng, dims.n)};
        case WeightMode::PerColumn: {
            PerColumnReg r;
            r.r.reserve(dims.m);
            for (std::size_t j = 0; j < dims.m; ++j) {
                r.r.push_back(random_spd(rng, dims.n));
            }
            return r;
        }
        case WeightMode::Full:
            return FullReg{random_spd(rng, dims.m * dims.n)};
        case WeightMode::Mixed:
            break;
    }
    throw std::invalid_argument("random_reg_blocks: 'mixed' is not a concrete variant");
}

std::vector<Measurement> random_measurements(Rng& rng, const ProblemDims& dims, std::size_t count) {
    std::vector<Measurement> data;
    data.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        data.emplace_back(rng.gaussian_mat(dims.p, dims.n), rng.gaussian_mat(dims.p, dims.m));
    }
    return data;
}

arma::ArmaModel random_stable_arma(Rng& rng, const arma::ArmaDims& dims, double radius_cap) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Mat> f;
        std::vector<Mat> g;
        f.reserve(dims.order);
        g.reserve(dims.order + 1);
        for (std::size_t i = 0; i < dims.order; ++i) {
            Mat fi = rng.gaussian_mat(dims.outputs, dims.outputs);
            fi *= 0.3;
            f.push_back(std::move(fi));
        }
        for (std::size_t i = 0; i <= dims.order; ++i) {
            g.push_back(rng.gaussian_mat(dims.outputs, dims.inputs));
        }
        arma::ArmaModel model(dims, std::move(f), std::move(g));
        if (arma::companion_spectral_radius(model) < radius_cap) {
            return model;
        }
    }
    throw std::runtime_error("random_stable_arma: rejection sampling failed after 1000 attempts");
}

}  // namespace matls::bench
