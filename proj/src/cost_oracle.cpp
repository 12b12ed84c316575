#include "matls/cost_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace matls::oracle {

namespace {

ProblemDims infer_dims(std::span<const Measurement> data, const RegSpec& reg) {
    return ProblemDims{data.empty() ? 1 : data.front().phi.rows(), reg.theta0.rows(), reg.theta0.cols()};
}

double quadratic_form(const Mat& v, const Mat& weight) {
    const Mat wv = weight * v;
    double acc = 0.0;
    for (std::size_t i = 0; i < v.rows(); ++i) {
        acc += v(i, 0) * wv(i, 0);
    }
    return acc;
}

Mat column(const Mat& a, std::size_t j) {
    Mat c(a.rows(), 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        c(i, 0) = a(i, j);
    }
    return c;
}

/// Gaussian elimination with partial pivoting; local on purpose, so the
/// oracle does not share a solver path with the estimators.
Mat lu_solve(Mat a, Mat b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.rows() != n) {
        throw std::invalid_argument("lu_solve: shape mismatch");
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a(i, k)) > best) {
                best = std::abs(a(i, k));
                pivot = i;
            }
        }
        if (best == 0.0 || !std::isfinite(best)) {
            throw std::runtime_error("lu_solve: singular system at column " + std::to_string(k));
        }
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(pivot, j));
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                std::swap(b(k, j), b(pivot, j));
            }
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double factor = a(i, k) / a(k, k);
            if (factor == 0.0) {
                continue;
            }
            for (std::size_t j = k; j < n; ++j) {
                a(i, j) -= factor * a(k, j);
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                b(i, j) -= factor * b(k, j);
            }
        }
    }
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double acc = b(ii, j);
            for (std::size_t k = ii + 1; k < n; ++k) {
                acc -= a(ii, k) * b(k, j);
            }
            b(ii, j) = acc / a(ii, ii);
        }
    }
    return b;
}

}  // namespace

double eval_cost_full(const Mat& theta_hat, std::span<const Measurement> data, const RegSpec& reg,
                      const WeightSchedule& weights) {
    const ProblemDims dims = infer_dims(data, reg);
    if (theta_hat.rows() != dims.n || theta_hat.cols() != dims.m) {
        throw std::invalid_argument("eval_cost_full: theta_hat must be n x m");
    }
    const FullReg full_reg = embed_full(reg.blocks, dims);
    double cost = quadratic_form(vec(theta_hat - reg.theta0), full_reg.r.matrix());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const FullWeight gamma = embed_full(weights.at(i), dims);
        cost += quadratic_form(vec(data[i].y - data[i].phi * theta_hat), gamma.gamma.matrix());
    }
    return cost;
}

double eval_cost_columnwise(const Mat& theta_hat, std::span<const Measurement> data, const RegSpec& reg,
                            const WeightSchedule& weights) {
    const ProblemDims dims = infer_dims(data, reg);
    if (theta_hat.rows() != dims.n || theta_hat.cols() != dims.m) {
        throw std::invalid_argument("eval_cost_columnwise: theta_hat must be n x m");
    }
    const PerColumnReg per_reg = embed_per_column(reg.blocks, dims);
    double cost = 0.0;
    for (std::size_t j = 0; j < dims.m; ++j) {
        cost += quadratic_form(column(theta_hat, j) - column(reg.theta0, j), per_reg.r[j].matrix());
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
        const PerColumnWeight gamma = embed_per_column(weights.at(i), dims);
        const Mat residual = data[i].y - data[i].phi * theta_hat;
        for (std::size_t j = 0; j < dims.m; ++j) {
            cost += quadratic_form(column(residual, j), gamma.gamma[j].matrix());
        }
    }
    return cost;
}

double eval_cost_trace(const Mat& theta_hat, std::span<const Measurement> data, const RegSpec& reg,
                       const WeightSchedule& weights) {
    const ProblemDims dims = infer_dims(data, reg);
    if (theta_hat.rows() != dims.n || theta_hat.cols() != dims.m) {
        throw std::invalid_argument("eval_cost_trace: theta_hat must be n x m");
    }
    const SharedReg& shared_reg = require_shared(reg.blocks);
    const Mat dev = theta_hat - reg.theta0;
    Mat accumulated = mul_transpose_lhs(dev, shared_reg.r.matrix() * dev);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const SharedWeight& gamma = require_shared(weights.at(i));
        const Mat residual = data[i].y - data[i].phi * theta_hat;
        accumulated += mul_transpose_lhs(residual, gamma.gamma.matrix() * residual);
    }
    return trace(accumulated);
}

double eval_cost(const Mat& theta_hat, std::span<const Measurement> data, const RegSpec& reg,
                 const WeightSchedule& weights) {
    if (std::holds_alternative<FullReg>(reg.blocks)) {
        return eval_cost_full(theta_hat, data, reg, weights);
    }
    if (std::holds_alternative<PerColumnReg>(reg.blocks)) {
        return eval_cost_columnwise(theta_hat, data, reg, weights);
    }
    return eval_cost_trace(theta_hat, data, reg, weights);
}

Mat brute_force_minimizer(std::span<const Measurement> data, const RegSpec& reg,
                          const WeightSchedule& weights) {
    const ProblemDims dims = infer_dims(data, reg);
    if (data.empty()) {
        return reg.theta0;
    }
    const FullReg full_reg = embed_full(reg.blocks, dims);
    Mat a = full_reg.r.matrix();
    Mat b = full_reg.r.matrix() * vec(reg.theta0);
    const Mat eye_m = Mat::identity(dims.m);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const FullWeight gamma = embed_full(weights.at(i), dims);
        const Mat phi_bar = kron(eye_m, data[i].phi);
        const Mat weighted = gamma.gamma.matrix() * phi_bar;
        a += mul_transpose_lhs(phi_bar, weighted);
        b += mul_transpose_lhs(weighted, vec(data[i].y));
    }
    return unvec(lu_solve(std::move(a), std::move(b)), dims.n, dims.m);
}

double grad_norm_fd(const Mat& theta_hat, std::span<const Measurement> data, const RegSpec& reg,
                    const WeightSchedule& weights, double h) {
    if (!(h > 0.0)) {
        throw std::invalid_argument("grad_norm_fd: step h must be positive");
    }
    Mat probe = theta_hat;
    double acc = 0.0;
    for (std::size_t i = 0; i < theta_hat.rows(); ++i) {
        for (std::size_t j = 0; j < theta_hat.cols(); ++j) {
            const double original = probe(i, j);
            const double step = h * (1.0 + std::abs(original));
            probe(i, j) = original + step;
            const double up = eval_cost(probe, data, reg, weights);
            probe(i, j) = original - step;
            const double down = eval_cost(probe, data, reg, weights);
            probe(i, j) = original;
            const double g = (up - down) / (2.0 * step);
            acc += g * g;
        }
    }
    return std::sqrt(acc);
}

}  // namespace matls::oracle
