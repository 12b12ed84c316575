#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace matls::bench {

enum class WeightMode { Mixed, Full, PerColumn, Shared };
enum class FormMode { Auto, Information, Covariance };

/// Experiment configuration shared by the four commands. Zero-valued counts
/// mean "use the command's default"; each command documents its defaults in
/// the README.
struct RunConfig {
    std::uint64_t seed = 1;
    std::size_t p = 0;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t steps = 0;
    std::size_t trials = 0;
    std::size_t arma_order = 0;   ///< ARMA model order
    std::size_t arma_inputs = 0;  ///< ARMA input count
    WeightMode weight_mode = WeightMode::Mixed;
    FormMode form = FormMode::Auto;
    std::string out;      ///< CSV output path; empty = command default
    bool noiseless = false;
    double reg_scale = 0.0;  ///< regularization scale; 0 = default (1.0, or 1e-9 when noiseless)
    double p0_scale = 0.0;   ///< ARMA P0 scale; 0 = default (1.0, or 1e7 when noiseless)
    std::vector<std::size_t> m_list;  ///< column counts for the scaling sweep; empty = default
};

/// One benchmark observation: per-step estimation error plus timing and the
/// state's in-memory parameter count. The corrnoise and arma-demo CSVs are
/// sequences of these.
struct TrialRecord {
    std::size_t trial = 0;
    std::size_t k = 0;
    std::string method;
    double error = 0.0;           ///< Frobenius estimate error, >= 0
    std::uint64_t elapsed_ns = 0; ///< per-step wall time
    std::size_t mem_params = 0;   ///< state_param_count of the estimator
};

/// Invalid configuration; commands report it as a one-line diagnostic and
/// exit 2.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

WeightMode parse_weight_mode(const std::string& name);
FormMode parse_form_mode(const std::string& name);

/// Exit codes shared by every command: 0 success, 1 assertion failure,
/// 2 numerical or contract error.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitContract = 2;

/// Random-instance agreement harness: batch vs recursive vs the brute-force
/// normal-equation oracle for every family legal under the instance's weight
/// variant. Writes one deviation row per check; exit 0 iff all deviations
/// are at most 1e-8.
int cmd_equivalence(const RunConfig& config, std::ostream& log);

/// Timing sweep over parameter column counts: batch and recursive run times
/// per family with bootstrap confidence intervals, plus state memory counts.
int cmd_scaling(const RunConfig& config, std::ostream& log);

/// Correlated-noise study: six recursive identifiers on the same data with
/// block-structured noise covariance; emits per-step estimation errors.
int cmd_corrnoise(const RunConfig& config, std::ostream& log);

/// MIMO ARMA identification demo: vec-permutation vs matrix identifier on a
/// random stable plant; per-step errors and times, with a trajectory
/// agreement gate.
int cmd_arma_demo(const RunConfig& config, std::ostream& log);

}  // namespace matls::bench
