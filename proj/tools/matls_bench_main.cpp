#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "matls/bench/commands.hpp"

namespace {

using matls::bench::ConfigError;
using matls::bench::RunConfig;

struct CliState {
    RunConfig config;
    std::string config_path;
    std::string form = "auto";
    std::string weight_mode = "mixed";
    int (*command)(const RunConfig&, std::ostream&) = nullptr;
    CLI::App* active = nullptr;
};

std::vector<std::size_t> parse_size_list(const std::string& text) {
    std::vector<std::size_t> values;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        values.push_back(std::stoul(token));
    }
    return values;
}

/// Flat key=value config file; '#' starts a comment. Values for flags given
/// explicitly on the command line are kept (flags override the file).
void apply_config_file(CliState& state) {
    std::ifstream in(state.config_path);
    if (!in) {
        throw ConfigError("cannot open config file '" + state.config_path + "'");
    }
    const auto overridden = [&](const std::string& flag) {
        return state.active->count(flag) > 0;
    };
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        const auto begin = line.find_first_not_of(" \t");
        if (begin == std::string::npos) {
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(state.config_path + ": line " + std::to_string(line_no) +
                              ": expected key=value");
        }
        const auto trim = [](std::string text) {
            const auto from = text.find_first_not_of(" \t");
            const auto to = text.find_last_not_of(" \t");
            return from == std::string::npos ? std::string() : text.substr(from, to - from + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        static const std::set<std::string> known{"seed",      "p",         "n",        "m",
                                                 "steps",     "trials",    "out",      "form",
                                                 "weight_mode", "noiseless", "reg_scale", "p0_scale",
                                                 "m_list",    "order",     "inputs"};
        if (!known.count(key)) {
            throw ConfigError(state.config_path + ": line " + std::to_string(line_no) +
                              ": unknown key '" + key + "'");
        }
        try {
            if (key == "seed" && !overridden("--seed")) {
                state.config.seed = std::stoull(value);
            } else if (key == "p" && !overridden("--p")) {
                state.config.p = std::stoul(value);
            } else if (key == "n" && !overridden("--n")) {
                state.config.n = std::stoul(value);
            } else if (key == "m" && !overridden("--m")) {
                state.config.m = std::stoul(value);
            } else if (key == "steps" && !overridden("--steps")) {
                state.config.steps = std::stoul(value);
            } else if (key == "trials" && !overridden("--trials")) {
                state.config.trials = std::stoul(value);
            } else if (key == "out" && !overridden("--out")) {
                state.config.out = value;
            } else if (key == "form" && !overridden("--form")) {
                state.form = value;
            } else if (key == "weight_mode" && !overridden("--weight-mode")) {
                state.weight_mode = value;
            } else if (key == "noiseless" && !overridden("--noiseless")) {
                state.config.noiseless = value == "1" || value == "true";
            } else if (key == "reg_scale" && !overridden("--reg-scale")) {
                state.config.reg_scale = std::stod(value);
            } else if (key == "p0_scale" && !overridden("--p0-scale")) {
                state.config.p0_scale = std::stod(value);
            } else if (key == "m_list" && !overridden("--m-list")) {
                state.config.m_list = parse_size_list(value);
            } else if (key == "order" && !overridden("--order")) {
                state.config.arma_order = std::stoul(value);
            } else if (key == "inputs" && !overridden("--inputs")) {
                state.config.arma_inputs = std::stoul(value);
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError(state.config_path + ": line " + std::to_string(line_no) +
                              ": bad value for '" + key + "'");
        }
    }
}

void add_common_options(CLI::App* cmd, CliState& state) {
    cmd->add_option("--config", state.config_path, "flat key=value config file; flags override it");
    cmd->add_option("--seed", state.config.seed, "base seed for all random streams");
    cmd->add_option("--p", state.config.p, "measurement rows (ARMA: output count)");
    cmd->add_option("--n", state.config.n, "parameter rows");
    cmd->add_option("--m", state.config.m, "parameter columns");
    cmd->add_option("--steps", state.config.steps, "measurements per trial");
    cmd->add_option("--trials", state.config.trials, "independent trials/instances");
    cmd->add_option("--out", state.config.out, "CSV output path");
    cmd->add_option("--form", state.form, "update form: auto|information|covariance");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"matls-bench: batch/recursive least squares experiment harness"};
    app.require_subcommand(1);
    CliState state;

    CLI::App* equivalence = app.add_subcommand(
        "equivalence", "random-instance agreement of the three families against the dense oracle");
    add_common_options(equivalence, state);
    equivalence->add_option("--weight-mode", state.weight_mode,
                            "weight variant: mixed|full|per_column|shared");
    equivalence->callback([&] {
        state.command = matls::bench::cmd_equivalence;
        state.active = equivalence;
    });

    CLI::App* scaling =
        app.add_subcommand("scaling", "run-time sweep over parameter column counts");
    add_common_options(scaling, state);
    scaling->add_option("--weight-mode", state.weight_mode, "must stay shared (default)");
    scaling->add_option("--m-list", state.config.m_list, "column counts to sweep")->delimiter(',');
    scaling->callback([&] {
        state.command = matls::bench::cmd_scaling;
        state.active = scaling;
    });

    CLI::App* corrnoise = app.add_subcommand(
        "corrnoise", "correlated-noise error study with six identifier variants");
    add_common_options(corrnoise, state);
    corrnoise->add_flag("--noiseless", state.config.noiseless,
                        "drop the measurement noise (consistency check)");
    corrnoise->add_option("--reg-scale", state.config.reg_scale,
                          "regularization scale (default 1, or 1e-9 when noiseless)");
    corrnoise->callback([&] {
        state.command = matls::bench::cmd_corrnoise;
        state.active = corrnoise;
    });

    CLI::App* arma_demo = app.add_subcommand(
        "arma-demo", "MIMO ARMA identification: vec-permutation vs matrix identifier");
    add_common_options(arma_demo, state);
    arma_demo->add_option("--order", state.config.arma_order, "ARMA model order");
    arma_demo->add_option("--inputs", state.config.arma_inputs, "ARMA input count");
    arma_demo->add_flag("--noiseless", state.config.noiseless, "drop the measurement noise");
    arma_demo->add_option("--p0-scale", state.config.p0_scale,
                          "identifier P0 scale (default 1, or 1e7 when noiseless)");
    arma_demo->callback([&] {
        state.command = matls::bench::cmd_arma_demo;
        state.active = arma_demo;
    });

    CLI11_PARSE(app, argc, argv);

    try {
        if (!state.config_path.empty()) {
            apply_config_file(state);
        }
        state.config.form = matls::bench::parse_form_mode(state.form);
        state.config.weight_mode = matls::bench::parse_weight_mode(state.weight_mode);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return matls::bench::kExitContract;
    }
    return state.command(state.config, std::cout);
}
