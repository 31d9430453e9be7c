// Copyright 2026 The gaussent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Each command turns a RunConfig into the text it
// emits; run_cli() parses arguments, dispatches and maps failures to exit
// codes (0 success, 1 numerical or validation failure, 2 usage error).

#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "gaussent/errors.hpp"
#include "gaussent/io.hpp"
#include "gaussent/protocol.hpp"
#include "gaussent/sampling.hpp"
#include "gaussent/separability.hpp"

namespace gaussent::cli {

enum class Format { Csv, Json };

struct RunConfig {
    std::string command;
    std::optional<double> epsilon;
    std::optional<double> r;
    double r_min = 0.0;
    double r_max = 0.6;
    double epsilon_min = 0.001;
    double epsilon_max = 3.0;
    int steps = 600;
    std::string stage = "shared";
    std::int64_t samples = 1000000;
    std::uint64_t seed = 42;
    unsigned threads = 0;
    std::string input;
    std::string output;
    Format format = Format::Csv;
};

inline const char* kSweepHeader = "r,mu_pair,mu_m,sigma_shared_A,class_final";
inline const char* kGapHeader = "epsilon,r_l,r_e,r_m,gap";

inline std::string fmt_num(double x) { return fmt::format("{:.12g}", x); }

inline std::vector<double> linear_grid(double lo, double hi, int steps) {
    std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) {
        grid[static_cast<std::size_t>(i)] = i == steps ? hi : lo + (hi - lo) * i / steps;
    }
    return grid;
}

namespace detail {

inline double required(const std::optional<double>& v, const char* flag) {
    if (!v) throw CLI::RequiredError(flag);
    return *v;
}

}  // namespace detail

inline std::string cmd_thresholds(const RunConfig& cfg) {
    const double eps = detail::required(cfg.epsilon, "--epsilon");
    return io::to_json(threshold_report(eps)).dump(2) + "\n";
}

struct SweepRow {
    double r;
    double mu_pair;
    double mu_m;
    double sigma_shared_A;
    std::string class_final;
};

inline SweepRow sweep_row(double r, double eps) {
    const ProtocolParams p{r, eps};
    return {r, pair_mu(p), mu_m(p), sigma_x(shared_cm(p).state.cm(), mode::A).sigma,
            std::string(to_string(classify_three_mode(final_cm(p, FinalRoute::ViaAprime).cm()).class_label))};
}

inline std::string cmd_sweep(const RunConfig& cfg) {
    const double eps = detail::required(cfg.epsilon, "--epsilon");
    std::vector<SweepRow> rows;
    for (double r : linear_grid(cfg.r_min, cfg.r_max, cfg.steps)) rows.push_back(sweep_row(r, eps));
    if (cfg.format == Format::Json) {
        io::json out = io::json::array();
        for (const auto& row : rows) {
            out.push_back({{"r", io::number(row.r)},
                           {"mu_pair", io::number(row.mu_pair)},
                           {"mu_m", io::number(row.mu_m)},
                           {"sigma_shared_A", io::number(row.sigma_shared_A)},
                           {"class_final", row.class_final}});
        }
        return out.dump(2) + "\n";
    }
    std::string csv = std::string(kSweepHeader) + "\n";
    for (const auto& row : rows) {
        csv += fmt::format("{},{},{},{},{}\n", fmt_num(row.r), fmt_num(row.mu_pair), fmt_num(row.mu_m),
                           fmt_num(row.sigma_shared_A), row.class_final);
    }
    return csv;
}

inline std::string cmd_gap_sweep(const RunConfig& cfg) {
    const auto reports = gap_profile(linear_grid(cfg.epsilon_min, cfg.epsilon_max, cfg.steps));
    if (cfg.format == Format::Json) {
        io::json out = io::json::array();
        for (const auto& t : reports) out.push_back(io::to_json(t));
        return out.dump(2) + "\n";
    }
    std::string csv = std::string(kGapHeader) + "\n";
    for (const auto& t : reports) {
        csv += fmt::format("{},{},{},{},{}\n", fmt_num(t.epsilon), fmt_num(t.r_l), fmt_num(t.r_e), fmt_num(t.r_m),
                           fmt_num(t.gap));
    }
    return csv;
}

inline std::string cmd_analyze(const RunConfig& cfg) {
    const ProtocolParams p{detail::required(cfg.r, "--r"), detail::required(cfg.epsilon, "--epsilon")};
    return io::to_json(stage_state(p, parse_stage(cfg.stage))).dump(2) + "\n";
}

inline std::string cmd_montecarlo(const RunConfig& cfg) {
    const ProtocolParams p{detail::required(cfg.r, "--r"), detail::required(cfg.epsilon, "--epsilon")};
    const SampleBatch batch = sample_preparation(p, cfg.samples, cfg.seed, cfg.threads);
    return io::to_json(batch, initial_cm(p).cm().matrix()).dump(2) + "\n";
}

inline std::string cmd_classify(const RunConfig& cfg) {
    const GaussianState state = io::read_state_file(cfg.input);
    if (state.n_modes() != 3) {
        throw Error(ErrorKind::DimensionMismatch,
                    "classify needs a three-mode state, file has " + std::to_string(state.n_modes()) + " modes");
    }
    return io::to_json(classify_three_mode(state.cm())).dump(2) + "\n";
}

inline std::string dispatch(const RunConfig& cfg) {
    if (cfg.command == "thresholds") return cmd_thresholds(cfg);
    if (cfg.command == "sweep") return cmd_sweep(cfg);
    if (cfg.command == "gap-sweep") return cmd_gap_sweep(cfg);
    if (cfg.command == "analyze") return cmd_analyze(cfg);
    if (cfg.command == "montecarlo") return cmd_montecarlo(cfg);
    if (cfg.command == "classify") return cmd_classify(cfg);
    throw CLI::ValidationError("unknown command '" + cfg.command + "'");
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gaussian phase-space analysis of entanglement sharing with separable states", "gaussent"};
    app.require_subcommand(1);
    RunConfig cfg;

    const std::map<std::string, Format> formats{{"csv", Format::Csv}, {"json", Format::Json}};
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("-o,--output", cfg.output, "Write to this file instead of stdout");
    };
    auto add_epsilon = [&](CLI::App* sub, bool req) {
        auto* opt = sub->add_option("--epsilon", cfg.epsilon, "Noise parameter")->check(CLI::NonNegativeNumber);
        if (req) opt->required();
    };
    auto add_r = [&](CLI::App* sub) {
        sub->add_option("--r", cfg.r, "Squeezing parameter")->check(CLI::NonNegativeNumber)->required();
    };

    auto* thresholds = app.add_subcommand("thresholds", "Threshold squeezings r_l, r_e, r_m at fixed epsilon");
    add_epsilon(thresholds, true);
    add_output(thresholds);

    auto* sweep = app.add_subcommand("sweep", "mu curves versus r at fixed epsilon (CSV)");
    add_epsilon(sweep, true);
    sweep->add_option("--r-min", cfg.r_min, "Lower end of the r grid")->check(CLI::NonNegativeNumber)->capture_default_str();
    sweep->add_option("--r-max", cfg.r_max, "Upper end of the r grid")->check(CLI::NonNegativeNumber)->capture_default_str();
    sweep->add_option("--steps", cfg.steps, "Number of grid intervals")->check(CLI::Range(2, 10000000))->capture_default_str();
    sweep->add_option("--format", cfg.format, "csv or json")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    add_output(sweep);

    auto* gap = app.add_subcommand("gap-sweep", "Thresholds and gap r_m - r_e versus epsilon (CSV)");
    gap->add_option("--epsilon-min", cfg.epsilon_min, "Lower end of the epsilon grid")->check(CLI::NonNegativeNumber)->capture_default_str();
    gap->add_option("--epsilon-max", cfg.epsilon_max, "Upper end of the epsilon grid")->check(CLI::NonNegativeNumber)->capture_default_str();
    int gap_steps = 300;
    gap->add_option("--steps", gap_steps, "Number of grid intervals")->check(CLI::Range(2, 10000000))->capture_default_str();
    gap->add_option("--format", cfg.format, "csv or json")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    add_output(gap);

    auto* analyze = app.add_subcommand("analyze", "Separability report for one protocol stage");
    add_r(analyze);
    add_epsilon(analyze, true);
    analyze->add_option("--stage", cfg.stage, "initial | shared | final-via-aprime | final-via-a")
        ->check(CLI::IsMember({"initial", "shared", "final-via-aprime", "final-via-a"}))
        ->capture_default_str();
    add_output(analyze);

    auto* mc = app.add_subcommand("montecarlo", "Monte Carlo check of the initial-state preparation");
    add_r(mc);
    add_epsilon(mc, true);
    mc->add_option("--samples", cfg.samples, "Number of samples")->check(CLI::Range(std::int64_t{2}, INT64_MAX))->capture_default_str();
    mc->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    mc->add_option("--threads", cfg.threads, "Worker threads (0: GAUSSENT_THREADS or hardware)");
    add_output(mc);

    auto* classify = app.add_subcommand("classify", "Separability class of a three-mode CM file");
    classify->add_option("-i,--input", cfg.input, "CM JSON file")->required()->check(CLI::ExistingFile);
    add_output(classify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    if (gap->parsed()) cfg.steps = gap_steps;
    cfg.command = app.get_subcommands().front()->get_name();
    if (sweep->parsed() && !(cfg.r_min < cfg.r_max)) {
        err << "error: --r-min must be smaller than --r-max\n";
        return 2;
    }
    if (gap->parsed() && !(cfg.epsilon_min < cfg.epsilon_max)) {
        err << "error: --epsilon-min must be smaller than --epsilon-max\n";
        return 2;
    }

    std::string text;
    try {
        text = dispatch(cfg);
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    if (cfg.output.empty()) {
        out << text;
    } else {
        std::ofstream file(cfg.output, std::ios::binary);
        if (!(file << text)) {
            err << "error: cannot write '" << cfg.output << "'\n";
            return 1;
        }
    }
    return 0;
}

}  // namespace gaussent::cli
