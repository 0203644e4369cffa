// Copyright 2026 The weakgauss Authors
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

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "weakgauss/config.h"
#include "weakgauss/error.h"
#include "weakgauss/experiment.h"
#include "weakgauss/result_io.h"
#include "weakgauss/selfcheck.h"

using namespace weakgauss;
using nlohmann::json;

namespace {

constexpr int EXIT_CONFIG_ERROR = 2;
constexpr int EXIT_RUNTIME_ERROR = 3;
constexpr int EXIT_SELFCHECK_FAILED = 4;

// Flags that mirror ExperimentConfig fields. Only flags given on the command
// line end up in the overrides object.
struct ConfigFlags {
    std::string config_path;
    double kappa = 0;
    uint64_t n_states = 0;
    uint64_t n_runs = 0;
    std::vector<uint64_t> ensemble_sizes;
    std::vector<double> inv_dqm_grid;
    std::vector<double> u_range;
    std::vector<double> center_range;
    uint64_t master_seed = 0;
    bool deconvolve = true;
    bool weighting = false;
    std::string averaging;
    std::string d2_form;
    std::vector<std::string> sets;
    std::vector<CLI::Option *> options;

    void attach(CLI::App *app) {
        app->add_option("--config", config_path, "JSON config file (flat object of config fields)");
        auto add = [&](CLI::Option *o) {
            options.push_back(o);
        };
        add(app->add_option("--kappa", kappa, "temperature parameter in (0, 1]"));
        add(app->add_option("--n-states", n_states, "random states per sweep"));
        add(app->add_option("--n-runs", n_runs, "repetitions per state"));
        add(app->add_option("--ensemble-sizes", ensemble_sizes, "even ensemble sizes >= 4")->delimiter(','));
        add(app->add_option("--inv-dqm-grid", inv_dqm_grid, "strictly increasing 1/dqm values")->delimiter(','));
        add(app->add_option("--u-range", u_range, "squeezing interval lo,hi")->delimiter(',')->expected(2));
        add(app->add_option("--center-range", center_range, "center interval lo,hi")->delimiter(',')->expected(2));
        add(app->add_option("--master-seed", master_seed, "64-bit master seed"));
        add(app->add_option("--deconvolve", deconvolve, "subtract known meter noise from variances"));
        add(app->add_option("--weighting", weighting, "inverse-variance weighted centers"));
        add(app->add_option("--averaging", averaging, "distances|estimates")->check(CLI::IsMember({"distances", "estimates"})));
        add(app->add_option("--d2-form", d2_form, "matched|printed")->check(CLI::IsMember({"matched", "printed"})));
        app->add_option("--set", sets, "raw override KEY=JSON (repeatable)");
    }

    json overrides() const {
        json o = json::object();
        for (const auto &s : sets) {
            auto eq = s.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("--set expects KEY=JSON, got '" + s + "'");
            }
            std::string key = s.substr(0, eq);
            try {
                o[key] = json::parse(s.substr(eq + 1));
            } catch (const json::parse_error &) {
                o[key] = s.substr(eq + 1);
            }
        }
        auto given = [&](size_t k) {
            return options[k]->count() > 0;
        };
        if (given(0)) o["kappa"] = kappa;
        if (given(1)) o["n_states"] = n_states;
        if (given(2)) o["n_runs"] = n_runs;
        if (given(3)) o["ensemble_sizes"] = ensemble_sizes;
        if (given(4)) o["inv_dqm_grid"] = inv_dqm_grid;
        if (given(5)) o["u_range"] = u_range;
        if (given(6)) o["center_range"] = center_range;
        if (given(7)) o["master_seed"] = master_seed;
        if (given(8)) o["deconvolve"] = deconvolve;
        if (given(9)) o["weighting"] = weighting;
        if (given(10)) o["averaging"] = averaging;
        if (given(11)) o["d2_form"] = d2_form;
        return o;
    }

    ExperimentConfig load() const {
        std::string text = config_path.empty() ? std::string() : read_file(config_path);
        return parse_config(text, overrides());
    }
};

OutputFormat parse_format(const std::string &name) {
    return name == "json" ? OutputFormat::json : OutputFormat::csv;
}

void print_summary(const SweepResult &result, std::ostream &out) {
    auto interval = [](const CrossoverInterval &c) {
        if (!c.range) {
            return std::string("none");
        }
        return "[" + format_real(c.range->lo) + ", " + format_real(c.range->hi) + "] (" +
               std::to_string(c.points_below) + " pts)";
    };
    for (const auto &row : summarize(result)) {
        for (const auto &[label, s] : {std::pair{"d1", row.d1}, std::pair{"d2", row.d2}}) {
            out << "kappa=" << format_real(row.kappa) << " n=" << row.ensemble_size << " " << label
                << ": min weak " << format_real(s.weak_min) << " +- " << format_real(s.weak_min_se)
                << " at 1/dqm=" << format_real(s.argmin_inv_dqm) << ", projective " << format_real(s.proj_at_min)
                << " +- " << format_real(s.proj_at_min_se) << ", relative advantage "
                << format_real(s.relative_advantage) << ", weak below projective on " << interval(s.crossover)
                << '\n';
        }
    }
}

void write_output(const SweepResult &result, OutputFormat format, const std::string &path) {
    if (path.empty() || path == "-") {
        auto rows = result_rows(std::span<const SweepResult>(&result, 1));
        write_rows(rows, format, std::cout);
    } else {
        emit_rows(std::span<const SweepResult>(&result, 1), format, path);
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Weak-measurement estimation of single-mode Gaussian states"};
    app.require_subcommand(1);

    // single
    auto *single = app.add_subcommand("single", "estimate one state with both schemes");
    StateParams params;
    size_t n = 20;
    double inv_dqm = std::sqrt(2.0);
    uint64_t seed = 1;
    size_t runs = 1;
    bool single_deconvolve = true;
    bool single_weighting = false;
    single->add_option("--kappa", params.kappa, "temperature parameter in (0, 1]")->required();
    single->add_option("--u", params.u, "squeezing parameter");
    single->add_option("--q0", params.q0, "position center");
    single->add_option("--p0", params.p0, "momentum center");
    single->add_option("--n", n, "ensemble size (even, >= 4)");
    single->add_option("--inv-dqm", inv_dqm, "meter strength 1/dqm");
    single->add_option("--seed", seed, "random seed");
    single->add_option("--runs", runs, "independent trials to run")->check(CLI::PositiveNumber);
    single->add_option("--deconvolve", single_deconvolve, "subtract known meter noise from variances");
    single->add_option("--weighting", single_weighting, "inverse-variance weighted centers");

    // sweep / baseline
    ConfigFlags sweep_flags, baseline_flags;
    std::string out_path, format = "csv", baseline_out, baseline_format = "csv";
    size_t threads = 0;
    bool summary = false;
    auto *sweep = app.add_subcommand("sweep", "Monte Carlo sweep over 1/dqm for both schemes");
    sweep_flags.attach(sweep);
    sweep->add_option("--out", out_path, "output file (stdout if omitted)");
    sweep->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--threads", threads, "worker threads (default: WEAKGAUSS_THREADS or all cores)");
    sweep->add_flag("--summary", summary, "print minima and crossover intervals to stderr");

    auto *baseline = app.add_subcommand("baseline", "projective-only sweep");
    baseline_flags.attach(baseline);
    baseline->add_option("--out", baseline_out, "output file (stdout if omitted)");
    baseline->add_option("--format", baseline_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    baseline->add_option("--threads", threads, "worker threads");

    // plot-data
    std::string in_path, out_dir;
    auto *plot = app.add_subcommand("plot-data", "split a result file into per-panel plotting tables");
    plot->add_option("--in", in_path, "result CSV or JSON")->required();
    plot->add_option("--out-dir", out_dir, "directory for panel files")->required();

    // validate
    uint64_t check_seed = 7;
    auto *validate = app.add_subcommand("validate", "run the analytic self-check suite");
    validate->add_option("--seed", check_seed, "seed for the Monte Carlo checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : EXIT_CONFIG_ERROR;
    }

    try {
        if (*single) {
            GaussianState state = make_state(params);
            Rng rng(seed);
            TrialOptions options{{single_deconvolve, single_weighting}};
            json trials = json::array();
            for (size_t r = 0; r < runs; r++) {
                TrialOutcome o = run_trial(state, n, inv_dqm, rng, options);
                auto est = [](const EstimationResult &e, const DistanceMeasures &d) {
                    return json{
                        {"scheme", scheme_name(e.scheme)},
                        {"q0_est", e.q0_est},
                        {"p0_est", e.p0_est},
                        {"dq_est", e.dq_est},
                        {"dp_est", e.dp_est},
                        {"d1", d.d1},
                        {"d2", d.d2},
                    };
                };
                trials.push_back({est(o.weak_estimate, o.weak), est(o.proj_estimate, o.proj)});
            }
            json out{
                {"state", {{"q0", state.q0}, {"p0", state.p0}, {"dq", state.dq}, {"dp", state.dp}}},
                {"ensemble_size", n},
                {"inv_dqm", inv_dqm},
                {"seed", seed},
                {"rng", RNG_VERSION},
                {"trials", trials},
            };
            std::cout << out.dump(2) << '\n';
        } else if (*sweep) {
            ExperimentConfig config = sweep_flags.load();
            SweepResult result = run_sweep(config, {threads, true, true});
            write_output(result, parse_format(format), out_path);
            if (summary) {
                print_summary(result, std::cerr);
            }
        } else if (*baseline) {
            ExperimentConfig config = baseline_flags.load();
            SweepResult result = run_sweep(config, {threads, false, true});
            write_output(result, parse_format(baseline_format), baseline_out);
        } else if (*plot) {
            std::vector<ResultRow> rows = parse_rows(read_file(in_path));
            for (const auto &path : write_plot_data(rows, out_dir)) {
                std::cout << path << '\n';
            }
        } else if (*validate) {
            SelfcheckReport report = validate_selfcheck(check_seed);
            print_report(report, std::cout);
            return report.all_passed() ? 0 : EXIT_SELFCHECK_FAILED;
        }
    } catch (const ConfigError &e) {
        std::cerr << "config error";
        if (!e.field.empty()) {
            std::cerr << " [" << e.field << "]";
        }
        std::cerr << ": " << e.what() << '\n';
        return EXIT_CONFIG_ERROR;
    } catch (const InvalidParameter &e) {
        std::cerr << "invalid parameter: " << e.what() << '\n';
        return EXIT_CONFIG_ERROR;
    } catch (const InsufficientEnsemble &e) {
        std::cerr << "invalid parameter: " << e.what() << '\n';
        return EXIT_CONFIG_ERROR;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return EXIT_RUNTIME_ERROR;
    }
    return 0;
}
