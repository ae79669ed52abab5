#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dsr/analytic.hpp"
#include "dsr/config.hpp"
#include "dsr/errors.hpp"
#include "dsr/experiments.hpp"
#include "dsr/io.hpp"

namespace {

std::vector<std::string> split_columns(const std::string& arg) {
    std::vector<std::string> out;
    std::string current;
    for (char ch : arg) {
        if (ch == ',') {
            if (!current.empty()) out.push_back(current);
            current.clear();
        } else if (ch != ' ') {
            current += ch;
        }
    }
    if (!current.empty()) out.push_back(current);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stool-wheel self-recovery toolkit: simulate, validate, audit, plot"};
    app.require_subcommand(1);

    std::string config_path, pairs_path, trace_path, out_path, columns_arg;
    int jobs = 1;
    int mode_count = 6;

    CLI::App* simulate = app.add_subcommand("simulate", "run one experiment and write its trace CSV");
    simulate->add_option("--config", config_path, "experiment config file")->required();
    std::string simulate_out = "trace.csv";
    simulate->add_option("--out", simulate_out, "output trace CSV path");

    CLI::App* validate = app.add_subcommand(
        "validate-keff", "sweep radius pairs and compare settled angles with the damping estimate");
    validate->add_option("--config", config_path, "base config file")->required();
    validate->add_option("--pairs", pairs_path, "CSV of inner_cm,outer_cm pairs")->required();
    validate->add_option("--out", out_path, "output table CSV path")->required();
    validate->add_option("--jobs", jobs, "concurrent rows")->check(CLI::Range(1, 64));

    CLI::App* eigen = app.add_subcommand(
        "eigenvalues", "print the annulus decay modes for the config's film as CSV");
    eigen->add_option("--config", config_path, "config file supplying the film")->required();
    eigen->add_option("--count", mode_count, "number of modes")->check(CLI::Range(1, 64));

    CLI::App* audit = app.add_subcommand("energy-audit", "recompute the energy ledger from a trace");
    audit->add_option("--trace", trace_path, "trace CSV from simulate")->required();
    audit->add_option("--out", out_path, "output audit CSV path")->required();

    CLI::App* plot = app.add_subcommand("plot", "render trace columns against time as SVG");
    plot->add_option("--trace", trace_path, "trace CSV from simulate")->required();
    plot->add_option("--columns", columns_arg, "comma-separated trace columns")->required();
    plot->add_option("--out", out_path, "output SVG path")->required();

    CLI::App* presets = app.add_subcommand("presets", "list built-in experiment presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (simulate->parsed()) {
            dsr::ExperimentConfig cfg = dsr::parse_config(dsr::read_text_file(config_path));
            dsr::SimulationTrace trace = dsr::run_experiment(cfg);
            dsr::write_trace_csv(trace, simulate_out);
            std::printf("wrote %s: model=%s samples=%zu final_stool_angle=%s\n", simulate_out.c_str(),
                        trace.meta.model.c_str(), trace.samples.size(),
                        dsr::format_double(trace.samples.back().stool_angle).c_str());
        } else if (validate->parsed()) {
            dsr::ExperimentConfig cfg = dsr::parse_config(dsr::read_text_file(config_path));
            auto pairs = dsr::read_pairs_csv(pairs_path);
            auto rows = dsr::run_validation_table(cfg, pairs, jobs);
            dsr::write_table_csv(rows, out_path);
            std::printf("wrote %s: %zu rows\n", out_path.c_str(), rows.size());
        } else if (eigen->parsed()) {
            dsr::ExperimentConfig cfg = dsr::parse_config(dsr::read_text_file(config_path));
            auto modes = dsr::eigenvalues(cfg.fluid, mode_count);
            std::printf("index,kappa,lambda,mixing_ratio,forcing_m,forcing_l\n");
            for (const dsr::EigenMode& m : modes)
                std::printf("%d,%s,%s,%s,%s,%s\n", m.index, dsr::format_double(m.kappa).c_str(),
                            dsr::format_double(m.lambda).c_str(),
                            dsr::format_double(m.mixing_ratio).c_str(),
                            dsr::format_double(m.forcing_m).c_str(),
                            dsr::format_double(m.forcing_l).c_str());
        } else if (audit->parsed()) {
            dsr::SimulationTrace trace = dsr::read_trace_csv(trace_path);
            dsr::write_audit_csv(trace, out_path);
            std::printf("wrote %s: %zu rows\n", out_path.c_str(), trace.samples.size());
        } else if (plot->parsed()) {
            dsr::SimulationTrace trace = dsr::read_trace_csv(trace_path);
            dsr::write_plot_svg(trace, split_columns(columns_arg), out_path);
            std::printf("wrote %s\n", out_path.c_str());
        } else if (presets->parsed()) {
            for (const std::string& name : dsr::preset_names()) std::printf("%s\n", name.c_str());
        }
    } catch (const dsr::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const dsr::NumericalError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
