// Command-line front end: run scenarios, emit curves, and check the built-in
// experiments against their reference tables.
//
// Exit codes: 0 success / all cells pass, 1 reference-tolerance failure,
// 2 configuration error, 3 numeric error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seminfo/seminfo.hpp"

namespace {

constexpr int kExitTolerance = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

seminfo::ScenarioConfig resolve_config(const std::string& ref) {
    if (std::filesystem::exists(ref)) return seminfo::load_config(ref);
    if (auto builtin = seminfo::find_builtin(ref)) return *builtin;
    throw seminfo::config_error("no such config file or built-in scenario: " + ref);
}

struct Overrides {
    double grid_step = 0.0;  // 0 means keep
    std::vector<double> s_values;
    int iterations = 0;  // 0 means keep
    std::string out_dir = ".";
};

void apply_overrides(seminfo::ScenarioConfig& cfg, const Overrides& ov) {
    if (ov.grid_step > 0.0) cfg.grid.step = ov.grid_step;
    if (!ov.s_values.empty()) cfg.s_values = ov.s_values;
    if (ov.iterations > 0) cfg.solver.mode = seminfo::FixedIterations{ov.iterations};
    seminfo::validate_config(cfg);
}

void print_rows(const seminfo::RunRecord& rec) {
    std::printf("%-10s %-12s %-12s %-12s", "s", "G_bits", "R_bits", "G/R");
    for (std::size_t j = 0; j < rec.rows.front().pa.size(); ++j)
        std::printf(" pa_%zu      ", j);
    std::printf("\n");
    for (const auto& row : rec.rows) {
        std::printf("%-10.4g %-12.6g %-12.6g ", row.s, row.g_bits, row.r_bits);
        if (row.efficiency)
            std::printf("%-12.6g", *row.efficiency);
        else
            std::printf("%-12s", "undefined");
        for (double w : row.pa) std::printf(" %-10.6g", w);
        std::printf("\n");
    }
}

void print_cells(const std::string& heading, const std::vector<seminfo::TableCell>& cells) {
    std::printf("%s\n", heading.c_str());
    std::printf("  %-26s %10s %10s %9s %7s  %s\n", "cell", "computed", "reference",
                "delta", "tol", "verdict");
    for (const auto& cell : cells) {
        std::printf("  %-26s %10.4f %10.4f %+9.4f %7.3f  %s\n", cell.label.c_str(),
                    cell.computed, cell.expected, cell.delta(), cell.tolerance,
                    cell.pass() ? "pass" : "FAIL");
    }
}

int cmd_run(const std::string& ref, const Overrides& ov, bool csv_only) {
    seminfo::ScenarioConfig cfg = resolve_config(ref);
    apply_overrides(cfg, ov);
    std::filesystem::create_directories(ov.out_dir);
    const seminfo::RunRecord rec = seminfo::run_scenario(cfg);
    if (csv_only) {
        const std::string path =
            ov.out_dir + "/" +
            (cfg.outputs.curve_csv.empty() ? cfg.name + "_curve.csv" : cfg.outputs.curve_csv);
        seminfo::write_text_file(path, seminfo::curve_csv_text(rec.rows));
        std::printf("wrote %s\n", path.c_str());
        return 0;
    }
    seminfo::write_outputs(rec, ov.out_dir);
    print_rows(rec);
    std::printf("outputs written to %s/\n", ov.out_dir.c_str());
    return 0;
}

int cmd_tables() {
    const seminfo::TablesReport report = seminfo::reproduce_tables();
    print_cells("Single-goal experiment (mortality scenario):", report.table1);
    print_cells("Two-goal experiment:", report.table2);
    print_cells("Deterministic point selection:", report.extras);
    std::size_t total = report.table1.size() + report.table2.size() + report.extras.size();
    std::size_t passed = 0;
    for (const auto* cells : {&report.table1, &report.table2, &report.extras})
        for (const auto& c : *cells) passed += c.pass() ? 1 : 0;
    std::printf("Overall: %s (%zu/%zu cells within tolerance)\n",
                report.all_pass() ? "PASS" : "FAIL", passed, total);
    return report.all_pass() ? 0 : kExitTolerance;
}

int cmd_scenario_list() {
    for (const auto& cfg : seminfo::builtin_scenarios()) {
        std::printf("%-14s grid [%g, %g] step %g, %zu goal%s, s in {", cfg.name.c_str(),
                    cfg.grid.lower, cfg.grid.upper, cfg.grid.step, cfg.goals.size(),
                    cfg.goals.size() == 1 ? "" : "s");
        for (std::size_t i = 0; i < cfg.s_values.size(); ++i)
            std::printf("%s%g", i ? ", " : "", cfg.s_values[i]);
        std::printf("}\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semantic information measures and rate-fidelity experiments"};
    app.require_subcommand(1);

    Overrides ov;
    std::string config_ref;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("config", config_ref, "Built-in scenario name or JSON config path")
            ->required();
        cmd->add_option("--out-dir", ov.out_dir, "Directory for output files");
        cmd->add_option("--grid-step", ov.grid_step, "Override the grid step");
        cmd->add_option("--s", ov.s_values, "Override the list of s values");
        cmd->add_option("--iterations", ov.iterations, "Override the fixed iteration count");
    };

    CLI::App* run = app.add_subcommand("run", "Run a scenario and write CSV + JSON outputs");
    add_common(run);
    CLI::App* curve = app.add_subcommand("curve", "Run a scenario and write only the curve CSV");
    add_common(curve);
    CLI::App* tables =
        app.add_subcommand("tables", "Recompute built-in experiments against reference values");
    CLI::App* scenario = app.add_subcommand("scenario", "Scenario registry");
    scenario->require_subcommand(1);
    CLI::App* list = scenario->add_subcommand("list", "List built-in scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (run->parsed()) return cmd_run(config_ref, ov, false);
        if (curve->parsed()) return cmd_run(config_ref, ov, true);
        if (tables->parsed()) return cmd_tables();
        if (scenario->parsed() && list->parsed()) return cmd_scenario_list();
    } catch (const seminfo::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const seminfo::error& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumeric;
    }
    return 0;
}
