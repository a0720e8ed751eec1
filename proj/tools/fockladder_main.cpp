#include "fockladder/acceptance.hpp"
#include "fockladder/errors.hpp"
#include "fockladder/experiments.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

int run_fig_command(const std::string& figure, const std::string& config_path,
                    const std::map<std::string, std::string>& flag_overrides,
                    const std::string& plot_script)
{
    fockladder::ExperimentConfig cfg = fockladder::ExperimentConfig::defaults_for(figure);
    if (!config_path.empty()) {
        fockladder::apply_config_entries(cfg, fockladder::load_config_file(config_path));
        cfg.figure = figure; // the positional argument wins
    }
    fockladder::apply_config_entries(cfg, flag_overrides);

    const fockladder::RunFigResult result = fockladder::run_fig(cfg);
    std::cout << figure << ": wrote " << result.rows << " rows to " << result.out_path << "\n";
    for (const auto& [name, value] : result.summary) {
        std::cout << "  " << name << " = " << fockladder::format_number(value) << "\n";
    }
    if (!plot_script.empty()) {
        fockladder::write_plot_script(figure, result.out_path, plot_script);
        std::cout << "  plot script: " << plot_script << "\n";
    }
    return 0;
}

int run_qzero_command(const std::string& mode, unsigned k, const std::string& bracket)
{
    fockladder::QZeroSource source;
    if (mode == "ac") {
        source.family = fockladder::QZeroFamily::ThermalAC;
    } else if (mode == "ca") {
        source.family = fockladder::QZeroFamily::ThermalCA;
    } else {
        throw fockladder::ConfigError("qzero mode must be ac or ca");
    }
    source.k = k;
    double lo = 0.0, hi = 0.0;
    char extra = 0;
    if (std::sscanf(bracket.c_str(), "%lf:%lf%c", &lo, &hi, &extra) != 2) {
        throw fockladder::ConfigError("expected bracket as lo:hi, got '" + bracket + "'");
    }
    const double root = fockladder::find_q_zero(source, lo, hi);
    std::cout << "Q zero crossing at nbar = " << fockladder::format_number(root) << "\n";
    return 0;
}

int run_accept_command(const std::string& report_path)
{
    const fockladder::AcceptanceReport report = fockladder::run_acceptance();
    for (const auto& criterion : report.criteria) {
        std::cout << (criterion.passed ? "[PASS] " : "[FAIL] ") << "criterion " << criterion.id
                  << ": " << criterion.title << "\n";
        if (!criterion.passed) {
            for (const auto& check : criterion.checks) {
                if (!check.passed) {
                    std::cout << "       " << check.label << ": measured "
                              << fockladder::format_number(check.measured) << ", required "
                              << check.comparator << " "
                              << fockladder::format_number(check.limit) << "\n";
                }
            }
        }
    }
    if (!report_path.empty()) {
        std::ofstream out(report_path, std::ios::binary);
        if (!out) {
            throw fockladder::ConfigError("cannot open report path: " + report_path);
        }
        out << fockladder::acceptance_report_json(report) << "\n";
        std::cout << "report: " << report_path << "\n";
    }
    std::cout << (report.all_passed ? "all criteria passed" : "some criteria failed") << "\n";
    return report.all_passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Truncated Fock-space photon operation toolkit"};
    app.require_subcommand(1);

    // fig ------------------------------------------------------------------
    auto* fig = app.add_subcommand("fig", "produce a dataset (fig1..fig9 or custom)");
    std::string figure;
    fig->add_option("id", figure, "figure id")->required();
    std::string config_path;
    fig->add_option("--config", config_path, "key = value config file");
    std::string nbar_range, alpha_sq_range, grid, out, format, plot_script;
    unsigned k = 0;
    double tail_tol = 0.0;
    fig->add_option("--nbar-range", nbar_range, "thermal grid lo:hi:step");
    fig->add_option("--alpha-sq-range", alpha_sq_range, "coherent grid lo:hi:step");
    fig->add_option("--k", k, "repetition count / sweep upper bound");
    fig->add_option("--tail-tol", tail_tol, "truncation tail tolerance");
    fig->add_option("--grid", grid, "wigner window min:max:resolution");
    fig->add_option("--out", out, "output file path");
    fig->add_option("--format", format, "csv or json");
    fig->add_option("--plot-script", plot_script, "write a gnuplot stub here");

    // qzero ----------------------------------------------------------------
    auto* qzero = app.add_subcommand("qzero", "bisect the Mandel Q sign change in nbar");
    std::string qzero_mode = "ac";
    unsigned qzero_k = 1;
    std::string bracket = "0.3:1.0";
    qzero->add_option("--mode", qzero_mode, "ac or ca");
    qzero->add_option("--k", qzero_k, "repetition count");
    qzero->add_option("--bracket", bracket, "search bracket lo:hi");

    // accept ---------------------------------------------------------------
    auto* accept = app.add_subcommand("accept", "run the physics acceptance suite");
    std::string report_path;
    accept->add_option("--out", report_path, "write a JSON report here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (fig->parsed()) {
            std::map<std::string, std::string> overrides;
            if (fig->count("--nbar-range")) overrides["nbar-range"] = nbar_range;
            if (fig->count("--alpha-sq-range")) overrides["alpha-sq-range"] = alpha_sq_range;
            if (fig->count("--k")) overrides["k"] = std::to_string(k);
            if (fig->count("--tail-tol")) overrides["tail-tol"] = fockladder::format_number(tail_tol);
            if (fig->count("--grid")) overrides["grid"] = grid;
            if (fig->count("--out")) overrides["out"] = out;
            if (fig->count("--format")) overrides["format"] = format;
            return run_fig_command(figure, config_path, overrides, plot_script);
        }
        if (qzero->parsed()) {
            return run_qzero_command(qzero_mode, qzero_k, bracket);
        }
        return run_accept_command(report_path);
    } catch (const fockladder::NoSignChange& e) {
        std::cerr << "no sign change: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
