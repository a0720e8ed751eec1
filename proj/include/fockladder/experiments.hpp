#pragma once

#include "fockladder/field_state.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fockladder {

enum class OutputFormat { Csv, Json };

struct RangeSpec {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;
};

struct SquareGridSpec {
    double min = -3.0;
    double max = 3.0;
    int resolution = 121;
};

// One figure run: which dataset to produce and on which grids. Figure ids
// fig1..fig9 carry their own defaults; "custom" is the thermal Q sweep with a
// caller-chosen repetition count.
struct ExperimentConfig {
    std::string figure = "fig1";
    RangeSpec nbar_range{0.05, 2.0, 0.05};
    RangeSpec alpha_sq_range{0.05, 2.0, 0.05};
    unsigned k = 1;
    double tail_tol = kDefaultTailTol;
    SquareGridSpec wigner_grid{-3.0, 3.0, 121};
    std::string out = "figure.csv";
    OutputFormat format = OutputFormat::Csv;

    static ExperimentConfig defaults_for(const std::string& figure);
    void validate() const; // throws ConfigError
};

struct RunFigResult {
    std::string out_path;
    std::size_t rows = 0;
    // Headline numbers worth echoing (grid minima, crossings), in insertion order.
    std::vector<std::pair<std::string, double>> summary;
};

/// Produces the dataset for one figure. Identical configs yield byte-identical
/// output files.
RunFigResult run_fig(const ExperimentConfig& cfg);

/// Writes a small gnuplot script next to `data_path` for the given figure.
std::string write_plot_script(const std::string& figure, const std::string& data_path,
                              const std::string& script_path);

enum class QZeroFamily { ThermalAC, ThermalCA };

struct QZeroSource {
    QZeroFamily family = QZeroFamily::ThermalAC;
    unsigned k = 1;
};

/// Bisection root of the Mandel Q factor of the k-fold AC/CA thermal image,
/// as a function of nbar, to 1e-4 absolute. Throws NoSignChange when the
/// bracket endpoints have equal signs.
double find_q_zero(const QZeroSource& source, double lo, double hi);

/// "lo:hi:step" -> RangeSpec. Throws ConfigError on malformed input.
RangeSpec parse_range(const std::string& text);

/// "min:max:resolution" -> SquareGridSpec.
SquareGridSpec parse_square_grid(const std::string& text);

/// Inclusive grid lo, lo+step, ... (endpoint admitted within half a step).
std::vector<double> build_grid(const RangeSpec& range);

/// Geometrically spaced grid over [lo, hi].
std::vector<double> log_spaced_grid(double lo, double hi, std::size_t count);

/// Key/value config file ("key = value", '#' comments). Keys mirror the CLI
/// flag names. Unknown keys are rejected.
std::map<std::string, std::string> load_config_file(const std::string& path);

/// Applies config-file entries onto a config; later CLI flags may override.
void apply_config_entries(ExperimentConfig& cfg,
                          const std::map<std::string, std::string>& entries);

/// Fixed-format numeric text used in all output files: 12 significant digits,
/// '.' decimal, no locale dependence.
std::string format_number(double value);

/// FOCKLADDER_THREADS, falling back to the hardware concurrency; always >= 1.
unsigned thread_budget();

/// Runs body(i) for i in [0, count), split across the thread budget. Callers
/// write results into preassigned slots so the outcome is order-independent.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace fockladder
