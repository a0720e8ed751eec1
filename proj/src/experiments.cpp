#include "fockladder/experiments.hpp"

#include "fockladder/cavity_sim.hpp"
#include "fockladder/errors.hpp"
#include "fockladder/ladder_ops.hpp"
#include "fockladder/observables.hpp"
#include "fockladder/state_factory.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace fockladder {
namespace {

using Row = std::vector<double>;

struct Table {
    std::vector<std::string> columns;
    std::vector<Row> rows;
};

void write_table(const Table& table, const ExperimentConfig& cfg)
{
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open output file: " + cfg.out);
    }
    if (cfg.format == OutputFormat::Csv) {
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            out << (i ? "," : "") << table.columns[i];
        }
        out << "\n";
        for (const Row& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out << (i ? "," : "") << format_number(row[i]);
            }
            out << "\n";
        }
    } else {
        nlohmann::ordered_json j;
        j["figure"] = cfg.figure;
        j["columns"] = table.columns;
        auto rows = nlohmann::ordered_json::array();
        for (const Row& row : table.rows) {
            auto jr = nlohmann::ordered_json::array();
            for (double v : row) {
                jr.push_back(format_number(v));
            }
            rows.push_back(std::move(jr));
        }
        j["rows"] = std::move(rows);
        out << j.dump(2) << "\n";
    }
    if (!out) {
        throw ConfigError("failed writing output file: " + cfg.out);
    }
}

// Mandel Q of the k-fold AC and CA images of a thermal or coherent input,
// computed through the state pipeline.
std::pair<double, double> q_pair(const FieldState& base, unsigned k)
{
    const FieldState ac = apply_pipeline(base, {LadderOp::AC, k});
    const FieldState ca = apply_pipeline(base, {LadderOp::CA, k});
    return {moments(ac).mandel_q.value(), moments(ca).mandel_q.value()};
}

Table thermal_q_sweep(const ExperimentConfig& cfg, unsigned k)
{
    const std::vector<double> grid = build_grid(cfg.nbar_range);
    Table table{{"nbar", "q_ac", "q_ca"}, std::vector<Row>(grid.size())};
    parallel_for(grid.size(), [&](std::size_t i) {
        const FieldState base = make_thermal({grid[i]}, cfg.tail_tol);
        const auto [qac, qca] = q_pair(base, k);
        table.rows[i] = {grid[i], qac, qca};
    });
    return table;
}

Table coherent_q_sweep(const ExperimentConfig& cfg, unsigned k)
{
    const std::vector<double> grid = build_grid(cfg.alpha_sq_range);
    Table table{{"alpha_sq", "q_ac", "q_ca"}, std::vector<Row>(grid.size())};
    parallel_for(grid.size(), [&](std::size_t i) {
        const FieldState base =
            make_coherent({Complex{std::sqrt(grid[i]), 0.0}}, cfg.tail_tol);
        const auto [qac, qca] = q_pair(base, k);
        table.rows[i] = {grid[i], qac, qca};
    });
    return table;
}

Table fidelity_sweep(const ExperimentConfig& cfg, bool thermal_lineage, unsigned k_max)
{
    FieldState base = thermal_lineage
                          ? make_thermal({0.57}, cfg.tail_tol)
                          : make_coherent({Complex{std::sqrt(0.57), 0.0}}, cfg.tail_tol);
    Table table{{"k", "fidelity"}, std::vector<Row>(k_max)};
    parallel_for(k_max, [&](std::size_t i) {
        const unsigned k = static_cast<unsigned>(i) + 1;
        const FieldState ac = apply_pipeline(base, {LadderOp::AC, k});
        const FieldState ca = apply_pipeline(base, {LadderOp::CA, k});
        table.rows[i] = {static_cast<double>(k), fidelity(ac, ca)};
    });
    return table;
}

struct WignerFigData {
    Table table;
    double min_ac = 0.0;
    double min_ca = 0.0;
};

WignerFigData wigner_fig(const ExperimentConfig& cfg, bool thermal_lineage)
{
    FieldState base = thermal_lineage
                          ? make_thermal({0.57}, cfg.tail_tol)
                          : make_coherent({Complex{std::sqrt(0.57), 0.0}}, cfg.tail_tol);
    const FieldState ac = apply_ac(base);
    const FieldState ca = apply_ca(base);
    WignerGridSpec spec;
    spec.x_min = spec.y_min = cfg.wigner_grid.min;
    spec.x_max = spec.y_max = cfg.wigner_grid.max;
    spec.resolution = cfg.wigner_grid.resolution;

    const std::size_t res = static_cast<std::size_t>(spec.resolution);
    WignerGrid grid_ac, grid_ca;
    // The two surfaces are independent; evaluate them concurrently only
    // through parallel_for so output order stays fixed.
    std::vector<double> w_ac(res * res), w_ca(res * res);
    const double dx = (spec.x_max - spec.x_min) / static_cast<double>(res - 1);
    const double dy = (spec.y_max - spec.y_min) / static_cast<double>(res - 1);
    parallel_for(res * res, [&](std::size_t idx) {
        const std::size_t iy = idx / res;
        const std::size_t ix = idx % res;
        const Complex alpha{spec.x_min + dx * static_cast<double>(ix),
                            spec.y_min + dy * static_cast<double>(iy)};
        w_ac[idx] = wigner_at(ac, alpha);
        w_ca[idx] = wigner_at(ca, alpha);
    });

    WignerFigData data;
    data.table.columns = {"x", "y", "w_ac", "w_ca"};
    data.table.rows.reserve(res * res);
    data.min_ac = w_ac[0];
    data.min_ca = w_ca[0];
    for (std::size_t iy = 0; iy < res; ++iy) {
        const double y = spec.y_min + dy * static_cast<double>(iy);
        for (std::size_t ix = 0; ix < res; ++ix) {
            const double x = spec.x_min + dx * static_cast<double>(ix);
            const std::size_t idx = iy * res + ix;
            data.table.rows.push_back({x, y, w_ac[idx], w_ca[idx]});
            data.min_ac = std::min(data.min_ac, w_ac[idx]);
            data.min_ca = std::min(data.min_ca, w_ca[idx]);
        }
    }
    return data;
}

Table fig9_table(const ExperimentConfig& cfg, bool use_default_log_grid)
{
    const std::vector<double> grid = use_default_log_grid
                                         ? log_spaced_grid(1.0, 200.0, 40)
                                         : build_grid(cfg.alpha_sq_range);
    Table table{{"alpha_sq", "p1", "f1"}, std::vector<Row>(grid.size())};
    parallel_for(grid.size(), [&](std::size_t i) {
        const std::vector<Fig9Row> row = fig9_sweep({&grid[i], 1}, 1.0, CavityMode::AC);
        table.rows[i] = {row[0].alpha_sq, row[0].success_prob, row[0].fidelity};
    });
    return table;
}

double q_of_family(const QZeroSource& source, double nbar)
{
    const ThermalMoments m = source.family == QZeroFamily::ThermalAC
                                 ? thermal_ack_moments(nbar, source.k)
                                 : thermal_cak_moments(nbar, source.k);
    return m.variance / m.mean - 1.0;
}

const std::set<std::string>& known_figures()
{
    static const std::set<std::string> ids = {"fig1", "fig2", "fig3", "fig4", "fig5",
                                              "fig6", "fig7", "fig8", "fig9", "custom"};
    return ids;
}

} // namespace

ExperimentConfig ExperimentConfig::defaults_for(const std::string& figure)
{
    ExperimentConfig cfg;
    cfg.figure = figure;
    if (figure == "fig3" || figure == "fig7") {
        cfg.k = 20;
    } else if (figure == "fig4" || figure == "fig8") {
        cfg.k = 30; // sweep upper bound
    }
    cfg.out = figure + ".csv";
    return cfg;
}

void ExperimentConfig::validate() const
{
    if (known_figures().count(figure) == 0) {
        throw ConfigError("unknown figure id: " + figure);
    }
    if (!(tail_tol > 0.0) || !(tail_tol <= 1e-3)) {
        throw ConfigError("tail-tol must lie in (0, 1e-3]");
    }
    if (k < 1) {
        throw ConfigError("k must be >= 1");
    }
    for (const RangeSpec* r : {&nbar_range, &alpha_sq_range}) {
        if (!(r->step > 0.0)) {
            throw ConfigError("grid step must be positive");
        }
        if (!(r->hi >= r->lo)) {
            throw ConfigError("grid range is empty");
        }
    }
    if (wigner_grid.resolution < 2) {
        throw ConfigError("wigner grid resolution must be >= 2");
    }
    if (!(wigner_grid.max > wigner_grid.min)) {
        throw ConfigError("wigner grid window is empty");
    }
    if (out.empty()) {
        throw ConfigError("output path is empty");
    }
}

RunFigResult run_fig(const ExperimentConfig& cfg)
{
    cfg.validate();
    Table table;
    RunFigResult result;
    result.out_path = cfg.out;

    if (cfg.figure == "fig1") {
        table = thermal_q_sweep(cfg, 1);
    } else if (cfg.figure == "fig3") {
        table = thermal_q_sweep(cfg, cfg.k);
    } else if (cfg.figure == "custom") {
        table = thermal_q_sweep(cfg, cfg.k);
    } else if (cfg.figure == "fig5") {
        table = coherent_q_sweep(cfg, 1);
    } else if (cfg.figure == "fig7") {
        table = coherent_q_sweep(cfg, cfg.k);
    } else if (cfg.figure == "fig4" || cfg.figure == "fig8") {
        table = fidelity_sweep(cfg, cfg.figure == "fig4", cfg.k);
    } else if (cfg.figure == "fig2" || cfg.figure == "fig6") {
        WignerFigData data = wigner_fig(cfg, cfg.figure == "fig2");
        table = std::move(data.table);
        result.summary.emplace_back("min_w_ac", data.min_ac);
        result.summary.emplace_back("min_w_ca", data.min_ca);
    } else if (cfg.figure == "fig9") {
        // The log-spaced default only applies when the caller kept the stock
        // alpha_sq range.
        const ExperimentConfig stock = ExperimentConfig::defaults_for("fig9");
        const bool stock_range = cfg.alpha_sq_range.lo == stock.alpha_sq_range.lo &&
                                 cfg.alpha_sq_range.hi == stock.alpha_sq_range.hi &&
                                 cfg.alpha_sq_range.step == stock.alpha_sq_range.step;
        table = fig9_table(cfg, stock_range);
    }

    write_table(table, cfg);
    result.rows = table.rows.size();
    return result;
}

std::string write_plot_script(const std::string& figure, const std::string& data_path,
                              const std::string& script_path)
{
    std::ofstream out(script_path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open plot script path: " + script_path);
    }
    out << "set datafile separator ','\n";
    if (figure == "fig2" || figure == "fig6") {
        out << "set dgrid3d 61,61\nset hidden3d\n";
        out << "splot '" << data_path << "' every ::1 using 1:2:3 with lines title 'W_AC', \\\n";
        out << "      '" << data_path << "' every ::1 using 1:2:4 with lines title 'W_CA'\n";
    } else if (figure == "fig4" || figure == "fig8") {
        out << "plot '" << data_path << "' every ::1 using 1:2 with linespoints title 'fidelity'\n";
    } else if (figure == "fig9") {
        out << "set logscale x\n";
        out << "plot '" << data_path << "' every ::1 using 1:2 with lines title 'P1', \\\n";
        out << "     '" << data_path << "' every ::1 using 1:3 with lines title 'F1'\n";
    } else {
        out << "plot '" << data_path << "' every ::1 using 1:2 with lines title 'Q_AC', \\\n";
        out << "     '" << data_path << "' every ::1 using 1:3 with lines title 'Q_CA'\n";
    }
    return script_path;
}

double find_q_zero(const QZeroSource& source, double lo, double hi)
{
    if (!(lo < hi) || !(lo > 0.0)) {
        throw InvalidParameter("bracket must satisfy 0 < lo < hi");
    }
    double f_lo = q_of_family(source, lo);
    double f_hi = q_of_family(source, hi);
    if (f_lo == 0.0) {
        return lo;
    }
    if (f_hi == 0.0) {
        return hi;
    }
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        throw NoSignChange("Q has the same sign at both bracket ends");
    }
    while (hi - lo > 1e-4) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = q_of_family(source, mid);
        if (f_mid == 0.0) {
            return mid;
        }
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

RangeSpec parse_range(const std::string& text)
{
    RangeSpec r;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &r.lo, &r.hi, &r.step, &extra) != 3) {
        throw ConfigError("expected range as lo:hi:step, got '" + text + "'");
    }
    return r;
}

SquareGridSpec parse_square_grid(const std::string& text)
{
    SquareGridSpec g;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &g.min, &g.max, &g.resolution, &extra) != 3) {
        throw ConfigError("expected grid as min:max:resolution, got '" + text + "'");
    }
    return g;
}

std::vector<double> build_grid(const RangeSpec& range)
{
    if (!(range.step > 0.0) || !(range.hi >= range.lo)) {
        throw ConfigError("invalid grid range");
    }
    std::vector<double> grid;
    const double span = range.hi - range.lo;
    const std::size_t count = static_cast<std::size_t>(std::floor(span / range.step + 0.5)) + 1;
    grid.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double v = range.lo + range.step * static_cast<double>(i);
        if (v > range.hi + 0.5 * range.step) {
            break;
        }
        grid.push_back(std::min(v, range.hi));
    }
    return grid;
}

std::vector<double> log_spaced_grid(double lo, double hi, std::size_t count)
{
    if (!(lo > 0.0) || !(hi > lo) || count < 2) {
        throw ConfigError("log grid needs 0 < lo < hi and count >= 2");
    }
    std::vector<double> grid(count);
    const double log_lo = std::log(lo);
    const double log_hi = std::log(hi);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        grid[i] = std::exp(log_lo + t * (log_hi - log_lo));
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

std::map<std::string, std::string> load_config_file(const std::string& path)
{
    static const std::set<std::string> known = {"figure", "k",  "tail-tol", "nbar-range",
                                                "alpha-sq-range", "grid", "out", "format"};
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::map<std::string, std::string> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        const auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        if (strip(line).empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + " is not key = value");
        }
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (known.count(key) == 0) {
            throw ConfigError("unknown config key: " + key);
        }
        entries[key] = value;
    }
    return entries;
}

void apply_config_entries(ExperimentConfig& cfg,
                          const std::map<std::string, std::string>& entries)
{
    for (const auto& [key, value] : entries) {
        if (key == "figure") {
            cfg.figure = value;
        } else if (key == "k") {
            cfg.k = static_cast<unsigned>(std::strtoul(value.c_str(), nullptr, 10));
        } else if (key == "tail-tol") {
            cfg.tail_tol = std::strtod(value.c_str(), nullptr);
        } else if (key == "nbar-range") {
            cfg.nbar_range = parse_range(value);
        } else if (key == "alpha-sq-range") {
            cfg.alpha_sq_range = parse_range(value);
        } else if (key == "grid") {
            cfg.wigner_grid = parse_square_grid(value);
        } else if (key == "out") {
            cfg.out = value;
        } else if (key == "format") {
            if (value == "csv") {
                cfg.format = OutputFormat::Csv;
            } else if (value == "json") {
                cfg.format = OutputFormat::Json;
            } else {
                throw ConfigError("format must be csv or json");
            }
        }
    }
}

std::string format_number(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

unsigned thread_budget()
{
    if (const char* env = std::getenv("FOCKLADDER_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1) {
            return static_cast<unsigned>(parsed);
        }
        return 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw >= 1 ? hw : 1;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body)
{
    const unsigned budget = thread_budget();
    if (count == 0) {
        return;
    }
    const std::size_t workers =
        std::min<std::size_t>(budget, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            const std::size_t begin = count * w / workers;
            const std::size_t end = count * (w + 1) / workers;
            try {
                for (std::size_t i = begin; i < end; ++i) {
                    body(i);
                }
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : threads) {
        t.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

} // namespace fockladder
