#include "fockladder/cavity_sim.hpp"

#include "fockladder/errors.hpp"
#include "fockladder/ladder_ops.hpp"
#include "fockladder/observables.hpp"
#include "fockladder/state_factory.hpp"

#include <cmath>
#include <numbers>

namespace fockladder {
namespace {

void validate_config(const CavityConfig& cfg)
{
    if (!(cfg.g > 0.0) || !std::isfinite(cfg.g)) {
        throw InvalidParameter("coupling g must be positive and finite");
    }
    if (!(cfg.t1 >= 0.0) || !(cfg.t2 >= 0.0) || !std::isfinite(cfg.g * cfg.t1) ||
        !std::isfinite(cfg.g * cfg.t2)) {
        throw InvalidParameter("interaction times must be finite and >= 0");
    }
    if (cfg.pairs < 1) {
        throw InvalidParameter("pair count must be >= 1");
    }
}

double branch_amp(std::size_t n, const CavityConfig& cfg)
{
    const double arg = cfg.mode == CavityMode::AC ? std::sqrt(static_cast<double>(n))
                                                  : std::sqrt(static_cast<double>(n + 1));
    return std::sin(arg * cfg.g * cfg.t1) * std::sin(arg * cfg.g * cfg.t2);
}

// Kept-branch weight of the normalized input. The amplitude factors are
// exactly zero on levels the branch cannot reach (sin(0) = 0 for AC at n = 0),
// so an identically-impossible post-selection shows up as an exact zero.
double branch_probability(const FieldState& state, const CavityConfig& cfg)
{
    long double p = 0.0L;
    const auto add = [&](std::size_t n, double w) {
        const double s = branch_amp(n, cfg);
        p += static_cast<long double>(s * s * w);
    };
    if (const auto* d = std::get_if<DiagonalState>(&state)) {
        for (std::size_t n = 0; n < d->dim(); ++n) {
            add(n, d->weights[n]);
        }
    } else {
        const auto& pu = std::get<PureState>(state);
        for (std::size_t n = 0; n < pu.dim(); ++n) {
            add(n, std::norm(pu.amplitudes[n]));
        }
    }
    return static_cast<double>(p);
}

FieldState conditioned_state(const FieldState& state, const CavityConfig& cfg)
{
    // Weight the stored vector directly; composing the sin factors into the
    // state's source keeps the truncation machinery intact for later stages.
    if (const auto* d = std::get_if<DiagonalState>(&state)) {
        DiagonalState out;
        out.tail_tol = d->tail_tol;
        out.weights.resize(d->dim());
        for (std::size_t n = 0; n < d->dim(); ++n) {
            const double s = branch_amp(n, cfg);
            out.weights[n] = s * s * d->weights[n];
        }
        if (d->source) {
            DiagonalSource parent = d->source;
            out.source = [parent, cfg](std::size_t n) {
                const double s = branch_amp(n, cfg);
                return s * s * parent(n);
            };
        }
        return FieldState{std::move(out)};
    }
    const auto& p = std::get<PureState>(state);
    PureState out;
    out.tail_tol = p.tail_tol;
    out.amplitudes.resize(p.dim());
    for (std::size_t n = 0; n < p.dim(); ++n) {
        out.amplitudes[n] = branch_amp(n, cfg) * p.amplitudes[n];
    }
    if (p.source) {
        PureSource parent = p.source;
        out.source = [parent, cfg](std::size_t n) { return branch_amp(n, cfg) * parent(n); };
    }
    return FieldState{std::move(out)};
}

void renormalize_branch(FieldState& state, double total)
{
    // The branch weight can legitimately sit far below the 1e-14 zero-norm
    // floor in the short-time limit, so rescale directly instead of going
    // through normalize(). The source picks up the same scale so later
    // operations regenerate at unit magnitude.
    if (auto* d = std::get_if<DiagonalState>(&state)) {
        const double inv = 1.0 / total;
        for (auto& w : d->weights) {
            w *= inv;
        }
        if (d->source) {
            d->source = [src = std::move(d->source), inv](std::size_t n) {
                return inv * src(n);
            };
        }
        return;
    }
    auto& p = std::get<PureState>(state);
    const double inv = 1.0 / std::sqrt(total);
    for (auto& c : p.amplitudes) {
        c *= inv;
    }
    if (p.source) {
        p.source = [src = std::move(p.source), inv](std::size_t n) { return inv * src(n); };
    }
}

CavityOutcome run_stage(const FieldState& state, const CavityConfig& cfg)
{
    const double p = branch_probability(state, cfg);
    if (p == 0.0) {
        throw ZeroSuccessProbability("post-selected branch has zero weight");
    }
    FieldState cond = conditioned_state(state, cfg);
    renormalize_branch(cond, p);
    CavityOutcome out;
    out.success_prob = p;
    out.conditioned_state = std::move(cond);
    return out;
}

} // namespace

CavityOutcome conditional_map(const FieldState& state, const CavityConfig& cfg)
{
    validate_config(cfg);
    if (cfg.pairs != 1) {
        throw InvalidParameter("conditional_map handles a single pair; use "
                               "conditional_map_repeated for k > 1");
    }
    CavityOutcome out = run_stage(state, cfg);
    out.ideal_state =
        cfg.mode == CavityMode::AC ? apply_ac(state) : apply_ca(state);
    out.realized_fidelity = fidelity(out.conditioned_state, out.ideal_state);
    return out;
}

CavityOutcome conditional_map_repeated(const FieldState& state, const CavityConfig& cfg)
{
    validate_config(cfg);
    CavityConfig stage_cfg = cfg;
    stage_cfg.pairs = 1;

    CavityOutcome out;
    out.success_prob = 1.0;
    FieldState current = state;
    for (unsigned pair = 0; pair < cfg.pairs; ++pair) {
        CavityOutcome stage = run_stage(current, stage_cfg);
        out.success_prob *= stage.success_prob;
        current = std::move(stage.conditioned_state);
    }
    out.conditioned_state = std::move(current);

    const LadderOp op = cfg.mode == CavityMode::AC ? LadderOp::AC : LadderOp::CA;
    out.ideal_state = apply_pipeline(state, LadderPipeline{op, cfg.pairs});
    out.realized_fidelity = fidelity(out.conditioned_state, out.ideal_state);
    return out;
}

InteractionTimes pi_half_times(double mean_n, double g, CavityMode mode)
{
    if (!(g > 0.0) || !std::isfinite(g)) {
        throw InvalidParameter("coupling g must be positive and finite");
    }
    if (!(mean_n >= 0.0) || !std::isfinite(mean_n)) {
        throw InvalidParameter("mean photon number must be finite and >= 0");
    }
    const double shifted = mode == CavityMode::AC ? mean_n : mean_n + 1.0;
    if (shifted <= 0.0) {
        throw InvalidParameter("pi/2 timing for AC diverges at zero mean photon number");
    }
    const double t = (std::numbers::pi / 2.0) / (g * std::sqrt(shifted));
    return {t, t};
}

ShortTimeScalingReport short_time_scaling_probe(const FieldState& state, const CavityConfig& cfg,
                                                std::span<const double> scales)
{
    validate_config(cfg);
    if (scales.size() < 2) {
        throw InvalidParameter("scaling probe needs at least two scales");
    }
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0.0)) {
            throw InvalidParameter("scales must be positive");
        }
        if (i > 0 && !(scales[i] < scales[i - 1])) {
            throw InvalidParameter("scales must be strictly decreasing");
        }
    }

    ShortTimeScalingReport report;
    report.entries.reserve(scales.size());
    for (double lambda : scales) {
        CavityConfig scaled = cfg;
        scaled.t1 = cfg.t1 * lambda;
        scaled.t2 = cfg.t2 * lambda;
        CavityOutcome outcome = conditional_map_repeated(state, scaled);
        ShortTimeScalingEntry entry;
        entry.scale = lambda;
        entry.success_prob = outcome.success_prob;
        entry.ratio =
            outcome.success_prob / std::pow(lambda, 4.0 * static_cast<double>(cfg.pairs));
        entry.realized_fidelity = outcome.realized_fidelity;
        report.entries.push_back(entry);
    }
    const double a = report.entries[report.entries.size() - 2].ratio;
    const double b = report.entries.back().ratio;
    const double denom = std::max(std::abs(a), std::abs(b));
    report.last_pair_spread = denom > 0.0 ? std::abs(a - b) / denom : 0.0;
    return report;
}

std::vector<Fig9Row> fig9_sweep(std::span<const double> alpha_sq_grid, double g, CavityMode mode)
{
    std::vector<Fig9Row> rows;
    rows.reserve(alpha_sq_grid.size());
    for (double alpha_sq : alpha_sq_grid) {
        if (mode == CavityMode::AC && !(alpha_sq > 0.0)) {
            throw InvalidParameter("AC sweep requires positive |alpha|^2");
        }
        const FieldState input = make_coherent({Complex{std::sqrt(alpha_sq), 0.0}});
        const InteractionTimes times = pi_half_times(alpha_sq, g, mode);
        CavityConfig cfg;
        cfg.g = g;
        cfg.t1 = times.t1;
        cfg.t2 = times.t2;
        cfg.mode = mode;
        cfg.pairs = 1;
        const CavityOutcome outcome = conditional_map(input, cfg);
        rows.push_back({alpha_sq, outcome.success_prob, outcome.realized_fidelity});
    }
    return rows;
}

} // namespace fockladder
