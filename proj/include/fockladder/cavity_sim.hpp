#pragma once

#include "fockladder/field_state.hpp"

#include <span>
#include <vector>

namespace fockladder {

enum class CavityMode { AC, CA };

struct CavityConfig {
    double g = 1.0;  // atom-field coupling, rad/s
    double t1 = 0.0; // first-atom interaction time, s
    double t2 = 0.0; // second-atom interaction time, s
    CavityMode mode = CavityMode::AC;
    unsigned pairs = 1; // number of atom pairs (k)
};

struct CavityOutcome {
    FieldState conditioned_state;
    double success_prob = 0.0; // pre-normalization weight of the kept branch
    FieldState ideal_state;
    double realized_fidelity = 0.0;
};

/// Post-selected single-pair map: level n picks up sin(sqrt(n) g t1) sin(sqrt(n) g t2)
/// in AC mode (sqrt(n+1) in CA mode), squared for diagonal weights. The ideal
/// state is the exact AC/CA image of the input. Throws ZeroSuccessProbability
/// when the kept branch has identically zero weight (e.g. AC on vacuum).
CavityOutcome conditional_map(const FieldState& state, const CavityConfig& cfg);

/// k-pair composition with identical (t1, t2) per pair; the success
/// probability is the product of the per-stage probabilities and the ideal
/// state is the k-fold AC/CA pipeline image.
CavityOutcome conditional_map_repeated(const FieldState& state, const CavityConfig& cfg);

struct InteractionTimes {
    double t1 = 0.0;
    double t2 = 0.0;
};

/// Times satisfying sqrt(mean_n) g t = pi/2 (AC) or sqrt(mean_n + 1) g t = pi/2
/// (CA), which drive the wanted atomic transitions near resonance.
InteractionTimes pi_half_times(double mean_n, double g, CavityMode mode);

struct ShortTimeScalingEntry {
    double scale = 0.0;        // lambda
    double success_prob = 0.0; // P(lambda t1, lambda t2)
    double ratio = 0.0;        // P / lambda^(4 pairs)
    double realized_fidelity = 0.0;
};

struct ShortTimeScalingReport {
    std::vector<ShortTimeScalingEntry> entries;
    double last_pair_spread = 0.0; // relative spread of the final two ratios
};

/// Evaluates the map at scaled times lambda*t1, lambda*t2 for each lambda and
/// reports P / lambda^(4 pairs), which converges to a constant in the
/// short-time limit.
ShortTimeScalingReport short_time_scaling_probe(const FieldState& state, const CavityConfig& cfg,
                                                std::span<const double> scales);

struct Fig9Row {
    double alpha_sq = 0.0;
    double success_prob = 0.0;
    double fidelity = 0.0;
};

/// Single-pair success probability and realized fidelity for coherent inputs
/// across a mean-photon-number grid, with pi/2 interaction times per point.
std::vector<Fig9Row> fig9_sweep(std::span<const double> alpha_sq_grid, double g, CavityMode mode);

} // namespace fockladder
