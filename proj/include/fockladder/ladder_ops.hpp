#pragma once

#include "fockladder/field_state.hpp"

namespace fockladder {

struct NormalizeResult {
    FieldState state;
    double norm; // squared norm for pure states, total weight for diagonal
};

/// Rescale to unit norm. Throws ZeroNormState below the 1e-14 floor and
/// InvalidParameter on negative diagonal weights.
NormalizeResult normalize(const FieldState& state);

/// a+ : c_n -> sqrt(n) c_{n-1} (pure), p_n -> n p_{n-1} (diagonal).
/// Grows the truncation by at least one level.
FieldState apply_create(const FieldState& state);

/// a : c_n -> sqrt(n+1) c_{n+1}, p_n -> (n+1) p_{n+1}.
/// Throws ZeroNormState on vacuum input.
FieldState apply_annihilate(const FieldState& state);

/// a+a : c_n -> n c_n, p_n -> n^2 p_n. Throws ZeroNormState on vacuum.
FieldState apply_ac(const FieldState& state);

/// a a+ : c_n -> (n+1) c_n, p_n -> (n+1)^2 p_n. Never fails.
FieldState apply_ca(const FieldState& state);

/// k-fold repetition collapsed into one weight multiplication followed by a
/// single renormalization; equal to k sequential applications.
FieldState apply_pipeline(const FieldState& state, const LadderPipeline& pipeline);

} // namespace fockladder
