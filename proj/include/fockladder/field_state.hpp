#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <variant>
#include <vector>

namespace fockladder {

using Complex = std::complex<double>;

inline constexpr double kDefaultTailTol = 1e-12;

// Norms below this are treated as the analytically-zero case (a|0> etc.)
// rather than roundoff survivors.
inline constexpr double kZeroNormEps = 1e-14;

// Hard cap for the adaptive truncation search.
inline constexpr std::size_t kMaxTruncDim = std::size_t{1} << 16;

// Unnormalized level-n term of the untruncated distribution a state was
// generated from. Ladder operations compose these so the cutoff can be
// re-derived after weight-shifting operations; states with exact finite
// support (number states, hand-built vectors) carry none.
using PureSource = std::function<Complex(std::size_t)>;
using DiagonalSource = std::function<double(std::size_t)>;

// Coherent-lineage states: complex amplitudes over |0..N-1>.
struct PureState {
    std::vector<Complex> amplitudes;
    double tail_tol = kDefaultTailTol;
    PureSource source;

    std::size_t dim() const { return amplitudes.size(); }
};

// Thermal-lineage states: nonnegative number-basis weights. Everything the
// AC/CA maps produce from a thermal input stays number-diagonal, so the full
// density matrix is never materialized.
struct DiagonalState {
    std::vector<double> weights;
    double tail_tol = kDefaultTailTol;
    DiagonalSource source;

    std::size_t dim() const { return weights.size(); }
};

using FieldState = std::variant<PureState, DiagonalState>;

enum class LadderOp { Create, Annihilate, AC, CA };

struct LadderPipeline {
    LadderOp op = LadderOp::AC;
    unsigned repetitions = 1; // k >= 1
};

bool is_diagonal(const FieldState& state);
std::size_t state_dim(const FieldState& state);
double state_tail_tol(const FieldState& state);

/// Photon-number distribution: p_n for diagonal states, |c_n|^2 for pure.
std::vector<double> number_weights(const FieldState& state);

} // namespace fockladder
