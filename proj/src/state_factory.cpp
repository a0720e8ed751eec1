#include "fockladder/state_factory.hpp"

#include "fockladder/errors.hpp"
#include "fockladder/ladder_ops.hpp"

#include <cmath>

namespace fockladder {
namespace {

void check_tail_tol(double tail_tol)
{
    if (!(tail_tol > 0.0) || !(tail_tol < 1.0)) {
        throw InvalidParameter("tail_tol must lie in (0, 1)");
    }
}

// Geometric cutoff: the probability-tail bound z^N alone is not enough for
// the second-moment contract, so grow N until the n^2-weighted tail
// sum_{n>=N} n^2 (1-z) z^n (= z^N [N^2 + 2Nz/(1-z) + z(1+z)/(1-z)^2]) drops
// below tail_tol as well.
std::size_t thermal_cutoff(double z, double tail_tol)
{
    if (z <= 0.0) {
        return 1;
    }
    std::size_t n_dim =
        static_cast<std::size_t>(std::ceil(std::log(tail_tol) / std::log(z))) + 1;
    const double r = z / (1.0 - z);
    for (; n_dim < kMaxTruncDim; ++n_dim) {
        const double nd = static_cast<double>(n_dim);
        const double m2_tail =
            std::pow(z, nd) * (nd * nd + 2.0 * nd * r + r * (1.0 + z) / (1.0 - z));
        if (m2_tail < tail_tol) {
            return n_dim;
        }
    }
    throw TruncationOverflow("thermal cutoff exceeds the 2^16 bin cap");
}

// Poisson cutoff by doubling: stop once the bin-N term, amplified by the
// n^2 weight and the geometric majorant of the remaining tail, is below
// tail_tol.
std::size_t coherent_cutoff(double alpha_sq, double tail_tol)
{
    if (alpha_sq == 0.0) {
        return 1;
    }
    std::size_t n_dim = static_cast<std::size_t>(std::ceil(alpha_sq)) + 8;
    while (n_dim < kMaxTruncDim) {
        const double nd = static_cast<double>(n_dim);
        const double ratio = alpha_sq / (nd + 1.0);
        if (ratio < 0.5) {
            const double log_pn = nd * std::log(alpha_sq) - std::lgamma(nd + 1.0) - alpha_sq;
            const double m2_tail = std::exp(log_pn) * nd * nd / (1.0 - ratio) * 4.0;
            if (m2_tail < tail_tol) {
                return n_dim;
            }
        }
        n_dim *= 2;
    }
    throw TruncationOverflow("coherent cutoff exceeds the 2^16 bin cap");
}

} // namespace

FieldState make_thermal(const ThermalSpec& spec, double tail_tol)
{
    if (!(spec.nbar >= 0.0) || !std::isfinite(spec.nbar)) {
        throw InvalidParameter("thermal nbar must be finite and >= 0");
    }
    check_tail_tol(tail_tol);

    const double z = spec.nbar / (1.0 + spec.nbar);
    DiagonalState state;
    state.tail_tol = tail_tol;
    state.source = [z](std::size_t n) { return std::pow(z, static_cast<double>(n)); };

    const std::size_t n_dim = thermal_cutoff(z, tail_tol);
    state.weights.resize(n_dim);
    for (std::size_t n = 0; n < n_dim; ++n) {
        state.weights[n] = state.source(n);
    }
    return normalize(FieldState{std::move(state)}).state;
}

FieldState make_coherent(const CoherentSpec& spec, double tail_tol)
{
    if (!std::isfinite(std::abs(spec.alpha))) {
        throw InvalidParameter("coherent alpha must be finite");
    }
    check_tail_tol(tail_tol);

    const Complex alpha = spec.alpha;
    const double alpha_sq = std::norm(alpha);

    PureState state;
    state.tail_tol = tail_tol;
    if (alpha_sq == 0.0) {
        state.amplitudes = {Complex{1.0, 0.0}};
        state.source = [](std::size_t n) { return n == 0 ? Complex{1.0, 0.0} : Complex{0.0, 0.0}; };
        return FieldState{std::move(state)};
    }

    const double mod = std::abs(alpha);
    const double phase = std::arg(alpha);
    state.source = [alpha_sq, mod, phase](std::size_t n) -> Complex {
        const double nd = static_cast<double>(n);
        const double log_mag = nd * std::log(mod) - 0.5 * std::lgamma(nd + 1.0) - 0.5 * alpha_sq;
        return std::polar(std::exp(log_mag), phase * nd);
    };

    const std::size_t n_dim = coherent_cutoff(alpha_sq, tail_tol);
    state.amplitudes.resize(n_dim);
    Complex c = Complex{std::exp(-0.5 * alpha_sq), 0.0};
    state.amplitudes[0] = c;
    for (std::size_t n = 1; n < n_dim; ++n) {
        c *= alpha / std::sqrt(static_cast<double>(n));
        state.amplitudes[n] = c;
    }
    return normalize(FieldState{std::move(state)}).state;
}

FieldState make_number(std::size_t n)
{
    PureState state;
    state.amplitudes.assign(n + 1, Complex{0.0, 0.0});
    state.amplitudes[n] = Complex{1.0, 0.0};
    return FieldState{std::move(state)};
}

} // namespace fockladder
