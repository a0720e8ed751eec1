#include "fockladder/ladder_ops.hpp"

#include "fockladder/errors.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace fockladder {
namespace {

// Amplitude multiplier as a function of the target level n; diagonal weights
// pick up the square of the same factor.
using AmpFactor = std::function<double(std::size_t)>;

long double pure_total(const std::vector<Complex>& v)
{
    long double t = 0.0L;
    for (const auto& c : v) {
        t += static_cast<long double>(std::norm(c));
    }
    return t;
}

long double diag_total(const std::vector<double>& v)
{
    long double t = 0.0L;
    for (double w : v) {
        t += w;
    }
    return t;
}

void check_finite_total(long double total)
{
    if (!std::isfinite(static_cast<double>(total))) {
        throw TruncationOverflow("state weights overflowed double range");
    }
}

// Grows the cutoff by doubling until the last bin carries less than tail_tol
// of the total weight, regenerating the vector from the composed source each
// round. Trailing exactly-zero bins are trimmed afterwards.
template <typename Value, typename Source, typename WeightOf>
std::vector<Value> regenerate(const Source& src, const WeightOf& weight_of, double tail_tol,
                              std::size_t start_dim)
{
    std::size_t n_dim = std::max<std::size_t>(start_dim, 1);
    for (;;) {
        std::vector<Value> vals(n_dim);
        long double total = 0.0L;
        for (std::size_t n = 0; n < n_dim; ++n) {
            vals[n] = src(n);
            total += static_cast<long double>(weight_of(vals[n]));
        }
        check_finite_total(total);
        if (total < kZeroNormEps) {
            throw ZeroNormState("operation maps this state to zero");
        }
        const long double last = weight_of(vals.back());
        if (last < tail_tol * total) {
            while (vals.size() > 1 && weight_of(vals.back()) == 0.0) {
                vals.pop_back();
            }
            return vals;
        }
        if (n_dim >= kMaxTruncDim) {
            throw TruncationOverflow("adaptive truncation exceeds the 2^16 bin cap");
        }
        n_dim = std::min(kMaxTruncDim, n_dim * 2);
    }
}

// Both return the scale factor applied, so callers can fold it into the
// state's source closure and keep source magnitudes near unity across
// composed operations.
double normalize_pure_in_place(std::vector<Complex>& v)
{
    const long double total = pure_total(v);
    check_finite_total(total);
    if (total < kZeroNormEps) {
        throw ZeroNormState("pure state has zero norm");
    }
    const double inv = 1.0 / std::sqrt(static_cast<double>(total));
    for (auto& c : v) {
        c *= inv;
    }
    return inv;
}

double normalize_diag_in_place(std::vector<double>& v)
{
    const long double total = diag_total(v);
    check_finite_total(total);
    if (total < kZeroNormEps) {
        throw ZeroNormState("diagonal state has zero weight");
    }
    const double inv = 1.0 / static_cast<double>(total);
    for (auto& w : v) {
        w *= inv;
    }
    return inv;
}

PureSource scaled_source(PureSource src, double scale)
{
    if (!src) {
        return src;
    }
    return [src = std::move(src), scale](std::size_t n) { return scale * src(n); };
}

DiagonalSource scaled_source(DiagonalSource src, double scale)
{
    if (!src) {
        return src;
    }
    return [src = std::move(src), scale](std::size_t n) { return scale * src(n); };
}

// Applies out[n] = f(n) * in[n - shift] (terms with n - shift out of range
// vanish), renormalizes, and re-derives the truncation for states that carry
// a source. `min_dim` is the smallest admissible output dimension.
PureState transform_pure(const PureState& in, long shift, const AmpFactor& f, std::size_t min_dim)
{
    PureState out;
    out.tail_tol = in.tail_tol;
    if (in.source) {
        PureSource parent = in.source;
        out.source = [parent, shift, f](std::size_t n) -> Complex {
            const long src = static_cast<long>(n) - shift;
            if (src < 0) {
                return {0.0, 0.0};
            }
            return f(n) * parent(static_cast<std::size_t>(src));
        };
        out.amplitudes = regenerate<Complex>(
            out.source, [](const Complex& c) { return std::norm(c); }, out.tail_tol, min_dim);
        out.source = scaled_source(std::move(out.source),
                                   normalize_pure_in_place(out.amplitudes));
        return out;
    }
    out.amplitudes.assign(std::max<std::size_t>(min_dim, 1), Complex{0.0, 0.0});
    for (std::size_t n = 0; n < out.amplitudes.size(); ++n) {
        const long src = static_cast<long>(n) - shift;
        if (src >= 0 && static_cast<std::size_t>(src) < in.dim()) {
            out.amplitudes[n] = f(n) * in.amplitudes[static_cast<std::size_t>(src)];
        }
    }
    normalize_pure_in_place(out.amplitudes);
    return out;
}

DiagonalState transform_diagonal(const DiagonalState& in, long shift, const AmpFactor& f,
                                 std::size_t min_dim)
{
    const auto weight_factor = [f](std::size_t n) {
        const double a = f(n);
        return a * a;
    };
    DiagonalState out;
    out.tail_tol = in.tail_tol;
    if (in.source) {
        DiagonalSource parent = in.source;
        out.source = [parent, shift, weight_factor](std::size_t n) -> double {
            const long src = static_cast<long>(n) - shift;
            if (src < 0) {
                return 0.0;
            }
            return weight_factor(n) * parent(static_cast<std::size_t>(src));
        };
        out.weights =
            regenerate<double>(out.source, [](double w) { return w; }, out.tail_tol, min_dim);
        out.source = scaled_source(std::move(out.source),
                                   normalize_diag_in_place(out.weights));
        return out;
    }
    out.weights.assign(std::max<std::size_t>(min_dim, 1), 0.0);
    for (std::size_t n = 0; n < out.weights.size(); ++n) {
        const long src = static_cast<long>(n) - shift;
        if (src >= 0 && static_cast<std::size_t>(src) < in.dim()) {
            out.weights[n] = weight_factor(n) * in.weights[static_cast<std::size_t>(src)];
        }
    }
    normalize_diag_in_place(out.weights);
    return out;
}

FieldState apply_factor_op(const FieldState& state, long shift, const AmpFactor& f,
                           std::size_t min_dim)
{
    if (const auto* d = std::get_if<DiagonalState>(&state)) {
        return transform_diagonal(*d, shift, f, min_dim);
    }
    return transform_pure(std::get<PureState>(state), shift, f, min_dim);
}

std::size_t shifted_dim(const FieldState& state, long shift)
{
    const long d = static_cast<long>(state_dim(state)) + shift;
    return d > 0 ? static_cast<std::size_t>(d) : 1;
}

} // namespace

NormalizeResult normalize(const FieldState& state)
{
    if (const auto* d = std::get_if<DiagonalState>(&state)) {
        for (double w : d->weights) {
            if (w < 0.0) {
                throw InvalidParameter("diagonal weights must be nonnegative");
            }
        }
        DiagonalState out = *d;
        const long double total = diag_total(out.weights);
        check_finite_total(total);
        const double inv = normalize_diag_in_place(out.weights);
        out.source = scaled_source(std::move(out.source), inv);
        return {FieldState{std::move(out)}, static_cast<double>(total)};
    }
    const auto& p = std::get<PureState>(state);
    PureState out = p;
    const long double total = pure_total(out.amplitudes);
    check_finite_total(total);
    const double inv = normalize_pure_in_place(out.amplitudes);
    out.source = scaled_source(std::move(out.source), inv);
    return {FieldState{std::move(out)}, static_cast<double>(total)};
}

FieldState apply_create(const FieldState& state)
{
    return apply_factor_op(
        state, +1, [](std::size_t n) { return std::sqrt(static_cast<double>(n)); },
        state_dim(state) + 1);
}

FieldState apply_annihilate(const FieldState& state)
{
    return apply_factor_op(
        state, -1, [](std::size_t n) { return std::sqrt(static_cast<double>(n + 1)); },
        shifted_dim(state, -1));
}

FieldState apply_ac(const FieldState& state)
{
    return apply_factor_op(
        state, 0, [](std::size_t n) { return static_cast<double>(n); }, state_dim(state));
}

FieldState apply_ca(const FieldState& state)
{
    return apply_factor_op(
        state, 0, [](std::size_t n) { return static_cast<double>(n + 1); }, state_dim(state));
}

FieldState apply_pipeline(const FieldState& state, const LadderPipeline& pipeline)
{
    if (pipeline.repetitions < 1) {
        throw InvalidParameter("pipeline repetitions must be >= 1");
    }
    const long k = static_cast<long>(pipeline.repetitions);
    const int ki = static_cast<int>(pipeline.repetitions);
    switch (pipeline.op) {
    case LadderOp::Create:
        // (a+)^k: c_n <- sqrt(n (n-1) ... (n-k+1)) c_{n-k}
        return apply_factor_op(
            state, +k,
            [ki](std::size_t n) {
                double prod = 1.0;
                for (int j = 0; j < ki; ++j) {
                    prod *= static_cast<double>(n - static_cast<std::size_t>(j));
                }
                return std::sqrt(prod);
            },
            state_dim(state) + static_cast<std::size_t>(k));
    case LadderOp::Annihilate:
        return apply_factor_op(
            state, -k,
            [ki](std::size_t n) {
                double prod = 1.0;
                for (int j = 1; j <= ki; ++j) {
                    prod *= static_cast<double>(n + static_cast<std::size_t>(j));
                }
                return std::sqrt(prod);
            },
            shifted_dim(state, -k));
    case LadderOp::AC:
        return apply_factor_op(
            state, 0,
            [ki](std::size_t n) { return std::pow(static_cast<double>(n), ki); },
            state_dim(state));
    case LadderOp::CA:
        return apply_factor_op(
            state, 0,
            [ki](std::size_t n) { return std::pow(static_cast<double>(n + 1), ki); },
            state_dim(state));
    }
    throw InvalidParameter("unknown ladder operation");
}

} // namespace fockladder
