#include "fockladder/observables.hpp"

#include "fockladder/errors.hpp"
#include "fockladder/special_functions.hpp"

#include <algorithm>
#include <cmath>

namespace fockladder {
namespace {

constexpr double kTwoOverPi = 2.0 / 3.14159265358979323846;

long double checked_z(double nbar)
{
    if (!(nbar > 0.0) || !std::isfinite(nbar)) {
        throw InvalidParameter("closed-form thermal moments require nbar > 0");
    }
    return static_cast<long double>(nbar) / (1.0L + static_cast<long double>(nbar));
}

// Diagonal states: W(alpha) = (2/pi) e^{-2|a|^2} sum_n p_n (-1)^n L_n(4|a|^2).
// The seed of the Laguerre recurrence carries the Gaussian envelope so the
// sum stays representable at large |alpha|.
double wigner_diagonal(const DiagonalState& state, Complex alpha)
{
    const double r2 = std::norm(alpha);
    const double envelope = std::exp(-2.0 * r2);
    const std::vector<double> lag =
        assoc_laguerre_sequence(0, 4.0 * r2, state.dim(), envelope);
    long double sum = 0.0L;
    double sign = 1.0;
    for (std::size_t n = 0; n < state.dim(); ++n) {
        sum += static_cast<long double>(sign * state.weights[n] * lag[n]);
        sign = -sign;
    }
    return kTwoOverPi * static_cast<double>(sum);
}

// Matrix elements <m|D(beta)|n> filled diagonal-by-diagonal:
//   m = n+d : e^{-|b|^2/2} beta^d    sqrt(n!/(n+d)!) L_n^{(d)}(|b|^2)
//   m = n-d : e^{-|b|^2/2} (-conj(beta))^d sqrt(m!/(m+d)!) L_m^{(d)}(|b|^2)
std::vector<Complex> displacement_matrix(Complex beta, std::size_t n_dim)
{
    std::vector<Complex> mat(n_dim * n_dim, Complex{0.0, 0.0});
    const double x = std::norm(beta);
    const double envelope = std::exp(-0.5 * x);
    Complex beta_pow{1.0, 0.0};
    Complex mbar_pow{1.0, 0.0};
    double fact_root = 1.0; // sqrt(0!/d!)
    for (std::size_t d = 0; d < n_dim; ++d) {
        if (d > 0) {
            beta_pow *= beta;
            mbar_pow *= -std::conj(beta);
            fact_root /= std::sqrt(static_cast<double>(d));
        }
        const std::size_t count = n_dim - d;
        const std::vector<double> lag =
            assoc_laguerre_sequence(static_cast<unsigned>(d), x, count, envelope);
        double ratio = fact_root; // sqrt(n!/(n+d)!) rolling along n
        for (std::size_t n = 0; n < count; ++n) {
            const std::size_t m = n + d;
            mat[m * n_dim + n] = beta_pow * (ratio * lag[n]);
            if (d > 0) {
                mat[n * n_dim + m] = mbar_pow * (ratio * lag[n]);
            }
            ratio *= std::sqrt(static_cast<double>(n + 1) / static_cast<double>(n + 1 + d));
        }
    }
    return mat;
}

// Pure states: Pi D+(a) Pi = D(a) folds the conjugation into a single
// displacement, W = (2/pi) Tr[rho D(2a) Pi], which the truncated state
// evaluates exactly: the trace only touches the support of rho. D(2a)Pi is
// Hermitian, so the imaginary residue is pure roundoff.
double wigner_pure(const PureState& state, Complex alpha)
{
    const std::size_t n_dim = state.dim();
    const std::vector<Complex> mat = displacement_matrix(2.0 * alpha, n_dim);
    std::complex<long double> sum{0.0L, 0.0L};
    double sign = 1.0;
    for (std::size_t n = 0; n < n_dim; ++n) {
        Complex column{0.0, 0.0};
        for (std::size_t m = 0; m < n_dim; ++m) {
            column += std::conj(state.amplitudes[m]) * mat[m * n_dim + n];
        }
        sum += std::complex<long double>(sign * state.amplitudes[n] * column);
        sign = -sign;
    }
    return kTwoOverPi * static_cast<double>(sum.real());
}

double fidelity_pure_pure(const PureState& a, const PureState& b)
{
    const std::size_t n = std::min(a.dim(), b.dim());
    std::complex<long double> overlap{0.0L, 0.0L};
    for (std::size_t i = 0; i < n; ++i) {
        overlap += std::complex<long double>(std::conj(a.amplitudes[i])) *
                   std::complex<long double>(b.amplitudes[i]);
    }
    return static_cast<double>(std::norm(overlap));
}

double fidelity_diag_diag(const DiagonalState& a, const DiagonalState& b)
{
    const std::size_t n = std::min(a.dim(), b.dim());
    long double sum = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        sum += std::sqrt(static_cast<long double>(a.weights[i]) *
                         static_cast<long double>(b.weights[i]));
    }
    return static_cast<double>(sum * sum);
}

double fidelity_pure_diag(const PureState& a, const DiagonalState& b)
{
    const std::size_t n = std::min(a.dim(), b.dim());
    long double sum = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        sum += static_cast<long double>(std::norm(a.amplitudes[i])) *
               static_cast<long double>(b.weights[i]);
    }
    return static_cast<double>(sum);
}

} // namespace

MomentSummary moments(const FieldState& state)
{
    long double mean = 0.0L;
    long double m2 = 0.0L;
    const auto accumulate = [&](std::size_t n, double w) {
        const long double nd = static_cast<long double>(n);
        mean += nd * w;
        m2 += nd * nd * w;
    };
    if (const auto* d = std::get_if<DiagonalState>(&state)) {
        for (std::size_t n = 0; n < d->dim(); ++n) {
            accumulate(n, d->weights[n]);
        }
    } else {
        const auto& p = std::get<PureState>(state);
        for (std::size_t n = 0; n < p.dim(); ++n) {
            accumulate(n, std::norm(p.amplitudes[n]));
        }
    }
    MomentSummary out;
    out.mean = static_cast<double>(mean);
    out.second_moment = static_cast<double>(m2);
    out.variance = static_cast<double>(m2 - mean * mean);
    if (out.mean > 0.0) {
        out.mandel_q = static_cast<double>((m2 - mean * mean) / mean - 1.0L);
    }
    return out;
}

ThermalMoments thermal_ack_moments(double nbar, unsigned k)
{
    if (k < 1) {
        throw InvalidParameter("repetition count k must be >= 1");
    }
    const long double z = checked_z(nbar);
    const long double l0 = polylog_table(2 * k).eval(z);
    const long double l1 = polylog_table(2 * k + 1).eval(z);
    const long double l2 = polylog_table(2 * k + 2).eval(z);
    const long double mean = l1 / l0;
    const long double var = l2 / l0 - mean * mean;
    return {static_cast<double>(mean), static_cast<double>(var)};
}

ThermalMoments thermal_cak_moments(double nbar, unsigned k)
{
    if (k < 1) {
        throw InvalidParameter("repetition count k must be >= 1");
    }
    // Weights z^{n+1} (n+1)^{2k} share the AC normalizer Li_{-2k}(z); the CA
    // moments are the m-shifted sums (m = n+1).
    const long double z = checked_z(nbar);
    const long double l0 = polylog_table(2 * k).eval(z);
    const long double l1 = polylog_table(2 * k + 1).eval(z);
    const long double l2 = polylog_table(2 * k + 2).eval(z);
    const long double mean = (l1 - l0) / l0;
    const long double m2 = (l2 - 2.0L * l1 + l0) / l0;
    return {static_cast<double>(mean), static_cast<double>(m2 - mean * mean)};
}

double fidelity(const FieldState& a, const FieldState& b)
{
    double f = 0.0;
    if (const auto* pa = std::get_if<PureState>(&a)) {
        if (const auto* pb = std::get_if<PureState>(&b)) {
            f = fidelity_pure_pure(*pa, *pb);
        } else {
            f = fidelity_pure_diag(*pa, std::get<DiagonalState>(b));
        }
    } else {
        const auto& da = std::get<DiagonalState>(a);
        if (const auto* pb = std::get_if<PureState>(&b)) {
            f = fidelity_pure_diag(*pb, da);
        } else {
            f = fidelity_diag_diag(da, std::get<DiagonalState>(b));
        }
    }
    return std::clamp(f, 0.0, 1.0);
}

double wigner_at(const FieldState& state, Complex alpha)
{
    if (const auto* d = std::get_if<DiagonalState>(&state)) {
        return wigner_diagonal(*d, alpha);
    }
    return wigner_pure(std::get<PureState>(state), alpha);
}

double WignerGrid::x_at(int ix) const
{
    return x_min + (x_max - x_min) * static_cast<double>(ix) /
                       static_cast<double>(resolution - 1);
}

double WignerGrid::y_at(int iy) const
{
    return y_min + (y_max - y_min) * static_cast<double>(iy) /
                       static_cast<double>(resolution - 1);
}

double WignerGrid::value_at(int ix, int iy) const
{
    return values[static_cast<std::size_t>(iy) * static_cast<std::size_t>(resolution) +
                  static_cast<std::size_t>(ix)];
}

double WignerGrid::quadrature() const
{
    const double dx = (x_max - x_min) / static_cast<double>(resolution - 1);
    const double dy = (y_max - y_min) / static_cast<double>(resolution - 1);
    long double sum = 0.0L;
    for (double v : values) {
        sum += v;
    }
    return static_cast<double>(sum) * dx * dy;
}

WignerGrid wigner_grid(const FieldState& state, const WignerGridSpec& spec)
{
    if (spec.resolution < 2) {
        throw InvalidParameter("wigner grid needs at least 2 points per axis");
    }
    if (!(spec.x_max > spec.x_min) || !(spec.y_max > spec.y_min)) {
        throw InvalidParameter("wigner grid window is empty");
    }
    WignerGrid grid;
    grid.x_min = spec.x_min;
    grid.x_max = spec.x_max;
    grid.y_min = spec.y_min;
    grid.y_max = spec.y_max;
    grid.resolution = spec.resolution;
    const std::size_t res = static_cast<std::size_t>(spec.resolution);
    grid.values.resize(res * res);
    for (std::size_t iy = 0; iy < res; ++iy) {
        const double y = grid.y_at(static_cast<int>(iy));
        for (std::size_t ix = 0; ix < res; ++ix) {
            const double x = grid.x_at(static_cast<int>(ix));
            grid.values[iy * res + ix] = wigner_at(state, Complex{x, y});
        }
    }
    grid.min_value = grid.values[0];
    grid.min_x = grid.x_at(0);
    grid.min_y = grid.y_at(0);
    for (std::size_t iy = 0; iy < res; ++iy) {
        for (std::size_t ix = 0; ix < res; ++ix) {
            const double v = grid.values[iy * res + ix];
            if (v < grid.min_value) {
                grid.min_value = v;
                grid.min_x = grid.x_at(static_cast<int>(ix));
                grid.min_y = grid.y_at(static_cast<int>(iy));
            }
        }
    }
    return grid;
}

} // namespace fockladder
