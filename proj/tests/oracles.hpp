// Test-only reference implementations, kept independent of the library code
// paths they are used to check.
#pragma once

#include "fockladder/field_state.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracles {

using fockladder::Complex;

// Li_{-m}(z) by direct summation of j^m z^j with a geometric tail bound.
inline long double series_polylog_neg(unsigned m, long double z)
{
    long double sum = 0.0L;
    const long double az = std::fabs(static_cast<double>(z));
    for (unsigned long j = 1; j < 4000000UL; ++j) {
        long double term = std::pow(static_cast<long double>(j), static_cast<long double>(m));
        term *= std::pow(z, static_cast<long double>(j));
        sum += term;
        // Beyond the mode the term ratio is below ((j+1)/j)^m z; once that is
        // under 0.999 the remaining tail is bounded by term * r / (1 - r).
        const long double r =
            std::pow((static_cast<long double>(j) + 1.0L) / static_cast<long double>(j),
                     static_cast<long double>(m)) *
            az;
        if (r < 0.999L) {
            const long double tail = std::fabs(static_cast<double>(term)) * r / (1.0L - r);
            const long double floor =
                std::max<long double>(std::fabs(static_cast<double>(sum)), 1e-30L);
            if (tail < 1e-18L * floor) {
                break;
            }
        }
    }
    return sum;
}

// L_n^{(k)}(x) from the explicit coefficient form
// sum_i (-1)^i C(n+k, n-i) x^i / i!, exact for the small n used in tests.
inline double coefficient_assoc_laguerre(unsigned n, unsigned k, double x)
{
    const auto binom = [](unsigned a, unsigned b) {
        double out = 1.0;
        for (unsigned i = 0; i < b; ++i) {
            out *= static_cast<double>(a - i);
            out /= static_cast<double>(i + 1);
        }
        return out;
    };
    double sum = 0.0;
    double x_pow = 1.0;
    double fact = 1.0;
    double sign = 1.0;
    for (unsigned i = 0; i <= n; ++i) {
        sum += sign * binom(n + k, n - i) * x_pow / fact;
        sign = -sign;
        x_pow *= x;
        fact *= static_cast<double>(i + 1);
    }
    return sum;
}

// ---- dense number-basis reference -----------------------------------------

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat annihilation_matrix(std::size_t n_dim)
{
    Mat a = Mat::Zero(static_cast<Eigen::Index>(n_dim), static_cast<Eigen::Index>(n_dim));
    for (std::size_t i = 0; i + 1 < n_dim; ++i) {
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) =
            std::sqrt(static_cast<double>(i + 1));
    }
    return a;
}

inline Mat dense_ladder(fockladder::LadderOp op, unsigned k, std::size_t n_dim)
{
    const Mat a = annihilation_matrix(n_dim);
    const Mat ad = a.adjoint();
    Mat base;
    switch (op) {
    case fockladder::LadderOp::Create: base = ad; break;
    case fockladder::LadderOp::Annihilate: base = a; break;
    case fockladder::LadderOp::AC: base = ad * a; break;
    case fockladder::LadderOp::CA: base = a * ad; break;
    }
    Mat out = Mat::Identity(base.rows(), base.cols());
    for (unsigned i = 0; i < k; ++i) {
        out = base * out;
    }
    return out;
}

inline std::vector<Complex> dense_apply_pure(const std::vector<Complex>& amps,
                                             fockladder::LadderOp op, unsigned k,
                                             std::size_t n_dim)
{
    Vec v = Vec::Zero(static_cast<Eigen::Index>(n_dim));
    for (std::size_t i = 0; i < amps.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = amps[i];
    }
    v = dense_ladder(op, k, n_dim) * v;
    v /= v.norm();
    return {v.data(), v.data() + v.size()};
}

inline std::vector<double> dense_apply_diag(const std::vector<double>& weights,
                                            fockladder::LadderOp op, unsigned k,
                                            std::size_t n_dim)
{
    Mat rho = Mat::Zero(static_cast<Eigen::Index>(n_dim), static_cast<Eigen::Index>(n_dim));
    for (std::size_t i = 0; i < weights.size(); ++i) {
        rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = weights[i];
    }
    const Mat m = dense_ladder(op, k, n_dim);
    Mat out = m * rho * m.adjoint();
    out /= out.trace();
    std::vector<double> diag(n_dim);
    for (std::size_t i = 0; i < n_dim; ++i) {
        diag[i] = out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
    }
    return diag;
}

inline Mat hermitian_sqrt(const Mat& m)
{
    Eigen::SelfAdjointEigenSolver<Mat> solver(m);
    const Eigen::VectorXd vals = solver.eigenvalues().cwiseMax(0.0);
    return solver.eigenvectors() * vals.cwiseSqrt().asDiagonal() *
           solver.eigenvectors().adjoint();
}

// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 on dense matrices.
inline double dense_uhlmann(const Mat& rho, const Mat& sigma)
{
    const Mat root = hermitian_sqrt(rho);
    Eigen::SelfAdjointEigenSolver<Mat> solver(root * sigma * root);
    const Eigen::VectorXd vals = solver.eigenvalues().cwiseMax(0.0);
    const double trace_root = vals.cwiseSqrt().sum();
    return trace_root * trace_root;
}

inline Mat diag_matrix(const std::vector<double>& weights, std::size_t n_dim)
{
    Mat rho = Mat::Zero(static_cast<Eigen::Index>(n_dim), static_cast<Eigen::Index>(n_dim));
    for (std::size_t i = 0; i < weights.size(); ++i) {
        rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = weights[i];
    }
    return rho;
}

// ---- randomized states ------------------------------------------------------

inline fockladder::PureState random_pure(std::mt19937& rng, std::size_t max_dim = 40)
{
    std::uniform_int_distribution<std::size_t> dim_dist(2, max_dim);
    std::normal_distribution<double> gauss(0.0, 1.0);
    fockladder::PureState s;
    s.amplitudes.resize(dim_dist(rng));
    long double norm = 0.0L;
    for (auto& c : s.amplitudes) {
        c = Complex{gauss(rng), gauss(rng)};
        norm += std::norm(c);
    }
    const double inv = 1.0 / std::sqrt(static_cast<double>(norm));
    for (auto& c : s.amplitudes) {
        c *= inv;
    }
    return s;
}

inline fockladder::DiagonalState random_diagonal(std::mt19937& rng, std::size_t max_dim = 40)
{
    std::uniform_int_distribution<std::size_t> dim_dist(2, max_dim);
    std::normal_distribution<double> gauss(0.0, 1.0);
    fockladder::DiagonalState s;
    s.weights.resize(dim_dist(rng));
    long double norm = 0.0L;
    for (auto& w : s.weights) {
        const double g = gauss(rng);
        w = g * g;
        norm += w;
    }
    const double inv = 1.0 / static_cast<double>(norm);
    for (auto& w : s.weights) {
        w *= inv;
    }
    return s;
}

} // namespace oracles
