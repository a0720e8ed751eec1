#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fockladder/errors.hpp"
#include "fockladder/ladder_ops.hpp"
#include "fockladder/observables.hpp"
#include "fockladder/special_functions.hpp"
#include "fockladder/state_factory.hpp"

#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace fockladder;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("moments of the reference states")
{
    CHECK(moments(make_thermal({0.8})).mandel_q.value() ==
          doctest::Approx(0.8).epsilon(1e-9));
    CHECK(std::abs(moments(make_coherent({Complex{1.1, 0.3}})).mandel_q.value()) < 1e-9);
    CHECK(moments(make_number(4)).mandel_q.value() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK_FALSE(moments(make_number(0)).mandel_q.has_value()); // vacuum: undefined
}

TEST_CASE("moment summary is internally consistent")
{
    std::mt19937 rng(5150u);
    for (int trial = 0; trial < 20; ++trial) {
        const MomentSummary m = moments(FieldState{oracles::random_diagonal(rng)});
        CHECK(std::abs(m.variance - (m.second_moment - m.mean * m.mean)) < 1e-10);
        if (m.mandel_q) {
            CHECK(*m.mandel_q >= -1.0 - 1e-12);
        }
    }
}

TEST_CASE("closed-form AC/CA moment identities")
{
    for (unsigned k = 1; k <= 20; ++k) {
        for (const double nbar : {0.1, 0.57, 1.0, 2.0}) {
            const ThermalMoments ac = thermal_ack_moments(nbar, k);
            const ThermalMoments ca = thermal_cak_moments(nbar, k);
            CHECK(std::abs(ac.mean - ca.mean - 1.0) < 1e-12);
            CHECK(std::abs(ac.variance - ca.variance) < 1e-12);
        }
    }
}

TEST_CASE("closed-form moments agree with the truncated-sum pipeline")
{
    const ThermalMoments closed = thermal_ack_moments(0.57, 1);
    const MomentSummary numeric = moments(apply_ac(make_thermal({0.57})));
    CHECK(std::abs(closed.mean - numeric.mean) < 1e-8);
    CHECK(std::abs(closed.variance - numeric.variance) < 1e-8);

    for (unsigned k : {5u, 20u}) {
        for (const double nbar : {0.3, 2.0}) {
            const ThermalMoments ac = thermal_ack_moments(nbar, k);
            const MomentSummary num =
                moments(apply_pipeline(make_thermal({nbar}), {LadderOp::AC, k}));
            CHECK(std::abs(ac.mean - num.mean) < 1e-6);
            CHECK(std::abs(ac.variance - num.variance) < 1e-6);
        }
    }
}

TEST_CASE("closed-form moments reject bad parameters")
{
    CHECK_THROWS_AS(thermal_ack_moments(0.0, 1), InvalidParameter);
    CHECK_THROWS_AS(thermal_ack_moments(-1.0, 1), InvalidParameter);
    CHECK_THROWS_AS(thermal_cak_moments(0.5, 0), InvalidParameter);
}

TEST_CASE("thermal AC sits below CA on the whole nbar domain")
{
    for (double nbar = 0.1; nbar <= 5.0; nbar += 0.35) {
        const ThermalMoments ac = thermal_ack_moments(nbar, 1);
        const ThermalMoments ca = thermal_cak_moments(nbar, 1);
        CHECK(ac.variance / ac.mean < ca.variance / ca.mean);
    }
}

TEST_CASE("20-fold coherent images keep the AC-below-CA ordering, both negative")
{
    for (const double alpha_sq : {0.1, 0.57, 1.4, 2.0}) {
        const FieldState base = make_coherent({Complex{std::sqrt(alpha_sq), 0.0}});
        const double qac =
            moments(apply_pipeline(base, {LadderOp::AC, 20})).mandel_q.value();
        const double qca =
            moments(apply_pipeline(base, {LadderOp::CA, 20})).mandel_q.value();
        CHECK(qac <= qca);
        CHECK(qca < 0.0);
    }
}

TEST_CASE("fidelity of identical and orthogonal states")
{
    const FieldState thermal = make_thermal({0.9});
    CHECK(fidelity(thermal, thermal) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fidelity(make_number(0), make_number(1)) == 0.0);
}

TEST_CASE("fidelity is symmetric and bounded")
{
    std::mt19937 rng(1999u);
    for (int trial = 0; trial < 12; ++trial) {
        const FieldState a = trial % 2 == 0 ? FieldState{oracles::random_pure(rng)}
                                            : FieldState{oracles::random_diagonal(rng)};
        const FieldState b = trial % 3 == 0 ? FieldState{oracles::random_diagonal(rng)}
                                            : FieldState{oracles::random_pure(rng)};
        const double fab = fidelity(a, b);
        const double fba = fidelity(b, a);
        CHECK(std::abs(fab - fba) < 1e-12);
        CHECK(fab >= 0.0);
        CHECK(fab <= 1.0);
    }
}

TEST_CASE("diagonal fidelity matches the dense Uhlmann computation")
{
    std::mt19937 rng(808u);
    for (int trial = 0; trial < 10; ++trial) {
        const DiagonalState a = oracles::random_diagonal(rng, 12);
        const DiagonalState b = oracles::random_diagonal(rng, 12);
        const std::size_t dim = std::max(a.weights.size(), b.weights.size());
        const double dense = oracles::dense_uhlmann(oracles::diag_matrix(a.weights, dim),
                                                    oracles::diag_matrix(b.weights, dim));
        CHECK(fidelity(FieldState{a}, FieldState{b}) ==
              doctest::Approx(dense).epsilon(1e-9));
    }
}

TEST_CASE("pure-diagonal fidelity is the diagonal expectation value")
{
    std::mt19937 rng(31337u);
    const PureState psi = oracles::random_pure(rng, 12);
    const DiagonalState rho = oracles::random_diagonal(rng, 12);
    long double expected = 0.0L;
    for (std::size_t n = 0; n < std::min(psi.amplitudes.size(), rho.weights.size()); ++n) {
        expected += std::norm(psi.amplitudes[n]) * rho.weights[n];
    }
    CHECK(fidelity(FieldState{psi}, FieldState{rho}) ==
          doctest::Approx(static_cast<double>(expected)).epsilon(1e-12));
}

TEST_CASE("AC^k and CA^k thermal fidelity climbs toward one")
{
    const FieldState base = make_thermal({0.57});
    double prev = 0.0;
    for (unsigned k = 1; k <= 20; ++k) {
        const double f = fidelity(apply_pipeline(base, {LadderOp::AC, k}),
                                  apply_pipeline(base, {LadderOp::CA, k}));
        CHECK(f > prev);
        prev = f;
        if (k == 1) {
            CHECK(f == doctest::Approx(0.781640).epsilon(1e-5));
        }
    }
    CHECK(prev > 0.99);
}

TEST_CASE("AC^k and CA^k coherent fidelity climbs toward one")
{
    const FieldState base = make_coherent({Complex{std::sqrt(0.57), 0.0}});
    double prev = 0.0;
    for (unsigned k = 1; k <= 20; ++k) {
        const double f = fidelity(apply_pipeline(base, {LadderOp::AC, k}),
                                  apply_pipeline(base, {LadderOp::CA, k}));
        CHECK(f > prev);
        prev = f;
    }
    // Converges far more slowly than the thermal pair.
    CHECK(prev == doctest::Approx(0.9538351202).epsilon(1e-6));
}

TEST_CASE("wigner values at the origin")
{
    CHECK(wigner_at(make_number(0), Complex{0.0, 0.0}) ==
          doctest::Approx(2.0 / kPi).epsilon(1e-12));
    CHECK(wigner_at(make_number(1), Complex{0.0, 0.0}) ==
          doctest::Approx(-2.0 / kPi).epsilon(1e-12));
}

TEST_CASE("thermal-AC origin value matches the polylogarithm closed form")
{
    const double z = 0.57 / 1.57;
    const FieldState ac = apply_ac(make_thermal({0.57}));
    const double closed = (2.0 / kPi) * polylog_neg(2, -z) / polylog_neg(2, z);
    CHECK(wigner_at(ac, Complex{0.0, 0.0}) == doctest::Approx(closed).epsilon(1e-9));
    CHECK(closed < 0.0);
    const FieldState ca = apply_ca(make_thermal({0.57}));
    CHECK(wigner_at(ca, Complex{0.0, 0.0}) > 0.0);
}

TEST_CASE("pure wigner of a coherent state is the displaced Gaussian")
{
    // Absolute tolerance: the truncated state differs from the ideal coherent
    // state at the sqrt(tail_tol) amplitude level, which the overlap feels.
    const Complex alpha0{0.8, -0.55};
    const FieldState state = make_coherent({alpha0}, 1e-14);
    for (const Complex alpha :
         {Complex{0.0, 0.0}, Complex{0.8, -0.55}, Complex{-0.4, 1.2}, Complex{1.9, 0.4}}) {
        const double expected = (2.0 / kPi) * std::exp(-2.0 * std::norm(alpha - alpha0));
        CHECK(std::abs(wigner_at(state, alpha) - expected) < 1e-9);
    }
}

TEST_CASE("pure and diagonal wigner paths agree on number states")
{
    DiagonalState projector;
    projector.weights.assign(4, 0.0);
    projector.weights[3] = 1.0;
    const FieldState diag{projector};
    const FieldState pure = make_number(3);
    for (const Complex alpha : {Complex{0.2, 0.1}, Complex{1.0, -0.7}, Complex{2.2, 2.0}}) {
        CHECK(wigner_at(pure, alpha) ==
              doctest::Approx(wigner_at(diag, alpha)).epsilon(1e-12));
    }
}

TEST_CASE("diagonal wigner depends only on the radius")
{
    const FieldState ac = apply_ac(make_thermal({0.57}));
    for (const double r : {0.4, 1.3, 2.7}) {
        const double ref = wigner_at(ac, Complex{r, 0.0});
        for (const double angle : {0.9, 2.2, 4.4}) {
            const double v = wigner_at(ac, Complex{r * std::cos(angle), r * std::sin(angle)});
            CHECK(std::abs(v - ref) < 1e-10);
        }
    }
}

TEST_CASE("wigner grid quadrature and minima")
{
    WignerGridSpec spec;
    const WignerGrid vac = wigner_grid(make_number(0), spec);
    CHECK(std::abs(vac.quadrature() - 1.0) < 1e-3);

    const WignerGrid ac = wigner_grid(apply_ac(make_thermal({0.57})), spec);
    CHECK(ac.min_value < -1e-3);
    CHECK(std::hypot(ac.min_x, ac.min_y) < 0.5);
    const WignerGrid ca = wigner_grid(apply_ca(make_thermal({0.57})), spec);
    CHECK(ca.min_value >= -1e-9);
}

TEST_CASE("coherent AC and CA both go negative, AC deeper")
{
    const FieldState base = make_coherent({Complex{std::sqrt(0.57), 0.0}});
    WignerGridSpec spec;
    spec.resolution = 61;
    const WignerGrid ac = wigner_grid(apply_ac(base), spec);
    const WignerGrid ca = wigner_grid(apply_ca(base), spec);
    CHECK(ac.min_value < 0.0);
    CHECK(ca.min_value < 0.0);
    CHECK(ac.min_value < ca.min_value);
    CHECK(std::abs(ac.quadrature() - 1.0) < 1e-3); // window covers the state
}

TEST_CASE("wigner grid rejects degenerate specs")
{
    WignerGridSpec spec;
    spec.resolution = 1;
    CHECK_THROWS_AS(wigner_grid(make_number(0), spec), InvalidParameter);
    spec.resolution = 11;
    spec.x_max = spec.x_min;
    CHECK_THROWS_AS(wigner_grid(make_number(0), spec), InvalidParameter);
}
