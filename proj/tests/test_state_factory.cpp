#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fockladder/errors.hpp"
#include "fockladder/ladder_ops.hpp"
#include "fockladder/observables.hpp"
#include "fockladder/state_factory.hpp"

#include <cmath>
#include <numeric>

using namespace fockladder;

TEST_CASE("thermal nbar = 0 is the vacuum")
{
    const FieldState vac = make_thermal({0.0});
    const auto w = number_weights(vac);
    CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(moments(vac).mean == 0.0);
}

TEST_CASE("thermal nbar = 1 has the geometric ladder 1/2, 1/4, 1/8")
{
    const auto w = number_weights(make_thermal({1.0}));
    CHECK(w[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(w[1] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(w[2] == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("thermal moments match nbar and nbar^2 + nbar")
{
    for (const double nbar : {0.1, 0.57, 1.0, 2.0}) {
        const MomentSummary m = moments(make_thermal({nbar}));
        CHECK(std::abs(m.mean - nbar) < 1e-9);
        CHECK(std::abs(m.variance - (nbar * nbar + nbar)) < 10.0 * kDefaultTailTol);
        CHECK(m.mandel_q.value() == doctest::Approx(nbar).epsilon(1e-9));
    }
}

TEST_CASE("thermal weights sum to one")
{
    const auto w = number_weights(make_thermal({1.7}));
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    CHECK(std::abs(total - 1.0) < 1e-10);
}

TEST_CASE("thermal rejects bad parameters")
{
    CHECK_THROWS_AS(make_thermal({-0.1}), InvalidParameter);
    CHECK_THROWS_AS(make_thermal({1.0}, 0.0), InvalidParameter);
    CHECK_THROWS_AS(make_thermal({1.0}, 1.5), InvalidParameter);
}

TEST_CASE("coherent alpha = 0 is the vacuum")
{
    const auto w = number_weights(make_coherent({Complex{0.0, 0.0}}));
    CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("coherent states are Poissonian: Q = 0")
{
    const FieldState state = make_coherent({Complex{std::sqrt(0.57), 0.0}});
    CHECK(std::abs(moments(state).mandel_q.value()) < 1e-9);
}

TEST_CASE("coherent mean and variance equal |alpha|^2")
{
    for (const Complex alpha : {Complex{0.55, 0.0}, Complex{0.7, 0.9}, Complex{0.0, 1.9}}) {
        const MomentSummary m = moments(make_coherent({alpha}));
        const double alpha_sq = std::norm(alpha);
        CHECK(std::abs(m.mean - alpha_sq) < 10.0 * kDefaultTailTol);
        CHECK(std::abs(m.variance - alpha_sq) < 10.0 * kDefaultTailTol);
    }
    // Large amplitude, looser floating-point budget.
    const MomentSummary big = moments(make_coherent({Complex{10.0, 0.0}}));
    CHECK(std::abs(big.mean - 100.0) < 1e-6);
    CHECK(std::abs(big.variance - 100.0) < 1e-6);
}

TEST_CASE("coherent truncation drops less than the tail tolerance")
{
    const auto w = number_weights(make_coherent({Complex{2.0, 0.0}}));
    CHECK(w.back() < kDefaultTailTol);
}

TEST_CASE("number states")
{
    CHECK(number_weights(make_number(0))[0] == 1.0);
    const FieldState n3 = make_number(3);
    CHECK(moments(n3).mandel_q.value() == doctest::Approx(-1.0).epsilon(1e-12));
    const FieldState fixed = apply_ac(make_number(5));
    CHECK(number_weights(fixed)[5] == doctest::Approx(1.0).epsilon(1e-12));
}
