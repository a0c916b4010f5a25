#include <doctest.h>

#include "mpmrf/distribution.hpp"
#include "mpmrf/error.hpp"
#include "oracles.hpp"

using namespace mpmrf;

TEST_CASE("stop-loss premiums") {
    CHECK(stop_loss(point_mass(3), 1) == doctest::Approx(2.0));
    const DiscreteDist p = poisson(1.0, 1e-12);
    CHECK(stop_loss(p, p.support_bound()) == 0.0);
    CHECK(stop_loss(p, p.support_bound() + 5) == 0.0);
    // c = 0 premium equals the mean because the k = 0 term contributes nothing.
    CHECK(std::abs(stop_loss(p, 0) - 1.0) < 1e-9);
    const auto table = stop_loss_table(p, 10);
    for (int c = 0; c <= 10; ++c) CHECK(table[c] == doctest::Approx(stop_loss(p, c)).epsilon(1e-12));
}

TEST_CASE("poisson pmf against a direct formula") {
    for (double mean : {0.5, 3.0, 40.0}) {
        const DiscreteDist p = poisson(mean);
        const auto ref = oracle::poisson_pmf(mean, p.support_bound());
        for (int k = 0; k <= p.support_bound(); ++k) CHECK(std::abs(p.pmf[k] - ref[k]) < 1e-15);
        CHECK(p.mean() == doctest::Approx(mean).epsilon(1e-12));
        CHECK(p.variance() == doctest::Approx(mean).epsilon(1e-10));
        CHECK_NOTHROW(p.validate());
    }
    CHECK(poisson(0.0).pmf == std::vector<double>{1.0});
}

TEST_CASE("VaR and TVaR on integer support") {
    DiscreteDist d;
    d.pmf = {0.2, 0.3, 0.5};
    CHECK(value_at_risk(d, 0.0) == 0);
    CHECK(value_at_risk(d, 0.2) == 0);
    CHECK(value_at_risk(d, 0.21) == 1);
    CHECK(value_at_risk(d, 0.99) == 2);
    CHECK(tail_value_at_risk(d, 0.0) == doctest::Approx(d.mean()));
    for (double kappa : {0.1, 0.2, 0.35, 0.5, 0.77, 0.95}) {
        CHECK(tail_value_at_risk(d, kappa) == doctest::Approx(oracle::tvar_quantile_integral(d.pmf, kappa)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(value_at_risk(d, 1.0), InputError);
    CHECK_THROWS_AS(value_at_risk(d, -0.1), InputError);
}

TEST_CASE("validation catches broken pmfs") {
    DiscreteDist d;
    d.pmf = {0.5, 0.4};
    CHECK_THROWS_AS(d.validate(), NumericalError);
    d.tail_mass = 0.1;
    CHECK_NOTHROW(d.validate());
    d.pmf = {1.1, -0.1};
    d.tail_mass = 0.0;
    CHECK_THROWS_AS(d.validate(), NumericalError);
}

TEST_CASE("convolution truncation") {
    const auto c = convolve({0.5, 0.5}, {0.5, 0.5});
    CHECK(c == std::vector<double>{0.25, 0.5, 0.25});
    CHECK(convolve({0.5, 0.5}, {0.5, 0.5}, 1).size() == 2);
    DiscreteDist d;
    d.pmf = c;
    CHECK(d.cdf(1) == doctest::Approx(0.75));
    CHECK(d.cdf(-1) == 0.0);
    CHECK(d.cdf(10) == doctest::Approx(1.0));
    CHECK(d.cdf_table().back() == doctest::Approx(1.0));
}
