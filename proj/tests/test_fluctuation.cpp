#include <cmath>

#include "doctest.h"
#include "qkd/fluctuation.hpp"

using namespace qkd;

TEST_CASE("observable interval width follows the binomial deviation") {
    ConfidenceSpec conf;
    conf.u = 10.0;
    const double v = 0.02, n = 1e9;
    const Interval iv = observable_interval(v, n, conf);
    const double sigma = std::sqrt(v * (1.0 - v) / n);
    CHECK(iv.low == doctest::Approx(v - 10.0 * sigma));
    CHECK(iv.high == doctest::Approx(v + 10.0 * sigma));
    CHECK_FALSE(iv.degenerate);

    SUBCASE("u = 0 collapses the interval") {
        conf.u = 0.0;
        const Interval tight = observable_interval(v, n, conf);
        CHECK(tight.low == doctest::Approx(v));
        CHECK(tight.high == doctest::Approx(v));
    }
    SUBCASE("clamped to [0, 1]") {
        const Interval edge = observable_interval(1e-9, 1e6, conf);
        CHECK(edge.low == 0.0);
    }
}

TEST_CASE("fluctuated rate decreases with confidence width and pulse scarcity") {
    const ExperimentParams p = presets::gys();
    PulseBudget budget;
    budget.n_total = 6e9;
    budget.n_signal = 0.635 * 6e9;
    budget.n_vacuum = 0.203 * 6e9;
    budget.n_weak = budget.n_total - budget.n_signal - budget.n_vacuum;
    REQUIRE(budget.valid());

    ConfidenceSpec loose{10.0}, tight{0.0};
    const FluctuatedRate at_u10 = fluctuated_vw_rate(p, budget, 0.48, 0.12, 60.0, loose);
    const FluctuatedRate at_u0 = fluctuated_vw_rate(p, budget, 0.48, 0.12, 60.0, tight);
    CHECK(at_u10.rate.rate > 0.0);
    CHECK(at_u0.rate.rate > at_u10.rate.rate);
    CHECK(at_u10.final_key_bits ==
          doctest::Approx(at_u10.rate.rate * budget.n_total));
}

TEST_CASE("allocation optimizer beats an even split") {
    const ExperimentParams p = presets::gys();
    ConfidenceSpec conf{10.0};
    const AllocationResult best = optimize_allocation(p, 6e9, 0.48, 103.62, conf);
    CHECK(best.rate > 0.0);
    CHECK(best.budget.valid());

    PulseBudget even;
    even.n_total = 6e9;
    even.n_signal = 2e9;
    even.n_vacuum = 2e9;
    even.n_weak = 2e9;
    const FluctuatedRate ref =
        fluctuated_vw_rate(p, even, 0.48, best.nu, 103.62, conf);
    CHECK(best.rate >= ref.rate.rate * (1.0 - 1e-9));
}

TEST_CASE("entanglement epsilon") {
    CHECK(ent_epsilon(1e6, 0.05, 0.0) == doctest::Approx(0.0));
    const double e = ent_epsilon(1e6, 0.05, -50.0);
    CHECK(e == doctest::Approx(std::sqrt(4.0 * 50.0 * 0.05 * 0.95 / 1e6)));
    // More detections shrink the bias.
    CHECK(ent_epsilon(1e8, 0.05, -50.0) < e);
}
