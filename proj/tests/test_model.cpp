#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "qkd/model.hpp"

using namespace qkd;

TEST_CASE("transmittance follows the fiber loss law") {
    const ExperimentParams p = presets::gys();
    CHECK(transmittance(p, 0.0) == doctest::Approx(p.eta_bob));
    CHECK(transmittance(p, 100.0) == doctest::Approx(3.5745e-4).epsilon(1e-4));
    CHECK(transmittance_db(p, 10.0) == doctest::Approx(p.eta_bob * 0.1));
    CHECK_THROWS_AS(transmittance(p, -1.0), std::domain_error);
}

TEST_CASE("photon number distributions") {
    SUBCASE("poisson") {
        PhotonNumberDist d = photon_distribution(SourceKind::CoherentPoisson, 1.0, 25);
        CHECK(d.probs[0] == doctest::Approx(std::exp(-1.0)));
        CHECK(d.probs[20] == doctest::Approx(1.512e-19).epsilon(1e-3));
        CHECK(d.tail < 1e-12);
    }
    SUBCASE("pdc pair") {
        PhotonNumberDist d = photon_distribution(SourceKind::PdcPair, 0.5, 40);
        CHECK(d.probs[0] == doctest::Approx(1.0 / 1.5));
        CHECK(d.probs[2] == doctest::Approx(0.25 / 3.375));
    }
    SUBCASE("entangled pair") {
        PhotonNumberDist d = photon_distribution(SourceKind::PdcEntangledPair, 0.1, 40);
        // P(n) = (n+1) lambda^n / (1+lambda)^(n+2)
        CHECK(d.probs[0] == doctest::Approx(1.0 / 1.21));
        CHECK(d.probs[1] == doctest::Approx(2.0 * 0.1 / std::pow(1.1, 3)));
        double sum = 0.0;
        for (double v : d.probs) sum += v;
        CHECK(sum + d.tail == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("yield and error profile") {
    const ExperimentParams p = presets::gys();
    const YieldProfile prof = yield_error_profile(p, 0.045, 20);
    CHECK(prof.y[0] == doctest::Approx(p.y0()));
    CHECK(prof.y[1] == doctest::Approx(0.0450017).epsilon(1e-5));
    CHECK(prof.e[1] == doctest::Approx(0.033019).epsilon(1e-4));
    // Y_i nondecreasing, e_i within [e_d-ish, e0]
    for (int i = 1; i <= 20; ++i) {
        CHECK(prof.y[i] >= prof.y[i - 1]);
        CHECK(prof.e[i] <= p.e0 + 1e-12);
        CHECK(prof.e[i] >= 0.0);
    }
    SUBCASE("lossless no-background single photon") {
        ExperimentParams q = p;
        q.y0_bob = 0.0;
        const YieldProfile ideal = yield_error_profile(q, 1.0, 2);
        CHECK(ideal.y[1] == doctest::Approx(1.0));
        CHECK(ideal.e[1] == doctest::Approx(q.e_detector));
    }
    CHECK_THROWS_AS(yield_error_profile(p, 1.5, 5), std::domain_error);
}

TEST_CASE("coherent gain and QBER, series vs closed") {
    const ExperimentParams p = presets::gys();
    const double mu = 0.48;
    const ChannelObservables closed = coherent_observables(p, 0.045, mu);
    CHECK(closed.gain == doctest::Approx(0.021370).epsilon(1e-4));
    CHECK(closed.qber == doctest::Approx(0.033038).epsilon(1e-4));

    const PhotonNumberDist dist = photon_distribution(SourceKind::CoherentPoisson, mu, 20);
    const YieldProfile prof = yield_error_profile(p, 0.045, 20);
    const ChannelObservables series = channel_observables(p, dist, prof, GainMode::Series);
    // The closed gain drops the Y0 cross term; agreement is to ~Y0 absolute.
    CHECK(std::fabs(series.gain - closed.gain) < 2.0 * p.y0());
    CHECK(std::fabs(series.qber - closed.qber) < 1e-4);
}
