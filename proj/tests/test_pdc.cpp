#include <cmath>

#include "doctest.h"
#include "qkd/pdc.hpp"

using namespace qkd;

TEST_CASE("threshold trigger response") {
    const TriggerResponse r = trigger_response(TriggerKind::Threshold, 0.145, 10);
    CHECK(r.j_max == 1);
    CHECK(r.matrix[0][0] == doctest::Approx(1.0));
    CHECK(r.matrix[2][0] == doctest::Approx(0.731025));  // (1 - 0.145)^2
    CHECK(r.matrix[2][1] == doctest::Approx(1.0 - 0.731025));
    for (int i = 0; i <= 10; ++i) {
        double sum = 0.0;
        for (double v : r.matrix[i]) sum += v;
        CHECK(sum == doctest::Approx(1.0));
    }
}

TEST_CASE("pnr trigger response is a delta") {
    const TriggerResponse r = trigger_response(TriggerKind::PerfectPnr, 1.0, 5);
    for (int i = 0; i <= 5; ++i) {
        for (int j = 0; j <= r.j_max && j < int(r.matrix[i].size()); ++j) {
            CHECK(r.matrix[i][j] == doctest::Approx(i == j ? 1.0 : 0.0));
        }
    }
}

TEST_CASE("triggering observables, series vs closed") {
    const ExperimentParams p = presets::pdc144();
    const double mu = 0.2, eta = 0.1;
    const TriggeredObservables c = triggering_observables(p, mu, eta);
    const TriggeredObservables s = triggering_observables_series(p, mu, eta, 40);
    CHECK(s.q_mu0 == doctest::Approx(c.q_mu0).epsilon(1e-10));
    CHECK(s.q_mu1 == doctest::Approx(c.q_mu1).epsilon(1e-10));
    CHECK(s.e_mu0 == doctest::Approx(c.e_mu0).epsilon(1e-10));
    CHECK(s.e_mu1 == doctest::Approx(c.e_mu1).epsilon(1e-10));

    // Triggered + non-triggered gain equals the plain PDC-pair summation over
    // the yield profile (the trigger outcome only partitions the events).
    const double q_untrig = c.q_mu0 + c.q_mu1;
    PhotonNumberDist d = photon_distribution(SourceKind::PdcPair, mu, 40);
    YieldProfile prof = yield_error_profile(p, eta, 40);
    double q_sum = 0.0;
    for (int i = 0; i <= 40; ++i) q_sum += d.probs[i] * prof.y[i];
    CHECK(q_untrig == doctest::Approx(q_sum).epsilon(1e-9));
}

TEST_CASE("triggering single-photon components") {
    const ExperimentParams p = presets::pdc144();
    const TriggeringComponents c = triggering_components(p, 0.2, 0.1);
    CHECK(c.y1 == doctest::Approx(p.y0_bob + 0.1 - p.y0_bob * 0.1));
    // q_10 : q_11 split by the trigger efficiency.
    CHECK(c.q_11 / (c.q_10 + c.q_11) == doctest::Approx(p.eta_alice));
    CHECK(c.e1 < 0.5);
    CHECK(c.e1 >= p.e_detector * (1.0 - 1e-12));
}

TEST_CASE("entanglement observables, series vs closed") {
    const ExperimentParams p = presets::pdc144();
    const double lambda = 0.0265;
    const ChannelObservables c = ent_observables(p, lambda, 0.1, 0.1);
    const ChannelObservables s = ent_observables_series(p, lambda, 0.1, 0.1, 40);
    CHECK(s.gain == doctest::Approx(c.gain).epsilon(1e-9));
    CHECK(s.qber == doctest::Approx(c.qber).epsilon(1e-9));
}

TEST_CASE("entangled per-pair error rates") {
    ExperimentParams p = presets::pdc144();
    p.y0_bob = 0.0;
    p.y0_alice = 0.0;
    // Single pair: error is the misalignment error.
    CHECK(ent_error(p, 1, 0.3, 0.3) == doctest::Approx(p.e_detector).epsilon(1e-9));
    // e_n approaches e0 monotonically from below.
    double prev = ent_error(p, 1, 0.3, 0.3);
    for (int n = 2; n <= 30; ++n) {
        const double e = ent_error(p, n, 0.3, 0.3);
        CHECK(e >= prev - 1e-12);
        CHECK(e <= p.e0 + 1e-12);
        prev = e;
    }
}
