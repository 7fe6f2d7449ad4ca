#include "qkd/pdc.hpp"

#include <cmath>
#include <stdexcept>

namespace qkd {

TriggerResponse trigger_response(TriggerKind kind, double eta_a, int n_cut) {
    if (eta_a < 0.0 || eta_a > 1.0) {
        throw std::domain_error("trigger_response: eta_a outside [0,1]");
    }
    TriggerResponse r;
    r.kind = kind;
    r.eta_a = eta_a;
    r.n_cut = n_cut;
    r.j_max = kind == TriggerKind::Threshold ? 1 : n_cut;
    r.matrix.resize(n_cut + 1);
    for (int i = 0; i <= n_cut; ++i) {
        // Binomial detection of i photons with efficiency eta_a.
        std::vector<double> binom(i + 1, 0.0);
        double term = std::pow(1.0 - eta_a, i);
        if (eta_a == 1.0) term = i == 0 ? 1.0 : 0.0;
        binom[0] = term;
        for (int j = 1; j <= i; ++j) {
            if (eta_a < 1.0) {
                term *= double(i - j + 1) / double(j) * eta_a / (1.0 - eta_a);
                binom[j] = term;
            } else {
                binom[j] = j == i ? 1.0 : 0.0;
            }
        }
        if (kind == TriggerKind::Threshold) {
            r.matrix[i] = {binom[0], 1.0 - binom[0]};
        } else {
            r.matrix[i].assign(r.j_max + 1, 0.0);
            for (int j = 0; j <= i && j <= r.j_max; ++j) r.matrix[i][j] = binom[j];
        }
    }
    return r;
}

TriggeredObservables triggering_observables(const ExperimentParams& params, double mu,
                                            double eta_channel) {
    const double eta_a = params.eta_alice;
    const double eta = eta_channel;
    const double y0b = params.y0_bob;
    const double c = eta_a + eta - eta_a * eta;
    TriggeredObservables t;
    t.q_mu0 = 1.0 / (1.0 + eta_a * mu) - (1.0 - y0b) / (1.0 + c * mu);
    t.q_mu1 = 1.0 - 1.0 / (1.0 + eta_a * mu) - (1.0 - y0b) / (1.0 + eta * mu) +
              (1.0 - y0b) / (1.0 + c * mu);
    const double eq0 = params.e_detector * t.q_mu0 +
                       (params.e0 - params.e_detector) * y0b / (1.0 + eta_a * mu);
    const double eq1 =
        params.e_detector * t.q_mu1 +
        (params.e0 - params.e_detector) * eta_a * mu * y0b / (1.0 + eta_a * mu);
    t.e_mu0 = t.q_mu0 > 0.0 ? eq0 / t.q_mu0 : params.e0;
    t.e_mu1 = t.q_mu1 > 0.0 ? eq1 / t.q_mu1 : params.e0;
    return t;
}

TriggeredObservables triggering_observables_series(const ExperimentParams& params,
                                                   double mu, double eta_channel,
                                                   int n_cut) {
    PhotonNumberDist dist = photon_distribution(SourceKind::PdcPair, mu, n_cut);
    YieldProfile profile = yield_error_profile(params, eta_channel, n_cut);
    TriggeredObservables t;
    double eq0 = 0.0, eq1 = 0.0;
    for (int i = 0; i <= n_cut; ++i) {
        const double w0 = std::pow(1.0 - params.eta_alice, i);
        const double q = dist.probs[i] * profile.y[i];
        t.q_mu0 += q * w0;
        t.q_mu1 += q * (1.0 - w0);
        // Error weight e_i Y_i = e_d Y_i + (e_0 - e_d) Y_0B, the same grouping
        // the closed forms integrate, so series and closed agree term by term.
        const double eyi = params.e_detector * profile.y[i] +
                           (params.e0 - params.e_detector) * params.y0_bob;
        eq0 += dist.probs[i] * w0 * eyi;
        eq1 += dist.probs[i] * (1.0 - w0) * eyi;
    }
    t.e_mu0 = t.q_mu0 > 0.0 ? eq0 / t.q_mu0 : params.e0;
    t.e_mu1 = t.q_mu1 > 0.0 ? eq1 / t.q_mu1 : params.e0;
    return t;
}

TriggeringComponents triggering_components(const ExperimentParams& params, double mu,
                                           double eta_channel) {
    TriggeringComponents c;
    const double y0b = params.y0_bob;
    const double eta = eta_channel;
    c.y1 = y0b + eta - y0b * eta;
    const double e1y1 = params.e_detector * c.y1 + (params.e0 - params.e_detector) * y0b;
    c.e1 = c.y1 > 0.0 ? e1y1 / c.y1 : params.e0;
    const double p1 = mu / ((1.0 + mu) * (1.0 + mu));
    c.q_10 = p1 * (1.0 - params.eta_alice) * c.y1;
    c.q_11 = p1 * params.eta_alice * c.y1;
    c.q_00 = y0b / (1.0 + mu);
    c.q_01 = 0.0;
    return c;
}

PnrObservables pnr_observables(const ExperimentParams& params, double mu,
                               double eta_channel, int n_cut) {
    PhotonNumberDist dist = photon_distribution(SourceKind::PdcPair, mu, n_cut);
    YieldProfile profile = yield_error_profile(params, eta_channel, n_cut);
    PnrObservables out;
    out.q.resize(n_cut + 1);
    out.e.resize(n_cut + 1);
    for (int i = 0; i <= n_cut; ++i) {
        out.q[i] = dist.probs[i] * profile.y[i];
        out.e[i] = profile.e[i];
    }
    return out;
}

ChannelObservables ent_observables(const ExperimentParams& params, double lambda,
                                   double eta_a_total, double eta_b_total) {
    const double ea = eta_a_total;
    const double eb = eta_b_total;
    const double y0a = params.y0_alice;
    const double y0b = params.y0_bob;
    const double c = ea + eb - ea * eb;
    auto sq = [](double v) { return v * v; };
    ChannelObservables obs;
    obs.gain = 1.0 - (1.0 - y0a) / sq(1.0 + ea * lambda) -
               (1.0 - y0b) / sq(1.0 + eb * lambda) +
               (1.0 - y0a) * (1.0 - y0b) / sq(1.0 + c * lambda);
    const double eq =
        params.e0 * obs.gain -
        2.0 * (params.e0 - params.e_detector) * ea * eb * lambda * (1.0 + lambda) /
            ((1.0 + ea * lambda) * (1.0 + eb * lambda) * (1.0 + c * lambda));
    obs.qber = obs.gain > 0.0 ? eq / obs.gain : params.e0;
    return obs;
}

double ent_yield(const ExperimentParams& params, int n, double eta_a, double eta_b) {
    const double miss_a = (1.0 - params.y0_alice) * std::pow(1.0 - eta_a, n);
    const double miss_b = (1.0 - params.y0_bob) * std::pow(1.0 - eta_b, n);
    return (1.0 - miss_a) * (1.0 - miss_b);
}

double ent_error(const ExperimentParams& params, int n, double eta_a, double eta_b) {
    const double yn = ent_yield(params, n, eta_a, eta_b);
    if (yn <= 0.0) return params.e0;
    const double ta = std::pow(1.0 - eta_a, n + 1);
    const double tb = std::pow(1.0 - eta_b, n + 1);
    const double first =
        (1.0 - ta * tb) / (1.0 - (1.0 - eta_a) * (1.0 - eta_b));
    double second;
    if (std::fabs(eta_a - eta_b) < 1e-9) {
        second = double(n + 1) * std::pow(1.0 - eta_a, n);
    } else {
        second = (ta - tb) / (eta_b - eta_a);
    }
    const double bracket = first - second;
    return params.e0 -
           2.0 * (params.e0 - params.e_detector) / (double(n + 1) * yn) * bracket;
}

ChannelObservables ent_observables_series(const ExperimentParams& params, double lambda,
                                          double eta_a_total, double eta_b_total,
                                          int n_cut) {
    PhotonNumberDist dist =
        photon_distribution(SourceKind::PdcEntangledPair, lambda, n_cut);
    ChannelObservables obs;
    double q = 0.0, eq = 0.0;
    for (int n = 0; n <= n_cut; ++n) {
        const double yn = ent_yield(params, n, eta_a_total, eta_b_total);
        const double en = ent_error(params, n, eta_a_total, eta_b_total);
        q += dist.probs[n] * yn;
        eq += dist.probs[n] * yn * en;
    }
    obs.gain = q;
    obs.qber = q > 0.0 ? eq / q : params.e0;
    return obs;
}

}  // namespace qkd
