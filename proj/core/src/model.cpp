#include "qkd/model.hpp"

#include <cmath>
#include <stdexcept>

namespace qkd {

double transmittance(const ExperimentParams& params, double distance_km) {
    if (distance_km < 0.0) {
        throw std::domain_error("transmittance: negative distance");
    }
    return params.eta_bob * std::pow(10.0, -params.beta_db_per_km * distance_km / 10.0);
}

double transmittance_db(const ExperimentParams& params, double loss_db) {
    return params.eta_bob * std::pow(10.0, -loss_db / 10.0);
}

PhotonNumberDist photon_distribution(SourceKind kind, double intensity, int n_cut) {
    if (intensity < 0.0) {
        throw std::domain_error("photon_distribution: negative intensity");
    }
    if (n_cut < 1) {
        throw std::domain_error("photon_distribution: n_cut < 1");
    }
    PhotonNumberDist dist;
    dist.kind = kind;
    dist.intensity = intensity;
    dist.n_cut = n_cut;
    dist.probs.resize(n_cut + 1);
    const double mu = intensity;
    switch (kind) {
        case SourceKind::CoherentPoisson: {
            double p = std::exp(-mu);
            for (int i = 0; i <= n_cut; ++i) {
                dist.probs[i] = p;
                p *= mu / double(i + 1);
            }
            break;
        }
        case SourceKind::PdcPair: {
            double p = 1.0 / (1.0 + mu);
            const double ratio = mu / (1.0 + mu);
            for (int i = 0; i <= n_cut; ++i) {
                dist.probs[i] = p;
                p *= ratio;
            }
            break;
        }
        case SourceKind::PdcEntangledPair: {
            const double lam = intensity;
            double base = 1.0 / ((1.0 + lam) * (1.0 + lam));
            const double ratio = lam / (1.0 + lam);
            for (int i = 0; i <= n_cut; ++i) {
                dist.probs[i] = double(i + 1) * base;
                base *= ratio;
            }
            break;
        }
    }
    double sum = 0.0;
    for (double p : dist.probs) sum += p;
    dist.tail = std::max(0.0, 1.0 - sum);
    return dist;
}

YieldProfile yield_error_profile(const ExperimentParams& params, double eta_total,
                                 int n_cut) {
    if (eta_total < 0.0 || eta_total > 1.0) {
        throw std::domain_error("yield_error_profile: eta outside [0,1]");
    }
    YieldProfile profile;
    profile.eta_total = eta_total;
    profile.y.resize(n_cut + 1);
    profile.e.resize(n_cut + 1);
    const double y0 = params.y0();
    for (int i = 0; i <= n_cut; ++i) {
        const double eta_i = 1.0 - std::pow(1.0 - eta_total, i);
        const double yi = y0 + eta_i - y0 * eta_i;
        profile.y[i] = yi;
        profile.e[i] =
            yi > 0.0 ? (params.e0 * y0 + params.e_detector * eta_i) / yi : params.e0;
    }
    return profile;
}

ChannelObservables channel_observables(const ExperimentParams& params,
                                       const PhotonNumberDist& dist,
                                       const YieldProfile& profile, GainMode mode) {
    ChannelObservables obs;
    if (mode == GainMode::Closed) {
        if (dist.kind != SourceKind::CoherentPoisson) {
            throw std::invalid_argument(
                "channel_observables: closed mode requires a coherent source");
        }
        return coherent_observables(params, profile.eta_total, dist.intensity);
    }
    double q = 0.0;
    double eq = 0.0;
    const int n = std::min<int>(dist.n_cut, int(profile.y.size()) - 1);
    for (int i = 0; i <= n; ++i) {
        q += profile.y[i] * dist.probs[i];
        eq += profile.e[i] * profile.y[i] * dist.probs[i];
    }
    obs.gain = q;
    obs.qber = q > 0.0 ? eq / q : params.e0;
    return obs;
}

ChannelObservables coherent_observables(const ExperimentParams& params, double eta,
                                        double mu) {
    ChannelObservables obs;
    const double s = 1.0 - std::exp(-eta * mu);  // non-vacuum arrival probability
    obs.gain = params.y0() + s;
    const double eq = params.e0 * params.y0() + params.e_detector * s;
    obs.qber = obs.gain > 0.0 ? eq / obs.gain : params.e0;
    return obs;
}

}  // namespace qkd
