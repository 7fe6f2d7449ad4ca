#pragma once

#include <vector>

#include "qkd/params.hpp"

namespace qkd {

enum class SourceKind {
    CoherentPoisson,   // P(n) = mu^n e^{-mu} / n!
    PdcPair,           // P(n) = mu^n / (1+mu)^{n+1}
    PdcEntangledPair,  // P(n) = (n+1) lambda^n / (1+lambda)^{n+2}
};

// Truncated photon(-pair) number distribution.
struct PhotonNumberDist {
    SourceKind kind = SourceKind::CoherentPoisson;
    double intensity = 0.0;     // mu, or lambda for the entangled kind
    std::vector<double> probs;  // P(0..n_cut)
    int n_cut = 0;
    double tail = 0.0;          // 1 - sum(probs)
};

// Per-photon-number yields and error rates for one overall transmittance.
struct YieldProfile {
    double eta_total = 0.0;
    std::vector<double> y;  // Y_i, i = 0..n_cut
    std::vector<double> e;  // e_i, i = 0..n_cut
};

struct EventCounts {
    double pulses = 0.0;
    double detections = 0.0;
    double errors = 0.0;
};

// A (gain, QBER) pair, optionally carrying event counts for fluctuation work.
struct ChannelObservables {
    double gain = 0.0;
    double qber = 0.0;
    bool has_counts = false;
    EventCounts counts;
};

enum class GainMode { Series, Closed };

// eta = eta_bob * 10^(-beta l / 10). Throws std::domain_error for l < 0.
double transmittance(const ExperimentParams& params, double distance_km);

// eta = eta_bob * 10^(-loss_dB / 10), for free-space scenarios quoted in dB.
double transmittance_db(const ExperimentParams& params, double loss_db);

PhotonNumberDist photon_distribution(SourceKind kind, double intensity, int n_cut);

// Y_i = Y0 + eta_i - Y0 eta_i (exact product form); e_i = (e0 Y0 + e_d eta_i) / Y_i
// with eta_i = 1 - (1 - eta)^i.
YieldProfile yield_error_profile(const ExperimentParams& params, double eta_total,
                                 int n_cut);

// Series mode sums Y_i P(i) and e_i Y_i P(i); closed mode (coherent only)
// returns Q = Y0 + 1 - e^{-eta mu}, E Q = e0 Y0 + e_d (1 - e^{-eta mu}).
ChannelObservables channel_observables(const ExperimentParams& params,
                                       const PhotonNumberDist& dist,
                                       const YieldProfile& profile, GainMode mode);

// Convenience: closed-form coherent observables at a given eta and mu.
ChannelObservables coherent_observables(const ExperimentParams& params, double eta,
                                        double mu);

constexpr int kDefaultNCut = 20;

}  // namespace qkd
