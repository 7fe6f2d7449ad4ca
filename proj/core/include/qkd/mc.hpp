#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qkd/model.hpp"
#include "qkd/params.hpp"

namespace qkd {

// Pulse-level Monte Carlo of source + lossy channel + threshold detection.
struct SimConfig {
    SourceKind source = SourceKind::CoherentPoisson;
    double intensity = 0.0;
    double eta = 0.0;        // Bob-arm transmittance
    double eta_alice = 0.0;  // Alice trigger efficiency (triggering mode)
    double y0 = 0.0;         // Bob background probability per pulse
    double e_d = 0.0;
    std::uint64_t n_pulses = 0;
    std::uint64_t seed = 0;
    int n_cut = kDefaultNCut;
};

struct SimTally {
    std::uint64_t pulses = 0;
    std::uint64_t detections = 0;
    std::uint64_t errors = 0;
    std::uint64_t double_clicks = 0;
    // triggering mode: split by trigger outcome j in {0, 1}
    std::uint64_t detections_j[2] = {0, 0};
    std::uint64_t errors_j[2] = {0, 0};

    double gain() const { return pulses ? double(detections) / double(pulses) : 0.0; }
    double qber() const { return detections ? double(errors) / double(detections) : 0.0; }
};

SimTally simulate_channel(const SimConfig& cfg);

// Additionally samples Alice's threshold trigger per pulse (PDC pair source).
SimTally simulate_triggering(const SimConfig& cfg);

// z-scores of the empirical gain/QBER against analytic values.
struct AgreementReport {
    double z_gain = 0.0;
    double z_qber = 0.0;
    bool ok = true;
    std::string detail;
};
AgreementReport agreement_check(const SimTally& tally, double analytic_gain,
                                double analytic_qber, double sigma = 5.0);

}  // namespace qkd
