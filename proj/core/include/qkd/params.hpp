#pragma once

#include <string>
#include <vector>

namespace qkd {

// One named experimental setup. All efficiencies and probabilities are
// fractions in [0,1]; beta is the fiber loss coefficient in dB/km.
struct ExperimentParams {
    std::string name;
    double wavelength_nm = 0.0;
    double beta_db_per_km = 0.0;  // fiber loss coefficient
    double eta_bob = 1.0;         // detection-side transmittance incl. detector efficiency
    double eta_alice = 1.0;       // trigger-side detector efficiency (1.0 for coherent setups)
    double e_detector = 0.0;      // intrinsic misalignment error e_d
    double y0_bob = 0.0;          // background count probability per pulse, Bob side
    double y0_alice = 0.0;        // background count probability per pulse, Alice side
    double e0 = 0.5;              // background error rate (always 1/2)
    double q_basis = 0.5;         // basis reconciliation factor q
    double f_ec = 1.22;           // error-correction inefficiency f(E) >= 1
    double rep_rate_hz = 0.0;

    // Convenience accessor for single-sided (coherent-source) setups.
    double y0() const { return y0_bob; }

    bool valid() const;
};

namespace presets {

// Fiber-based coherent-state setup (1550 nm telecom experiment).
ExperimentParams gys();

// Free-space 144 km PDC experiment setup.
ExperimentParams pdc144();

}  // namespace presets

// Look up a preset by name ("gys" or "pdc144"); returns false if unknown.
bool find_preset(const std::string& name, ExperimentParams& out);

std::vector<std::string> preset_names();

}  // namespace qkd
