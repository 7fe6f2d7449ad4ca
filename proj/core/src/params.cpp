#include "qkd/params.hpp"

namespace qkd {

static bool fraction_ok(double v) { return v >= 0.0 && v <= 1.0; }

bool ExperimentParams::valid() const {
    return fraction_ok(eta_bob) && fraction_ok(eta_alice) && fraction_ok(e_detector) &&
           fraction_ok(y0_bob) && fraction_ok(y0_alice) && fraction_ok(q_basis) &&
           e0 == 0.5 && f_ec >= 1.0 && beta_db_per_km >= 0.0;
}

namespace presets {

ExperimentParams gys() {
    ExperimentParams p;
    p.name = "gys";
    p.wavelength_nm = 1550.0;
    p.beta_db_per_km = 0.21;
    p.eta_bob = 0.045;
    p.eta_alice = 1.0;
    p.e_detector = 0.033;
    p.y0_bob = 1.7e-6;
    p.y0_alice = 0.0;
    p.e0 = 0.5;
    p.q_basis = 0.5;
    p.f_ec = 1.22;
    p.rep_rate_hz = 2e6;
    return p;
}

ExperimentParams pdc144() {
    ExperimentParams p;
    p.name = "pdc144";
    p.wavelength_nm = 710.0;
    p.beta_db_per_km = 0.0;  // free-space: losses quoted directly in dB
    p.eta_bob = 0.145;
    p.eta_alice = 0.145;
    p.e_detector = 0.015;
    p.y0_bob = 6.024e-6;
    p.y0_alice = 6.024e-6;
    p.e0 = 0.5;
    p.q_basis = 0.5;
    p.f_ec = 1.22;
    p.rep_rate_hz = 249e6;
    return p;
}

}  // namespace presets

bool find_preset(const std::string& name, ExperimentParams& out) {
    if (name == "gys") {
        out = presets::gys();
        return true;
    }
    if (name == "pdc144") {
        out = presets::pdc144();
        return true;
    }
    return false;
}

std::vector<std::string> preset_names() { return {"gys", "pdc144"}; }

}  // namespace qkd
