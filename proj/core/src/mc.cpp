#include "qkd/mc.hpp"

#include <cmath>
#include <sstream>

namespace qkd {
namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
    z += kGamma;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Counter-based stream keyed by (seed, pulse index): every pulse draws from an
// independent deterministic sequence, so results do not depend on evaluation
// order.
struct PulseRng {
    std::uint64_t state;

    PulseRng(std::uint64_t seed, std::uint64_t pulse)
        : state(mix64(seed ^ mix64(pulse))) {}

    double uniform() {
        state += kGamma;
        return double(mix64(state) >> 11) * 0x1.0p-53;
    }
};

int sample_photons(PulseRng& rng, const PhotonNumberDist& dist) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (int i = 0; i <= dist.n_cut; ++i) {
        acc += dist.probs[i];
        if (u < acc) return i;
    }
    return dist.n_cut;  // truncated tail collapses onto the cutoff
}

int surviving(PulseRng& rng, int photons, double eta) {
    int survivors = 0;
    for (int p = 0; p < photons; ++p) {
        if (rng.uniform() < eta) ++survivors;
    }
    return survivors;
}

}  // namespace

SimTally simulate_channel(const SimConfig& cfg) {
    SimTally tally;
    tally.pulses = cfg.n_pulses;
    const PhotonNumberDist dist =
        photon_distribution(cfg.source, cfg.intensity, cfg.n_cut);
    for (std::uint64_t k = 0; k < cfg.n_pulses; ++k) {
        PulseRng rng(cfg.seed, k);
        const int photons = sample_photons(rng, dist);
        const int arrived = surviving(rng, photons, cfg.eta);
        const bool background = rng.uniform() < cfg.y0;
        if (arrived == 0 && !background) continue;
        ++tally.detections;
        bool error;
        if (arrived > 0 && background) {
            ++tally.double_clicks;
            error = rng.uniform() < 0.5;
        } else if (background) {
            error = rng.uniform() < 0.5;
        } else {
            error = rng.uniform() < cfg.e_d;
        }
        if (error) ++tally.errors;
    }
    return tally;
}

SimTally simulate_triggering(const SimConfig& cfg) {
    SimTally tally;
    tally.pulses = cfg.n_pulses;
    const PhotonNumberDist dist =
        photon_distribution(cfg.source, cfg.intensity, cfg.n_cut);
    for (std::uint64_t k = 0; k < cfg.n_pulses; ++k) {
        PulseRng rng(cfg.seed, k);
        const int pairs = sample_photons(rng, dist);
        const int idlers = surviving(rng, pairs, cfg.eta_alice);
        const int j = idlers > 0 ? 1 : 0;  // threshold trigger
        const int arrived = surviving(rng, pairs, cfg.eta);
        const bool background = rng.uniform() < cfg.y0;
        if (arrived == 0 && !background) continue;
        ++tally.detections;
        ++tally.detections_j[j];
        bool error;
        if (arrived > 0 && background) {
            ++tally.double_clicks;
            error = rng.uniform() < 0.5;
        } else if (background) {
            error = rng.uniform() < 0.5;
        } else {
            error = rng.uniform() < cfg.e_d;
        }
        if (error) {
            ++tally.errors;
            ++tally.errors_j[j];
        }
    }
    return tally;
}

AgreementReport agreement_check(const SimTally& tally, double analytic_gain,
                                double analytic_qber, double sigma) {
    AgreementReport rep;
    const double n = double(tally.pulses);
    const double sd_gain =
        std::sqrt(std::max(analytic_gain * (1.0 - analytic_gain), 1e-300) / n);
    rep.z_gain = (tally.gain() - analytic_gain) / sd_gain;
    const double det = double(tally.detections);
    if (det > 0.0) {
        const double sd_qber = std::sqrt(
            std::max(analytic_qber * (1.0 - analytic_qber), 1e-300) / det);
        rep.z_qber = (tally.qber() - analytic_qber) / sd_qber;
    }
    rep.ok = std::fabs(rep.z_gain) <= sigma && std::fabs(rep.z_qber) <= sigma;
    std::ostringstream os;
    os << "gain " << tally.gain() << " vs " << analytic_gain << " (z=" << rep.z_gain
       << "); qber " << tally.qber() << " vs " << analytic_qber
       << " (z=" << rep.z_qber << ")";
    rep.detail = os.str();
    return rep;
}

}  // namespace qkd
