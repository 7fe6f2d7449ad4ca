#pragma once

#include "qkd/estimators.hpp"
#include "qkd/keyrate.hpp"
#include "qkd/model.hpp"
#include "qkd/params.hpp"

namespace qkd {

// Pulse allocation between signal, vacuum-decoy, and weak-decoy states.
struct PulseBudget {
    double n_total = 0.0;
    double n_signal = 0.0;
    double n_vacuum = 0.0;
    double n_weak = 0.0;

    bool valid() const;
};

// Confidence expressed as a number of standard deviations.
struct ConfidenceSpec {
    double u = 10.0;
};

struct Interval {
    double low = 0.0;
    double high = 0.0;
    bool degenerate = false;
};

// value +/- u * sqrt(v(1-v)/N), clamped to [0,1].
Interval observable_interval(double value, double n_pulses, const ConfidenceSpec& conf);

// Gain and error-rate intervals for one observable with attached counts.
struct ObservableIntervals {
    Interval gain;
    Interval error_gain;  // interval on E*Q
};
ObservableIntervals observable_intervals(const ChannelObservables& obs,
                                         const ConfidenceSpec& conf);

// Fluctuated Vacuum+Weak rate at a distance: model-truth observables with
// expected counts from the budget, adversarial interval corners on the decoy
// observables (Q_nu low, E_nu Q_nu high), worst case over a single background
// yield in the measured Y0 interval, and q = N_s / 2N. Signal observables
// carry no fluctuation. n_vacuum = 0 selects the one-decoy branch (Y0 = 0).
struct FluctuatedRate {
    KeyRateResult rate;
    double final_key_bits = 0.0;
    SinglePhotonBounds bounds;  // at the worst-case Y0
};
FluctuatedRate fluctuated_vw_rate(const ExperimentParams& params,
                                  const PulseBudget& budget, double mu, double nu,
                                  double distance_km, const ConfidenceSpec& conf);

// Deterministic coordinate descent with a fixed restart lattice over
// (signal fraction, vacuum fraction) and golden-section over nu.
struct AllocationResult {
    PulseBudget budget;
    double nu = 0.0;
    double rate = 0.0;
    bool one_decoy = false;  // n_vacuum = 0 was optimal
};
AllocationResult optimize_allocation(const ExperimentParams& params, double n_total,
                                     double mu, double distance_km,
                                     const ConfidenceSpec& conf);

// Entanglement phase-error bias: epsilon = sqrt(-4 log_failure d(1-d) / n) so
// that the failure probability is at most exp(log_failure).
double ent_epsilon(double n_detections, double delta_b, double log_failure);

}  // namespace qkd
