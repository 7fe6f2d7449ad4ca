#pragma once

#include <functional>

#include "qkd/params.hpp"

namespace qkd {

using ScalarFn = std::function<double(double)>;

struct OptimumResult {
    double argmax = 0.0;
    double value = 0.0;
    bool found = true;
};

// Non-decoy: root of -mu e^{-mu} + eta e^{-eta mu} = 0 (close to eta).
// Decoy: root of (1 - mu) e^{-mu} = f H2(e_d) / (1 - H2(e_d)).
OptimumResult optimal_mu_coherent(const ExperimentParams& params, double eta, bool decoy);

// Triggering PDC optimal intensity conditions.
// Non-decoy: returns x with mu = x * eta, root of the threshold-trigger
// condition (x = 1/2 at e_d = 0). Decoy: returns mu directly (mu = 1 at e_d = 0).
OptimumResult optimal_mu_triggering(double e_d, double f, bool decoy);

enum class EntRegime { EtaAOne, EtaASmall };

// Entanglement PDC optimal lambda condition for the stated regime.
OptimumResult optimal_lambda_entanglement(double e_d, double f, EntRegime regime);

// Golden-section search to 1e-6 absolute on [lo, hi]; leftmost on plateaus.
OptimumResult maximize_scalar(const ScalarFn& fn, double lo, double hi,
                              double tol = 1e-6);

// Largest axis value with rate(axis) > cutoff: coarse scan with the given
// step, then bisection to 0.01 resolution. rate must be positive somewhere.
struct ReachResult {
    double reach = 0.0;
    bool positive_somewhere = true;
};
ReachResult max_reach(const ScalarFn& rate_of_axis, double axis_lo, double axis_hi,
                      double coarse_step, double cutoff = 0.0,
                      double resolution = 0.01);

// Bisection for a root of fn on [lo, hi] (fn(lo) and fn(hi) of opposite sign).
double bisect_root(const ScalarFn& fn, double lo, double hi, double tol = 1e-10,
                   int max_iter = 200);

}  // namespace qkd
