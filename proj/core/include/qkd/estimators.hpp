#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qkd/model.hpp"
#include "qkd/pdc.hpp"

namespace qkd {

// Observed gains/QBERs at one or more intensities (optionally keyed by
// trigger outcome j for passive decoy schemes).
struct DecoyObservations {
    struct Entry {
        double intensity = 0.0;
        ChannelObservables obs;
        int trigger_j = -1;  // -1 when not a trigger-split observation
    };
    std::vector<Entry> entries;
    bool has_vacuum_gain = false;
    double vacuum_gain = 0.0;  // measured Y0
};

// Lower bound on Y1/Q1 and upper bound on e1, with the estimator used.
struct SinglePhotonBounds {
    double y1_low = 0.0;
    double e1_high = 1.0;
    double q1_low = 0.0;
    double q0_low = 0.0;
    std::string method;
    bool insecure = false;  // bound underflowed; zero bounds returned
    bool clamped = false;   // a negative intermediate was clamped to zero
};

// Q1 >= Q_mu - sum_{i>=2} mu^i e^{-mu} / i!; e1 <= E_mu Q_mu / Q1.
SinglePhotonBounds nondecoy_bounds(const ChannelObservables& obs_signal, double mu);

// Vacuum+Weak two-decoy bounds:
//   Y1^L = mu/(mu nu - nu^2) (Q_nu e^nu - Q_mu e^mu nu^2/mu^2 - (mu^2-nu^2)/mu^2 Y0)
//   e1^U = (E_nu Q_nu e^nu - e0 Y0) / (Y1^L nu)
SinglePhotonBounds vacuum_weak_bounds(const ChannelObservables& obs_mu,
                                      const ChannelObservables& obs_nu,
                                      double y0_measured, double mu, double nu,
                                      double e0 = 0.5);

// One-decoy bounds: Vacuum+Weak evaluated at Y0 = 0.
SinglePhotonBounds one_decoy_bounds(const ChannelObservables& obs_mu,
                                    const ChannelObservables& obs_nu, double mu,
                                    double nu);

// Evaluates the downstream key rate for a candidate (Y1, e1) pair; used by the
// LP refinement and the AYKI vacuum-interval scan to find the worst case.
using BoundsRateFn = std::function<double(const SinglePhotonBounds&)>;

struct LpOptions {
    int n_cut = kDefaultNCut;  // variables Y_0..Y_{n_cut-1}, x_0..x_{n_cut-1}
    int scan_points = 161;     // 1-D refinement grid over feasible Y1
    double e0 = 0.5;
};

// Numerical (linear-programming) bounds.
//
// Active coherent mode (entries keyed by intensity): equality constraint rows
//   sum_i mu^i/i! Y_i = Q_mu e^mu and sum_i mu^i/i! x_i = E_mu Q_mu e^mu
// per intensity, plus vacuum equalities Y_0 = Y0 and x_0 = e0 Y0 when a
// vacuum measurement is present, with 0 <= x_i <= Y_i <= 1.
//
// Passive mode (entries keyed by trigger outcome, response != null): rows
//   sum_i P(i) w_{j|i} Y_i in [observed - tail, observed] per outcome j,
// with the vacuum relation x_0 = e0 Y_0 enforced as an equality.
//
// The conservative combination (LP-min Y1, then LP-max x1) is returned when
// rate_fn is absent. With rate_fn the result is refined by a one-dimensional
// scan over the feasible Y1 range, maximizing x1 at each point and keeping the
// rate-minimizing corner.
SinglePhotonBounds lp_bounds(const DecoyObservations& obs, const PhotonNumberDist& source,
                             const TriggerResponse* response, const LpOptions& options,
                             const BoundsRateFn& rate_fn = nullptr);

// Triggered-only weak decoy bounds for a triggering PDC source.
SinglePhotonBounds trig_weak_bounds(const ChannelObservables& obs_mu_j1,
                                    const ChannelObservables& obs_nu_j1, double mu,
                                    double nu, double eta_a);

// Passive (AYKI) bounds from triggered/non-triggered statistics at a single
// intensity. The vacuum contribution Q_{0,0} is scanned over
// [0, E_{mu,0} Q_{mu,0} / e0] and the rate-minimizing value kept; rate_fn
// supplies the downstream rate (the scan minimizes y1_low when absent).
SinglePhotonBounds ayki_bounds(const ChannelObservables& obs_j0,
                               const ChannelObservables& obs_j1, double mu,
                               double eta_a, const BoundsRateFn& rate_fn = nullptr,
                               int scan_points = 21, double e0 = 0.5);

// beta_Y1 = (Y1 - Y1^L)/Y1, beta_e1 = (e1^U - e1)/e1.
struct DeviationMetrics {
    double beta_y1 = 0.0;
    double beta_e1 = 0.0;
    bool defined = true;
};
DeviationMetrics deviation_metrics(const SinglePhotonBounds& bounds, double y1_truth,
                                   double e1_truth);

}  // namespace qkd
