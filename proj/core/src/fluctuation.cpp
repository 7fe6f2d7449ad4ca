#include "qkd/fluctuation.hpp"

#include <algorithm>
#include <cmath>

#include "qkd/optimize.hpp"

namespace qkd {

bool PulseBudget::valid() const {
    if (n_total <= 0.0 || n_signal <= 0.0 || n_vacuum < 0.0 || n_weak < 0.0) {
        return false;
    }
    const double sum = n_signal + n_vacuum + n_weak;
    return std::fabs(sum - n_total) <= 1e-6 * n_total;
}

Interval observable_interval(double value, double n_pulses, const ConfidenceSpec& conf) {
    Interval iv;
    if (n_pulses <= 0.0) {
        iv.low = 0.0;
        iv.high = 1.0;
        iv.degenerate = true;
        return iv;
    }
    const double sigma = std::sqrt(std::max(value * (1.0 - value), 0.0) / n_pulses);
    iv.low = std::clamp(value - conf.u * sigma, 0.0, 1.0);
    iv.high = std::clamp(value + conf.u * sigma, 0.0, 1.0);
    return iv;
}

ObservableIntervals observable_intervals(const ChannelObservables& obs,
                                         const ConfidenceSpec& conf) {
    ObservableIntervals out;
    const double n = obs.has_counts ? double(obs.counts.pulses) : 0.0;
    out.gain = observable_interval(obs.gain, n, conf);
    out.error_gain = observable_interval(obs.qber * obs.gain, n, conf);
    return out;
}

FluctuatedRate fluctuated_vw_rate(const ExperimentParams& params,
                                  const PulseBudget& budget, double mu, double nu,
                                  double distance_km, const ConfidenceSpec& conf) {
    FluctuatedRate out;
    out.rate.status = RateStatus::Insecure;
    if (!budget.valid() || !(mu > nu) || nu <= 0.0) return out;

    const double eta = transmittance(params, distance_km);
    const ChannelObservables obs_mu = coherent_observables(params, eta, mu);
    const ChannelObservables obs_nu = coherent_observables(params, eta, nu);
    const double y0 = params.y0();
    const double q = budget.n_signal / (2.0 * budget.n_total);
    const double f = params.f_ec;

    // Adversarial corners on the decoy-state observables only.
    const double q_nu_low =
        observable_interval(obs_nu.gain, budget.n_weak, conf).low;
    const double eq_nu_high =
        observable_interval(obs_nu.qber * obs_nu.gain, budget.n_weak, conf).high;

    // Worst case over a single consistent background yield within its
    // measured interval (one-decoy branch: no vacuum states, Y0 treated as 0).
    std::vector<double> y0_grid;
    if (budget.n_vacuum > 0.0) {
        const Interval y0_iv = observable_interval(y0, budget.n_vacuum, conf);
        const int points = 41;
        for (int i = 0; i < points; ++i) {
            y0_grid.push_back(y0_iv.low + (y0_iv.high - y0_iv.low) * double(i) /
                                              double(points - 1));
        }
    } else {
        y0_grid.push_back(0.0);
    }

    const double enu = std::exp(nu);
    const double emu = std::exp(mu);
    const double ec =
        -f * obs_mu.gain * binary_entropy(std::min(obs_mu.qber, 0.5));

    bool have = false;
    double worst = 0.0;
    SinglePhotonBounds worst_bounds;
    for (double y0v : y0_grid) {
        const double y1 =
            mu / (mu * nu - nu * nu) *
            (q_nu_low * enu - obs_mu.gain * emu * nu * nu / (mu * mu) -
             (mu * mu - nu * nu) / (mu * mu) * y0v);
        if (y1 <= 0.0) return out;  // bound failed somewhere in the interval
        double e1 = (eq_nu_high * enu - params.e0 * y0v) / (y1 * nu);
        e1 = std::clamp(e1, 0.0, 0.5);
        const double q1 = y1 * mu * std::exp(-mu);
        const double r = q * (ec + q1 * (1.0 - binary_entropy(e1)));
        if (!have || r < worst) {
            have = true;
            worst = r;
            worst_bounds.y1_low = y1;
            worst_bounds.e1_high = e1;
            worst_bounds.q1_low = q1;
            worst_bounds.q0_low = y0v * std::exp(-mu);
            worst_bounds.method =
                budget.n_vacuum > 0.0 ? "vw-fluctuated" : "one-decoy-fluctuated";
        }
    }
    if (!have) return out;
    out.bounds = worst_bounds;
    out.rate.unclamped = worst;
    out.rate.rate = std::max(0.0, worst);
    out.rate.status =
        out.rate.rate > 0.0 ? RateStatus::Positive : RateStatus::ClampedZero;
    out.final_key_bits = budget.n_total * out.rate.rate;
    return out;
}

namespace {

struct EvalResult {
    double value = -1e9;
    double nu = 0.0;
};

EvalResult eval_fractions(const ExperimentParams& params, double n_total, double mu,
                          double distance_km, const ConfidenceSpec& conf, double fs,
                          double fv, double nu_hint) {
    EvalResult res;
    if (fs <= 0.0 || fv < 0.0 || fs + fv >= 1.0) return res;
    PulseBudget b;
    b.n_total = n_total;
    b.n_signal = fs * n_total;
    b.n_vacuum = fv * n_total;
    b.n_weak = n_total - b.n_signal - b.n_vacuum;
    auto rate_of_nu = [&](double nu) {
        FluctuatedRate r = fluctuated_vw_rate(params, b, mu, nu, distance_km, conf);
        return r.rate.status == RateStatus::Insecure ? -1e9 : r.rate.unclamped;
    };
    (void)nu_hint;
    OptimumResult opt = maximize_scalar(rate_of_nu, 1e-3, 0.99 * mu, 1e-9);
    res.value = opt.value;
    res.nu = opt.argmax;
    return res;
}

}  // namespace

AllocationResult optimize_allocation(const ExperimentParams& params, double n_total,
                                     double mu, double distance_km,
                                     const ConfidenceSpec& conf) {
    // Deterministic restart lattice over (signal fraction, vacuum fraction).
    const double restarts[][2] = {
        {0.66, 0.29}, {0.7, 0.05}, {0.8, 0.02}, {0.6, 0.15}, {0.5, 0.3},
    };
    AllocationResult best;
    best.rate = -1e9;
    for (const auto& start : restarts) {
        double fs = start[0], fv = start[1];
        EvalResult cur = eval_fractions(params, n_total, mu, distance_km, conf, fs,
                                        fv, 0.1);
        for (int iter = 0; iter < 200; ++iter) {
            bool improved = false;
            for (double step : {0.02, 0.005, 0.001, 2e-4}) {
                const double moves[][2] = {
                    {step, 0.0},   {-step, 0.0}, {0.0, step},
                    {0.0, -step},  {step, -step}, {-step, step},
                };
                for (const auto& mv : moves) {
                    const double f2 = fs + mv[0];
                    const double v2 = fv + mv[1];
                    if (f2 <= 0.0 || v2 < 0.0 || f2 + v2 >= 1.0) continue;
                    EvalResult cand = eval_fractions(params, n_total, mu,
                                                     distance_km, conf, f2, v2,
                                                     cur.nu);
                    if (cand.value > cur.value) {
                        fs = f2;
                        fv = v2;
                        cur = cand;
                        improved = true;
                    }
                }
            }
            if (!improved) break;
        }
        if (cur.value > best.rate) {
            best.rate = cur.value;
            best.nu = cur.nu;
            best.budget.n_total = n_total;
            best.budget.n_signal = fs * n_total;
            best.budget.n_vacuum = fv * n_total;
            best.budget.n_weak = n_total - best.budget.n_signal - best.budget.n_vacuum;
        }
    }
    best.one_decoy = best.budget.n_vacuum <= 0.0;
    best.rate = std::max(0.0, best.rate);
    return best;
}

double ent_epsilon(double n_detections, double delta_b, double log_failure) {
    if (n_detections <= 0.0) return 0.5;
    return std::sqrt(-4.0 * log_failure * delta_b * (1.0 - delta_b) / n_detections);
}

}  // namespace qkd
