#include "qkd/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qkd::pipelines {
namespace {

double h2(double x) { return binary_entropy(std::clamp(x, 0.0, 1.0)); }

struct CoherentModel {
    ChannelObservables overall;
    double y1 = 0.0;
    double e1 = 0.0;
    double q1 = 0.0;
    double q0 = 0.0;
};

CoherentModel coherent_model(const ExperimentParams& params, double mu, double eta) {
    CoherentModel m;
    m.overall = coherent_observables(params, eta, mu);
    const double y0 = params.y0();
    m.y1 = y0 + eta - y0 * eta;
    m.e1 = (params.e0 * y0 + params.e_detector * eta) / m.y1;
    m.q1 = m.y1 * mu * std::exp(-mu);
    m.q0 = y0 * std::exp(-mu);
    return m;
}

}  // namespace

CoherentPoint coherent_rate(const ExperimentParams& params, CoherentEstimator est,
                            double mu, double nu, double distance_km) {
    const double eta = transmittance(params, distance_km);
    const CoherentModel m = coherent_model(params, mu, eta);
    CoherentPoint point;
    point.overall = m.overall;
    switch (est) {
        case CoherentEstimator::Infinite: {
            point.bounds.method = "infinite";
            point.bounds.y1_low = m.y1;
            point.bounds.e1_high = m.e1;
            point.bounds.q1_low = m.q1;
            point.bounds.q0_low = m.q0;
            break;
        }
        case CoherentEstimator::NonDecoy:
            point.bounds = nondecoy_bounds(m.overall, mu);
            break;
        case CoherentEstimator::VacuumWeak: {
            const ChannelObservables obs_nu = coherent_observables(params, eta, nu);
            point.bounds =
                vacuum_weak_bounds(m.overall, obs_nu, params.y0(), mu, nu, params.e0);
            break;
        }
        case CoherentEstimator::OneDecoy: {
            const ChannelObservables obs_nu = coherent_observables(params, eta, nu);
            point.bounds = one_decoy_bounds(m.overall, obs_nu, mu, nu);
            break;
        }
        case CoherentEstimator::Lp: {
            DecoyObservations obs;
            obs.entries.push_back({mu, m.overall, -1});
            obs.entries.push_back({nu, coherent_observables(params, eta, nu), -1});
            obs.has_vacuum_gain = true;
            obs.vacuum_gain = params.y0();
            const PhotonNumberDist source =
                photon_distribution(SourceKind::CoherentPoisson, mu, kDefaultNCut);
            LpOptions options;
            options.e0 = params.e0;
            auto rate_fn = [&](const SinglePhotonBounds& b) {
                return gllp_rate(params, m.overall, b).unclamped;
            };
            point.bounds = lp_bounds(obs, source, nullptr, options, rate_fn);
            break;
        }
    }
    point.rate = gllp_rate(params, m.overall, point.bounds);
    return point;
}

namespace {

OptimizedPoint best_on_grid(const std::function<double(double)>& rate_of_mu,
                            double lo, double hi, int coarse, int fine) {
    OptimizedPoint best;
    double step = (hi - lo) / double(coarse - 1);
    for (int i = 0; i < coarse; ++i) {
        const double mu = lo + step * double(i);
        const double r = rate_of_mu(mu);
        if (r > best.rate) {
            best.rate = r;
            best.mu = mu;
        }
    }
    const double rlo = std::max(lo, best.mu - step);
    const double rhi = std::min(hi, best.mu + step);
    for (int i = 0; i < fine; ++i) {
        const double mu = rlo + (rhi - rlo) * double(i) / double(fine - 1);
        const double r = rate_of_mu(mu);
        if (r > best.rate) {
            best.rate = r;
            best.mu = mu;
        }
    }
    return best;
}

}  // namespace

OptimizedPoint coherent_rate_optimized(const ExperimentParams& params,
                                       CoherentEstimator est, double nu,
                                       double distance_km) {
    if (est == CoherentEstimator::NonDecoy) {
        // Without decoy states the multi-photon penalty forces mu down to the
        // channel transmittance; the standard curve fixes mu = eta per point.
        const double mu = transmittance(params, distance_km);
        OptimizedPoint p;
        p.mu = mu;
        p.rate = coherent_rate(params, est, mu, nu, distance_km).rate.rate;
        return p;
    }
    return best_on_grid(
        [&](double mu) {
            return coherent_rate(params, est, mu, nu, distance_km).rate.rate;
        },
        0.01, 1.2, 240, 60);
}

double twoway_rate(const ExperimentParams& params, TwoWayScheme scheme, int n_bsteps,
                   double mu, double distance_km) {
    const double eta = transmittance(params, distance_km);
    const CoherentModel m = coherent_model(params, mu, eta);
    if (m.e1 >= 0.5) return 0.0;
    const double q_mu = m.overall.gain;
    const double e_mu = m.overall.qber;
    const double q = params.q_basis;
    const double f = params.f_ec;
    switch (scheme) {
        case TwoWayScheme::OneLocc: {
            const double r = -f * q_mu * h2(e_mu) + m.q1 * (1.0 - h2(m.e1));
            return std::max(0.0, q * r);
        }
        case TwoWayScheme::BSteps: {
            const double omega = m.q1 / q_mu;
            const double r =
                decoy_b_pipeline(omega, e_mu, m.e1, m.e1, n_bsteps, f);
            return std::max(0.0, q * q_mu * r);
        }
        case TwoWayScheme::Recurrence: {
            TaggedInput in;
            in.omega_v = m.q0 / q_mu;
            in.omega = m.q1 / q_mu;
            in.omega_m = 1.0 - in.omega_v - in.omega;
            if (in.omega_m <= 0.0) return 0.0;
            in.e1 = m.e1;
            in.e_m = (e_mu * q_mu - params.e0 * m.q0 - m.e1 * m.q1) /
                     (q_mu - m.q0 - m.q1);
            const double r = recurrence_residue(in, e_mu, f);
            return std::max(0.0, q * q_mu * r);
        }
    }
    return 0.0;
}

OptimizedPoint twoway_rate_optimized(const ExperimentParams& params, TwoWayScheme scheme,
                                     int n_bsteps, double distance_km) {
    return best_on_grid(
        [&](double mu) {
            return twoway_rate(params, scheme, n_bsteps, mu, distance_km);
        },
        0.01, 1.2, 240, 60);
}

double twoway_reach_km(const ExperimentParams& params, TwoWayScheme scheme,
                       int n_bsteps) {
    auto rate_at = [&](double l) {
        return twoway_rate_optimized(params, scheme, n_bsteps, l).rate;
    };
    double last = 50.0;
    double l = 50.0;
    while (l <= 250.0) {
        if (rate_at(l) > 0.0) {
            last = l;
        } else {
            break;
        }
        l += 2.0;
    }
    double lo = last, hi = last + 2.0;
    for (int i = 0; i < 24; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (rate_at(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// ---------------- triggering PDC ----------------

namespace {

struct TrigClosed {
    double q0 = 0.0, q1 = 0.0, eq0 = 0.0, eq1 = 0.0;
};

TrigClosed trig_closed(const ExperimentParams& params, double mu, double eta) {
    const TriggeredObservables t = triggering_observables(params, mu, eta);
    return {t.q_mu0, t.q_mu1, t.e_mu0 * t.q_mu0, t.e_mu1 * t.q_mu1};
}

double corner(double v, double n, double u, int sign) {
    if (n <= 0.0) return v;
    const double s = std::sqrt(std::max(v * (1.0 - v), 0.0) / n);
    return std::clamp(v + double(sign) * u * s, 0.0, 1.0);
}

// Per-trigger-outcome GLLP combination (each branch clamped at zero).
double trig_rate_from_bounds(const ExperimentParams& params, const TrigClosed& ec,
                             double mu, double y1_low, double e1_high, double q) {
    const double eta_a = params.eta_alice;
    const double f = params.f_ec;
    const double p1 = mu / ((1.0 + mu) * (1.0 + mu));
    const double e1 = std::min(e1_high, 0.5);
    double total = 0.0;
    const double fractions[2] = {1.0 - eta_a, eta_a};
    const double gains[2] = {ec.q0, ec.q1};
    const double egains[2] = {ec.eq0, ec.eq1};
    for (int j = 0; j < 2; ++j) {
        if (gains[j] <= 0.0) continue;
        const double q1j = p1 * fractions[j] * y1_low;
        const double rj = q * (-f * gains[j] * h2(std::min(egains[j] / gains[j], 0.5)) +
                               q1j * (1.0 - h2(e1)));
        total += std::max(0.0, rj);
    }
    return total;
}

double trig_eta0(const ExperimentParams& params, double eta0) {
    return eta0 > 0.0 ? eta0 : params.eta_bob;
}

double ayki_rate(const ExperimentParams& params, double mu, double eta,
                 double n_pulses, double u) {
    const TrigClosed c = trig_closed(params, mu, eta);
    const double eta_a = params.eta_alice;
    // Fluctuation on the error observables only; gains stay exact.
    const double eq0_high = corner(c.eq0, n_pulses, u, +1);
    const double eq1_high = corner(c.eq1, n_pulses, u, +1);
    const double q00_max = eq0_high / params.e0;
    double worst = -1.0;
    for (int s = 0; s <= 20; ++s) {
        const double q00 = q00_max * double(s) / 20.0;
        const double y1 =
            (1.0 + mu) * (1.0 + mu) / mu *
            ((2.0 - eta_a) / (1.0 - eta_a) * (c.q0 - q00) -
             (1.0 - eta_a) / eta_a * c.q1);
        double r = 0.0;
        if (y1 > 0.0) {
            const double q11 = mu * eta_a * y1 / ((1.0 + mu) * (1.0 + mu));
            const double e1 = std::min(eq1_high / q11, 0.5);
            r = trig_rate_from_bounds(params, c, mu, y1, e1, params.q_basis);
        }
        if (worst < 0.0 || r < worst) worst = r;
    }
    return std::max(0.0, worst);
}

double nondecoy_trig_rate(const ExperimentParams& params, double mu, double eta) {
    const TrigClosed c = trig_closed(params, mu, eta);
    const double eta_a = params.eta_alice;
    const double den = (1.0 + eta_a * mu) * (1.0 + mu) * (1.0 + mu);
    const double q10 = c.q0 - (1.0 - eta_a) * (1.0 - eta_a) * mu * mu / den;
    const double q11 = c.q1 - eta_a * (2.0 - eta_a + mu) * mu * mu / den;
    if (q10 + q11 <= 0.0) return 0.0;
    const double e1 = std::min((c.eq0 + c.eq1) / (q10 + q11), 0.5);
    const double f = params.f_ec;
    const double q = params.q_basis;
    double total = 0.0;
    const double gains[2] = {c.q0, c.q1};
    const double egains[2] = {c.eq0, c.eq1};
    const double q1lows[2] = {q10, q11};
    for (int j = 0; j < 2; ++j) {
        if (gains[j] <= 0.0) continue;
        const double rj =
            q * (-f * gains[j] * h2(std::min(egains[j] / gains[j], 0.5)) +
                 std::max(0.0, q1lows[j]) * (1.0 - h2(e1)));
        total += std::max(0.0, rj);
    }
    return total;
}

double weak_trig_rate(const ExperimentParams& params, double mu, double nu, double eta,
                      double n_weak, double u, double q) {
    if (!(mu > nu) || nu <= 0.0) return 0.0;
    const TrigClosed cm = trig_closed(params, mu, eta);
    const TrigClosed cn = trig_closed(params, nu, eta);
    const double eta_a = params.eta_alice;
    const double qn1_low = corner(cn.q1, n_weak, u, -1);
    const double eqn1_high = corner(cn.eq1, n_weak, u, +1);
    const double y1 = ((mu / nu) * std::pow(1.0 + nu, 3.0) * qn1_low -
                       (nu / mu) * std::pow(1.0 + mu, 3.0) * cm.q1) /
                      (eta_a * (mu - nu));
    if (y1 <= 0.0) return 0.0;
    const double e1 = std::min(
        (1.0 + mu) * (1.0 + mu) * cm.eq1 / (mu * eta_a * y1),
        (1.0 + nu) * (1.0 + nu) * eqn1_high / (nu * eta_a * y1));
    return trig_rate_from_bounds(params, cm, mu, y1, e1, q);
}

}  // namespace

double trig_rate(const ExperimentParams& params, TrigScheme scheme, double mu,
                 double nu, double eta0, double loss_db) {
    const double eta = trig_eta0(params, eta0) * std::pow(10.0, -loss_db / 10.0);
    switch (scheme) {
        case TrigScheme::Pnr: {
            const TriggeringComponents c = triggering_components(params, mu, eta);
            const double q1 = mu * c.y1 / ((1.0 + mu) * (1.0 + mu));
            if (c.e1 >= 0.5) return 0.0;
            const double r = q1 * (1.0 - (1.0 + params.f_ec) * h2(c.e1));
            return std::max(0.0, params.q_basis * r);
        }
        case TrigScheme::Infinite: {
            const TrigClosed c = trig_closed(params, mu, eta);
            const TriggeringComponents tc = triggering_components(params, mu, eta);
            return trig_rate_from_bounds(params, c, mu, tc.y1, tc.e1,
                                         params.q_basis);
        }
        case TrigScheme::Ayki:
            return ayki_rate(params, mu, eta, 0.0, 0.0);
        case TrigScheme::NonDecoy:
            return nondecoy_trig_rate(params, mu, eta);
        case TrigScheme::Weak:
            return weak_trig_rate(params, mu, nu, eta, 0.0, 0.0, params.q_basis);
    }
    return 0.0;
}

namespace {

const double kNuGrid[] = {0.005, 0.0075, 0.01, 0.015, 0.02, 0.03,
                          0.05,  0.08,   0.12, 0.2,   0.3};

OptimizedPoint trig_best(const std::function<double(double, double)>& rate_of_mu_nu,
                         bool needs_nu, int coarse) {
    OptimizedPoint best;
    if (!needs_nu) {
        double step = (1.0 - 0.01) / double(coarse - 1);
        for (int i = 0; i < coarse; ++i) {
            const double mu = 0.01 + step * double(i);
            const double r = rate_of_mu_nu(mu, 0.0);
            if (r > best.rate) {
                best.rate = r;
                best.mu = mu;
            }
        }
        const double lo = std::max(0.005, best.mu - 0.02);
        const double hi = std::min(1.0, best.mu + 0.02);
        for (int i = 0; i < 41; ++i) {
            const double mu = lo + (hi - lo) * double(i) / 40.0;
            const double r = rate_of_mu_nu(mu, 0.0);
            if (r > best.rate) {
                best.rate = r;
                best.mu = mu;
            }
        }
        return best;
    }
    for (double nu : kNuGrid) {
        for (int i = 0; i < 39; ++i) {
            const double mu = 0.05 + (1.0 - 0.05) * double(i) / 38.0;
            if (nu >= 0.9 * mu) continue;
            const double r = rate_of_mu_nu(mu, nu);
            if (r > best.rate) {
                best.rate = r;
                best.mu = mu;
            }
        }
    }
    return best;
}

}  // namespace

OptimizedPoint trig_rate_optimized(const ExperimentParams& params, TrigScheme scheme,
                                   double eta0, double loss_db) {
    return trig_best(
        [&](double mu, double nu) {
            return trig_rate(params, scheme, mu, nu, eta0, loss_db);
        },
        scheme == TrigScheme::Weak, 100);
}

double trig_fluct_rate(const ExperimentParams& params, TrigScheme scheme, double mu,
                       double nu, double eta0, double loss_db,
                       const TrigFluctConfig& cfg) {
    const double eta = trig_eta0(params, eta0) * std::pow(10.0, -loss_db / 10.0);
    switch (scheme) {
        case TrigScheme::Infinite: {
            // All error-correction observables at their upper corners; the
            // single-photon quantities stay at model truth.
            TrigClosed c = trig_closed(params, mu, eta);
            const TriggeringComponents tc = triggering_components(params, mu, eta);
            TrigClosed ec;
            ec.q0 = corner(c.q0, cfg.n_pulses, cfg.u_inf, +1);
            ec.eq0 = corner(c.eq0, cfg.n_pulses, cfg.u_inf, +1);
            ec.q1 = corner(c.q1, cfg.n_pulses, cfg.u_inf, +1);
            ec.eq1 = corner(c.eq1, cfg.n_pulses, cfg.u_inf, +1);
            return trig_rate_from_bounds(params, ec, mu, tc.y1, tc.e1,
                                         params.q_basis);
        }
        case TrigScheme::Ayki:
            return ayki_rate(params, mu, eta, cfg.n_pulses, cfg.u_ayki);
        case TrigScheme::Weak: {
            const double fs = cfg.weak_signal_fraction;
            const double n_weak = (1.0 - fs) * cfg.n_pulses;
            return weak_trig_rate(params, mu, nu, eta, n_weak, cfg.u_weak,
                                  0.5 * fs);
        }
        case TrigScheme::Pnr:
        case TrigScheme::NonDecoy:
            return trig_rate(params, scheme, mu, nu, eta0, loss_db);
    }
    return 0.0;
}

OptimizedPoint trig_fluct_rate_optimized(const ExperimentParams& params,
                                         TrigScheme scheme, double eta0, double loss_db,
                                         const TrigFluctConfig& cfg) {
    return trig_best(
        [&](double mu, double nu) {
            return trig_fluct_rate(params, scheme, mu, nu, eta0, loss_db, cfg);
        },
        scheme == TrigScheme::Weak, 100);
}

namespace {

double reach_db_impl(const std::function<double(double)>& rate_at_db, double lo,
                     double hi) {
    double last = lo;
    double db = lo;
    bool seen = false;
    while (db <= hi) {
        if (rate_at_db(db) > 0.0) {
            last = db;
            seen = true;
        } else if (seen) {
            break;
        }
        db += 0.5;
    }
    if (!seen) return 0.0;
    double a = last, b = last + 0.5;
    for (int i = 0; i < 20; ++i) {
        const double mid = 0.5 * (a + b);
        if (rate_at_db(mid) > 0.0) {
            a = mid;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

OptimizedPoint trig_best_coarse(const ExperimentParams& params, TrigScheme scheme,
                                double eta0, double loss_db,
                                const TrigFluctConfig* cfg) {
    auto rate = [&](double mu, double nu) {
        return cfg ? trig_fluct_rate(params, scheme, mu, nu, eta0, loss_db, *cfg)
                   : trig_rate(params, scheme, mu, nu, eta0, loss_db);
    };
    return trig_best(rate, scheme == TrigScheme::Weak, 60);
}

}  // namespace

double trig_reach_db(const ExperimentParams& params, TrigScheme scheme, double eta0) {
    return reach_db_impl(
        [&](double db) {
            return trig_best_coarse(params, scheme, eta0, db, nullptr).rate;
        },
        0.0, 45.0);
}

double trig_fluct_reach_db(const ExperimentParams& params, TrigScheme scheme,
                           double eta0, const TrigFluctConfig& cfg) {
    return reach_db_impl(
        [&](double db) {
            return trig_best_coarse(params, scheme, eta0, db, &cfg).rate;
        },
        0.0, 45.0);
}

double trig_ayki_weak_crossover_db(const ExperimentParams& params, double eta0,
                                   const TrigFluctConfig& cfg) {
    for (double db = 10.0; db <= 40.0; db += 0.25) {
        const double ra = trig_best_coarse(params, TrigScheme::Ayki, eta0, db, &cfg).rate;
        const double rw = trig_best_coarse(params, TrigScheme::Weak, eta0, db, &cfg).rate;
        if (ra >= rw) return db;
    }
    return 40.0;
}

// ---------------- entanglement PDC ----------------

double ent_rate(const ExperimentParams& params, EntScheme scheme, int n_bsteps,
                double lambda, double loss_db, double n_pulses, double log_failure) {
    // Source in the middle: half of the total loss per arm.
    const double eta_arm =
        params.eta_bob * std::pow(10.0, -loss_db / 20.0);
    const ChannelObservables obs = ent_observables(params, lambda, eta_arm, eta_arm);
    if (obs.gain <= 0.0) return 0.0;
    double db = obs.qber;
    double dp = obs.qber;
    if (n_pulses > 0.0) {
        const double n = n_pulses * obs.gain;
        dp = db + ent_epsilon(n, db, log_failure);
    }
    const double q = params.q_basis;
    const double f = params.f_ec;
    switch (scheme) {
        case EntScheme::OneWay:
        case EntScheme::BSteps: {
            const int steps = scheme == EntScheme::OneWay ? 0 : n_bsteps;
            double r_b = 1.0;
            for (int k = 0; k < steps; ++k) {
                const double p_s = db * db + (1.0 - db) * (1.0 - db);
                const double dp_new = 2.0 * dp * (1.0 - db - dp) / p_s;
                db = db * db / p_s;
                dp = dp_new;
                r_b *= p_s / 2.0;
            }
            if (db >= 0.5 || dp >= 0.5) return 0.0;
            return std::max(0.0, q * obs.gain * r_b * (1.0 - f * h2(db) - h2(dp)));
        }
        case EntScheme::Recurrence: {
            // Conservative with finite-size bias: evaluate at the larger of
            // the two error rates.
            const double delta = std::max(db, dp);
            if (delta >= 0.5) return 0.0;
            const double r = recurrence_residue_single(delta, f);
            return std::max(0.0, q * obs.gain * r);
        }
    }
    return 0.0;
}

OptimizedPoint ent_rate_optimized(const ExperimentParams& params, EntScheme scheme,
                                  int n_bsteps, double loss_db, double n_pulses) {
    OptimizedPoint best;
    for (int i = 0; i < 200; ++i) {
        const double lambda = 0.005 + (0.5 - 0.005) * double(i) / 199.0;
        const double r = ent_rate(params, scheme, n_bsteps, lambda, loss_db, n_pulses);
        if (r > best.rate) {
            best.rate = r;
            best.mu = lambda;
        }
    }
    return best;
}

double ent_reach_db(const ExperimentParams& params, EntScheme scheme, int n_bsteps,
                    double rate_cutoff, double n_pulses, double fixed_lambda) {
    auto rate_at = [&](double db) {
        if (fixed_lambda >= 0.0) {
            return ent_rate(params, scheme, n_bsteps, fixed_lambda, db, n_pulses);
        }
        return ent_rate_optimized(params, scheme, n_bsteps, db, n_pulses).rate;
    };
    double last = -1.0;
    for (int i = 0; i <= 1200; ++i) {
        const double db = 0.1 * double(i);
        if (rate_at(db) > rate_cutoff) last = db;
    }
    if (last < 0.0) return 0.0;
    double a = last, b = last + 0.1;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (a + b);
        if (rate_at(mid) > rate_cutoff) {
            a = mid;
        } else {
            b = mid;
        }
    }
    return a;
}

// ---------------- privacy-amplification comparison ----------------

double pa_relative_deviation(double e) {
    const double h = binary_entropy(e);
    if (h <= 0.0) return 0.0;
    const double l = std::log2(1.0 + 4.0 * e - 4.0 * e * e);
    return (h - l) / h;
}

PaComparison pa_comparison(double step) {
    PaComparison out;
    double best_gap = -1.0;
    for (double e = step; e <= 0.5 + 1e-15; e += step) {
        const double ec = std::min(e, 0.5);
        const double gap =
            binary_entropy(ec) - std::log2(1.0 + 4.0 * ec - 4.0 * ec * ec);
        if (gap > best_gap) {
            best_gap = gap;
            out.gap_argmax = ec;
        }
    }
    out.gap_value = best_gap;
    out.rel_deviation_at_argmax = pa_relative_deviation(out.gap_argmax);
    return out;
}

}  // namespace qkd::pipelines
