#include "qkd/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "qkd/simplex.hpp"

namespace qkd {
namespace {

SinglePhotonBounds insecure_bounds(const char* method) {
    SinglePhotonBounds b;
    b.method = method;
    b.insecure = true;
    b.y1_low = 0.0;
    b.e1_high = 1.0;
    return b;
}

double poisson_p1(double mu) { return mu * std::exp(-mu); }

}  // namespace

SinglePhotonBounds nondecoy_bounds(const ChannelObservables& obs_signal, double mu) {
    SinglePhotonBounds b;
    b.method = "nondecoy";
    const double multi = 1.0 - (1.0 + mu) * std::exp(-mu);  // P(n >= 2)
    const double q1 = obs_signal.gain - multi;
    if (q1 <= 0.0) return insecure_bounds("nondecoy");
    b.q1_low = q1;
    b.y1_low = q1 / poisson_p1(mu);
    b.e1_high = std::min(1.0, obs_signal.qber * obs_signal.gain / q1);
    return b;
}

SinglePhotonBounds vacuum_weak_bounds(const ChannelObservables& obs_mu,
                                      const ChannelObservables& obs_nu,
                                      double y0_measured, double mu, double nu,
                                      double e0) {
    SinglePhotonBounds b;
    b.method = "vacuum+weak";
    if (!(mu > nu) || nu < 0.0) return insecure_bounds("vacuum+weak");
    const double q_mu = obs_mu.gain;
    const double q_nu = obs_nu.gain;
    const double emu = std::exp(mu);
    const double enu = std::exp(nu);
    double y1 = mu / (mu * nu - nu * nu) *
                (q_nu * enu - q_mu * emu * nu * nu / (mu * mu) -
                 (mu * mu - nu * nu) / (mu * mu) * y0_measured);
    if (y1 <= 0.0) {
        b = insecure_bounds("vacuum+weak");
        b.clamped = true;
        return b;
    }
    if (y1 > 1.0) {
        y1 = 1.0;
        b.clamped = true;
    }
    b.y1_low = y1;
    b.q1_low = y1 * poisson_p1(mu);
    b.q0_low = y0_measured * std::exp(-mu);
    const double eq_nu = obs_nu.qber * obs_nu.gain;
    const double e1 = (eq_nu * enu - e0 * y0_measured) / (y1 * nu);
    b.e1_high = std::clamp(e1, 0.0, 1.0);
    return b;
}

SinglePhotonBounds one_decoy_bounds(const ChannelObservables& obs_mu,
                                    const ChannelObservables& obs_nu, double mu,
                                    double nu) {
    SinglePhotonBounds b = vacuum_weak_bounds(obs_mu, obs_nu, 0.0, mu, nu);
    b.method = "one-decoy";
    b.q0_low = 0.0;
    return b;
}

namespace {

// Shared scaffolding for the LP modes: 2n variables (Y_0..Y_{n-1} then
// x_0..x_{n-1}), x_i <= Y_i, everything in [0, 1].
LpProblem base_problem(int n) {
    LpProblem p;
    p.n_vars = 2 * n;
    p.upper.assign(2 * n, 1.0);
    for (int i = 0; i < n; ++i) {
        std::vector<double> row(2 * n, 0.0);
        row[i] = -1.0;
        row[n + i] = 1.0;
        p.a_ub.push_back(std::move(row));
        p.b_ub.push_back(0.0);
    }
    return p;
}

struct LpSolves {
    bool ok = false;
    double y1_min = 0.0;
    double y1_max = 0.0;
};

LpSolves solve_y1_range(const LpProblem& p, int n, bool need_max) {
    LpSolves s;
    std::vector<double> c(2 * n, 0.0);
    c[1] = 1.0;
    LpResult rmin = lp_minimize(c, p);
    if (!rmin.feasible) return s;
    s.y1_min = std::max(0.0, rmin.objective);
    if (need_max) {
        c[1] = -1.0;
        LpResult rmax = lp_minimize(c, p);
        if (!rmax.feasible) return s;
        s.y1_max = std::min(1.0, -rmax.objective);
    }
    s.ok = true;
    return s;
}

double max_x1(LpProblem p, int n, double y1_fixed) {
    if (y1_fixed >= 0.0) {
        std::vector<double> row(2 * n, 0.0);
        row[1] = 1.0;
        p.a_eq.push_back(std::move(row));
        p.b_eq.push_back(y1_fixed);
    }
    std::vector<double> c(2 * n, 0.0);
    c[n + 1] = -1.0;
    LpResult r = lp_minimize(c, p);
    if (!r.feasible) return -1.0;
    return std::clamp(-r.objective, 0.0, 1.0);
}

}  // namespace

SinglePhotonBounds lp_bounds(const DecoyObservations& obs, const PhotonNumberDist& source,
                             const TriggerResponse* response, const LpOptions& options,
                             const BoundsRateFn& rate_fn) {
    const bool passive = response != nullptr;
    // Active coherent mode keeps n_cut variables (indices 0..n_cut-1); the
    // passive mode follows the trigger response through index n_cut inclusive.
    const int n = passive ? response->n_cut + 1 : options.n_cut;
    LpProblem p = base_problem(n);

    if (!passive) {
        for (const auto& entry : obs.entries) {
            const double mu = entry.intensity;
            std::vector<double> coeff(n);
            double term = 1.0;
            for (int i = 0; i < n; ++i) {
                coeff[i] = term;
                term *= mu / double(i + 1);
            }
            const double scale = std::exp(mu);
            std::vector<double> yrow(2 * n, 0.0), xrow(2 * n, 0.0);
            for (int i = 0; i < n; ++i) {
                yrow[i] = coeff[i];
                xrow[n + i] = coeff[i];
            }
            p.a_eq.push_back(std::move(yrow));
            p.b_eq.push_back(entry.obs.gain * scale);
            p.a_eq.push_back(std::move(xrow));
            p.b_eq.push_back(entry.obs.qber * entry.obs.gain * scale);
        }
        if (obs.has_vacuum_gain) {
            std::vector<double> yrow(2 * n, 0.0), xrow(2 * n, 0.0);
            yrow[0] = 1.0;
            xrow[n] = 1.0;
            p.a_eq.push_back(std::move(yrow));
            p.b_eq.push_back(obs.vacuum_gain);
            p.a_eq.push_back(std::move(xrow));
            p.b_eq.push_back(options.e0 * obs.vacuum_gain);
        }
    } else {
        // Trigger-weighted interval rows; the truncated tail of each outcome's
        // source weight relaxes only the lower side.
        for (const auto& entry : obs.entries) {
            const int j = entry.trigger_j;
            if (j < 0 || j > response->j_max) continue;
            std::vector<double> weight(n, 0.0);
            for (int i = 0; i < n && i < int(source.probs.size()); ++i) {
                const double w =
                    i < int(response->matrix.size()) ? response->matrix[i][j] : 0.0;
                weight[i] = source.probs[i] * w;
            }
            // Total probability of outcome j includes the truncated photon
            // numbers; source.tail bounds their weight from above.
            const double tail = std::max(0.0, source.tail);
            const double q = entry.obs.gain;
            const double eq = entry.obs.qber * entry.obs.gain;
            std::vector<double> yhi(2 * n, 0.0), ylo(2 * n, 0.0);
            std::vector<double> xhi(2 * n, 0.0), xlo(2 * n, 0.0);
            for (int i = 0; i < n; ++i) {
                yhi[i] = weight[i];
                ylo[i] = -weight[i];
                xhi[n + i] = weight[i];
                xlo[n + i] = -weight[i];
            }
            p.a_ub.push_back(std::move(yhi));
            p.b_ub.push_back(q);
            p.a_ub.push_back(std::move(ylo));
            p.b_ub.push_back(-std::max(0.0, q - tail));
            p.a_ub.push_back(std::move(xhi));
            p.b_ub.push_back(eq);
            p.a_ub.push_back(std::move(xlo));
            p.b_ub.push_back(-std::max(0.0, eq - tail));
        }
        // Background errors are random: x_0 = e0 Y_0.
        std::vector<double> row(2 * n, 0.0);
        row[0] = -options.e0;
        row[n] = 1.0;
        p.a_eq.push_back(std::move(row));
        p.b_eq.push_back(0.0);
    }

    const double p1 = 1 < int(source.probs.size()) ? source.probs[1] : 0.0;
    const double p0 = 0 < int(source.probs.size()) ? source.probs[0] : 0.0;

    auto make_bounds = [&](double y1, double x1) {
        SinglePhotonBounds b;
        b.method = passive ? "lp-passive" : "lp";
        b.y1_low = y1;
        b.e1_high = y1 > 0.0 ? std::min(1.0, x1 / y1) : 1.0;
        b.q1_low = y1 * p1;
        if (obs.has_vacuum_gain) b.q0_low = obs.vacuum_gain * p0;
        return b;
    };

    if (!rate_fn) {
        LpSolves s = solve_y1_range(p, n, /*need_max=*/false);
        if (!s.ok) return insecure_bounds(passive ? "lp-passive" : "lp");
        const double x1 = max_x1(p, n, -1.0);
        if (x1 < 0.0) return insecure_bounds(passive ? "lp-passive" : "lp");
        if (s.y1_min <= 0.0) return insecure_bounds(passive ? "lp-passive" : "lp");
        return make_bounds(s.y1_min, x1);
    }

    // Joint worst case: scan the feasible Y1 range, take the largest x1 at
    // each point, and keep the rate-minimizing pair.
    LpSolves s = solve_y1_range(p, n, /*need_max=*/true);
    if (!s.ok) return insecure_bounds(passive ? "lp-passive" : "lp");
    const int points = std::max(2, options.scan_points);
    SinglePhotonBounds worst;
    double worst_rate = 0.0;
    bool have = false;
    for (int k = 0; k < points; ++k) {
        const double y1 =
            s.y1_min + (s.y1_max - s.y1_min) * double(k) / double(points - 1);
        const double x1 = max_x1(p, n, y1);
        if (x1 < 0.0) continue;  // infeasible slice (roundoff at the ends)
        SinglePhotonBounds b = make_bounds(y1, x1);
        const double r = rate_fn(b);
        if (!have || r < worst_rate) {
            have = true;
            worst_rate = r;
            worst = b;
        }
    }
    if (!have) return insecure_bounds(passive ? "lp-passive" : "lp");
    return worst;
}

SinglePhotonBounds trig_weak_bounds(const ChannelObservables& obs_mu_j1,
                                    const ChannelObservables& obs_nu_j1, double mu,
                                    double nu, double eta_a) {
    SinglePhotonBounds b;
    b.method = "trig-weak";
    if (!(mu > nu) || nu <= 0.0 || eta_a <= 0.0) return insecure_bounds("trig-weak");
    const double q_mu1 = obs_mu_j1.gain;
    const double q_nu1 = obs_nu_j1.gain;
    const double num = mu / nu * std::pow(1.0 + nu, 3.0) * q_nu1 -
                       nu / mu * std::pow(1.0 + mu, 3.0) * q_mu1;
    const double y1 = num / (eta_a * (mu - nu));
    if (y1 <= 0.0) {
        b = insecure_bounds("trig-weak");
        b.clamped = true;
        return b;
    }
    b.y1_low = std::min(1.0, y1);
    b.q1_low = mu * eta_a * b.y1_low / std::pow(1.0 + mu, 2.0);
    const double eq_mu1 = obs_mu_j1.qber * obs_mu_j1.gain;
    const double eq_nu1 = obs_nu_j1.qber * obs_nu_j1.gain;
    const double e_from_mu =
        std::pow(1.0 + mu, 2.0) * eq_mu1 / (mu * eta_a * b.y1_low);
    const double e_from_nu =
        std::pow(1.0 + nu, 2.0) * eq_nu1 / (nu * eta_a * b.y1_low);
    b.e1_high = std::clamp(std::min(e_from_mu, e_from_nu), 0.0, 1.0);
    return b;
}

SinglePhotonBounds ayki_bounds(const ChannelObservables& obs_j0,
                               const ChannelObservables& obs_j1, double mu,
                               double eta_a, const BoundsRateFn& rate_fn,
                               int scan_points, double e0) {
    if (eta_a <= 0.0 || eta_a >= 1.0 || mu <= 0.0) return insecure_bounds("ayki");
    const double q_mu0 = obs_j0.gain;
    const double q_mu1 = obs_j1.gain;
    const double eq_mu0 = obs_j0.qber * obs_j0.gain;
    const double eq_mu1 = obs_j1.qber * obs_j1.gain;
    const double prefactor = std::pow(1.0 + mu, 2.0) / mu;
    const double q00_max = eq_mu0 / e0;

    auto bounds_at = [&](double q00) {
        SinglePhotonBounds b;
        b.method = "ayki";
        const double y1 = prefactor * ((2.0 - eta_a) / (1.0 - eta_a) * (q_mu0 - q00) -
                                       (1.0 - eta_a) / eta_a * q_mu1);
        if (y1 <= 0.0) {
            b = insecure_bounds("ayki");
            b.clamped = true;
            return b;
        }
        b.y1_low = std::min(1.0, y1);
        const double q11 = mu * eta_a * b.y1_low / std::pow(1.0 + mu, 2.0);
        b.q1_low = q11;
        b.e1_high = q11 > 0.0 ? std::clamp(eq_mu1 / q11, 0.0, 1.0) : 1.0;
        return b;
    };

    const int points = std::max(2, scan_points);
    SinglePhotonBounds worst;
    double worst_score = 0.0;
    bool have = false;
    for (int k = 0; k < points; ++k) {
        const double q00 = q00_max * double(k) / double(points - 1);
        SinglePhotonBounds b = bounds_at(q00);
        // Insecure slices dominate: the vacuum contribution is unknown, so a
        // value that breaks the bound renders the whole estimate insecure.
        if (b.insecure) return b;
        const double score = rate_fn ? rate_fn(b) : b.y1_low;
        if (!have || score < worst_score) {
            have = true;
            worst_score = score;
            worst = b;
        }
    }
    if (!have) return insecure_bounds("ayki");
    return worst;
}

DeviationMetrics deviation_metrics(const SinglePhotonBounds& bounds, double y1_truth,
                                   double e1_truth) {
    DeviationMetrics m;
    if (y1_truth <= 0.0 || e1_truth <= 0.0) {
        m.defined = false;
        return m;
    }
    m.beta_y1 = (y1_truth - bounds.y1_low) / y1_truth;
    m.beta_e1 = (bounds.e1_high - e1_truth) / e1_truth;
    return m;
}

}  // namespace qkd
