#include "qkd/twoway.hpp"

#include <algorithm>
#include <cmath>

#include "qkd/keyrate.hpp"

namespace qkd {
namespace {

double h2(double x) { return binary_entropy(std::clamp(x, 0.0, 1.0)); }

}  // namespace

bool BellDiag::valid(double tol) const {
    const double sum = q00 + q10 + q11 + q01;
    return q00 >= -tol && q10 >= -tol && q11 >= -tol && q01 >= -tol &&
           std::fabs(sum - 1.0) <= tol;
}

BStepResult b_step(const BellDiag& c, const BellDiag& t) {
    BStepResult r;
    const double p_s = (1.0 - c.delta_b()) * (1.0 - t.delta_b()) +
                       c.delta_b() * t.delta_b();
    r.p_s = p_s;
    if (p_s <= 0.0) {
        r.degenerate = true;
        return r;
    }
    r.survivor.q00 = (c.q00 * t.q00 + c.q01 * t.q01) / p_s;
    r.survivor.q10 = (c.q10 * t.q10 + c.q11 * t.q11) / p_s;
    r.survivor.q11 = (c.q10 * t.q11 + c.q11 * t.q10) / p_s;
    r.survivor.q01 = (c.q00 * t.q01 + c.q01 * t.q00) / p_s;
    return r;
}

BellDiag p_step(const BellDiag& s) {
    BellDiag out;
    out.q00 = s.q00 * s.q00 * s.q00 + 3.0 * s.q00 * s.q00 * s.q01 +
              3.0 * s.q10 * s.q10 * (s.q00 + s.q01) + 6.0 * s.q00 * s.q10 * s.q11;
    out.q10 = s.q10 * s.q10 * s.q10 + 3.0 * s.q10 * s.q10 * s.q11 +
              3.0 * s.q00 * s.q00 * (s.q10 + s.q11) + 6.0 * s.q00 * s.q10 * s.q01;
    out.q11 = s.q11 * s.q11 * s.q11 + 3.0 * s.q10 * s.q11 * s.q11 +
              3.0 * s.q01 * s.q01 * (s.q10 + s.q11) + 6.0 * s.q00 * s.q11 * s.q01;
    out.q01 = s.q01 * s.q01 * s.q01 + 3.0 * s.q00 * s.q01 * s.q01 +
              3.0 * s.q11 * s.q11 * (s.q00 + s.q01) + 6.0 * s.q10 * s.q11 * s.q01;
    const double sum = out.q00 + out.q10 + out.q11 + out.q01;
    if (sum > 0.0) {
        out.q00 /= sum;
        out.q10 /= sum;
        out.q11 /= sum;
        out.q01 /= sum;
    }
    return out;
}

namespace {

// 1 - H2(db) - H2(dp), grouping the term nearer 1/2 into the cancellation-free
// form so margins at the 1e-17 scale survive double precision.
double gl_margin(double db, double dp) {
    db = std::clamp(db, 0.0, 1.0);
    dp = std::clamp(dp, 0.0, 1.0);
    if (std::fabs(0.5 - dp) <= std::fabs(0.5 - db)) {
        return one_minus_binary_entropy(dp) - h2(db);
    }
    return one_minus_binary_entropy(db) - h2(dp);
}

void gl_search(const BellDiag& state, int depth_left, StepSequence& seq, bool root,
               GlRegionResult& best) {
    const double margin = gl_margin(state.delta_b(), state.delta_p());
    if (root || margin > best.best_margin) {
        best.best_margin = margin;
        best.best_sequence = seq;
    }
    if (depth_left == 0) return;
    BStepResult b = b_step(state, state);
    if (!b.degenerate) {
        seq.push_back('B');
        gl_search(b.survivor, depth_left - 1, seq, false, best);
        seq.pop_back();
    }
    seq.push_back('P');
    gl_search(p_step(state), depth_left - 1, seq, false, best);
    seq.pop_back();
}

}  // namespace

GlRegionResult gl_tolerable_region(double delta_b, double delta_p, int max_steps) {
    GlRegionResult result;
    BellDiag start;
    start.q00 = 1.0 - delta_b - delta_p;
    start.q10 = delta_b;
    start.q11 = 0.0;
    start.q01 = delta_p;
    if (start.q00 < 0.0) return result;
    StepSequence seq;
    gl_search(start, max_steps, seq, true, result);
    result.tolerable = result.best_margin > kGlMarginCutoff;
    return result;
}

double decoy_b_pipeline(double omega, double delta, double delta_untagged,
                        double delta_p, int n_bsteps, double f) {
    double om = omega;
    double d = delta;
    double dun = delta_untagged;
    double dp = delta_p;
    double r_b = 1.0;
    for (int k = 0; k < n_bsteps; ++k) {
        const double p_s = d * d + (1.0 - d) * (1.0 - d);
        const double p_s_un = dun * dun + (1.0 - dun) * (1.0 - dun);
        r_b *= p_s / 2.0;
        om = om * om * p_s_un / p_s;
        dp = 2.0 * dp * (1.0 - dun - dp) / p_s_un;
        d = d * d / p_s;
        dun = dun * dun / p_s_un;
    }
    return r_b * (-f * h2(d) + om * (1.0 - h2(std::min(dp, 0.5))));
}

namespace {

// max over a in [0, e1] of D1 (1-e1) H2((e1-a)/(1-e1)) + D2 e1 H2(a/e1);
// the log-derivative is decreasing in a, so a single bisection finds the
// stationary point, with boundary checks at both ends.
double fa_max(double d1, double d2, double e1) {
    if (e1 <= 0.0 || e1 >= 1.0) return 0.0;
    auto value = [&](double a) {
        return d1 * (1.0 - e1) * h2((e1 - a) / (1.0 - e1)) + d2 * e1 * h2(a / e1);
    };
    auto deriv = [&](double a) {
        return -d1 * std::log((1.0 - e1) / (e1 - a) - 1.0) +
               d2 * std::log(e1 / a - 1.0);
    };
    double lo = 1e-15 * e1;
    double hi = e1 * (1.0 - 1e-15);
    if (deriv(lo) < 0.0) return value(lo);
    if (deriv(hi) > 0.0) return value(hi);
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (deriv(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return value(0.5 * (lo + hi));
}

}  // namespace

double recurrence_residue(const TaggedInput& in, double overall_delta, double f) {
    const double d = overall_delta;
    const double p_s = d * d + (1.0 - d) * (1.0 - d);
    // Parity hashing pays the error-correction inefficiency; the post-parity
    // error correction is at the Shannon limit.
    const double b = 0.5 * f * h2(p_s) + 0.5 * p_s * h2(d * d / p_s);
    const double om_v = in.omega_v;
    const double om = in.omega;
    const double om_m = std::max(0.0, in.omega_m);
    const double e1 = in.e1;
    const double e_m = std::clamp(in.e_m, 0.0, 0.5);
    const double c = 0.75 * om_v * om + om * om * (1.0 - e1 + e1 * e1) +
                     0.5 * om * om_m * (2.0 - e1 - e_m + 2.0 * e1 * e_m);
    const double d1 = 0.75 * om_v * om + 0.5 * om * om * (2.0 - e1) +
                      0.5 * om * om_m * (2.0 - e_m);
    const double d2 = 0.75 * om_v * om + 0.5 * om * om * (1.0 + e1) +
                      0.5 * om * om_m * (e_m + 1.0);
    return -b + c - fa_max(d1, d2, e1);
}

double recurrence_residue_single(double delta, double f) {
    const double d = delta;
    if (d <= 0.0) return 1.0;
    if (d >= 0.5) return 0.0;
    const double p_s = d * d + (1.0 - d) * (1.0 - d);
    // K with both pairs at (delta_b, delta_p) = (d, d), minimized over the
    // shared free parameter q11 on a fixed grid.
    const double t1 = 1.0 - d * (1.0 - d);
    const double ca = 0.5 * (1.0 - d) + 0.5 * (1.0 - d) * (1.0 - d);
    const double cb = 0.5 * d + 0.5 * d * d;
    double k_min = 1.0;
    const int points = 201;
    for (int i = 0; i < points; ++i) {
        const double q11 = d * double(i) / double(points - 1);
        const double a = (d - q11) / (1.0 - d);
        const double k = t1 - ca * h2(a) - cb * h2(q11 / d);
        k_min = std::min(k_min, k);
    }
    return -0.5 * f * h2(p_s) - 0.5 * p_s * h2(d * d / p_s) + k_min;
}

double fidelity_phase_bound(double fidelity, double delta_b) {
    const double root_f = std::sqrt(std::clamp(fidelity, 0.0, 1.0));
    auto slack = [&](double dp) {
        return std::sqrt((1.0 - delta_b) * (1.0 - dp)) +
               std::sqrt(delta_b * dp) - root_f;
    };
    if (slack(0.5) >= 0.0) return 0.5;
    double lo = delta_b;
    double hi = 0.5;
    if (slack(lo) < 0.0) return delta_b;
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (slack(mid) >= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace qkd
