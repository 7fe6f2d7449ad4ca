#include "qkd/optimize.hpp"

#include <cmath>

#include "qkd/keyrate.hpp"

namespace qkd {

double bisect_root(const ScalarFn& fn, double lo, double hi, double tol, int max_iter) {
    double flo = fn(lo);
    for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = fn(mid);
        if ((flo <= 0.0) == (fmid <= 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

OptimumResult optimal_mu_coherent(const ExperimentParams& params, double eta,
                                  bool decoy) {
    OptimumResult result;
    if (decoy) {
        const double h = binary_entropy(params.e_detector);
        const double rhs = params.f_ec * h / (1.0 - h);
        if (rhs >= 1.0) {
            result.found = false;
            return result;
        }
        result.argmax = bisect_root(
            [rhs](double mu) { return (1.0 - mu) * std::exp(-mu) - rhs; }, 1e-6, 1.0);
    } else {
        result.argmax = bisect_root(
            [eta](double mu) {
                return -mu * std::exp(-mu) + eta * std::exp(-eta * mu);
            },
            1e-6, 1.0);
    }
    return result;
}

OptimumResult optimal_mu_triggering(double e_d, double f, bool decoy) {
    OptimumResult result;
    const double h = binary_entropy(e_d);
    if (decoy) {
        // (1 - mu)/(1 + mu)^3 = f H2(e_d) / (1 - H2(e_d)); mu = 1 at e_d = 0.
        const double rhs = f * h / (1.0 - h);
        if (rhs >= 1.0) {
            result.found = false;
            return result;
        }
        result.argmax = bisect_root(
            [rhs](double mu) {
                return (1.0 - mu) / std::pow(1.0 + mu, 3.0) - rhs;
            },
            1e-6, 1.0);
    } else {
        // Non-decoy stationarity for mu = x * eta in the small-eta limit:
        //   -f H2(e_d) + 1 - 2x + e_d log2(e_d / (1 - x))
        //     + (1 - e_d - 2x) log2(1 - e_d / (1 - x)) = 0,
        // which reduces to x = 1/2 at e_d = 0.
        if (1.0 - (1.0 + f) * h <= 0.0) {
            result.found = false;
            return result;
        }
        auto cond = [e_d, f, h](double x) {
            double v = -f * h + 1.0 - 2.0 * x;
            if (e_d > 0.0) {
                v += e_d * std::log2(e_d / (1.0 - x));
                v += (1.0 - e_d - 2.0 * x) * std::log2(1.0 - e_d / (1.0 - x));
            }
            return v;
        };
        result.argmax = bisect_root(cond, 1e-6, 0.5);
    }
    return result;
}

OptimumResult optimal_lambda_entanglement(double e_d, double f, EntRegime regime) {
    OptimumResult result;
    if (1.0 - (1.0 + f) * binary_entropy(e_d) <= 0.0) {
        result.found = false;
        return result;
    }
    // Stationarity of the simplified entangled-pair rate in the two detector
    // regimes, with the error-correction efficiency treated as a constant.
    auto cond = [e_d, f, regime](double lam) {
        if (regime == EntRegime::EtaAOne) {
            const double e = (2.0 * e_d + lam) / (2.0 + 2.0 * lam);
            const double base = 1.0 - (1.0 + f) * binary_entropy(e);
            const double slope = lam * (1.0 + f) * (1.0 - 2.0 * e_d) /
                                 (2.0 * (1.0 + lam) * (1.0 + lam));
            return base - slope * std::log2((1.0 - e) / e);
        }
        const double e = (e_d + lam + e_d * lam) / (1.0 + 3.0 * lam);
        const double base = 1.0 - (1.0 + f) * binary_entropy(e);
        const double slope =
            lam * (1.0 + f) * (1.0 - 2.0 * e_d) / (1.0 + 3.0 * lam);
        return (1.0 + 6.0 * lam) * base - slope * std::log2((1.0 - e) / e);
    };
    // Positive at lambda -> 0 and negative once the QBER nears 1/2; bracket the
    // sign change before bisecting.
    double hi = 1e-3;
    while (hi < 64.0 && cond(hi) > 0.0) hi *= 2.0;
    if (cond(hi) > 0.0) {
        result.found = false;
        return result;
    }
    result.argmax = bisect_root(cond, 1e-6, hi);
    return result;
}

OptimumResult maximize_scalar(const ScalarFn& fn, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = fn(c), fd = fn(d);
    while (b - a > tol) {
        if (fc >= fd) {  // keep the left interval on ties (leftmost argmax)
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = fn(d);
        }
    }
    OptimumResult result;
    result.argmax = 0.5 * (a + b);
    result.value = fn(result.argmax);
    // A constant function collapses toward the midpoint; snap to the left
    // endpoint when it is at least as good.
    if (fn(lo) >= result.value) {
        result.argmax = lo;
        result.value = fn(lo);
    }
    return result;
}

ReachResult max_reach(const ScalarFn& rate_of_axis, double axis_lo, double axis_hi,
                      double coarse_step, double cutoff, double resolution) {
    ReachResult result;
    double last_positive = axis_lo;
    bool seen_positive = false;
    double axis = axis_lo;
    while (axis <= axis_hi) {
        if (rate_of_axis(axis) > cutoff) {
            last_positive = axis;
            seen_positive = true;
        } else if (seen_positive) {
            break;
        }
        axis += coarse_step;
    }
    if (!seen_positive) {
        result.positive_somewhere = false;
        return result;
    }
    double lo = last_positive;
    double hi = std::min(axis_hi, last_positive + coarse_step);
    while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        if (rate_of_axis(mid) > cutoff) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    result.reach = 0.5 * (lo + hi);
    return result;
}

}  // namespace qkd
