#include "qkd/keyrate.hpp"

#include <cmath>
#include <stdexcept>

#include "qkd/optimize.hpp"

namespace qkd {

double binary_entropy(double x) {
    if (x < 0.0 || x > 1.0) {
        throw std::domain_error("binary_entropy: argument outside [0,1]");
    }
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double one_minus_binary_entropy(double x) {
    if (x < 0.0 || x > 1.0) {
        throw std::domain_error("one_minus_binary_entropy: argument outside [0,1]");
    }
    // 1 - H2(1/2 - t) = (1/2 + t) log2(1 + 2t) + (1/2 - t) log2(1 - 2t);
    // evaluated via log1p so no cancellation occurs for x near 1/2.
    const double t = 0.5 - x;
    // Endpoints hit 0 * log(0); the product's limit is 0.
    const double pa = 0.5 + t == 0.0 ? 0.0 : (0.5 + t) * std::log1p(2.0 * t);
    const double pb = 0.5 - t == 0.0 ? 0.0 : (0.5 - t) * std::log1p(-2.0 * t);
    return (pa + pb) / std::log(2.0);
}

static KeyRateResult finish(double q, double ec_cost, std::vector<double> pa_terms) {
    KeyRateResult result;
    double sum = ec_cost;
    for (double t : pa_terms) sum += t;
    result.unclamped = q * sum;
    result.ec_cost = q * ec_cost;
    for (double& t : pa_terms) t *= q;
    result.pa_terms = std::move(pa_terms);
    result.rate = std::max(0.0, result.unclamped);
    result.status = result.unclamped > 0.0 ? RateStatus::Positive : RateStatus::ClampedZero;
    return result;
}

KeyRateResult gllp_rate(const ExperimentParams& params, const ChannelObservables& overall,
                        const SinglePhotonBounds& bounds) {
    if (bounds.insecure) {
        KeyRateResult result;
        result.status = RateStatus::Insecure;
        return result;
    }
    const double ec = -params.f_ec * overall.gain * binary_entropy(overall.qber);
    const double e1 = std::min(bounds.e1_high, 1.0);
    const double pa = bounds.q1_low * (1.0 - binary_entropy(std::min(e1, 0.5)));
    // An e1 bound at or above 1/2 yields no credit from the single-photon tag.
    const double credit = e1 >= 0.5 ? 0.0 : pa;
    return finish(params.q_basis, ec, {credit});
}

KeyRateResult gllp_rate(const ExperimentParams& params, const ChannelObservables& overall,
                        const TaggedEnsemble& tags) {
    const double ec = -params.f_ec * overall.gain * binary_entropy(overall.qber);
    std::vector<double> pa;
    pa.reserve(tags.tags.size());
    for (const TagTerm& tag : tags.tags) {
        const double e = std::min(tag.phase_error, 1.0);
        pa.push_back(e >= 0.5 ? 0.0 : tag.gain * (1.0 - binary_entropy(e)));
    }
    return finish(params.q_basis, ec, std::move(pa));
}

KeyRateResult shor_preskill_rate(double q, double gain, double delta_b, double delta_p,
                                 double f) {
    const double ec = -f * binary_entropy(std::min(delta_b, 0.5));
    const double pa = delta_p >= 0.5 ? -1.0 : -binary_entropy(delta_p);
    return finish(q, gain * ec, {gain * (1.0 + pa)});
}

KeyRateResult lutkenhaus_rate(double q, const ChannelObservables& overall, double q1,
                              double e1) {
    const double ec = -overall.gain * binary_entropy(overall.qber);
    const double pa = q1 * (1.0 - std::log2(1.0 + 4.0 * e1 - 4.0 * e1 * e1));
    return finish(q, ec, {pa});
}

KeyRateResult koashi_preskill_rate(const ExperimentParams& params,
                                   const ChannelObservables& obs, double epsilon) {
    const double db = obs.qber;
    const double dp = db + epsilon;
    if (dp >= 0.5 || db >= 0.5) {
        KeyRateResult result;
        result.status = RateStatus::ClampedZero;
        return result;
    }
    const double ec = -params.f_ec * obs.gain * binary_entropy(db);
    const double pa = obs.gain * (1.0 - binary_entropy(dp));
    return finish(params.q_basis, ec, {pa});
}

KeyRateResult triggering_rate(const ExperimentParams& params,
                              const TriggeredObservables& per_trigger,
                              const TriggerTagBounds& bounds) {
    KeyRateResult result;
    const double e1 = std::min(bounds.e1_high, 0.5);
    const double credit = e1 >= 0.5 ? 0.0 : 1.0 - binary_entropy(e1);
    const double q = params.q_basis;
    const double f = params.f_ec;
    double total = 0.0;
    for (int j = 0; j < 2; ++j) {
        const double qmu = j == 0 ? per_trigger.q_mu0 : per_trigger.q_mu1;
        const double emu = j == 0 ? per_trigger.e_mu0 : per_trigger.e_mu1;
        const double q1j = j == 0 ? bounds.q1_j0 : bounds.q1_j1;
        if (qmu <= 0.0) continue;
        const double rj =
            q * (-f * qmu * binary_entropy(std::min(emu, 0.5)) + q1j * credit);
        result.pa_terms.push_back(rj);
        total += std::max(0.0, rj);
    }
    result.rate = total;
    result.unclamped = total;
    result.status = total > 0.0 ? RateStatus::Positive : RateStatus::ClampedZero;
    return result;
}

KeyRateResult pnr_rate(const ExperimentParams& params, double q1, double e1) {
    const double ec = -params.f_ec * q1 * binary_entropy(std::min(e1, 0.5));
    const double pa = e1 >= 0.5 ? 0.0 : q1 * (1.0 - binary_entropy(e1));
    return finish(params.q_basis, ec, {pa});
}

KeyRateResult rate_upper_bound(double q1, double e1) {
    KeyRateResult result;
    result.unclamped = q1 * (1.0 - binary_entropy(std::min(e1, 1.0)));
    result.rate = std::max(0.0, result.unclamped);
    result.status = result.rate > 0.0 ? RateStatus::Positive : RateStatus::ClampedZero;
    return result;
}

DistanceBound distance_upper_bound(const ExperimentParams& params) {
    DistanceBound bound;
    if (params.e_detector >= 0.25) {
        bound.bounded = false;
        return bound;
    }
    const double eta_threshold = 0.25 * params.y0() / (0.25 - params.e_detector);
    if (eta_threshold <= 0.0 || params.beta_db_per_km <= 0.0) {
        bound.bounded = false;
        return bound;
    }
    bound.km = 10.0 / params.beta_db_per_km * std::log10(params.eta_bob / eta_threshold);
    return bound;
}

TimeshiftResult timeshift_analysis(double eta0, double eta1) {
    if (eta0 < 0.0 || eta1 < 0.0 || (eta0 == 0.0 && eta1 == 0.0)) {
        throw std::domain_error("timeshift_analysis: invalid efficiencies");
    }
    TimeshiftResult result;
    result.eve_info = 1.0 - binary_entropy(eta1 / (eta0 + eta1));
    result.mismatch_rate = binary_entropy(eta0 / (eta0 + eta1));
    return result;
}

}  // namespace qkd
