#pragma once

#include <vector>

#include "qkd/estimators.hpp"
#include "qkd/model.hpp"
#include "qkd/params.hpp"

namespace qkd {

enum class RateStatus { Positive, ClampedZero, Insecure };

struct KeyRateResult {
    double rate = 0.0;       // max(0, unclamped)
    double unclamped = 0.0;  // signed value before clamping
    double ec_cost = 0.0;    // error-correction term (negative contribution)
    std::vector<double> pa_terms;  // privacy-amplification credit per tag
    RateStatus status = RateStatus::ClampedZero;
};

// One (gain, phase error) pair per tag for the multi-tag GLLP form.
struct TagTerm {
    double gain = 0.0;
    double phase_error = 0.0;
};

struct TaggedEnsemble {
    std::vector<TagTerm> tags;
    ChannelObservables overall;
};

// H2(x) with H2(0) = H2(1) = 0; throws std::domain_error outside [0,1].
double binary_entropy(double x);

// Cancellation-free 1 - H2(x), accurate when x is close to 1/2.
double one_minus_binary_entropy(double x);

// R >= q { -f(E) Q H2(E) + sum_g Q_g [1 - H2(e_g)] }.
KeyRateResult gllp_rate(const ExperimentParams& params, const ChannelObservables& overall,
                        const SinglePhotonBounds& bounds);
KeyRateResult gllp_rate(const ExperimentParams& params, const ChannelObservables& overall,
                        const TaggedEnsemble& tags);

// R = q Q [1 - f H2(delta_b) - H2(delta_p)].
KeyRateResult shor_preskill_rate(double q, double gain, double delta_b, double delta_p,
                                 double f);

// R = q { -Q H2(E) + Q1 [1 - log2(1 + 4 e1 - 4 e1^2)] }.
KeyRateResult lutkenhaus_rate(double q, const ChannelObservables& overall, double q1,
                              double e1);

// Entanglement-source rate R = q Q_lambda [1 - f H2(d_b) - H2(d_b + epsilon)].
KeyRateResult koashi_preskill_rate(const ExperimentParams& params,
                                   const ChannelObservables& obs, double epsilon);

// Per-trigger-outcome sum R = sum_j max(0, R_j) with
//   R_j = q { -f Q_{mu,j} H2(E_{mu,j}) + Q_{1,j} [1 - H2(e1)] }.
struct TriggerTagBounds {
    double q1_j0 = 0.0;
    double q1_j1 = 0.0;
    double e1_high = 0.0;
};
KeyRateResult triggering_rate(const ExperimentParams& params,
                              const TriggeredObservables& per_trigger,
                              const TriggerTagBounds& bounds);

// PNR-trigger single-photon rate R = q Q1 [1 - f H2(e1) - H2(e1)].
KeyRateResult pnr_rate(const ExperimentParams& params, double q1, double e1);

// R^U = Q1 [1 - H2(e1)].
KeyRateResult rate_upper_bound(double q1, double e1);

// Largest distance with E_mu below 25%: solves eta(l) = 0.25 Y0 / (0.25 - e_d).
struct DistanceBound {
    double km = 0.0;
    bool bounded = true;  // false when e_d >= 0.25 never pushes E over 25%
};
DistanceBound distance_upper_bound(const ExperimentParams& params);

// Efficiency-mismatch (time-shift) attack:
//   eve_info = 1 - H2(eta1/(eta0+eta1)); mismatch_rate = H2(eta0/(eta0+eta1)).
struct TimeshiftResult {
    double eve_info = 0.0;
    double mismatch_rate = 0.0;
};
TimeshiftResult timeshift_analysis(double eta0, double eta1);

}  // namespace qkd
