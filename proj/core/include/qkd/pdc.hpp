#pragma once

#include <vector>

#include "qkd/model.hpp"
#include "qkd/params.hpp"

namespace qkd {

enum class TriggerKind { Threshold, PerfectPnr };

// Probability matrix eta_{j|i}: trigger detector reports j photons given i
// incident. Threshold detectors only distinguish vacuum (j=0) from
// non-vacuum (j=1).
struct TriggerResponse {
    TriggerKind kind = TriggerKind::Threshold;
    double eta_a = 1.0;
    int n_cut = 0;
    int j_max = 1;
    // row(i) -> probabilities over j = 0..j_max
    std::vector<std::vector<double>> matrix;
};

// Per-trigger-outcome gains/QBERs of a triggering PDC source, plus the
// model-truth single-photon components.
struct TriggeredObservables {
    double q_mu0 = 0.0;  // gain of non-triggered events
    double q_mu1 = 0.0;  // gain of triggered events
    double e_mu0 = 0.0;  // QBER of non-triggered events
    double e_mu1 = 0.0;  // QBER of triggered events
};

struct TriggeringComponents {
    double q_10 = 0.0;  // single-photon gain, non-triggered
    double q_11 = 0.0;  // single-photon gain, triggered
    double e1 = 0.0;    // single-photon error rate
    double q_00 = 0.0;  // vacuum gain, non-triggered
    double q_01 = 0.0;  // vacuum gain, triggered
    double y1 = 0.0;    // single-photon yield
};

TriggerResponse trigger_response(TriggerKind kind, double eta_a, int n_cut);

// Closed forms for j in {0,1} with a threshold trigger; eta_channel is the
// Bob-side transmittance (detector efficiency times channel loss).
TriggeredObservables triggering_observables(const ExperimentParams& params, double mu,
                                            double eta_channel);

// Truncated-series evaluation of the same quantities (cross-check oracle).
TriggeredObservables triggering_observables_series(const ExperimentParams& params,
                                                   double mu, double eta_channel,
                                                   int n_cut);

TriggeringComponents triggering_components(const ExperimentParams& params, double mu,
                                           double eta_channel);

// PNR trigger: per-pair-number gain Q_i = P(i) Y_i and error e_i.
struct PnrObservables {
    std::vector<double> q;  // per i
    std::vector<double> e;  // per i
};
PnrObservables pnr_observables(const ExperimentParams& params, double mu,
                               double eta_channel, int n_cut);

// Entanglement PDC coincidence gain Q_lambda and QBER E_lambda (closed form).
ChannelObservables ent_observables(const ExperimentParams& params, double lambda,
                                   double eta_a_total, double eta_b_total);

// Series evaluation over n <= n_cut (cross-check oracle).
ChannelObservables ent_observables_series(const ExperimentParams& params, double lambda,
                                          double eta_a_total, double eta_b_total,
                                          int n_cut);

// Per-pair-number yield and error rate of the entangled source.
double ent_yield(const ExperimentParams& params, int n, double eta_a, double eta_b);
double ent_error(const ExperimentParams& params, int n, double eta_a, double eta_b);

}  // namespace qkd
