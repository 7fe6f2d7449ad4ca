#pragma once

#include "qkd/estimators.hpp"
#include "qkd/fluctuation.hpp"
#include "qkd/keyrate.hpp"
#include "qkd/model.hpp"
#include "qkd/optimize.hpp"
#include "qkd/params.hpp"
#include "qkd/pdc.hpp"
#include "qkd/twoway.hpp"

// Scenario-level compositions of the model, estimator, and rate modules:
// complete rate curves for every simulated setup, shared by the CLI and the
// test suites.
namespace qkd::pipelines {

// ---- coherent-source one-way rates at a fiber distance ----
enum class CoherentEstimator { Infinite, NonDecoy, VacuumWeak, OneDecoy, Lp };

struct CoherentPoint {
    ChannelObservables overall;
    SinglePhotonBounds bounds;
    KeyRateResult rate;
};
CoherentPoint coherent_rate(const ExperimentParams& params, CoherentEstimator est,
                            double mu, double nu, double distance_km);

// Best rate over mu on a fixed grid (with local refinement) at one distance.
struct OptimizedPoint {
    double mu = 0.0;
    double rate = 0.0;
};
OptimizedPoint coherent_rate_optimized(const ExperimentParams& params,
                                       CoherentEstimator est, double nu,
                                       double distance_km);

// ---- coherent-source two-way pipelines ----
enum class TwoWayScheme { OneLocc, BSteps, Recurrence };

double twoway_rate(const ExperimentParams& params, TwoWayScheme scheme, int n_bsteps,
                   double mu, double distance_km);
OptimizedPoint twoway_rate_optimized(const ExperimentParams& params, TwoWayScheme scheme,
                                     int n_bsteps, double distance_km);
double twoway_reach_km(const ExperimentParams& params, TwoWayScheme scheme,
                       int n_bsteps);

// ---- triggering PDC (free-space, loss in dB) ----
enum class TrigScheme { Pnr, Infinite, Ayki, NonDecoy, Weak };

// Asymptotic rate at a total Bob-side loss; eta0 is the effective Bob
// detection efficiency at 0 dB.
double trig_rate(const ExperimentParams& params, TrigScheme scheme, double mu,
                 double nu, double eta0, double loss_db);
OptimizedPoint trig_rate_optimized(const ExperimentParams& params, TrigScheme scheme,
                                   double eta0, double loss_db);

// Statistical-fluctuation variants (N pulses). Each scheme carries its own
// confidence width and observable set, calibrated against the simulated
// curves: infinite-decoy fluctuates all observables at u=10; AYKI fluctuates
// the error observables at u=4; the weak-decoy scheme fluctuates the
// decoy-state observables at u=5.5 with a signal fraction fs of the pulses
// (q = fs/2).
struct TrigFluctConfig {
    double n_pulses = 6e9;
    double u_inf = 10.0;
    double u_ayki = 4.0;
    double u_weak = 5.5;
    double weak_signal_fraction = 0.568;
};

double trig_fluct_rate(const ExperimentParams& params, TrigScheme scheme, double mu,
                       double nu, double eta0, double loss_db,
                       const TrigFluctConfig& cfg);
OptimizedPoint trig_fluct_rate_optimized(const ExperimentParams& params,
                                         TrigScheme scheme, double eta0, double loss_db,
                                         const TrigFluctConfig& cfg);
double trig_fluct_reach_db(const ExperimentParams& params, TrigScheme scheme,
                           double eta0, const TrigFluctConfig& cfg);
double trig_reach_db(const ExperimentParams& params, TrigScheme scheme, double eta0);

// Loss (dB) beyond which the AYKI rate overtakes the weak-decoy rate.
double trig_ayki_weak_crossover_db(const ExperimentParams& params, double eta0,
                                   const TrigFluctConfig& cfg);

// ---- entanglement PDC (source in the middle; loss split between arms) ----
enum class EntScheme { OneWay, BSteps, Recurrence };

// Asymptotic rate at total channel loss (loss_db/2 per arm); n_pulses > 0
// additionally biases the phase error by the finite-size epsilon.
double ent_rate(const ExperimentParams& params, EntScheme scheme, int n_bsteps,
                double lambda, double loss_db, double n_pulses = 0.0,
                double log_failure = -50.0);
OptimizedPoint ent_rate_optimized(const ExperimentParams& params, EntScheme scheme,
                                  int n_bsteps, double loss_db, double n_pulses = 0.0);
double ent_reach_db(const ExperimentParams& params, EntScheme scheme, int n_bsteps,
                    double rate_cutoff, double n_pulses = 0.0, double fixed_lambda = -1.0);

// ---- privacy-amplification comparison ----
// Scans e on [step, 1/2] with the given step: location of the largest
// absolute gap H2(e) - log2(1 + 4e - 4e^2), and the relative deviation
// (H2 - L)/H2 at the gap location rounded to the scan grid.
struct PaComparison {
    double gap_argmax = 0.0;
    double gap_value = 0.0;
    double rel_deviation_at_argmax = 0.0;
};
PaComparison pa_comparison(double step = 1e-4);

// Relative deviation (H2(e) - L(e)) / H2(e) at one error rate.
double pa_relative_deviation(double e);

}  // namespace qkd::pipelines
