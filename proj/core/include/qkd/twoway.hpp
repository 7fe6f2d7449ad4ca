#pragma once

#include <string>
#include <vector>

namespace qkd {

// Bell-diagonal state (q00, q10, q11, q01); bit error delta_b = q10 + q11,
// phase error delta_p = q11 + q01.
struct BellDiag {
    double q00 = 1.0;
    double q10 = 0.0;
    double q11 = 0.0;
    double q01 = 0.0;

    double delta_b() const { return q10 + q11; }
    double delta_p() const { return q11 + q01; }
    bool valid(double tol = 1e-12) const;
};

// Ordered list over {B, P}, length <= 12.
using StepSequence = std::string;  // e.g. "BBP"

constexpr int kMaxStepDepth = 12;

// Bit-error-detecting primitive. Returns the surviving control state and the
// even-parity (survival) probability.
struct BStepResult {
    BellDiag survivor;
    double p_s = 0.0;
    bool degenerate = false;  // p_s = 0
};
BStepResult b_step(const BellDiag& control, const BellDiag& target);

// Phase-error-reducing primitive acting on three identical inputs.
BellDiag p_step(const BellDiag& state);

// Exhaustive search over {B,P}^(<= max_steps) from (1-db-dp, db, 0, dp):
// tolerable when some sequence makes 1 - H2(db') - H2(dp') > 0 (to within the
// numerical positivity cutoff below).
struct GlRegionResult {
    bool tolerable = false;
    StepSequence best_sequence;
    double best_margin = 0.0;  // 1 - H2(db') - H2(dp') of the best sequence
};
GlRegionResult gl_tolerable_region(double delta_b, double delta_p,
                                   int max_steps = kMaxStepDepth);

// Positivity cutoff for the tolerable-region test. In exact arithmetic the
// margin stays positive for all delta below 1/4 but decays through the
// double-precision noise floor; the cutoff regularizes the boundary at the
// conventional threshold.
constexpr double kGlMarginCutoff = 3e-17;

// Decoy+GLLP+B-step residue: iterates the tagged pipeline maps n_bsteps times
// starting from (Omega, delta, delta_untagged, delta_p) and returns
// r = r_B { -f H2(delta~) + Omega~ [1 - H2(delta_p^untagged~)] }.
// The key rate is q Q_mu r.
double decoy_b_pipeline(double omega, double delta, double delta_untagged,
                        double delta_p, int n_bsteps, double f);

// Input ensemble for the recurrence residue: vacuum, single-photon, and
// multi-photon fractions with their error rates.
struct TaggedInput {
    double omega_v = 0.0;  // vacuum fraction Q0/Q_mu
    double omega = 0.0;    // single-photon fraction Q1/Q_mu
    double omega_m = 0.0;  // multi-photon fraction
    double e1 = 0.0;       // single-photon error rate
    double e_m = 0.0;      // multi-photon error rate
};

// Decoy+GLLP+recurrence residue r >= -B + C - max_a F_a. The error-correction
// inefficiency f applies to the parity-hashing term; the post-parity error
// correction uses Shannon cost (hashing is near-optimal there).
double recurrence_residue(const TaggedInput& input, double overall_delta, double f);

// Single-photon (untagged) recurrence rate residue with delta_b = delta_p =
// delta: r = -f/2 H2(p_s) - p_s/2 H2(delta^2/p_s) + min_{q11} K(q11).
double recurrence_residue_single(double delta, double f);

// Largest delta_p in [delta_b, 1/2] with sqrt(F) <= sqrt((1-db)(1-dp)) +
// sqrt(db dp), found by bisection.
double fidelity_phase_bound(double fidelity, double delta_b);

}  // namespace qkd
