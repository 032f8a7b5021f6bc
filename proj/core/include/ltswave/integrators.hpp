#pragma once

#include <functional>
#include <vector>

#include "ltswave/chebyshev.hpp"
#include "ltswave/fem.hpp"

namespace ltswave {

enum class Variant { lf_lts, split_lfc, plain_lf };

struct IntegratorConfig {
    int p = 1;             // substeps per global step (forced to 1 for plain_lf)
    double nu = 0.0;       // damping parameter in [0, 1/2]
    double dt = 0.0;       // global time step
    Variant variant = Variant::lf_lts;
    int s_layers = 1;      // transition extent used to assemble the space
};

// Practical step rule dt = e^{-nu} * h_coarse * courant_factor.
double practical_dt(double h_coarse, double nu, double courant_factor = 1.0);

// Returns cfg with the plain-leapfrog constraints applied (p = 1, nu = 0).
IntegratorConfig normalized(IntegratorConfig cfg);

struct LtsState {
    DiscreteField u_prev;  // u at step n-1
    DiscreteField u_curr;  // u at step n
    long n = 0;
    double t = 0.0;        // n * dt
};

// u0/v0 interpolated at dofs; one Taylor step
// u1 = u0 + dt v0 + dt^2/2 (f_S(0) - A u0) brings the state to n = 1.
LtsState initial_steps(const FeSpace& space, const SourceFunction& f,
                       const SpaceFunction& u0, const SpaceFunction& v0,
                       const IntegratorConfig& cfg);

// Start-up pair with u^{(1)} marched by p plain leapfrog substeps of dt/p
// instead of the single Taylor step of dt.  Identical to initial_steps for
// p = 1.  The one-shot start commits an O(dt^3 f_t) error that dominates
// when the source ramps on the dt scale; substepping cuts it by p^2, so
// run() starts the local time-stepping variants this way.
LtsState initial_steps_substepped(const FeSpace& space,
                                  const SourceFunction& f,
                                  const SpaceFunction& u0,
                                  const SpaceFunction& v0,
                                  const IntegratorConfig& cfg);

// One global step of the stabilized substepping update.  With z_history
// non-null the inner states z_0..z_p are copied out (diagnostics/tests).
LtsState step_lf_lts(const FeSpace& space, const StabilizedCoeffs& cheb,
                     const LtsState& state, const SourceFunction& f,
                     const IntegratorConfig& cfg,
                     std::vector<DiscreteField>* z_history = nullptr);

// Same update but the source enters only through the global-step sample:
// w = f_S(t_n) - A map_coarse(u), and no substep source terms.
LtsState step_split_lfc(const FeSpace& space, const StabilizedCoeffs& cheb,
                        const LtsState& state, const SourceFunction& f,
                        const IntegratorConfig& cfg);

// Classic leapfrog u^{n+1} = 2u^n - u^{n-1} + dt^2 (f_S(t_n) - A u^n).
LtsState step_plain_lf(const FeSpace& space, const LtsState& state,
                       const SourceFunction& f, const IntegratorConfig& cfg);

// P_k(B) g and Q_{r,k}(B) g with B = A mapFine, applied through the scalar
// recurrences acting on fields (k+1 operator applications, no dense matrix).
DiscreteField apply_p_operator(const FeSpace& space,
                               const StabilizedCoeffs& cheb, int k, double dt,
                               const DiscreteField& g);
DiscreteField apply_q_operator(const FeSpace& space,
                               const StabilizedCoeffs& cheb, int r, int k,
                               double dt, const DiscreteField& g);

// Independent two-step form of the same update:
//   u^{n+1} = 2u^n - u^{n-1} + dt^2 (R - P_p(B) A u^n)
//   R = P_p(B) mapCoarse f_S(t_n)
//       + sum_{r=-(p-1)}^{p-1} Q_{|r|,p}(B) mapFine f_S(t_n + r dt/p).
DiscreteField two_step_oracle(const FeSpace& space,
                              const StabilizedCoeffs& cheb,
                              const LtsState& state, const SourceFunction& f,
                              const IntegratorConfig& cfg);

// E^{n+1/2} = 1/2 ||(u^{n+1}-u^n)/dt||_T^2 + 1/2 (P_p(B) A u^{n+1}, u^n)_T;
// plain leapfrog uses A itself.  Exactly conserved for f = 0.
double modified_energy(const FeSpace& space, const StabilizedCoeffs& cheb,
                       const IntegratorConfig& cfg,
                       const DiscreteField& u_next,
                       const DiscreteField& u_curr);

struct RunOptions {
    bool record_energy = true;
    // Called after every accepted step (and once for the initial state).
    std::function<void(const LtsState& state, double energy)> observer;
};

struct RunResult {
    LtsState state;                // state at the final step reached
    std::vector<double> energies;  // E^{n+1/2} per step when recorded
    bool blowup = false;
    long blowup_step = -1;
    double snapped_T = 0.0;        // N * dt with N = round(T / dt)
    long steps = 0;                // N
};

// Runs the configured variant to T (snapped to a whole number of steps);
// halts early when a field stops being finite or its lumped norm exceeds
// 1e12 (1 + ||u0||_T).
RunResult run(const FeSpace& space, const StabilizedCoeffs& cheb,
              const IntegratorConfig& cfg, const SourceFunction& f,
              const SpaceFunction& u0, const SpaceFunction& v0, double T,
              const RunOptions& options = {});

struct StabilityScan {
    std::vector<double> nu_values;
    std::vector<double> dt_grid;
    // blowup_step[i][j]: step at which the (nu_values[i], dt_grid[j]) run
    // blew up, or -1 when it stayed stable to T.
    std::vector<std::vector<long>> blowup_step;
};

// Source-free runs from fixed-seed random smooth initial data for every
// (nu, dt) pair.
StabilityScan stability_scan(const FeSpace& space,
                             const std::vector<double>& nu_values,
                             const std::vector<double>& dt_grid,
                             const IntegratorConfig& tmpl, double T,
                             unsigned seed = 20240901u);

}  // namespace ltswave
