#include "ltswave/integrators.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace ltswave {

namespace {

// Substep sample time t_n + (k/p) dt, evaluated the same way by every
// variant so they see identical source samples.
double sample_time(long n, int k, double dt, int p) {
    return double(n) * dt + double(k) * (dt / double(p));
}

bool field_finite(const DiscreteField& u) {
    for (double v : u)
        if (!std::isfinite(v)) return false;
    return true;
}

void require_stepable(const LtsState& state) {
    if (state.n < 1)
        throw std::invalid_argument(
            "step: state must be at n >= 1 (run initial_steps first)");
}

// Shared body of the stabilized update; the split variant feeds the whole
// global-step source into w and drops the substep source terms.
LtsState step_impl(const FeSpace& space, const StabilizedCoeffs& cheb,
                   const LtsState& state, const SourceFunction& f,
                   const IntegratorConfig& cfg, bool split,
                   std::vector<DiscreteField>* z_history) {
    require_stepable(state);
    const int p = cfg.p;
    const int n_dofs = space.num_dofs();
    const double tau = cfg.dt / double(p);
    const double tau2 = tau * tau;
    const double bfac = 2.0 * double(p) * double(p) / cheb.omega;

    const DiscreteField& u = state.u_curr;
    DiscreteField f0 = load_vector(space, f, sample_time(state.n, 0, cfg.dt, p));

    DiscreteField w = split ? f0 : map_coarse(space, f0);
    {
        DiscreteField a_coarse = apply_a(space, map_coarse(space, u));
        for (int i = 0; i < n_dofs; ++i) w[i] -= a_coarse[i];
    }

    DiscreteField z_prev = u;  // z_0
    DiscreteField bz = apply_a(space, map_fine(space, u));
    DiscreteField z_curr(n_dofs);
    for (int i = 0; i < n_dofs; ++i) {
        double term = bfac * cheb.beta(0, 0) * (w[i] - bz[i]);
        if (!split) term += cheb.gamma(0) * (space.eta[i] * f0[i]);
        z_curr[i] = u[i] + 0.5 * tau2 * term;
    }
    if (z_history) {
        z_history->clear();
        z_history->push_back(z_prev);
        z_history->push_back(z_curr);
    }

    DiscreteField pair_src, z_next(n_dofs);
    for (int k = 1; k < p; ++k) {
        if (!split) {
            DiscreteField fk =
                load_vector(space, f, sample_time(state.n, k, cfg.dt, p));
            DiscreteField fmk =
                load_vector(space, f, sample_time(state.n, -k, cfg.dt, p));
            pair_src.resize(n_dofs);
            for (int i = 0; i < n_dofs; ++i)
                pair_src[i] = 0.5 * (fk[i] + fmk[i]);
        }
        apply_a(space, map_fine(space, z_curr), bz);
        const double bm1 = cheb.beta(k, -1);
        const double b0 = cheb.beta(k, 0);
        const double g = cheb.gamma(k);
        for (int i = 0; i < n_dofs; ++i) {
            double term = bfac * b0 * (w[i] - bz[i]);
            if (!split) term += g * (space.eta[i] * pair_src[i]);
            z_next[i] =
                (1.0 + bm1) * z_curr[i] - bm1 * z_prev[i] + tau2 * term;
        }
        std::swap(z_prev, z_curr);
        std::swap(z_curr, z_next);
        if (z_history) z_history->push_back(z_curr);
    }

    LtsState next;
    next.u_prev = u;
    next.u_curr.resize(n_dofs);
    for (int i = 0; i < n_dofs; ++i)
        next.u_curr[i] = 2.0 * z_curr[i] - state.u_prev[i];
    next.n = state.n + 1;
    next.t = double(next.n) * cfg.dt;
    return next;
}

}  // namespace

double practical_dt(double h_coarse, double nu, double courant_factor) {
    return std::exp(-nu) * h_coarse * courant_factor;
}

IntegratorConfig normalized(IntegratorConfig cfg) {
    if (cfg.variant == Variant::plain_lf) {
        cfg.p = 1;
        cfg.nu = 0.0;
    }
    return cfg;
}

LtsState initial_steps(const FeSpace& space, const SourceFunction& f,
                       const SpaceFunction& u0, const SpaceFunction& v0,
                       const IntegratorConfig& cfg) {
    if (!(cfg.dt > 0.0))
        throw std::invalid_argument("initial_steps: dt must be positive");
    LtsState state;
    state.u_prev = interpolate(space, u0);
    DiscreteField v = interpolate(space, v0);
    DiscreteField f0 = load_vector(space, f, 0.0);
    DiscreteField au = apply_a(space, state.u_prev);
    state.u_curr.resize(space.num_dofs());
    for (int i = 0; i < space.num_dofs(); ++i)
        state.u_curr[i] = state.u_prev[i] + cfg.dt * v[i] +
                          0.5 * cfg.dt * cfg.dt * (f0[i] - au[i]);
    state.n = 1;
    state.t = cfg.dt;
    return state;
}

LtsState initial_steps_substepped(const FeSpace& space,
                                  const SourceFunction& f,
                                  const SpaceFunction& u0,
                                  const SpaceFunction& v0,
                                  const IntegratorConfig& cfg) {
    if (cfg.p < 1)
        throw std::invalid_argument(
            "initial_steps_substepped: p must be >= 1");
    IntegratorConfig sub;
    sub.p = 1;
    sub.nu = 0.0;
    sub.dt = cfg.dt / double(cfg.p);
    sub.variant = Variant::plain_lf;
    sub.s_layers = cfg.s_layers;
    LtsState state = initial_steps(space, f, u0, v0, sub);
    DiscreteField at_zero = state.u_prev;
    for (int k = 1; k < cfg.p; ++k)
        state = step_plain_lf(space, state, f, sub);
    LtsState out;
    out.u_prev = std::move(at_zero);
    out.u_curr = std::move(state.u_curr);
    out.n = 1;
    out.t = cfg.dt;
    return out;
}

LtsState step_lf_lts(const FeSpace& space, const StabilizedCoeffs& cheb,
                     const LtsState& state, const SourceFunction& f,
                     const IntegratorConfig& cfg,
                     std::vector<DiscreteField>* z_history) {
    return step_impl(space, cheb, state, f, cfg, false, z_history);
}

LtsState step_split_lfc(const FeSpace& space, const StabilizedCoeffs& cheb,
                        const LtsState& state, const SourceFunction& f,
                        const IntegratorConfig& cfg) {
    return step_impl(space, cheb, state, f, cfg, true, nullptr);
}

LtsState step_plain_lf(const FeSpace& space, const LtsState& state,
                       const SourceFunction& f, const IntegratorConfig& cfg) {
    require_stepable(state);
    DiscreteField fs = load_vector(space, f, state.t);
    DiscreteField au = apply_a(space, state.u_curr);
    LtsState next;
    next.u_prev = state.u_curr;
    next.u_curr.resize(space.num_dofs());
    const double dt2 = cfg.dt * cfg.dt;
    for (int i = 0; i < space.num_dofs(); ++i)
        next.u_curr[i] = 2.0 * state.u_curr[i] - state.u_prev[i] +
                         dt2 * (fs[i] - au[i]);
    next.n = state.n + 1;
    next.t = double(next.n) * cfg.dt;
    return next;
}

DiscreteField apply_p_operator(const FeSpace& space,
                               const StabilizedCoeffs& cheb, int k, double dt,
                               const DiscreteField& g) {
    if (k < 0 || k > cheb.p)
        throw std::invalid_argument("apply_p_operator: k must be in [0, p]");
    const int n = int(g.size());
    DiscreteField q_prev(n, 0.0);
    if (k == 0) return q_prev;
    DiscreteField q(n);
    const double c1 = 2.0 / (cheb.delta * cheb.omega);
    for (int i = 0; i < n; ++i) q[i] = c1 * g[i];
    const double dd = dt * dt / cheb.omega;
    DiscreteField bq, q_next(n);
    for (int j = 1; j < k; ++j) {
        apply_a(space, map_fine(space, q), bq);
        const double b0 = cheb.beta(j, 0);
        const double bm1 = cheb.beta(j, -1);
        for (int i = 0; i < n; ++i)
            q_next[i] = 2.0 * b0 * (cheb.delta * q[i] - dd * bq[i]) -
                        bm1 * q_prev[i] + 4.0 / cheb.omega * b0 * g[i];
        std::swap(q_prev, q);
        std::swap(q, q_next);
    }
    return q;
}

DiscreteField apply_q_operator(const FeSpace& space,
                               const StabilizedCoeffs& cheb, int r, int k,
                               double dt, const DiscreteField& g) {
    if (r < 0 || r > cheb.p - 1)
        throw std::invalid_argument("apply_q_operator: r must be in [0, p-1]");
    if (k < r || k > cheb.p)
        throw std::invalid_argument("apply_q_operator: k must be in [r, p]");
    const int n = int(g.size());
    DiscreteField s_prev(n, 0.0);
    if (k == r) return s_prev;
    DiscreteField s(n);
    const double c1 = cheb.gamma(r) / double(cheb.p * cheb.p);
    for (int i = 0; i < n; ++i) s[i] = c1 * g[i];
    const double dd = dt * dt / cheb.omega;
    DiscreteField bs, s_next(n);
    for (int j = r + 1; j < k; ++j) {
        apply_a(space, map_fine(space, s), bs);
        const double b0 = cheb.beta(j, 0);
        const double bm1 = cheb.beta(j, -1);
        for (int i = 0; i < n; ++i)
            s_next[i] = 2.0 * b0 * (cheb.delta * s[i] - dd * bs[i]) -
                        bm1 * s_prev[i];
        std::swap(s_prev, s);
        std::swap(s, s_next);
    }
    return s;
}

DiscreteField two_step_oracle(const FeSpace& space,
                              const StabilizedCoeffs& cheb,
                              const LtsState& state, const SourceFunction& f,
                              const IntegratorConfig& cfg) {
    require_stepable(state);
    const int p = cfg.p;
    const int n = space.num_dofs();
    const double dt = cfg.dt;

    DiscreteField a_op = apply_p_operator(space, cheb, p, dt,
                                          apply_a(space, state.u_curr));

    DiscreteField f0 = load_vector(space, f, sample_time(state.n, 0, dt, p));
    DiscreteField rhs =
        apply_p_operator(space, cheb, p, dt, map_coarse(space, f0));
    {
        DiscreteField q0 =
            apply_q_operator(space, cheb, 0, p, dt, map_fine(space, f0));
        for (int i = 0; i < n; ++i) rhs[i] += q0[i];
    }
    for (int r = 1; r <= p - 1; ++r) {
        DiscreteField fr = load_vector(space, f, sample_time(state.n, r, dt, p));
        DiscreteField fmr =
            load_vector(space, f, sample_time(state.n, -r, dt, p));
        for (int i = 0; i < n; ++i) fr[i] += fmr[i];
        DiscreteField qr =
            apply_q_operator(space, cheb, r, p, dt, map_fine(space, fr));
        for (int i = 0; i < n; ++i) rhs[i] += qr[i];
    }

    DiscreteField u_next(n);
    for (int i = 0; i < n; ++i)
        u_next[i] = 2.0 * state.u_curr[i] - state.u_prev[i] +
                    dt * dt * (rhs[i] - a_op[i]);
    return u_next;
}

double modified_energy(const FeSpace& space, const StabilizedCoeffs& cheb,
                       const IntegratorConfig& cfg,
                       const DiscreteField& u_next,
                       const DiscreteField& u_curr) {
    const int n = space.num_dofs();
    DiscreteField rate(n);
    for (int i = 0; i < n; ++i) rate[i] = (u_next[i] - u_curr[i]) / cfg.dt;
    double kinetic = 0.5 * mass_inner(space, rate, rate);

    DiscreteField au = apply_a(space, u_next);
    if (cfg.variant != Variant::plain_lf)
        au = apply_p_operator(space, cheb, cfg.p, cfg.dt, au);
    return kinetic + 0.5 * mass_inner(space, au, u_curr);
}

RunResult run(const FeSpace& space, const StabilizedCoeffs& cheb,
              const IntegratorConfig& cfg_in, const SourceFunction& f,
              const SpaceFunction& u0, const SpaceFunction& v0, double T,
              const RunOptions& options) {
    IntegratorConfig cfg = normalized(cfg_in);
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("run: dt must be positive");
    if (!(T > 0.0)) throw std::invalid_argument("run: T must be positive");

    RunResult result;
    long steps = std::lround(T / cfg.dt);
    if (steps < 1) steps = 1;
    result.steps = steps;
    result.snapped_T = double(steps) * cfg.dt;

    LtsState state = cfg.variant == Variant::plain_lf
                         ? initial_steps(space, f, u0, v0, cfg)
                         : initial_steps_substepped(space, f, u0, v0, cfg);
    const double norm_limit = 1e12 * (1.0 + mass_norm(space, state.u_prev));
    auto healthy = [&](const DiscreteField& u) {
        return field_finite(u) && mass_norm(space, u) <= norm_limit;
    };

    auto record = [&](const LtsState& st) {
        double e = 0.0;
        if (options.record_energy) {
            e = modified_energy(space, cheb, cfg, st.u_curr, st.u_prev);
            result.energies.push_back(e);
        }
        if (options.observer) options.observer(st, e);
    };

    if (!healthy(state.u_curr)) {
        result.blowup = true;
        result.blowup_step = state.n;
        result.state = std::move(state);
        return result;
    }
    record(state);

    for (long n = 1; n < steps; ++n) {
        LtsState next;
        switch (cfg.variant) {
            case Variant::lf_lts:
                next = step_lf_lts(space, cheb, state, f, cfg);
                break;
            case Variant::split_lfc:
                next = step_split_lfc(space, cheb, state, f, cfg);
                break;
            case Variant::plain_lf:
                next = step_plain_lf(space, state, f, cfg);
                break;
        }
        state = std::move(next);
        if (!healthy(state.u_curr)) {
            result.blowup = true;
            result.blowup_step = state.n;
            break;
        }
        record(state);
    }
    result.state = std::move(state);
    return result;
}

StabilityScan stability_scan(const FeSpace& space,
                             const std::vector<double>& nu_values,
                             const std::vector<double>& dt_grid,
                             const IntegratorConfig& tmpl, double T,
                             unsigned seed) {
    for (size_t j = 1; j < dt_grid.size(); ++j)
        if (!(dt_grid[j] > dt_grid[j - 1]))
            throw std::invalid_argument("stability_scan: dt grid must ascend");

    // One fixed draw of smooth initial data shared by every (nu, dt) run.
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const int modes = 6;
    std::vector<double> cu(modes), cv(modes);
    for (int j = 0; j < modes; ++j) cu[j] = unit(rng);
    for (int j = 0; j < modes; ++j) cv[j] = unit(rng);
    const double x0 = space.mesh.vertices.front();
    const double length = space.mesh.vertices.back() - x0;
    const bool dirichlet = space.boundary == BoundaryKind::dirichlet;
    auto series = [&](const std::vector<double>& c, double x) {
        double acc = 0.0;
        for (int j = 0; j < modes; ++j) {
            double phase = (j + 1) * M_PI * (x - x0) / length;
            acc += c[j] / double(j + 1) *
                   (dirichlet ? std::sin(phase) : std::cos(phase));
        }
        return acc;
    };
    SpaceFunction u0 = [&](double x) { return series(cu, x); };
    SpaceFunction v0 = [&](double x) { return series(cv, x); };
    SourceFunction zero = [](double, double) { return 0.0; };

    StabilityScan scan;
    scan.nu_values = nu_values;
    scan.dt_grid = dt_grid;
    scan.blowup_step.resize(nu_values.size());
    RunOptions quiet;
    quiet.record_energy = false;
    for (size_t i = 0; i < nu_values.size(); ++i) {
        StabilizedCoeffs cheb = coefficients(tmpl.p, nu_values[i]);
        scan.blowup_step[i].resize(dt_grid.size(), -1);
        for (size_t j = 0; j < dt_grid.size(); ++j) {
            IntegratorConfig cfg = tmpl;
            cfg.nu = nu_values[i];
            cfg.dt = dt_grid[j];
            RunResult r = run(space, cheb, cfg, zero, u0, v0, T, quiet);
            scan.blowup_step[i][j] = r.blowup ? r.blowup_step : -1;
        }
    }
    return scan;
}

}  // namespace ltswave
