#pragma once

#include <vector>

namespace ltswave {

// Chebyshev polynomial of the first kind, T_n(x), n >= 0.
double cheb_t(int n, double x);

// Chebyshev polynomial of the second kind, U_n(x), n >= -1 (U_{-1} = 0).
double cheb_u(int n, double x);

// m-th derivative of U_n at x; m = 0 returns U_n(x) itself.
double cheb_u_derivative(int n, int m, double x);

// Coefficient tables for the damped Chebyshev substep update with p substeps
// and damping parameter nu:
//   delta     = 1 + nu/p^2
//   omega     = 2 T_p'(delta) / T_p(delta)
//   beta(k,l) = T_{k+l}(delta) / T_{k+1}(delta),   0 <= k < p, -1 <= l <= p-k
//   gamma(k)  = (p-k) beta(k, p-k) / U_{p-1-k}(delta)
// For nu = 0 all beta and gamma entries equal 1, delta = 1 and omega = 2 p^2.
struct StabilizedCoeffs {
    int p = 1;
    double nu = 0.0;
    double delta = 1.0;
    double omega = 2.0;
    std::vector<std::vector<double>> beta_table;  // beta_table[k][l+1]
    std::vector<double> gamma_table;              // gamma_table[k]

    double beta(int k, int l) const { return beta_table[k][l + 1]; }
    double gamma(int k) const { return gamma_table[k]; }
};

// Builds all tables for 1 <= p <= 64 and nu in [0, 1/2]; throws
// std::invalid_argument otherwise.
StabilizedCoeffs coefficients(int p, double nu);

// Value of the degree-(k-1) stability polynomial P^{dt}_k at x, defined by
//   P_0 = 0,  P_1 = 2/(delta*omega),
//   P_{k+1} = 2 beta(k,0) (delta - dt^2 x / omega) P_k - beta(k,-1) P_{k-1}
//             + (4/omega) beta(k,0).
// Requires 0 <= k <= p.
double eval_p_poly(const StabilizedCoeffs& c, int k, double dt, double x);

// Value of the source-weight polynomial Q^{dt}_{r,k} at x, defined by
//   Q_{r,r} = 0,  Q_{r,r+1} = gamma(r)/p^2,
//   Q_{r,k+1} = 2 beta(k,0) (delta - dt^2 x / omega) Q_{r,k}
//               - beta(k,-1) Q_{r,k-1}.
// Requires 0 <= r <= p-1 and r <= k <= p.
double eval_q_poly(const StabilizedCoeffs& c, int r, int k, double dt, double x);

// Exact value of U_n^{(m)}(1 + nu/p^2) together with the closed-form lower and
// upper estimates
//   lower = 2^m m! binom(n+m+1, n-m) (2 nu / p^2)^m
//   upper = (n+1)^{2m+1} e^{nu/2} / (2m+1)!!
// Requires p >= 1, 0 <= m <= n <= p-1, nu in [0, 1/2].
struct DerivativeBounds {
    double value = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};
DerivativeBounds derivative_bounds(int n, int m, int p, double nu);

}  // namespace ltswave
