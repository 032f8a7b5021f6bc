#include "ltswave/chebyshev.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ltswave {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= double(n - k + i) / double(i);
    return r;
}

double double_factorial_odd(int m) {
    // (2m+1)!! = 1 * 3 * 5 * ... * (2m+1)
    double r = 1.0;
    for (int j = 1; j <= 2 * m + 1; j += 2) r *= double(j);
    return r;
}

}  // namespace

double cheb_t(int n, double x) {
    require(n >= 0, "cheb_t: n must be >= 0");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = x;
    for (int i = 1; i < n; ++i) {
        double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double cheb_u(int n, double x) {
    require(n >= -1, "cheb_u: n must be >= -1");
    if (n == -1) return 0.0;
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 2.0 * x;
    for (int i = 1; i < n; ++i) {
        double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double cheb_u_derivative(int n, int m, double x) {
    require(n >= -1, "cheb_u_derivative: n must be >= -1");
    require(m >= 0, "cheb_u_derivative: m must be >= 0");
    if (n == -1) return 0.0;
    // d[j] tracks U_i^{(j)}(x) while i advances; differentiating the
    // recurrence U_{i+1} = 2x U_i - U_{i-1} m times gives
    //   U_{i+1}^{(j)} = 2x U_i^{(j)} + 2j U_i^{(j-1)} - U_{i-1}^{(j)}.
    std::vector<double> prev(m + 1, 0.0);  // U_{-1}^{(j)} = 0
    std::vector<double> cur(m + 1, 0.0);   // U_0 = 1
    cur[0] = 1.0;
    for (int i = 0; i < n; ++i) {
        std::vector<double> next(m + 1, 0.0);
        for (int j = 0; j <= m; ++j) {
            next[j] = 2.0 * x * cur[j] - prev[j];
            if (j > 0) next[j] += 2.0 * j * cur[j - 1];
        }
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur[m];
}

StabilizedCoeffs coefficients(int p, double nu) {
    require(p >= 1 && p <= 64, "coefficients: p must be in [1, 64]");
    require(nu >= 0.0 && nu <= 0.5, "coefficients: nu must be in [0, 1/2]");

    StabilizedCoeffs c;
    c.p = p;
    c.nu = nu;
    c.delta = 1.0 + nu / double(p * p);
    c.omega = 2.0 * p * cheb_u(p - 1, c.delta) / cheb_t(p, c.delta);

    c.beta_table.resize(p);
    c.gamma_table.resize(p);
    for (int k = 0; k < p; ++k) {
        double denom = cheb_t(k + 1, c.delta);
        c.beta_table[k].resize(p - k + 2);
        for (int l = -1; l <= p - k; ++l) {
            double num = (k + l < 0) ? 0.0 : cheb_t(k + l, c.delta);
            c.beta_table[k][l + 1] = num / denom;
        }
        c.gamma_table[k] =
            (p - k) * c.beta(k, p - k) / cheb_u(p - 1 - k, c.delta);
    }
    return c;
}

double eval_p_poly(const StabilizedCoeffs& c, int k, double dt, double x) {
    require(k >= 0 && k <= c.p, "eval_p_poly: k must be in [0, p]");
    if (k == 0) return 0.0;
    double prev = 0.0;
    double cur = 2.0 / (c.delta * c.omega);
    double y = c.delta - dt * dt * x / c.omega;
    for (int j = 1; j < k; ++j) {
        double next = 2.0 * c.beta(j, 0) * y * cur - c.beta(j, -1) * prev +
                      4.0 / c.omega * c.beta(j, 0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double eval_q_poly(const StabilizedCoeffs& c, int r, int k, double dt,
                   double x) {
    require(r >= 0 && r <= c.p - 1, "eval_q_poly: r must be in [0, p-1]");
    require(k >= r && k <= c.p, "eval_q_poly: k must be in [r, p]");
    if (k == r) return 0.0;
    double prev = 0.0;
    double cur = c.gamma(r) / double(c.p * c.p);
    double y = c.delta - dt * dt * x / c.omega;
    for (int j = r + 1; j < k; ++j) {
        double next = 2.0 * c.beta(j, 0) * y * cur - c.beta(j, -1) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

DerivativeBounds derivative_bounds(int n, int m, int p, double nu) {
    require(p >= 1 && p <= 64, "derivative_bounds: p must be in [1, 64]");
    require(nu >= 0.0 && nu <= 0.5,
            "derivative_bounds: nu must be in [0, 1/2]");
    require(m >= 0 && m <= n && n <= p - 1,
            "derivative_bounds: need 0 <= m <= n <= p-1");

    double delta = 1.0 + nu / double(p * p);
    DerivativeBounds b;
    b.value = cheb_u_derivative(n, m, delta);

    double mfact = 1.0;
    for (int j = 2; j <= m; ++j) mfact *= double(j);
    b.lower = std::pow(2.0, m) * mfact * binomial(n + m + 1, n - m) *
              std::pow(2.0 * nu / double(p * p), m);
    b.upper = std::pow(double(n + 1), 2 * m + 1) * std::exp(nu / 2.0) /
              double_factorial_odd(m);
    return b;
}

}  // namespace ltswave
