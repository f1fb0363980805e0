#pragma once

#include <Eigen/Core>
#include <functional>

namespace nckk::specfun {

/// Bessel functions of the first and second kind together with their
/// derivatives, all at the same (nu, x).
struct BesselJY {
    double j;   ///< J_nu(x)
    double y;   ///< Y_nu(x)
    double jp;  ///< J_nu'(x)
    double yp;  ///< Y_nu'(x)
};

/// J_nu, Y_nu and derivatives for real order nu >= 0 and x > 0.
/// Steed's continued-fraction method with Temme's series below x = 2;
/// derivatives come from the same recurrences, not finite differences.
BesselJY bessel_jy(double nu, double x);

/// J_nu(x) for nu >= 0.  x = 0 is allowed and returns the limit
/// (1 for nu = 0, 0 otherwise).  Rejects negative nu and non-finite x.
double bessel_j(double nu, double x);

/// Y_nu(x) for nu >= 0, x > 0 (singular at the origin, x <= 0 rejected).
double bessel_y(double nu, double x);

double bessel_j_derivative(double nu, double x);
double bessel_y_derivative(double nu, double x);

/// Generalized Laguerre polynomial L_l^a(z) by the three-term recurrence
/// in l.  Requires l >= 0 and a > -1.
double laguerre(int l, double a, double z);

/// ln Gamma(x) for x > 0 (Lanczos approximation, relative error well
/// below 1e-12 on the positive axis).
double log_gamma(double x);

enum class QuadratureKind {
    adaptive_finite,          ///< adaptive Gauss-Kronrod 7-15 on a finite interval
    gauss_laguerre,           ///< fixed rule with weight z^alpha e^-z on [0, inf)
    truncated_semi_infinite,  ///< map x = a + t/(1-t), then adaptive on [0, 1)
};

struct QuadratureSpec {
    QuadratureKind kind = QuadratureKind::adaptive_finite;
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 4000;
    int node_count = 64;          ///< gauss_laguerre only
    double gl_alpha = 0.0;        ///< gauss_laguerre weight exponent z^alpha

    void validate() const;
};

struct IntegralResult {
    double value = 0.0;
    double error_bound = 0.0;
    bool converged = false;
    int subdivisions = 0;
};

/// Integral of f over the finite interval [a, b] to the requested tolerance.
/// On non-convergence the result carries converged = false and the partial
/// estimate; nothing is thrown.
IntegralResult integrate(const std::function<double(double)>& f, double a, double b,
                         const QuadratureSpec& spec = {});

/// Integral of f over [a, inf).  Dispatches on spec.kind: the default
/// truncated_semi_infinite maps onto [0, 1) and integrates adaptively
/// (safe for oscillatory integrands); gauss_laguerre applies the fixed
/// rule to f directly, i.e. computes  integral z^alpha e^-z f(z) dz  with
/// nodes shifted by a.
IntegralResult integrate_semi_infinite(const std::function<double(double)>& f, double a,
                                       const QuadratureSpec& spec = {});

/// Throwing convenience wrapper (std::runtime_error on non-convergence).
double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          const QuadratureSpec& spec = {});

/// Nodes and weights of the n-point generalized Gauss-Laguerre rule,
///   integral_0^inf z^alpha e^-z g(z) dz  ~=  sum_i w_i g(z_i),
/// from the Golub-Welsch symmetric tridiagonal eigenproblem.
struct GaussLaguerreRule {
    Eigen::ArrayXd nodes;
    Eigen::ArrayXd weights;
};
GaussLaguerreRule gauss_laguerre_rule(int n, double alpha = 0.0);

}  // namespace nckk::specfun
