#pragma once

#include <Eigen/Core>
#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nckk/model.hpp"

namespace nckk::radial {

/// A radial equation
///   psi'' + (p/r) psi' + Q(r, E) psi = rhs(r),
///   Q(r, E) = energy_scale * E + const_term
///             + sum c_j / r^j  +  E * sum ce_j / r^j  +  W(r),
/// with p = friction_order (3 for the non-compactified D=4 equation,
/// 2 for the compactified ones, D-1 in general).
struct RadialProblem {
    double friction_order = 2.0;
    double energy_scale = 0.0;
    double const_term = 0.0;
    std::vector<std::pair<int, double>> inverse_power_terms;    ///< (j, c_j)
    std::vector<std::pair<int, double>> inverse_power_terms_E;  ///< (j, ce_j), multiplied by E
    std::function<double(double)> extra_term;                   ///< optional W(r)

    double r_min = 1e-4;
    double r_max = 40.0;
    int grid_size = 2000;
    double eig_tol = 1e-10;      ///< absolute tolerance of the eigenvalue search
    double ode_rel_tol = 1e-11;
    double ode_abs_tol = 1e-14;

    void validate() const;
    double coefficient(double r, double E) const;
    /// Coefficient of 1/r^2 in -Q (the centrifugal strength), used by the
    /// series start at the origin.
    double centrifugal(double E) const;
};

/// Substitution u = r^{p/2} psi: removes the friction term, leaving
/// u'' + [Q - (p/2)(p/2 - 1)/r^2] u = 0.  Eigenvalues are untouched.
RadialProblem liouville_normal_form(const RadialProblem& problem);

struct EigenResult {
    double E = 0.0;
    int node_count = -1;
    double residual_norm = 0.0;
    bool converged = false;
    std::vector<std::array<double, 2>> bracket_history;
    std::string message;
};

/// Bound-state search by shooting: bisection on the node count of the
/// outward solution brackets the level, then the Wronskian of the
/// outward/inward solutions at the outermost classical turning point is
/// driven to zero.  Fixed evaluation order, no shared state: bit-stable.
EigenResult shoot_eigenvalue(const RadialProblem& problem, int target_nodes, double E_lo,
                             double E_hi);

struct SampledFunction {
    Eigen::ArrayXd r;
    Eigen::ArrayXd psi;
    Eigen::ArrayXd dpsi;
};

struct ResidualResult {
    double max_abs = 0.0;      ///< max-norm over interior points
    bool grid_adequate = true; ///< false if fewer than ~5 points per oscillation
};

/// Max-norm of the discretized equation applied to samples on a uniform
/// grid (5-point stencils, interior points only).  `rhs`, when given, is
/// subtracted, so inhomogeneous equations can be residual-checked too.
ResidualResult residual(const RadialProblem& problem, const Eigen::ArrayXd& r,
                        const Eigen::ArrayXd& psi, double E,
                        const std::function<double(double)>& rhs = {});

/// Eigenfunction of a converged shoot_eigenvalue run on a uniform grid
/// (outward and inward branches matched at the turning point).
SampledFunction eigenfunction(const RadialProblem& problem, double E, int points = 0);

/// The compactified D=4 problem (2/r friction, zeta/r - nu_theta^2/r^2),
/// set up for mode n and angular momentum ell.  theta enters through the
/// E-dependent 1/r^2 term.
RadialProblem compactified_problem(const PhysicalParams& params, int n, int ell, double r_min,
                                   double r_max);

/// Exploratory integrator for the compactified D=6 radial equation (the
/// 1/r^3 and 1/r^4 attractive terms make the spectrum unbounded below as
/// r_min -> 0, so this never claims eigenvalues).  The equation is taken
/// verbatim from the reduction with its 2/r friction term and the
/// lambda_4 angular eigenvalue, even though six spatial dimensions would
/// naively suggest different bookkeeping for both.
struct D6Result {
    SampledFunction samples;
    bool step_collapse = false;  ///< integrator hit the minimum step near r -> 0
    double min_step = 0.0;
};
D6Result integrate_d6(const PhysicalParams& params, const QuantumNumbers& qn, double E,
                      double psi0, double dpsi0, double r_min, double r_max, int points = 2000);

/// |psi(r_ref)| change when the start radius is halved with the same
/// initial data rule; emitted as a sensitivity diagnostic.
double d6_start_sensitivity(const PhysicalParams& params, const QuantumNumbers& qn, double E,
                            double r_min, double r_ref);

/// Decaying asymptotic solution U e^{-sqrt(-b0) r} / r of the expanded
/// wave-equation sector; requires b0 < 0.
double kg_asymptotic(const PhysicalParams& params, const QuantumNumbers& qn, double E, double r,
                     double U = 1.0);

/// Integrates U'' - 2 sqrt(-b0) U' + sum_{j=1..4} (b_j/r^j) U = 0 from
/// caller-supplied initial data; returns U and U' on a uniform grid.
SampledFunction kg_integrate_U(const PhysicalParams& params, const QuantumNumbers& qn, double E,
                               double r0, double r1, double U0, double dU0, int points = 2000);

}  // namespace nckk::radial
