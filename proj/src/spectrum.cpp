#include "nckk/spectrum.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nckk/specfun.hpp"

namespace nckk::spectrum {

namespace {

constexpr double kPi = 3.14159265358979323846;

// beta = 2l + 1 + sqrt(1 + 4 lambda_4): the theta-independent denominator
// of the principal branch.
double principal_beta(int l, int ell) { return 2.0 * l + 1.0 + std::sqrt(1.0 + 4.0 * lambda_D(ell, 4)); }

double principal_energy(int n, int l, int ell, double zeta_eff, const PhysicalParams& params) {
    const double beta = principal_beta(l, ell);
    const double h2_2m = params.hbar * params.hbar / (2.0 * params.mass);
    const double n2 = static_cast<double>(n) * n;
    return h2_2m * (n2 / (params.R * params.R) - zeta_eff * zeta_eff / (beta * beta));
}

// Laguerre order at the (first-order) nu_theta^2 belonging to energy E.
// NaN marks the complex-order regime; the energy itself is still defined,
// only the wavefunction machinery refuses it.
double order_a(double nu_theta2) {
    const double disc = 4.0 * nu_theta2 + 1.0;
    return disc >= 0.0 ? std::sqrt(disc) : std::numeric_limits<double>::quiet_NaN();
}

double order_a_or_throw(double nu_theta2) {
    const double a = order_a(nu_theta2);
    if (std::isnan(a))
        throw std::domain_error(
            "spectrum: 4 nu_theta^2 + 1 < 0 gives a complex Laguerre order, outside the "
            "bound-state domain");
    return a;
}

double norm_constant(int l, double a, double zeta_eff) {
    if (!(zeta_eff > 0.0) || std::isnan(a)) return 0.0;
    const double beta = 2.0 * l + 1.0 + a;
    const double ln = (a + 2.0) * std::log(2.0 * zeta_eff) + specfun::log_gamma(l + 1.0) -
                      (a + 3.0) * std::log(beta) - specfun::log_gamma(l + 1.0 + a);
    return std::exp(0.5 * ln);
}

SpectrumResult make_principal(const QuantumNumbers& qn, const PhysicalParams& params,
                              double zeta_eff, double theta_coupling) {
    qn.validate();
    params.validate();
    SpectrumResult res;
    res.qn = qn;
    res.branch = Branch::principal;
    res.zeta = zeta_eff;
    res.E = principal_energy(qn.n, qn.l, qn.ell, zeta_eff, params);
    // nu_theta^2 evaluated at the level's own energy; reduces to lambda_4
    // at theta = 0.
    const double nu_theta2 = lambda_D(qn.ell, 4) - theta_coupling * res.E;
    res.a = order_a(nu_theta2);
    res.norm_const = norm_constant(qn.l, res.a, zeta_eff);
    return res;
}

}  // namespace

SpectrumResult energy_level(const QuantumNumbers& qn, const PhysicalParams& params) {
    return make_principal(qn, params, params.zeta(), params.zeta() * params.theta / params.hbar);
}

SpectrumResult energy_level_yukawa(const QuantumNumbers& qn, const PhysicalParams& params) {
    // u = m V0 / (hbar^2 R) replaces zeta; v = lambda_4 - m V0 E theta/(hbar^3 R)
    // replaces nu_theta^2.  Same Coulomb-type code path otherwise.
    const double u = params.mass * params.V0 / (params.hbar * params.hbar * params.R);
    const double coupling = params.mass * params.V0 * params.theta /
                            (params.hbar * params.hbar * params.hbar * params.R);
    return make_principal(qn, params, u, coupling);
}

SpectrumResult rejected_branch(const QuantumNumbers& qn, const PhysicalParams& params) {
    qn.validate();
    params.validate();
    if (!(params.theta > 0.0))
        throw std::domain_error(
            "rejected_branch: undefined at theta = 0 (the expression diverges as 1/theta)");
    const double zeta = params.zeta();
    if (!(zeta > 0.0)) throw std::domain_error("rejected_branch: requires zeta > 0 (qe2 > 0)");
    const double beta = principal_beta(qn.l, qn.ell);
    const double root = std::sqrt(1.0 + 4.0 * lambda_D(qn.ell, 4));
    SpectrumResult res;
    res.qn = qn;
    res.branch = Branch::rejected;
    res.zeta = zeta;
    res.E = params.hbar * params.hbar / (2.0 * params.mass) * zeta * zeta / (beta * beta) +
            params.hbar * root / (4.0 * params.theta * zeta) * beta;
    res.a = order_a(params.nu_theta2(qn.ell, res.E));
    res.norm_const = 0.0;
    return res;
}

double quantum_number_l(int n, int ell, double E, const PhysicalParams& params) {
    params.validate();
    const double R = params.R;
    const double thresh = static_cast<double>(n) * n - params.alpha2(E) * R * R;
    if (!(thresh > 0.0))
        throw std::domain_error(
            "quantum_number_l: n^2 <= alpha^2 R^2, no bound state below the continuum threshold");
    const double a = order_a_or_throw(params.nu_theta2(ell, E));
    return -0.5 - 0.5 * a + params.zeta() * R / (2.0 * std::sqrt(thresh));
}

double wavefunction_order(const QuantumNumbers& qn, const PhysicalParams& params) {
    const SpectrumResult level = energy_level(qn, params);
    return level.a;
}

double wavefunction(const QuantumNumbers& qn, const PhysicalParams& params, double r) {
    if (r < 0.0) throw std::domain_error("wavefunction: r must be >= 0");
    const SpectrumResult level = energy_level(qn, params);
    if (!(level.zeta > 0.0))
        throw std::domain_error("wavefunction: requires zeta > 0 (qe2 > 0) for a bound state");
    if (std::isnan(level.a))
        throw std::domain_error(
            "wavefunction: 4 nu_theta^2 + 1 < 0 gives a complex Laguerre order, outside the "
            "bound-state domain");
    const double a = level.a;
    const double beta = 2.0 * qn.l + a + 1.0;
    const double z = 2.0 * level.zeta * r / beta;
    // r^{(a-1)/2} handles the r = 0 limit by itself: 0 for a > 1, 1 for
    // a = 1 (pow(0,0) = 1), +inf for the sub-critical a < 1 cusp.
    return level.norm_const * std::pow(r, 0.5 * (a - 1.0)) * std::exp(-0.5 * z) *
           specfun::laguerre(qn.l, a, z);
}

double bessel_mode_order(const PhysicalParams& params, int ell) {
    const double eps2 = 1.0 + lambda_D(ell, 4) - params.nu2();
    if (eps2 < 0.0)
        throw std::domain_error("bessel_mode_order: 1 + lambda_4 < nu^2, order would be complex");
    return std::sqrt(eps2);
}

double bessel_mode_solution(double r, const PhysicalParams& params, int ell, double E, double c,
                            double cprime) {
    if (!(r > 0.0)) throw std::domain_error("bessel_mode_solution: r must be > 0");
    const double a2 = params.alpha2(E);
    if (!(a2 > 0.0))
        throw std::domain_error("bessel_mode_solution: alpha^2 <= 0, oscillatory form undefined");
    const double alpha = std::sqrt(a2);
    const double eps = bessel_mode_order(params, ell);
    double val = 0.0;
    if (c != 0.0) val += c * specfun::bessel_j(eps, alpha * r);
    if (cprime != 0.0) val += cprime * specfun::bessel_y(eps, alpha * r);
    return val / r;
}

namespace {

struct ChiSetup {
    double alpha;
    double eps;
    double src_c, src_cprime;
    double prefactor;  // -2 nu^2 E / hbar

    double psi0(double x) const {
        double v = 0.0;
        if (src_c != 0.0) v += src_c * specfun::bessel_j(eps, alpha * x);
        if (src_cprime != 0.0) v += src_cprime * specfun::bessel_y(eps, alpha * x);
        return v / x;
    }
    double g(double x) const { return prefactor * psi0(x) / (x * x * x); }
    double integrand_y(double x) const { return x * x * specfun::bessel_y(eps, alpha * x) * g(x); }
    double integrand_j(double x) const { return x * x * specfun::bessel_j(eps, alpha * x) * g(x); }
};

ChiSetup make_chi_setup(const PhysicalParams& params, int ell, double E, double src_c,
                        double src_cprime) {
    ChiSetup s;
    const double a2 = params.alpha2(E);
    if (!(a2 > 0.0)) throw std::domain_error("nc_correction_chi: alpha^2 must be > 0");
    s.alpha = std::sqrt(a2);
    s.eps = bessel_mode_order(params, ell);
    s.src_c = src_c;
    s.src_cprime = src_cprime;
    s.prefactor = -2.0 * params.nu2() * E / params.hbar;
    return s;
}

double chi_from_integrals(const ChiSetup& s, double r, double c, double cprime, double I_y,
                          double I_j) {
    double val = 0.0;
    if (c != 0.0) val += c * specfun::bessel_j(s.eps, s.alpha * r);
    if (cprime != 0.0) val += cprime * specfun::bessel_y(s.eps, s.alpha * r);
    val += -kPi / (2.0 * r) * specfun::bessel_j(s.eps, s.alpha * r) * I_y;
    val += kPi / (2.0 * r) * specfun::bessel_y(s.eps, s.alpha * r) * I_j;
    return val;
}

}  // namespace

double nc_correction_chi(double r, const PhysicalParams& params, int ell, double E, double c,
                         double cprime, double src_c, double src_cprime) {
    if (!(r > 0.0)) throw std::domain_error("nc_correction_chi: r must be > 0");
    const ChiSetup s = make_chi_setup(params, ell, E, src_c, src_cprime);
    specfun::QuadratureSpec spec;
    spec.abs_tol = 1e-13;
    spec.rel_tol = 1e-12;
    const double I_y = specfun::integrate_or_throw([&s](double x) { return s.integrand_y(x); }, 1.0, r, spec);
    const double I_j = specfun::integrate_or_throw([&s](double x) { return s.integrand_j(x); }, 1.0, r, spec);
    return chi_from_integrals(s, r, c, cprime, I_y, I_j);
}

Eigen::ArrayXd nc_correction_chi_grid(const Eigen::ArrayXd& r, const PhysicalParams& params,
                                      int ell, double E, double c, double cprime, double src_c,
                                      double src_cprime) {
    const auto n = r.size();
    Eigen::ArrayXd out(n);
    if (n == 0) return out;
    for (Eigen::Index i = 1; i < n; ++i)
        if (!(r[i] > r[i - 1]))
            throw std::invalid_argument("nc_correction_chi_grid: grid must be strictly ascending");
    const ChiSetup s = make_chi_setup(params, ell, E, src_c, src_cprime);
    specfun::QuadratureSpec spec;
    spec.abs_tol = 1e-14;
    spec.rel_tol = 1e-13;
    double I_y = 0.0, I_j = 0.0;
    double prev = 1.0;  // fixed lower limit of the printed construction
    for (Eigen::Index i = 0; i < n; ++i) {
        I_y += specfun::integrate_or_throw([&s](double x) { return s.integrand_y(x); }, prev, r[i], spec);
        I_j += specfun::integrate_or_throw([&s](double x) { return s.integrand_j(x); }, prev, r[i], spec);
        prev = r[i];
        out[i] = chi_from_integrals(s, r[i], c, cprime, I_y, I_j);
    }
    return out;
}

std::vector<SpectrumRow> spectrum_table(const std::vector<int>& n_values,
                                        const std::vector<int>& l_values,
                                        const std::vector<int>& ell_values,
                                        const PhysicalParams& params) {
    std::vector<SpectrumRow> rows;
    rows.reserve(n_values.size() * l_values.size() * ell_values.size());
    for (int n : n_values)
        for (int l : l_values)
            for (int ell : ell_values) {
                const QuantumNumbers qn{n, l, ell};
                const SpectrumResult lvl = energy_level(qn, params);
                SpectrumRow row;
                row.n = n;
                row.l = l;
                row.ell = ell;
                row.E_principal = lvl.E;
                row.a = lvl.a;
                row.zeta = lvl.zeta;
                row.E_rejected = std::numeric_limits<double>::quiet_NaN();
                if (params.theta > 0.0 && params.zeta() > 0.0)
                    row.E_rejected = rejected_branch(qn, params).E;
                rows.push_back(row);
            }
    return rows;
}

}  // namespace nckk::spectrum
