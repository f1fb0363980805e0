#include "nckk/potentials.hpp"

#include <cmath>
#include <stdexcept>

namespace nckk::potentials {

namespace {

void check_r(double r) {
    if (!(r > 0.0)) throw std::domain_error("potentials: r must be > 0");
}

}  // namespace

NCPotentialTerm nc_coulomb_term(double r, int D, const PhysicalParams& params) {
    check_r(r);
    if (D < 3) throw std::domain_error("nc_coulomb: D must be >= 3");
    const double base = -params.qe2 / std::pow(r, D - 2);
    return {base, base * (D - 2) / r};
}

double nc_coulomb(double r, int D, const PhysicalParams& params, double E) {
    return nc_coulomb_term(r, D, params).contracted(params.theta, E, params.hbar);
}

NCPotentialTerm nc_yukawa_term(double r, int D, const PhysicalParams& params) {
    check_r(r);
    if (D < 3) throw std::domain_error("nc_yukawa: D must be >= 3");
    const double base = -params.V0 * std::exp(-params.eta * r) / std::pow(r, D - 2);
    return {base, base * (params.eta * r + D - 2) / r};
}

double nc_yukawa(double r, int D, const PhysicalParams& params, double E) {
    return nc_yukawa_term(r, D, params).contracted(params.theta, E, params.hbar);
}

double yukawa_s_D(double r, int D, int ell, const PhysicalParams& params, double E) {
    check_r(r);
    const double h = params.hbar;
    const double m = params.mass;
    const double screened = params.V0 * std::exp(-params.eta * r) / std::pow(r, D - 2);
    return 2.0 * m * screened * (D - 2 + params.eta * r) * E * params.theta / (h * h * h * r) +
           params.alpha2(E) - lambda_D(ell, D) / (r * r) + 2.0 * m * screened / (h * h);
}

NCPotentialTerm compactified_term(lattice::PotentialKind kind, double r, double w,
                                  const PhysicalParams& params) {
    return {lattice::compactified_static_closed(kind, r, w, params),
            lattice::compactified_theta_coefficient_closed(kind, r, w, params)};
}

double compactified_potential(lattice::PotentialKind kind, double r, double w,
                              const PhysicalParams& params, double E) {
    return compactified_term(kind, r, w, params).contracted(params.theta, E, params.hbar);
}

double fourier_partial_sum(lattice::PotentialKind kind, double r, double w,
                           const PhysicalParams& params, double E, int K) {
    if (K < 0) throw std::invalid_argument("fourier_partial_sum: K must be >= 0");
    double acc = 0.0;
    for (int n = K; n >= 1; --n) {
        const auto c = lattice::fourier_coefficients(kind, r, params.R, n, params);
        acc += 2.0 * std::cos(n * w / params.R) *
               (c.a + params.theta * E / params.hbar * c.b);
    }
    const auto c0 = lattice::fourier_coefficients(kind, r, params.R, 0, params);
    return acc + c0.a + params.theta * E / params.hbar * c0.b;
}

double fourier_tail_bound(lattice::PotentialKind kind, double r, const PhysicalParams& params,
                          double E, int K) {
    // |a_n|, |b_n| decay as e^{-n r/R} times a polynomial in n; bound the
    // tail by twice a geometric series anchored at n = K+1 with the
    // polynomial factor frozen at its n = K+1 value times a safety slope.
    const double q = std::exp(-r / params.R);
    double bound = 0.0;
    const auto c = lattice::fourier_coefficients(kind, r, params.R, K + 1, params);
    const double amp = std::fabs(c.a + params.theta * E / params.hbar * c.b);
    // coefficients grow at most like n^2 (D=6 theta term); majorize
    // n^2 q^n for n >= K+1 by (K+1)^2 q^n sum with ratio correction.
    const double ratio_poly = std::pow((K + 2.0) / (K + 1.0), 2);
    const double qq = q * ratio_poly;
    if (qq >= 1.0) throw std::domain_error("fourier_tail_bound: series not summable at this r/R, K");
    bound = 2.0 * amp / (1.0 - qq);
    return bound;
}

double kg_effective_potential(double r, const QuantumNumbers& qn, const PhysicalParams& params,
                              double E) {
    check_r(r);
    qn.validate();
    const double h = params.hbar;
    const double c = params.c;
    const double wp = params.wp;
    const double R = params.R;
    const double th = params.theta;
    const double lam4 = lambda_D(qn.ell, 4);
    const double x = r / R;

    // coth(r/R) and r/sinh^2(r/R) with underflow-safe large-x behavior.
    double coth, r_over_sinh2;
    if (x > 350.0) {
        coth = 1.0;
        r_over_sinh2 = 0.0;  // 4 r e^{-2x} underflows far earlier than this
    } else {
        const double sh = std::sinh(x);
        coth = std::cosh(x) / sh;
        r_over_sinh2 = r / (sh * sh);
    }

    const double inv_2Rr_sq = 1.0 / (4.0 * R * R * r * r);
    double v = -lam4 / (r * r);
    v += 3.0 * th * wp * E * E / (2.0 * r * r * R * h * h * c);
    v += wp * E / (r * R * h * c);
    v += wp * wp * inv_2Rr_sq * coth;
    v += th * wp * wp * E / h * inv_2Rr_sq * (2.0 / r * coth + r_over_sinh2);
    return v;
}

KGCoefficients kg_coefficients(const QuantumNumbers& qn, const PhysicalParams& params, double E) {
    qn.validate();
    const double h = params.hbar;
    const double c = params.c;
    const double wp = params.wp;
    const double R = params.R;
    const double th = params.theta;
    const double lam4 = lambda_D(qn.ell, 4);
    KGCoefficients b;
    b.b4 = th * wp * wp * E / (2.0 * R * h);
    b.b3 = th * wp * wp * E / (4.0 * h) + wp * wp / (4.0 * R);
    b.b2 = th * wp * wp * E / (6.0 * R * R * R * h) + 3.0 * th * wp * E * E / (2.0 * R * h * h * c) - lam4;
    b.b1 = wp * wp / (12.0 * R * R * R) + wp * E / (R * h * c);
    b.b0 = E * E / (h * h * c * c) - params.mass * params.mass * c * c / (h * h) -
           static_cast<double>(qn.n) * qn.n / (R * R);
    return b;
}

}  // namespace nckk::potentials
