#pragma once

#include <Eigen/Core>
#include <vector>

#include "nckk/model.hpp"

namespace nckk::spectrum {

enum class Branch { principal, rejected };

/// One energy level with the wavefunction parameters attached.
/// The principal branch is independent of theta by construction; the
/// rejected branch diverges as 1/theta and is kept only as a diagnostic.
struct SpectrumResult {
    double E = 0.0;
    Branch branch = Branch::principal;
    double a = 0.0;           ///< Laguerre order sqrt(4 nu_theta^2 + 1)
    double zeta = 0.0;        ///< effective Coulomb coupling nu^2/(2R)
    double norm_const = 0.0;  ///< radial normalization constant (0 if zeta = 0)
    QuantumNumbers qn;
};

/// Principal-branch energy of the compactified Coulomb problem,
///   E = (hbar^2 / 2m) (n^2/R^2 - zeta^2 / (2l + 1 + sqrt(1+4 lambda_4))^2).
SpectrumResult energy_level(const QuantumNumbers& qn, const PhysicalParams& params);

/// Same spectrum for the compactified Yukawa problem through the
/// substitution zeta -> m V_0 / (hbar^2 R); shares the code path above.
SpectrumResult energy_level_yukawa(const QuantumNumbers& qn, const PhysicalParams& params);

/// The second root of the quantum-number relation.  Singular as
/// theta -> 0 and never a physical level; throws std::domain_error at
/// theta = 0.  Result is flagged Branch::rejected.
SpectrumResult rejected_branch(const QuantumNumbers& qn, const PhysicalParams& params);

/// Inverts the spectrum: the (generally non-integer) radial quantum
/// number reproducing energy E in compact mode n with angular momentum
/// ell.  Requires n^2 > alpha^2 R^2 (below the n-th continuum threshold).
double quantum_number_l(int n, int ell, double E, const PhysicalParams& params);

/// Normalized bound-state radial function, integral psi^2 r^2 dr = 1.
double wavefunction(const QuantumNumbers& qn, const PhysicalParams& params, double r);

/// Laguerre order a = sqrt(4 nu_theta^2 + 1) evaluated at the
/// principal-branch energy; throws if 4 nu_theta^2 + 1 < 0.
double wavefunction_order(const QuantumNumbers& qn, const PhysicalParams& params);

/// Order epsilon = sqrt(1 + lambda_4 - nu^2) of the Bessel modes of the
/// non-compactified D=4 problem (requires 1 + lambda_4 >= nu^2).
double bessel_mode_order(const PhysicalParams& params, int ell);

/// theta = 0 scattering-type mode of the non-compactified D=4 problem,
///   psi(r, 0) = (c/r) J_eps(alpha r) + (c'/r) Y_eps(alpha r),
/// with alpha^2 = 2 m E / hbar^2 > 0 required.
double bessel_mode_solution(double r, const PhysicalParams& params, int ell, double E,
                            double c = 1.0, double cprime = 0.0);

/// First-order deformation correction chi~(r) from the Wronskian
/// (variation of parameters) construction: homogeneous amplitudes (c, c')
/// plus the two Bessel-product integrals from the fixed lower limit 1.
/// The source g(x) = -2 nu^2 E psi(x,0) / (hbar x^3) is built from the
/// undeformed mode with amplitudes (src_c, src_cprime), default (1, 0).
/// The corrected wavefunction is psi(r,0) + theta chi~(r).
double nc_correction_chi(double r, const PhysicalParams& params, int ell, double E,
                         double c = 1.0, double cprime = 0.0, double src_c = 1.0,
                         double src_cprime = 0.0);

/// chi~ on an ascending grid with incrementally accumulated integrals
/// (one adaptive panel per segment keeps neighbouring values smooth, so
/// finite-difference residuals of the result are meaningful).
Eigen::ArrayXd nc_correction_chi_grid(const Eigen::ArrayXd& r, const PhysicalParams& params,
                                      int ell, double E, double c = 1.0, double cprime = 0.0,
                                      double src_c = 1.0, double src_cprime = 0.0);

/// Row of the spectrum table export: E_rejected is NaN where the branch
/// is undefined (theta = 0).
struct SpectrumRow {
    int n, l, ell;
    double E_principal;
    double E_rejected;
    double a;
    double zeta;
};
std::vector<SpectrumRow> spectrum_table(const std::vector<int>& n_values,
                                        const std::vector<int>& l_values,
                                        const std::vector<int>& ell_values,
                                        const PhysicalParams& params);

}  // namespace nckk::spectrum
