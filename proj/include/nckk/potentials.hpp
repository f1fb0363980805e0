#pragma once

#include "nckk/lattice.hpp"
#include "nckk/model.hpp"

namespace nckk::potentials {

/// First-order deformation split of a potential:
///   V = static_part + i theta time_derivative_part d_0,
/// which contracts on a stationary state of energy E to
///   V_eff = static_part + theta (E/hbar) time_derivative_part.
struct NCPotentialTerm {
    double static_part;
    double time_derivative_part;

    double contracted(double theta, double E, double hbar) const {
        return static_part + theta * E / hbar * time_derivative_part;
    }
};

/// Deformed Coulomb potential -q_e^2 / r_nc^{D-2} at first order:
/// static -q_e^2/r^{D-2}, theta coefficient -(D-2) q_e^2 / r^{D-1}.
NCPotentialTerm nc_coulomb_term(double r, int D, const PhysicalParams& params);
double nc_coulomb(double r, int D, const PhysicalParams& params, double E);

/// Deformed Yukawa potential -V_0 e^{-eta r} / r_nc^{D-2}; the theta
/// coefficient carries the extra screening factor (eta r + D - 2).
NCPotentialTerm nc_yukawa_term(double r, int D, const PhysicalParams& params);
double nc_yukawa(double r, int D, const PhysicalParams& params, double E);

/// Radial coefficient function s_D(r) of the deformed Yukawa equation
///   psi'' + ((D-1)/r) psi' + s_D(r) psi = 0.
double yukawa_s_D(double r, int D, int ell, const PhysicalParams& params, double E);

/// Compactified potentials at a point (r, w), split and contracted forms.
/// Built from the lattice closed forms; Fourier partial sums are available
/// through fourier_partial_sum for cross-checks.
NCPotentialTerm compactified_term(lattice::PotentialKind kind, double r, double w,
                                  const PhysicalParams& params);
double compactified_potential(lattice::PotentialKind kind, double r, double w,
                              const PhysicalParams& params, double E);

/// Partial Fourier reconstruction sum_{|n|<=K} (a_n + i theta b_n d_0)
/// e^{i n w/R}, contracted with E.  Converges to compactified_potential
/// with the geometric tail bound 2 sum_{n>K} |a_n + theta E b_n / hbar|.
double fourier_partial_sum(lattice::PotentialKind kind, double r, double w,
                           const PhysicalParams& params, double E, int K);
double fourier_tail_bound(lattice::PotentialKind kind, double r,
                          const PhysicalParams& params, double E, int K);

/// Effective potential of the compactified wave-equation sector, exactly
/// as printed (note the theta bracket mixes 2 coth(r/R)/r with
/// r/sinh^2(r/R)).  Independent of mass and of the compact mode number.
double kg_effective_potential(double r, const QuantumNumbers& qn, const PhysicalParams& params,
                              double E);

/// Coefficients of the small-r expanded radial equation
///   Psi'' + (2/r) Psi' + sum_{j=0..4} (b_j / r^j) Psi = 0.
struct KGCoefficients {
    double b0, b1, b2, b3, b4;
};
KGCoefficients kg_coefficients(const QuantumNumbers& qn, const PhysicalParams& params, double E);

}  // namespace nckk::potentials
