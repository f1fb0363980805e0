#pragma once

#include <array>

#include "nckk/model.hpp"

namespace nckk::lattice {

/// Parameters of a periodic image sum along the compact circle:
/// images sit at w - 2 pi n R, |n| <= truncation_N.
struct ImageSumSpec {
    double r;                  ///< radial coordinate, > 0
    double w;                  ///< compact coordinate, |w| <= pi R
    double R;                  ///< circle radius, > 0
    int truncation_N = 10000;  ///< brute-force half-width, >= 1
    double eta = 0.0;          ///< screening (Yukawa sums only), >= 0

    void validate() const;
};

/// A truncated sum together with its tail estimate and convergence
/// diagnostics.  `partials` holds the raw sums at N/4, N/2 and N so the
/// monotone approach of the truncation can be checked.
struct SumDiagnostics {
    double raw = 0.0;      ///< sum over |n| <= N, compensated summation
    double tail = 0.0;     ///< analytic tail estimate for |n| > N
    double value = 0.0;    ///< raw + tail
    long N = 0;
    std::array<double, 3> partials{};  ///< raw sums at N/4, N/2, N
};

struct CoulombSums {
    SumDiagnostics s1;  ///< sum 1/(r^2 + (w - 2 pi n R)^2)
    SumDiagnostics s2;  ///< sum 2 r/(r^2 + (w - 2 pi n R)^2)^2
};

/// Brute-force evaluation of both compactified Coulomb sums.
CoulombSums coulomb_sum_bruteforce(const ImageSumSpec& spec);

/// Closed form of s1:  (1/(2 R r)) sinh(r/R) / (cosh(r/R) - cos(w/R)).
/// Evaluated through exp-rescaled ratios, so it neither overflows for
/// r >> R nor loses precision for r, w -> 0.  Rejects r < 1e-12 R.
double coulomb_closed(double r, double w, double R);

/// The two terms whose sum is the closed form of s2, i.e.
/// G + F = sum 2r/(r^2+(w-2 pi n R)^2)^2 = -d/dr coulomb_closed.
/// Note: both carry the opposite sign of the corresponding printed
/// identities, whose overall sign disagrees with the manifestly positive
/// sum; the brute-force oracle fixes the convention used here.
struct GradientTerms {
    double G;  ///< (1/(2 R r^2)) sinh(r/R) / (cosh(r/R) - cos(w/R))
    double F;  ///< (1/(2 R^2 r)) (cosh cos - 1) / (cosh - cos)^2
    double sum() const { return G + F; }
};
GradientTerms coulomb_gradient_closed(double r, double w, double R);

/// Closed form of the second sum (G + F), directly.
double coulomb_s2_closed(double r, double w, double R);

/// Brute-force sum  e^{-eta sqrt(r^2+u_n^2)} / (r^2+u_n^2).  At eta = 0
/// this equals coulomb_sum_bruteforce().s1; for eta > 0 the tail field is
/// an upper-bound estimate.
SumDiagnostics yukawa_sum_bruteforce(const ImageSumSpec& spec);

/// The screened sum's claimed closed form, exactly as printed: identical
/// to coulomb_closed and in particular independent of eta.  The identity
/// holds only at eta = 0; the verification suite quantifies the
/// discrepancy for eta > 0 instead of repairing it.
double yukawa_closed_paper(double r, double w, double R);

/// Closed forms of the two bracketed parts of the D=6 compactified
/// potential, with q_e^2 factored out:
///   V = -q_e^2 * coulomb_part + i theta q_e^2 * theta_part * d_0.
/// coulomb_part equals sum 1/(r^2+u_n^2)^2 and theta_part equals
/// -4 r sum 1/(r^2+u_n^2)^3 = d/dr coulomb_part (theta_part < 0).
struct D6Closed {
    double coulomb_part;
    double theta_part;
};
D6Closed d6_closed(double r, double w, double R);

/// Brute-force counterparts of the two D=6 parts.
struct D6Sums {
    SumDiagnostics coulomb_part;  ///< sum 1/(r^2+u_n^2)^2
    SumDiagnostics theta_part;    ///< -4 r sum 1/(r^2+u_n^2)^3
};
D6Sums d6_sum_bruteforce(const ImageSumSpec& spec);

enum class PotentialKind { coulomb_4d, yukawa_4d, coulomb_6d };

/// Fourier-mode coefficients of the compactified potential,
///   V(r, w) = sum_n (a_n + i theta b_n d_0) e^{i n w / R}.
/// Coefficients depend on |n| only and decay as e^{-|n| r / R}.
struct FourierCoefficients {
    double a;
    double b;
};
FourierCoefficients fourier_coefficients(PotentialKind kind, double r, double R, int n,
                                         const PhysicalParams& params);

/// The alternative printed form of the Coulomb-4d b_n with bracket
/// [1 + |n|] / r^2.  It disagrees with the Fourier quadrature of the
/// closed-form theta term by the factor (1+|n|)/(1+|n| r/R); kept so the
/// verification report can flag the deviation.
double fourier_b_coulomb4d_printed(double r, double R, int n, const PhysicalParams& params);

/// Numerical Fourier coefficients of the closed-form potential by
/// periodic trapezoid quadrature over w in [-pi R, pi R) (spectrally
/// accurate for these analytic kernels).  Oracle for the closed forms.
FourierCoefficients fourier_coefficients_quadrature(PotentialKind kind, double r, double R, int n,
                                                    const PhysicalParams& params, int points = 2048);

/// Static part (coefficient of psi) of the compactified potential, and
/// the coefficient of i theta d_0, both as closed forms.  These are the
/// functions whose Fourier modes the coefficients above reproduce.
double compactified_static_closed(PotentialKind kind, double r, double w,
                                  const PhysicalParams& params);
double compactified_theta_coefficient_closed(PotentialKind kind, double r, double w,
                                             const PhysicalParams& params);

}  // namespace nckk::lattice
