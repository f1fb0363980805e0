#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace nckk {

/// Eigenvalue of the Laplace-Beltrami operator on the (D-1)-sphere,
/// lambda_D = ell (ell + D - 2).  Requires D >= 3 and ell >= 0.
double lambda_D(int ell, int D);

/// Physical constants and model couplings in a declared unit system.
/// Defaults are natural units hbar = m = c = 1.
///
/// Conventions recorded here once for the whole library:
///  * Only the space.time components of the deformation tensor are kept,
///    theta^{0j} = theta^j, theta^{ij} = 0, and the radial projection is
///    fixed to vec{r}.vec{theta} = r * theta, so theta enters every formula
///    as a scalar with dimension length*time.
///  * On a stationary state f(t) = exp(-i E t / hbar) the time derivative
///    contracts as i*theta*d_0 -> theta*E/hbar.  All potential evaluators
///    therefore take the energy E as an explicit argument.
///  * The compact-mode label n refers to the eigenvalue -n^2/R^2 of the
///    Laplacian along the circle; as a kinetic contribution it enters the
///    energy with the opposite sign, +hbar^2 n^2 / (2 m R^2).
struct PhysicalParams {
    double hbar = 1.0;   ///< action quantum, > 0
    double mass = 1.0;   ///< particle mass, > 0
    double c = 1.0;      ///< speed of light, > 0
    double qe2 = 1.0;    ///< Coulomb coupling q_e^2
    double V0 = 1.0;     ///< Yukawa strength
    double eta = 1.0;    ///< Yukawa screening, inverse length, >= 0
    double theta = 0.0;  ///< deformation parameter, length*time, >= 0
    double R = 1.0;      ///< compactification radius, > 0
    double wp = 1.0 / 137.0;  ///< dimensionless coupling of the wave-equation sector
    int D = 4;           ///< spatial dimension, >= 3

    /// Throws std::invalid_argument if any invariant is violated.
    void validate() const;

    // Derived couplings are recomputed on demand, never stored.
    double nu2() const { return 2.0 * mass * qe2 / (hbar * hbar); }
    double zeta() const { return nu2() / (2.0 * R); }
    double alpha2(double E) const { return 2.0 * mass * E / (hbar * hbar); }
    /// nu_theta^2 = lambda_4 - zeta E theta / hbar (compactified D=4 problem).
    double nu_theta2(int ell, double E) const {
        return lambda_D(ell, 4) - zeta() * E * theta / hbar;
    }
};

/// Quantum numbers: compact-circle mode n (any sign), radial node count l,
/// orbital angular momentum ell.
struct QuantumNumbers {
    int n = 0;
    int l = 0;
    int ell = 0;

    void validate() const;
};

/// Flat key-value configuration files: one `key = value` per line,
/// `#` starts a comment, blank lines ignored.  Keys match the CLI flag
/// names (hbar, mass, c, qe2, V0, eta, theta, R, wp, D).
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

/// Applies config entries onto params.  Unknown keys or unparsable values
/// throw std::invalid_argument.
void apply_config(PhysicalParams& params, const std::map<std::string, std::string>& kv);

}  // namespace nckk
