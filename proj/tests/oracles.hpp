#pragma once

// Test-side oracles: independent evaluation routes used to pin expected
// values.  These deliberately avoid the library's own algorithms (Steed's
// method, Lanczos, closed-form sums) so that agreement is evidence.

#include <cmath>
#include <stdexcept>

namespace oracles {

/// Ascending power series of J_nu (reliable in double up to x ~ 10).
inline double bessel_j_series(double nu, double x) {
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    const double t = 0.25 * x * x;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 0; k < 400; ++k) {
        const double ln_term = (nu + 2.0 * k) * std::log(0.5 * x) - std::lgamma(k + 1.0) -
                               std::lgamma(nu + k + 1.0);
        const double term = sign * std::exp(ln_term);
        sum += term;
        if (k > 4 && std::fabs(term) < 1e-18 * std::fabs(sum) + 1e-320) break;
        sign = -sign;
        (void)t;
    }
    return sum;
}

/// Series representation of Y_0 (harmonic-number series plus the log term).
inline double bessel_y0_series(double x) {
    constexpr double pi = 3.14159265358979323846;
    constexpr double euler_gamma = 0.57721566490153286061;
    const double t = 0.25 * x * x;
    double hk = 0.0;
    double tk = 1.0;  // t^k / (k!)^2
    double sum = 0.0;
    for (int k = 1; k < 200; ++k) {
        hk += 1.0 / k;
        tk *= t / (k * k);
        const double term = ((k % 2) ? 1.0 : -1.0) * hk * tk;
        sum += term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum) + 1e-320) break;
    }
    return 2.0 / pi * ((std::log(0.5 * x) + euler_gamma) * bessel_j_series(0.0, x) + sum);
}

/// Explicit quadratic L_2^a(z) = z^2/2 - (a+2) z + (a+1)(a+2)/2.
inline double laguerre2_explicit(double a, double z) {
    return 0.5 * z * z - (a + 2.0) * z + 0.5 * (a + 1.0) * (a + 2.0);
}

/// ln Gamma by the recurrence ln G(x) = ln G(x+1) - ln x chained up from
/// [1, 2], with std::lgamma supplying only the base value there.
inline double log_gamma_recurrence(double x) {
    if (!(x > 0.0)) throw std::domain_error("oracle log_gamma: x > 0 required");
    double shift = 0.0;
    while (x > 2.0) {
        x -= 1.0;
        shift += std::log(x);
    }
    return shift + std::lgamma(x);
}

}  // namespace oracles
