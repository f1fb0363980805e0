#include "nckk/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace nckk::lattice {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_point(double r, double R) {
    if (!(R > 0.0)) throw std::domain_error("lattice: R must be > 0");
    if (!(r > 0.0)) throw std::domain_error("lattice: r must be > 0");
    if (r < 1e-12 * R)
        throw std::domain_error("lattice: r < 1e-12 R is inside the on-axis divergence, rejected");
}

// All closed forms reduce to rational functions of u = e^{-r/R} and
// trigonometric factors of t = w/R after pulling the leading exponential
// out of sinh/cosh.  The shared denominator is
//   Dn = (1 - u)^2 + 4 u sin^2(t/2) = 2 u (cosh(r/R) - cos(t)),
// computed cancellation-free via expm1.
struct ScaledKernel {
    double u;    // e^{-x}
    double Dn;   // 2u (cosh x - cos t)
    double ct;   // cos t
};

ScaledKernel kernel(double x, double t) {
    ScaledKernel k;
    k.u = std::exp(-x);
    const double em = std::expm1(-x);  // u - 1
    const double s = std::sin(0.5 * t);
    k.Dn = em * em + 4.0 * k.u * s * s;
    k.ct = std::cos(t);
    return k;
}

// sinh x / (cosh x - cos t) = (1 - u^2) / Dn
double ratio_sinh(const ScaledKernel& k) { return (1.0 - k.u * k.u) / k.Dn; }

// (cosh x cos t - 1) / (cosh x - cos t)^2 = (2u(1+u^2) cos t - 4u^2) / Dn^2
double ratio_coshcos(const ScaledKernel& k) {
    return (2.0 * k.u * (1.0 + k.u * k.u) * k.ct - 4.0 * k.u * k.u) / (k.Dn * k.Dn);
}

// Compensated (Neumaier) accumulator; fixed order keeps results bit-stable.
struct Accum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double term) {
        const double t = sum + term;
        comp += (std::fabs(sum) >= std::fabs(term)) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    double total() const { return sum + comp; }
};

// Tail machinery: for a term f(n) = g(2 pi n R -+ w) summed over n > N,
// the Euler-Maclaurin midpoint estimate is
//   sum_{n>N} f(n) ~= (1/(2 pi R)) Int_{U}^inf g(u) du + (2 pi R / 24) g'(U),
// with U = 2 pi (N + 1/2) R -+ w.  Antiderivatives are exact.
struct TailFuncs {
    double (*integral_from)(double U, double r);  // Int_U^inf g du
    double (*derivative)(double U, double r);     // g'(U)
};

double g1_int(double U, double r) { return (0.5 * kPi - std::atan(U / r)) / r; }
double g1_der(double U, double r) {
    const double s = r * r + U * U;
    return -2.0 * U / (s * s);
}
double g2_int(double U, double r) {
    const double s = r * r + U * U;
    return (0.5 * kPi - std::atan(U / r)) / (r * r) - U / (r * s);
}
double g2_der(double U, double r) {
    const double s = r * r + U * U;
    return -8.0 * r * U / (s * s * s);
}
double g4_int(double U, double r) {
    const double s = r * r + U * U;
    return (0.5 * kPi - std::atan(U / r)) / (2.0 * r * r * r) - U / (2.0 * r * r * s);
}
double g4_der(double U, double r) {
    const double s = r * r + U * U;
    return -4.0 * U / (s * s * s);
}
double g6_int(double U, double r) {  // for 4 r / (r^2+u^2)^3
    const double s = r * r + U * U;
    return 3.0 / r * g4_int(U, r) - U / (r * s * s);
}
double g6_der(double U, double r) {
    const double s = r * r + U * U;
    return -24.0 * r * U / (s * s * s * s);
}

double tail_estimate(const TailFuncs& tf, double r, double w, double R, long N) {
    const double step = 2.0 * kPi * R;
    const double Up = step * (N + 0.5) - w;  // n > N side
    const double Um = step * (N + 0.5) + w;  // n < -N side
    double tail = (tf.integral_from(Up, r) + tf.integral_from(Um, r)) / step;
    tail += step / 24.0 * (tf.derivative(Up, r) + tf.derivative(Um, r));
    return tail;
}

}  // namespace

void ImageSumSpec::validate() const {
    check_point(r, R);
    if (std::fabs(w) > kPi * R * (1.0 + 1e-12))
        throw std::domain_error("ImageSumSpec: |w| must be <= pi R");
    if (truncation_N < 1) throw std::domain_error("ImageSumSpec: truncation_N must be >= 1");
    if (!(eta >= 0.0)) throw std::domain_error("ImageSumSpec: eta must be >= 0");
}

CoulombSums coulomb_sum_bruteforce(const ImageSumSpec& spec) {
    spec.validate();
    const double r2 = spec.r * spec.r;
    const double step = 2.0 * kPi * spec.R;
    const long N = spec.truncation_N;
    Accum a1, a2;
    const std::array<long, 3> marks = {N / 4, N / 2, N};
    CoulombSums out;
    auto add_pair = [&](long n) {
        const double up = spec.w - step * n;
        const double um = spec.w + step * n;
        const double d1p = r2 + up * up;
        const double d1m = r2 + um * um;
        a1.add(1.0 / d1p);
        a2.add(2.0 * spec.r / (d1p * d1p));
        if (n != 0) {
            a1.add(1.0 / d1m);
            a2.add(2.0 * spec.r / (d1m * d1m));
        }
    };
    int mark_idx = 0;
    for (long n = 0; n <= N; ++n) {
        add_pair(n);
        while (mark_idx < 3 && n == marks[mark_idx]) {
            out.s1.partials[mark_idx] = a1.total();
            out.s2.partials[mark_idx] = a2.total();
            ++mark_idx;
        }
    }
    out.s1.raw = a1.total();
    out.s2.raw = a2.total();
    out.s1.N = out.s2.N = N;
    out.s1.tail = tail_estimate({g1_int, g1_der}, spec.r, spec.w, spec.R, N);
    out.s2.tail = tail_estimate({g2_int, g2_der}, spec.r, spec.w, spec.R, N);
    out.s1.value = out.s1.raw + out.s1.tail;
    out.s2.value = out.s2.raw + out.s2.tail;
    return out;
}

double coulomb_closed(double r, double w, double R) {
    check_point(r, R);
    const ScaledKernel k = kernel(r / R, w / R);
    return 0.5 / (R * r) * ratio_sinh(k);
}

GradientTerms coulomb_gradient_closed(double r, double w, double R) {
    check_point(r, R);
    const ScaledKernel k = kernel(r / R, w / R);
    GradientTerms g;
    g.G = 0.5 / (R * r * r) * ratio_sinh(k);
    g.F = 0.5 / (R * R * r) * ratio_coshcos(k);
    return g;
}

double coulomb_s2_closed(double r, double w, double R) {
    return coulomb_gradient_closed(r, w, R).sum();
}

SumDiagnostics yukawa_sum_bruteforce(const ImageSumSpec& spec) {
    spec.validate();
    const double r2 = spec.r * spec.r;
    const double step = 2.0 * kPi * spec.R;
    const long N = spec.truncation_N;
    Accum acc;
    SumDiagnostics out;
    const std::array<long, 3> marks = {N / 4, N / 2, N};
    int mark_idx = 0;
    for (long n = 0; n <= N; ++n) {
        const double up = spec.w - step * n;
        const double d = r2 + up * up;
        acc.add(std::exp(-spec.eta * std::sqrt(d)) / d);
        if (n != 0) {
            const double um = spec.w + step * n;
            const double dm = r2 + um * um;
            acc.add(std::exp(-spec.eta * std::sqrt(dm)) / dm);
        }
        while (mark_idx < 3 && n == marks[mark_idx]) out.partials[mark_idx++] = acc.total();
    }
    out.raw = acc.total();
    out.N = N;
    // Exact at eta = 0; for eta > 0 an upper bound (exponential evaluated
    // at the innermost excluded image).
    const double damp = std::exp(-spec.eta * std::hypot(spec.r, step * (N + 0.5) - std::fabs(spec.w)));
    out.tail = damp * tail_estimate({g1_int, g1_der}, spec.r, spec.w, spec.R, N);
    out.value = out.raw + out.tail;
    return out;
}

double yukawa_closed_paper(double r, double w, double R) { return coulomb_closed(r, w, R); }

D6Closed d6_closed(double r, double w, double R) {
    check_point(r, R);
    const double x = r / R;
    const double t = w / R;
    const ScaledKernel k = kernel(x, t);
    D6Closed out;
    const double pre = 1.0 / (4.0 * R * R * r * r);  // 1/(2Rr)^2
    out.coulomb_part = pre * ((R / r) * ratio_sinh(k) + ratio_coshcos(k));

    // theta_part as printed, with every hyperbolic factor rescaled by
    // e^{-x} powers so nothing overflows:
    //   theta_part = -(t1+t2+t3+t4) / (r^4 R^3 Dn^3),  terms carrying u^3 B.
    const double u = k.u;
    const double u2 = u * u;
    const double u4 = u2 * u2;
    const double c2t = std::cos(2.0 * t);
    const double t1 = (r * r + 3.0 * R * R) * c2t * u2 * (1.0 - u2) * 0.5;
    const double t2 = k.ct * ((r * r - 6.0 * R * R) * u * (1.0 - u4) * 0.5 +
                              3.0 * r * R * (u * (1.0 + u4) * 0.5 + 3.0 * u2 * u));
    const double t3 = 1.5 * (1.0 - u2) * (R * R * (1.0 + u4) * 0.5 + u2 * (2.0 * R * R - r * r));
    const double t4 = -3.0 * r * R * (c2t + 3.0) * u2 * (1.0 + u2) * 0.5;
    const double Dn3 = k.Dn * k.Dn * k.Dn;
    out.theta_part = -(t1 + t2 + t3 + t4) / (r * r * r * r * R * R * R * Dn3);
    return out;
}

D6Sums d6_sum_bruteforce(const ImageSumSpec& spec) {
    spec.validate();
    const double r2 = spec.r * spec.r;
    const double step = 2.0 * kPi * spec.R;
    const long N = spec.truncation_N;
    Accum a4, a6;
    D6Sums out;
    const std::array<long, 3> marks = {N / 4, N / 2, N};
    int mark_idx = 0;
    for (long n = 0; n <= N; ++n) {
        const double up = spec.w - step * n;
        const double d = r2 + up * up;
        a4.add(1.0 / (d * d));
        a6.add(-4.0 * spec.r / (d * d * d));
        if (n != 0) {
            const double um = spec.w + step * n;
            const double dm = r2 + um * um;
            a4.add(1.0 / (dm * dm));
            a6.add(-4.0 * spec.r / (dm * dm * dm));
        }
        while (mark_idx < 3 && n == marks[mark_idx]) {
            out.coulomb_part.partials[mark_idx] = a4.total();
            out.theta_part.partials[mark_idx] = a6.total();
            ++mark_idx;
        }
    }
    out.coulomb_part.raw = a4.total();
    out.theta_part.raw = a6.total();
    out.coulomb_part.N = out.theta_part.N = N;
    out.coulomb_part.tail = tail_estimate({g4_int, g4_der}, spec.r, spec.w, spec.R, N);
    out.theta_part.tail = -tail_estimate({g6_int, g6_der}, spec.r, spec.w, spec.R, N);
    out.coulomb_part.value = out.coulomb_part.raw + out.coulomb_part.tail;
    out.theta_part.value = out.theta_part.raw + out.theta_part.tail;
    return out;
}

FourierCoefficients fourier_coefficients(PotentialKind kind, double r, double R, int n,
                                         const PhysicalParams& params) {
    check_point(r, R);
    const double an = std::fabs(static_cast<double>(n));
    const double decay = std::exp(-an * r / R);
    FourierCoefficients out;
    switch (kind) {
        case PotentialKind::coulomb_4d: {
            const double a0 = -params.qe2 / (2.0 * r * R) * decay;
            out.a = a0;
            out.b = a0 * (1.0 / r + an / R);
            break;
        }
        case PotentialKind::yukawa_4d: {
            const double a0 = -params.V0 / (2.0 * r * R) * decay;
            out.a = a0;
            out.b = a0 * (1.0 / r + an / R);
            break;
        }
        case PotentialKind::coulomb_6d: {
            const double s = -params.qe2 / (4.0 * R * R * r * r) * decay;
            out.a = s * (R / r + an);
            out.b = s * (3.0 * R / (r * r) + 3.0 * an / r + an * an / R);
            break;
        }
        default:
            throw std::invalid_argument("fourier_coefficients: unknown potential kind");
    }
    return out;
}

double fourier_b_coulomb4d_printed(double r, double R, int n, const PhysicalParams& params) {
    check_point(r, R);
    const double an = std::fabs(static_cast<double>(n));
    return -params.qe2 / (2.0 * R * r * r) * (1.0 + an) * std::exp(-an * r / R);
}

double compactified_static_closed(PotentialKind kind, double r, double w,
                                  const PhysicalParams& params) {
    switch (kind) {
        case PotentialKind::coulomb_4d:
            return -params.qe2 * coulomb_closed(r, w, params.R);
        case PotentialKind::yukawa_4d:
            return -params.V0 * yukawa_closed_paper(r, w, params.R);
        case PotentialKind::coulomb_6d:
            return -params.qe2 * d6_closed(r, w, params.R).coulomb_part;
    }
    throw std::invalid_argument("compactified_static_closed: unknown potential kind");
}

double compactified_theta_coefficient_closed(PotentialKind kind, double r, double w,
                                             const PhysicalParams& params) {
    switch (kind) {
        case PotentialKind::coulomb_4d:
            return -params.qe2 * coulomb_s2_closed(r, w, params.R);
        case PotentialKind::yukawa_4d:
            return -params.V0 * coulomb_s2_closed(r, w, params.R);
        case PotentialKind::coulomb_6d:
            return params.qe2 * d6_closed(r, w, params.R).theta_part;
    }
    throw std::invalid_argument("compactified_theta_coefficient_closed: unknown potential kind");
}

FourierCoefficients fourier_coefficients_quadrature(PotentialKind kind, double r, double R, int n,
                                                    const PhysicalParams& params, int points) {
    check_point(r, R);
    if (points < 16) throw std::invalid_argument("fourier_coefficients_quadrature: need >= 16 points");
    PhysicalParams p = params;
    p.R = R;
    Accum acc_a, acc_b;
    const double h = 2.0 * kPi * R / points;
    for (int k = 0; k < points; ++k) {
        const double w = -kPi * R + k * h;
        const double phase = std::cos(n * w / R);  // integrands are even in w
        acc_a.add(compactified_static_closed(kind, r, w, p) * phase);
        acc_b.add(compactified_theta_coefficient_closed(kind, r, w, p) * phase);
    }
    FourierCoefficients out;
    out.a = acc_a.total() / points;
    out.b = acc_b.total() / points;
    return out;
}

}  // namespace nckk::lattice
