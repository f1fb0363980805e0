#include "nckk/specfun.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace nckk::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kFpMin = std::numeric_limits<double>::min() / kEps;
constexpr int kMaxIter = 30000;
constexpr double kPi = 3.14159265358979323846;

// Taylor coefficients of 1/Gamma(1+x) on [-1, 1] (Abramowitz & Stegun 6.1.34).
constexpr double kInvGammaA1 = 0.57721566490153286061;   // Euler gamma
constexpr double kInvGammaA3 = -0.04200263503409523553;
constexpr double kInvGammaA5 = -0.04219773455554433675;
constexpr double kInvGammaA7 = 0.00721894324666309954;
constexpr double kInvGammaA2 = -0.65587807152025388108;
constexpr double kInvGammaA4 = 0.16653861138229148950;
constexpr double kInvGammaA6 = -0.00962197152787697356;

// Temme's Gamma_1, Gamma_2 for |mu| <= 1/2, plus 1/Gamma(1 +- mu).
void temme_gamma(double mu, double& gam1, double& gam2, double& gampl, double& gammi) {
    const double mu2 = mu * mu;
    if (std::fabs(mu) < 1e-3) {
        gam1 = -(kInvGammaA1 + mu2 * (kInvGammaA3 + mu2 * (kInvGammaA5 + mu2 * kInvGammaA7)));
        gam2 = 1.0 + mu2 * (kInvGammaA2 + mu2 * (kInvGammaA4 + mu2 * kInvGammaA6));
        gampl = gam2 - mu * gam1;
        gammi = gam2 + mu * gam1;
    } else {
        gampl = 1.0 / std::tgamma(1.0 + mu);
        gammi = 1.0 / std::tgamma(1.0 - mu);
        gam1 = (gammi - gampl) / (2.0 * mu);
        gam2 = 0.5 * (gammi + gampl);
    }
}

}  // namespace

BesselJY bessel_jy(double nu, double x) {
    if (!(nu >= 0.0) || !std::isfinite(nu))
        throw std::domain_error("bessel_jy: order nu must be finite and >= 0");
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("bessel_jy: argument x must be finite and > 0");

    const double xmin_series = 2.0;
    const int nl = (x < xmin_series) ? static_cast<int>(nu + 0.5)
                                     : std::max(0, static_cast<int>(nu - x + 1.5));
    const double mu = nu - nl;
    const double mu2 = mu * mu;
    const double xi = 1.0 / x;
    const double xi2 = 2.0 * xi;
    const double wron = xi2 / kPi;  // Wronskian J Y' - J' Y = 2/(pi x)

    // CF1: f = J'_nu / J_nu by modified Lentz, sign of J_nu tracked in isign.
    int isign = 1;
    double h = nu * xi;
    if (h < kFpMin) h = kFpMin;
    double b = xi2 * nu;
    double d = 0.0;
    double cc = h;
    int iter = 1;
    for (; iter <= kMaxIter; ++iter) {
        b += xi2;
        d = b - d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        cc = b - 1.0 / cc;
        if (std::fabs(cc) < kFpMin) cc = kFpMin;
        d = 1.0 / d;
        const double del = cc * d;
        h *= del;
        if (d < 0.0) isign = -isign;
        if (std::fabs(del - 1.0) <= kEps) break;
    }
    if (iter > kMaxIter) throw std::runtime_error("bessel_jy: CF1 failed to converge");

    // Downward recurrence from nu to mu on scaled values.
    double rjl = isign * kFpMin;
    double rjpl = h * rjl;
    const double rjl_save = rjl;
    const double rjpl_save = rjpl;
    double fact = nu * xi;
    for (int l = nl; l >= 1; --l) {
        const double rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if (rjl == 0.0) rjl = kEps;
    const double fmu = rjpl / rjl;  // J'_mu / J_mu

    double rjmu, rymu, rymup, ry1;
    if (x < xmin_series) {
        // Temme's series for Y_mu and Y_{mu+1}.
        const double x2 = 0.5 * x;
        const double pimu = kPi * mu;
        const double fct = (std::fabs(pimu) < kEps) ? 1.0 : pimu / std::sin(pimu);
        double dd = -std::log(x2);
        double e = mu * dd;
        const double fact2 = (std::fabs(e) < kEps) ? 1.0 : std::sinh(e) / e;
        double gam1, gam2, gampl, gammi;
        temme_gamma(mu, gam1, gam2, gampl, gammi);
        double ff = 2.0 / kPi * fct * (gam1 * std::cosh(e) + gam2 * fact2 * dd);
        e = std::exp(e);
        double p = e / (gampl * kPi);
        double q = 1.0 / (e * kPi * gammi);
        const double pimu2 = 0.5 * pimu;
        const double fact3 = (std::fabs(pimu2) < kEps) ? 1.0 : std::sin(pimu2) / pimu2;
        const double rr = kPi * pimu2 * fact3 * fact3;
        double c = 1.0;
        dd = -x2 * x2;
        double sum = ff + rr * q;
        double sum1 = p;
        for (iter = 1; iter <= kMaxIter; ++iter) {
            ff = (iter * ff + p + q) / (iter * iter - mu2);
            c *= dd / iter;
            p /= (iter - mu);
            q /= (iter + mu);
            const double del = c * (ff + rr * q);
            sum += del;
            const double del1 = c * p - iter * del;
            sum1 += del1;
            if (std::fabs(del) < (1.0 + std::fabs(sum)) * kEps) break;
        }
        if (iter > kMaxIter) throw std::runtime_error("bessel_jy: Temme series failed to converge");
        rymu = -sum;
        ry1 = -sum1 * xi2;
        rymup = mu * xi * rymu - ry1;
        rjmu = wron / (rymup - fmu * rymu);
    } else {
        // CF2 for p + i q = (J' + i Y') / (J + i Y), Lentz in real pairs.
        double a = 0.25 - mu2;
        double p = -0.5 * xi;
        double q = 1.0;
        double br = 2.0 * x;
        double bi = 2.0;
        double fct = a * xi / (p * p + q * q);
        double cr = br + q * fct;
        double ci = bi + p * fct;
        double den = br * br + bi * bi;
        double dr = br / den;
        double di = -bi / den;
        double dlr = cr * dr - ci * di;
        double dli = cr * di + ci * dr;
        double temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        for (iter = 2; iter <= kMaxIter; ++iter) {
            a += 2 * (iter - 1);
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if (std::fabs(dr) + std::fabs(di) < kFpMin) dr = kFpMin;
            fct = a / (cr * cr + ci * ci);
            cr = br + cr * fct;
            ci = bi - ci * fct;
            if (std::fabs(cr) + std::fabs(ci) < kFpMin) cr = kFpMin;
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (std::fabs(dlr - 1.0) + std::fabs(dli) <= kEps) break;
        }
        if (iter > kMaxIter) throw std::runtime_error("bessel_jy: CF2 failed to converge");
        const double gam = (p - fmu) / q;
        rjmu = std::sqrt(wron / ((p - fmu) * gam + q));
        rjmu = std::copysign(rjmu, rjl);
        rymu = rjmu * gam;
        rymup = rymu * (p + q / gam);
        ry1 = mu * xi * rymu - rymup;
    }

    fact = rjmu / rjl;
    BesselJY out;
    out.j = rjl_save * fact;
    out.jp = rjpl_save * fact;
    // Upward recurrence Y_{k+1} = (2k/x) Y_k - Y_{k-1} from mu to nu (stable).
    for (int l = 1; l <= nl; ++l) {
        const double rytemp = (mu + l) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    out.y = rymu;
    out.yp = nu * xi * rymu - ry1;
    return out;
}

double bessel_j(double nu, double x) {
    if (!(nu >= 0.0) || !std::isfinite(nu))
        throw std::domain_error("bessel_j: order nu must be finite and >= 0");
    if (!std::isfinite(x) || x < 0.0)
        throw std::domain_error("bessel_j: argument x must be finite and >= 0");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    return bessel_jy(nu, x).j;
}

double bessel_y(double nu, double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_y: x must be > 0 (Y_nu is singular at the origin)");
    return bessel_jy(nu, x).y;
}

double bessel_j_derivative(double nu, double x) { return bessel_jy(nu, x).jp; }
double bessel_y_derivative(double nu, double x) { return bessel_jy(nu, x).yp; }

double laguerre(int l, double a, double z) {
    if (l < 0) throw std::domain_error("laguerre: degree l must be >= 0");
    if (!(a > -1.0)) throw std::domain_error("laguerre: parameter a must be > -1");
    if (l == 0) return 1.0;
    double lm1 = 1.0;           // L_0
    double lm0 = 1.0 + a - z;   // L_1
    for (int k = 1; k < l; ++k) {
        const double lnext = ((2.0 * k + 1.0 + a - z) * lm0 - (k + a) * lm1) / (k + 1.0);
        lm1 = lm0;
        lm0 = lnext;
    }
    return lm0;
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: x must be > 0");
    // Lanczos, g = 7, 9 terms.
    static const double coef[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
    const double z = x - 1.0;
    double acc = coef[0];
    for (int i = 1; i < 9; ++i) acc += coef[i] / (z + i);
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw std::invalid_argument("QuadratureSpec: tolerances must be > 0");
    if (node_count < 2) throw std::invalid_argument("QuadratureSpec: node_count must be >= 2");
    if (max_subdivisions < 1) throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 1");
}

namespace {

// Gauss-Kronrod 7-15 nodes and weights (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct PanelResult {
    double integral;
    double error;
    double resabs;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double result_gauss = kWg[3] * fc;
    double result_kronrod = kWgk[7] * fc;
    double resabs = std::fabs(result_kronrod);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double absc = half * kXgk[j];
        fv1[j] = f(center - absc);
        fv2[j] = f(center + absc);
        const double fsum = fv1[j] + fv2[j];
        if (j % 2 == 1) result_gauss += kWg[j / 2] * fsum;
        result_kronrod += kWgk[j] * fsum;
        resabs += kWgk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
    }
    const double mean = 0.5 * result_kronrod;
    double resasc = kWgk[7] * std::fabs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::fabs(fv1[j] - mean) + std::fabs(fv2[j] - mean));
    resasc *= std::fabs(half);
    resabs *= std::fabs(half);
    const double integral = result_kronrod * half;
    double err = std::fabs((result_kronrod - result_gauss) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double round_floor = 50.0 * kEps * resabs;
    err = std::max(err, round_floor);
    return {integral, err, resabs};
}

struct Segment {
    double a, b, integral, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

}  // namespace

IntegralResult integrate(const std::function<double(double)>& f, double a, double b,
                         const QuadratureSpec& spec) {
    spec.validate();
    IntegralResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::priority_queue<Segment> queue;
    PanelResult first = gk15(f, a, b);
    queue.push({a, b, first.integral, first.error});
    double total = first.integral;
    double total_err = first.error;
    int splits = 0;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total)) &&
           splits < spec.max_subdivisions) {
        Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) {  // interval exhausted at machine precision
            queue.push(worst);
            break;
        }
        PanelResult left = gk15(f, worst.a, mid);
        PanelResult right = gk15(f, mid, worst.b);
        total += left.integral + right.integral - worst.integral;
        total_err += left.error + right.error - worst.error;
        queue.push({worst.a, mid, left.integral, left.error});
        queue.push({mid, worst.b, right.integral, right.error});
        ++splits;
    }
    out.value = total;
    out.error_bound = total_err;
    out.subdivisions = splits;
    out.converged = total_err <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(total));
    return out;
}

IntegralResult integrate_semi_infinite(const std::function<double(double)>& f, double a,
                                       const QuadratureSpec& spec) {
    spec.validate();
    if (spec.kind == QuadratureKind::gauss_laguerre) {
        const GaussLaguerreRule rule = gauss_laguerre_rule(spec.node_count, spec.gl_alpha);
        IntegralResult out;
        double acc = 0.0, comp = 0.0;
        for (int i = 0; i < rule.nodes.size(); ++i) {
            const double term = rule.weights[i] * f(a + rule.nodes[i]);
            const double t = acc + term;  // Neumaier compensation
            comp += (std::fabs(acc) >= std::fabs(term)) ? (acc - t) + term : (term - t) + acc;
            acc = t;
        }
        out.value = acc + comp;
        out.error_bound = std::fabs(out.value) * 1e-14;  // no a-posteriori bound for a fixed rule
        out.converged = true;
        out.subdivisions = 0;
        return out;
    }
    // x = a + t/(1-t), dx = dt/(1-t)^2 maps [0,1) onto [a, inf).
    auto mapped = [&f, a](double t) {
        const double om = 1.0 - t;
        const double x = a + t / om;
        return f(x) / (om * om);
    };
    return integrate(mapped, 0.0, 1.0, spec);
}

double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          const QuadratureSpec& spec) {
    const IntegralResult r = integrate(f, a, b, spec);
    if (!r.converged)
        throw std::runtime_error("integrate: tolerance not reached after " +
                                 std::to_string(r.subdivisions) + " subdivisions (estimate " +
                                 std::to_string(r.value) + ")");
    return r.value;
}

GaussLaguerreRule gauss_laguerre_rule(int n, double alpha) {
    if (n < 1) throw std::invalid_argument("gauss_laguerre_rule: n must be >= 1");
    if (!(alpha > -1.0)) throw std::invalid_argument("gauss_laguerre_rule: alpha must be > -1");
    Eigen::VectorXd diag(n), sub(std::max(n - 1, 1));
    for (int k = 0; k < n; ++k) diag[k] = 2.0 * k + alpha + 1.0;
    for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(k * (k + alpha));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub.head(std::max(n - 1, 0)));
    if (es.info() != Eigen::Success)
        throw std::runtime_error("gauss_laguerre_rule: tridiagonal eigensolve failed");
    GaussLaguerreRule rule;
    rule.nodes = es.eigenvalues().array();
    const double mu0 = std::exp(log_gamma(alpha + 1.0));
    rule.weights = mu0 * es.eigenvectors().row(0).array().square();
    return rule;
}

}  // namespace nckk::specfun
