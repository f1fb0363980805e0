#include "nckk/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nckk/potentials.hpp"

namespace nckk::radial {

namespace {

constexpr double kTiny = 1e-300;
constexpr double kEpsUlp = std::numeric_limits<double>::epsilon();

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4) with dense output, for y' = f(r, y), y in R^2.
// Fixed evaluation order; a single integration is fully deterministic.
// ---------------------------------------------------------------------------

using Vec2 = std::array<double, 2>;

struct DenseStep {
    double r0 = 0.0, h = 0.0;
    Vec2 rcont1{}, rcont2{}, rcont3{}, rcont4{}, rcont5{};

    Vec2 eval(double r) const {
        const double s = (r - r0) / h;
        const double s1 = 1.0 - s;
        Vec2 out;
        for (int i = 0; i < 2; ++i)
            out[i] = rcont1[i] +
                     s * (rcont2[i] + s1 * (rcont3[i] + s * (rcont4[i] + s1 * rcont5[i])));
        return out;
    }
};

struct StepCallback {
    // Called after each accepted step; return a rescale factor (1.0 = none).
    std::function<double(double r0, double r1, const Vec2& y0, const Vec2& y1,
                         const DenseStep& dense)>
        on_step;
};

struct OdeOptions {
    double rel_tol = 1e-11;
    double abs_tol = 1e-14;
    // Optional cap on the step from the local oscillation wavelength.
    std::function<double(double)> max_step_at;
    double min_step_floor = 0.0;  // below this the integration aborts
    // Steps are shortened to land exactly on these radii (sorted along the
    // direction of integration).  Sampling at step ends instead of through
    // the dense interpolant keeps the samples on one coherent trajectory,
    // which finite-difference residual checks require.
    const std::vector<double>* forced_points = nullptr;
};

struct OdeStatus {
    Vec2 y{};
    bool step_collapse = false;
    double min_step_seen = std::numeric_limits<double>::infinity();
};

template <typename F>
OdeStatus integrate_dopri5(const F& f, double r0, double r1, Vec2 y, const OdeOptions& opt,
                           const StepCallback& cb = {}) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                            a75 = -2187.0 / 6784, a76 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                            d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                            d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

    OdeStatus status;
    const double dir = (r1 >= r0) ? 1.0 : -1.0;
    const double span = std::fabs(r1 - r0);
    if (span == 0.0) {
        status.y = y;
        return status;
    }
    double r = r0;
    double h = dir * span / 100.0;
    if (opt.max_step_at) h = dir * std::min(std::fabs(h), opt.max_step_at(r));
    std::size_t next_forced = 0;
    if (opt.forced_points) {  // skip targets at or behind the start
        while (next_forced < opt.forced_points->size() &&
               dir * ((*opt.forced_points)[next_forced] - r0) <= 0.0)
            ++next_forced;
    }
    Vec2 k1 = f(r, y);
    const int max_steps = 20'000'000;
    for (int step = 0; step < max_steps; ++step) {
        if (dir * (r - r1) >= 0.0) break;
        if (dir * (r + h - r1) > 0.0) h = r1 - r;
        double habs = std::fabs(h);
        if (opt.max_step_at) {
            const double cap = opt.max_step_at(r);
            if (habs > cap) {
                habs = cap;
                h = dir * habs;
                if (dir * (r + h - r1) > 0.0) h = r1 - r;
            }
        }
        if (opt.forced_points && next_forced < opt.forced_points->size()) {
            const double target = (*opt.forced_points)[next_forced];
            if (dir * (r + h - target) > 0.0) h = target - r;
        }
        Vec2 k2, k3, k4, k5, k6, k7, ynew, yerr;
        Vec2 yt;
        for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * a21 * k1[i];
        k2 = f(r + c2 * h, yt);
        for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        k3 = f(r + c3 * h, yt);
        for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = f(r + c4 * h, yt);
        for (int i = 0; i < 2; ++i)
            yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = f(r + c5 * h, yt);
        for (int i = 0; i < 2; ++i)
            yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        k6 = f(r + h, yt);
        for (int i = 0; i < 2; ++i)
            ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        k7 = f(r + h, ynew);
        double errnorm = 0.0;
        for (int i = 0; i < 2; ++i) {
            yerr[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = opt.abs_tol + opt.rel_tol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
            const double q = yerr[i] / sc;
            errnorm += q * q;
        }
        errnorm = std::sqrt(0.5 * errnorm);
        if (errnorm <= 1.0) {
            DenseStep dense;
            dense.r0 = r;
            dense.h = h;
            for (int i = 0; i < 2; ++i) {
                const double ydiff = ynew[i] - y[i];
                const double bspl = h * k1[i] - ydiff;
                dense.rcont1[i] = y[i];
                dense.rcont2[i] = ydiff;
                dense.rcont3[i] = bspl;
                dense.rcont4[i] = ydiff - h * k7[i] - bspl;
                dense.rcont5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                       d6 * k6[i] + d7 * k7[i]);
            }
            const double r_old = r;
            r += h;
            y = ynew;
            k1 = k7;  // FSAL
            if (opt.forced_points) {
                // A landing within rounding of the target counts as hit;
                // an absolute test here would manufacture ulp-sized steps.
                while (next_forced < opt.forced_points->size() &&
                       dir * ((*opt.forced_points)[next_forced] - r) <=
                           4.0 * kEpsUlp * std::fabs(r) + 1e-300)
                    ++next_forced;
            }
            status.min_step_seen = std::min(status.min_step_seen, habs);
            if (cb.on_step) {
                const double scale = cb.on_step(r_old, r, dense.rcont1, y, dense);
                if (scale != 1.0) {
                    for (int i = 0; i < 2; ++i) {
                        y[i] *= scale;
                        k1[i] *= scale;
                    }
                }
            }
            const double fac = std::clamp(0.9 * std::pow(std::max(errnorm, 1e-10), -0.2), 0.2, 5.0);
            h *= fac;
        } else {
            h *= std::clamp(0.9 * std::pow(errnorm, -0.2), 0.2, 1.0);
        }
        if (std::fabs(h) < std::max(opt.min_step_floor, 1e-14 * std::fabs(r) + 1e-290)) {
            status.step_collapse = true;
            break;
        }
    }
    status.y = y;
    return status;
}

// ---------------------------------------------------------------------------

double ipow(double r, int j) {
    double v = 1.0;
    for (int k = 0; k < j; ++k) v *= r;
    return v;
}

}  // namespace

void RadialProblem::validate() const {
    if (!(r_min > 0.0)) throw std::invalid_argument("RadialProblem: r_min must be > 0");
    if (!(r_max > r_min)) throw std::invalid_argument("RadialProblem: r_max must exceed r_min");
    if (grid_size < 100) throw std::invalid_argument("RadialProblem: grid_size must be >= 100");
    if (!(eig_tol > 0.0) || !(ode_rel_tol > 0.0) || !(ode_abs_tol > 0.0))
        throw std::invalid_argument("RadialProblem: tolerances must be > 0");
}

double RadialProblem::coefficient(double r, double E) const {
    double q = energy_scale * E + const_term;
    for (const auto& [j, cj] : inverse_power_terms) q += cj / ipow(r, j);
    for (const auto& [j, cj] : inverse_power_terms_E) q += E * cj / ipow(r, j);
    if (extra_term) q += extra_term(r);
    return q;
}

double RadialProblem::centrifugal(double E) const {
    double c2 = 0.0;
    for (const auto& [j, cj] : inverse_power_terms)
        if (j == 2) c2 += cj;
    for (const auto& [j, cj] : inverse_power_terms_E)
        if (j == 2) c2 += E * cj;
    return -c2;
}

RadialProblem liouville_normal_form(const RadialProblem& problem) {
    problem.validate();
    RadialProblem out = problem;
    const double p = problem.friction_order;
    out.friction_order = 0.0;
    const double corr = (p / 2.0) * (p / 2.0 - 1.0);
    if (corr != 0.0) out.inverse_power_terms.emplace_back(2, -corr);
    return out;
}

namespace {

// Integration of the normal-form equation u'' + Q(r, E) u = 0 between two
// radii.  Series start near the origin from the indicial exponent of the
// centrifugal term; rescaling keeps |u| bounded through classically
// forbidden growth (the equation is linear, only ratios matter).
struct NormalForm {
    const RadialProblem* prob;
    double E;

    Vec2 rhs(double r, const Vec2& y) const { return {y[1], -prob->coefficient(r, E) * y[0]}; }
};

Vec2 series_start(const RadialProblem& prob, double E, double r) {
    const double q2 = prob.centrifugal(E);
    const double s = 0.5 * (1.0 + std::sqrt(std::max(1.0 + 4.0 * q2, 0.0)));
    double c1 = 0.0;
    for (const auto& [j, cj] : prob.inverse_power_terms)
        if (j == 1) c1 += cj;
    for (const auto& [j, cj] : prob.inverse_power_terms_E)
        if (j == 1) c1 += E * cj;
    const double c0 = prob.energy_scale * E + prob.const_term;
    // u = r^s (1 + a1 r + a2 r^2), Frobenius on u'' + (c0 + c1/r - q2/r^2) u = 0.
    const double a1 = -c1 / ((s + 1.0) * s - q2);
    const double a2 = (-c1 * a1 - c0) / ((s + 2.0) * (s + 1.0) - q2);
    const double u = std::pow(r, s) * (1.0 + a1 * r + a2 * r * r);
    const double up = std::pow(r, s - 1.0) *
                      (s + (s + 1.0) * a1 * r + (s + 2.0) * a2 * r * r);
    return {u, up};
}

OdeOptions ode_options_for(const RadialProblem& prob, double E, bool oscillation_cap) {
    OdeOptions opt;
    opt.rel_tol = prob.ode_rel_tol;
    opt.abs_tol = prob.ode_abs_tol;
    if (oscillation_cap) {
        const RadialProblem* p = &prob;
        opt.max_step_at = [p, E](double r) {
            const double q = p->coefficient(r, E);
            const double wavelen_cap = (q > 0.0) ? 1.5 / std::sqrt(q) : (p->r_max - p->r_min);
            return std::max(1e-12, std::min(wavelen_cap, 0.05 * (p->r_max - p->r_min) + 1e-12));
        };
    }
    return opt;
}

struct OutwardSweep {
    int nodes = 0;
    Vec2 y_end{};
    bool ok = false;
};

OutwardSweep outward_nodes(const RadialProblem& prob, double E, double r_to) {
    NormalForm nf{&prob, E};
    Vec2 y = series_start(prob, E, prob.r_min);
    const double norm0 = std::max(std::fabs(y[0]), std::fabs(y[1]));
    if (norm0 > 0.0 && (norm0 > 1e200 || norm0 < 1e-200)) {
        y[0] /= norm0;
        y[1] /= norm0;
    }
    OutwardSweep sweep;
    double last_sign = (y[0] > 0.0) ? 1.0 : (y[0] < 0.0 ? -1.0 : 0.0);
    StepCallback cb;
    cb.on_step = [&sweep, &last_sign](double, double, const Vec2&, const Vec2& y1,
                                      const DenseStep&) {
        const double s = (y1[0] > 0.0) ? 1.0 : (y1[0] < 0.0 ? -1.0 : 0.0);
        if (s != 0.0 && last_sign != 0.0 && s != last_sign) ++sweep.nodes;
        if (s != 0.0) last_sign = s;
        const double m = std::max(std::fabs(y1[0]), std::fabs(y1[1]));
        return (m > 1e200) ? 1.0 / m : 1.0;
    };
    auto status = integrate_dopri5([&nf](double r, const Vec2& y) { return nf.rhs(r, y); },
                                   prob.r_min, r_to, y, ode_options_for(prob, E, true), cb);
    sweep.y_end = status.y;
    sweep.ok = !status.step_collapse;
    return sweep;
}

double outermost_turning_point(const RadialProblem& prob, double E) {
    // Largest sign change of Q from + to -, scanned on a log grid.
    const int scan = 800;
    const double lmin = std::log(prob.r_min), lmax = std::log(prob.r_max);
    double r_prev = prob.r_max;
    double q_prev = prob.coefficient(r_prev, E);
    if (q_prev > 0.0) return -1.0;  // oscillatory out to the boundary: not a bound state
    for (int i = scan - 1; i >= 0; --i) {
        const double r = std::exp(lmin + (lmax - lmin) * i / (scan - 1.0));
        const double q = prob.coefficient(r, E);
        if (q > 0.0 && q_prev <= 0.0) {
            // bisect the crossing in [r, r_prev]
            double a = r, b = r_prev;
            for (int k = 0; k < 80; ++k) {
                const double m = 0.5 * (a + b);
                (prob.coefficient(m, E) > 0.0 ? a : b) = m;
            }
            return 0.5 * (a + b);
        }
        r_prev = r;
        q_prev = q;
    }
    return -1.0;  // no classically allowed region
}

struct MatchResult {
    double value = std::numeric_limits<double>::quiet_NaN();
    bool valid = false;
    double r_match = 0.0;
};

MatchResult matching_function(const RadialProblem& prob, double E) {
    MatchResult out;
    const double rt = outermost_turning_point(prob, E);
    if (rt <= prob.r_min || rt >= prob.r_max) return out;
    NormalForm nf{&prob, E};
    StepCallback rescale;
    rescale.on_step = [](double, double, const Vec2&, const Vec2& y1, const DenseStep&) {
        const double m = std::max(std::fabs(y1[0]), std::fabs(y1[1]));
        return (m > 1e200) ? 1.0 / m : 1.0;
    };
    auto fwd = integrate_dopri5([&nf](double r, const Vec2& y) { return nf.rhs(r, y); },
                                prob.r_min, rt, series_start(prob, E, prob.r_min),
                                ode_options_for(prob, E, true), rescale);
    const double q_end = prob.coefficient(prob.r_max, E);
    Vec2 y_in{1.0, -std::sqrt(std::max(-q_end, 0.0))};
    auto bwd = integrate_dopri5([&nf](double r, const Vec2& y) { return nf.rhs(r, y); },
                                prob.r_max, rt, y_in, ode_options_for(prob, E, true), rescale);
    if (fwd.step_collapse || bwd.step_collapse) return out;
    const double uo = fwd.y[0], upo = fwd.y[1];
    const double ui = bwd.y[0], upi = bwd.y[1];
    const double wron = upo * ui - upi * uo;
    const double scale = std::fabs(upo * ui) + std::fabs(upi * uo) + kTiny;
    out.value = wron / scale;
    out.valid = true;
    out.r_match = rt;
    return out;
}

}  // namespace

EigenResult shoot_eigenvalue(const RadialProblem& problem, int target_nodes, double E_lo,
                             double E_hi) {
    problem.validate();
    if (target_nodes < 0) throw std::invalid_argument("shoot_eigenvalue: target_nodes must be >= 0");
    if (!(E_hi > E_lo)) throw std::invalid_argument("shoot_eigenvalue: need E_lo < E_hi");
    const RadialProblem prob = (problem.friction_order == 0.0) ? problem
                                                               : liouville_normal_form(problem);
    EigenResult res;
    auto nodes_at = [&prob](double E) { return outward_nodes(prob, E, prob.r_max).nodes; };
    int n_lo = nodes_at(E_lo);
    int n_hi = nodes_at(E_hi);
    res.bracket_history.push_back({E_lo, E_hi});
    if (n_lo > target_nodes || n_hi <= target_nodes) {
        res.converged = false;
        res.message = "no eigenvalue with " + std::to_string(target_nodes) +
                      " nodes in bracket: node counts are " + std::to_string(n_lo) + " at E_lo and " +
                      std::to_string(n_hi) + " at E_hi";
        res.node_count = n_lo;
        return res;
    }
    // Bisection on the node count: afterwards [a, b] straddles the level
    // where the count steps from target to target+1.
    double a = E_lo, b = E_hi;
    for (int it = 0; it < 200 && (b - a) > 0.25 * problem.eig_tol; ++it) {
        const double m = 0.5 * (a + b);
        if (nodes_at(m) <= target_nodes)
            a = m;
        else
            b = m;
        res.bracket_history.push_back({a, b});
        // Once the bracket is tight enough, prefer the matching function:
        // it is smooth in E and allows a clean sign-change refinement.
        if ((b - a) < 1e-2 * (E_hi - E_lo)) {
            auto ma = matching_function(prob, a);
            auto mb = matching_function(prob, b);
            if (ma.valid && mb.valid && ma.value * mb.value < 0.0) break;
        }
    }
    auto ma = matching_function(prob, a);
    auto mb = matching_function(prob, b);
    double E_best = 0.5 * (a + b);
    if (ma.valid && mb.valid && ma.value * mb.value < 0.0) {
        // Bisection on the Wronskian mismatch.
        double fa = ma.value;
        for (int it = 0; it < 200 && (b - a) > problem.eig_tol * 0.01; ++it) {
            const double m = 0.5 * (a + b);
            const auto mm = matching_function(prob, m);
            if (!mm.valid) break;
            if (fa * mm.value <= 0.0)
                b = m;
            else {
                a = m;
                fa = mm.value;
            }
            res.bracket_history.push_back({a, b});
        }
        E_best = 0.5 * (a + b);
    }
    res.E = E_best;

    // Independent verification of the found level.
    const SampledFunction ef = eigenfunction(problem, E_best, problem.grid_size);
    int nodes = 0;
    for (Eigen::Index i = 1; i < ef.psi.size(); ++i)
        if (ef.psi[i - 1] != 0.0 && ef.psi[i] != 0.0 && std::signbit(ef.psi[i]) != std::signbit(ef.psi[i - 1]))
            ++nodes;
    res.node_count = nodes;
    const ResidualResult rr = residual(problem, ef.r, ef.psi, E_best);
    res.residual_norm = rr.max_abs;
    res.converged = (nodes == target_nodes) && (b - a) <= std::max(problem.eig_tol, 1e-15 * std::fabs(E_best));
    if (!res.converged)
        res.message = nodes == target_nodes ? "eigenvalue bracket did not reach tolerance"
                                            : "node count mismatch after refinement";
    return res;
}

ResidualResult residual(const RadialProblem& problem, const Eigen::ArrayXd& r,
                        const Eigen::ArrayXd& psi, double E,
                        const std::function<double(double)>& rhs) {
    if (r.size() != psi.size() || r.size() < 7)
        throw std::invalid_argument("residual: need matching arrays with at least 7 samples");
    const Eigen::Index n = r.size();
    const double h = r[1] - r[0];
    for (Eigen::Index i = 1; i < n; ++i)
        if (std::fabs((r[i] - r[i - 1]) - h) > 1e-8 * std::fabs(h))
            throw std::invalid_argument("residual: grid must be uniform");
    ResidualResult out;
    for (Eigen::Index i = 2; i + 2 < n; ++i) {
        const double d2 =
            (-psi[i - 2] + 16.0 * psi[i - 1] - 30.0 * psi[i] + 16.0 * psi[i + 1] - psi[i + 2]) /
            (12.0 * h * h);
        const double d1 = (psi[i - 2] - 8.0 * psi[i - 1] + 8.0 * psi[i + 1] - psi[i + 2]) / (12.0 * h);
        double res = d2 + problem.friction_order / r[i] * d1 + problem.coefficient(r[i], E) * psi[i];
        if (rhs) res -= rhs(r[i]);
        out.max_abs = std::max(out.max_abs, std::fabs(res));
        const double q = problem.coefficient(r[i], E);
        if (q > 0.0 && h * std::sqrt(q) > 2.0 * 3.14159265358979323846 / 5.0) out.grid_adequate = false;
    }
    return out;
}

SampledFunction eigenfunction(const RadialProblem& problem, double E, int points) {
    problem.validate();
    if (points <= 0) points = problem.grid_size;
    const RadialProblem prob = (problem.friction_order == 0.0) ? problem
                                                               : liouville_normal_form(problem);
    const double p_half = 0.5 * problem.friction_order;
    double rt = outermost_turning_point(prob, E);
    if (rt <= prob.r_min || rt >= prob.r_max) rt = 0.5 * (prob.r_min + prob.r_max);

    SampledFunction out;
    out.r.resize(points);
    out.psi.resize(points);
    out.dpsi.resize(points);
    const double h = (prob.r_max - prob.r_min) / (points - 1);
    for (int i = 0; i < points; ++i) out.r[i] = prob.r_min + h * i;

    NormalForm nf{&prob, E};
    // Outward sweep, sampling via dense output up to the matching radius.
    Eigen::ArrayXd u(points), du(points);
    u.setZero();
    du.setZero();
    Eigen::Index next = 0;
    StepCallback cb;
    cb.on_step = [&](double r0, double r1, const Vec2&, const Vec2&, const DenseStep& dense) {
        while (next < points && out.r[next] <= r1 + 1e-300) {
            if (out.r[next] >= r0) {
                const Vec2 yi = dense.eval(out.r[next]);
                u[next] = yi[0];
                du[next] = yi[1];
                ++next;
            } else
                ++next;
        }
        return 1.0;
    };
    Vec2 y0 = series_start(prob, E, prob.r_min);
    u[0] = y0[0];
    du[0] = y0[1];
    next = 1;
    std::vector<double> fwd_targets;
    for (int i = 1; i < points; ++i)
        if (out.r[i] < rt) fwd_targets.push_back(out.r[i]);
    OdeOptions fwd_opt = ode_options_for(prob, E, true);
    fwd_opt.forced_points = &fwd_targets;
    auto fwd = integrate_dopri5([&nf](double r, const Vec2& y) { return nf.rhs(r, y); },
                                prob.r_min, rt, y0, fwd_opt, cb);
    const Eigen::Index n_fwd = next;
    const Vec2 y_match_out = fwd.y;

    // Inward sweep, collected in reverse.
    Eigen::Index prev = points - 1;
    StepCallback cbi;
    cbi.on_step = [&](double r0, double r1, const Vec2&, const Vec2&, const DenseStep& dense) {
        while (prev >= n_fwd && out.r[prev] >= r1 - 1e-300) {
            if (out.r[prev] <= r0) {
                const Vec2 yi = dense.eval(out.r[prev]);
                u[prev] = yi[0];
                du[prev] = yi[1];
                --prev;
            } else
                --prev;
        }
        return 1.0;
    };
    const double q_end = prob.coefficient(prob.r_max, E);
    Vec2 yin{1.0, -std::sqrt(std::max(-q_end, 0.0))};
    if (prev == points - 1 && out.r[prev] >= prob.r_max - 1e-300) {
        u[prev] = yin[0];
        du[prev] = yin[1];
        --prev;
    }
    std::vector<double> bwd_targets;
    for (Eigen::Index i = points - 1; i >= n_fwd; --i)
        if (out.r[i] > rt && out.r[i] < prob.r_max) bwd_targets.push_back(out.r[i]);
    OdeOptions bwd_opt = ode_options_for(prob, E, true);
    bwd_opt.forced_points = &bwd_targets;
    auto bwd = integrate_dopri5([&nf](double r, const Vec2& y) { return nf.rhs(r, y); },
                                prob.r_max, rt, yin, bwd_opt, cbi);

    // Match amplitudes at rt: scale the inward branch so u is continuous.
    const double scale = (std::fabs(bwd.y[0]) > kTiny) ? y_match_out[0] / bwd.y[0] : 0.0;
    for (Eigen::Index i = n_fwd; i < points; ++i) {
        u[i] *= scale;
        du[i] *= scale;
    }

    // Back to psi = r^{-p/2} u and normalize integral psi^2 r^2 dr = 1 on
    // the grid (trapezoid), fixing sign(psi) > 0 near the origin.
    double norm2 = 0.0;
    for (int i = 0; i < points; ++i) {
        const double rp = std::pow(out.r[i], -p_half);
        out.psi[i] = rp * u[i];
        out.dpsi[i] = rp * (du[i] - p_half * u[i] / out.r[i]);
        const double wgt = (i == 0 || i == points - 1) ? 0.5 : 1.0;
        norm2 += wgt * out.psi[i] * out.psi[i] * out.r[i] * out.r[i] * h;
    }
    if (norm2 > 0.0) {
        double s = 1.0 / std::sqrt(norm2);
        if (out.psi[std::min<Eigen::Index>(4, points - 1)] < 0.0) s = -s;
        out.psi *= s;
        out.dpsi *= s;
    }
    return out;
}

RadialProblem compactified_problem(const PhysicalParams& params, int n, int ell, double r_min,
                                   double r_max) {
    params.validate();
    RadialProblem prob;
    prob.friction_order = 2.0;
    prob.energy_scale = 2.0 * params.mass / (params.hbar * params.hbar);
    prob.const_term = -static_cast<double>(n) * n / (params.R * params.R);
    prob.inverse_power_terms.emplace_back(1, params.zeta());
    prob.inverse_power_terms.emplace_back(2, -lambda_D(ell, 4));
    if (params.theta != 0.0)
        prob.inverse_power_terms_E.emplace_back(2, params.zeta() * params.theta / params.hbar);
    prob.r_min = r_min;
    prob.r_max = r_max;
    return prob;
}

D6Result integrate_d6(const PhysicalParams& params, const QuantumNumbers& qn, double E,
                      double psi0, double dpsi0, double r_min, double r_max, int points) {
    params.validate();
    qn.validate();
    if (!(r_min > 0.0) || !(r_max > r_min)) throw std::invalid_argument("integrate_d6: bad domain");
    const double h2 = params.hbar * params.hbar;
    RadialProblem prob;
    prob.friction_order = 2.0;
    prob.energy_scale = 0.0;
    prob.const_term = params.alpha2(E) - static_cast<double>(qn.n) * qn.n / (params.R * params.R);
    prob.inverse_power_terms.emplace_back(2, -lambda_D(qn.ell, 4));
    prob.inverse_power_terms.emplace_back(3, params.mass * params.qe2 / (2.0 * h2 * params.R));
    prob.inverse_power_terms.emplace_back(
        4, 3.0 * params.mass * params.qe2 * E * params.theta / (2.0 * h2 * params.hbar * params.R));
    prob.r_min = r_min;
    prob.r_max = r_max;

    D6Result out;
    out.samples.r.setLinSpaced(points, r_min, r_max);
    out.samples.psi.resize(points);
    out.samples.dpsi.resize(points);
    // u = r psi (2/r friction)
    Vec2 y{r_min * psi0, psi0 + r_min * dpsi0};
    RadialProblem uform = liouville_normal_form(prob);
    NormalForm nfu{&uform, E};
    Eigen::Index next = 0;
    StepCallback cb;
    cb.on_step = [&](double r0, double r1, const Vec2&, const Vec2&, const DenseStep& dense) {
        while (next < points && out.samples.r[next] <= r1 + 1e-300) {
            if (out.samples.r[next] >= r0) {
                const Vec2 yi = dense.eval(out.samples.r[next]);
                const double rr = out.samples.r[next];
                out.samples.psi[next] = yi[0] / rr;
                out.samples.dpsi[next] = (yi[1] - yi[0] / rr) / rr;
                ++next;
            } else
                ++next;
        }
        return 1.0;
    };
    out.samples.psi[0] = psi0;
    out.samples.dpsi[0] = dpsi0;
    next = 1;
    OdeOptions opt = ode_options_for(uform, E, true);
    opt.min_step_floor = 1e-13 * (r_max - r_min);
    std::vector<double> targets(out.samples.r.data() + 1, out.samples.r.data() + points);
    opt.forced_points = &targets;
    auto status = integrate_dopri5([&nfu](double r, const Vec2& y) { return nfu.rhs(r, y); },
                                   r_min, r_max, y, opt, cb);
    out.step_collapse = status.step_collapse;
    out.min_step = status.min_step_seen;
    if (status.step_collapse)
        throw std::runtime_error("integrate_d6: step size collapsed near the singular origin at r ~ " +
                                 std::to_string(out.samples.r[std::max<Eigen::Index>(next - 1, 0)]));
    return out;
}

double d6_start_sensitivity(const PhysicalParams& params, const QuantumNumbers& qn, double E,
                            double r_min, double r_ref) {
    auto run = [&](double r0) {
        const auto res = integrate_d6(params, qn, E, 1.0, 0.0, r0, r_ref * 1.02, 600);
        // sample closest to r_ref
        Eigen::Index best = 0;
        double bd = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < res.samples.r.size(); ++i) {
            const double d = std::fabs(res.samples.r[i] - r_ref);
            if (d < bd) {
                bd = d;
                best = i;
            }
        }
        return res.samples.psi[best];
    };
    return std::fabs(run(r_min) - run(0.5 * r_min));
}

double kg_asymptotic(const PhysicalParams& params, const QuantumNumbers& qn, double E, double r,
                     double U) {
    if (!(r > 0.0)) throw std::domain_error("kg_asymptotic: r must be > 0");
    const auto b = potentials::kg_coefficients(qn, params, E);
    if (!(b.b0 < 0.0))
        throw std::domain_error("kg_asymptotic: b0 >= 0, no decaying asymptote in this regime");
    return U * std::exp(-std::sqrt(-b.b0) * r) / r;
}

SampledFunction kg_integrate_U(const PhysicalParams& params, const QuantumNumbers& qn, double E,
                               double r0, double r1, double U0, double dU0, int points) {
    // r1 < r0 integrates inward; that is the stable direction for the
    // decaying branch, since the e^{+2 sqrt(-b0) r} companion solution
    // of the U equation dies off against it going down in r.
    if (!(r0 > 0.0) || !(r1 > 0.0) || r0 == r1)
        throw std::invalid_argument("kg_integrate_U: bad domain");
    const auto b = potentials::kg_coefficients(qn, params, E);
    if (!(b.b0 < 0.0))
        throw std::domain_error("kg_integrate_U: b0 >= 0, no decaying asymptote in this regime");
    const double k = std::sqrt(-b.b0);
    auto f = [&b, k](double r, const Vec2& y) -> Vec2 {
        const double r2 = r * r;
        const double poly = b.b1 / r + b.b2 / r2 + b.b3 / (r2 * r) + b.b4 / (r2 * r2);
        return {y[1], 2.0 * k * y[1] - poly * y[0]};
    };
    SampledFunction out;
    out.r.setLinSpaced(points, r0, r1);
    out.psi.resize(points);
    out.dpsi.resize(points);
    out.psi[0] = U0;
    out.dpsi[0] = dU0;
    const double dir = (r1 >= r0) ? 1.0 : -1.0;
    Eigen::Index next = 1;
    StepCallback cb;
    cb.on_step = [&](double ra, double rb, const Vec2&, const Vec2&, const DenseStep& dense) {
        while (next < points && dir * (out.r[next] - rb) <= 1e-300) {
            if (dir * (out.r[next] - ra) >= 0.0) {
                const Vec2 yi = dense.eval(out.r[next]);
                out.psi[next] = yi[0];
                out.dpsi[next] = yi[1];
            }
            ++next;
        }
        return 1.0;
    };
    OdeOptions opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-14;
    std::vector<double> targets(out.r.data() + 1, out.r.data() + points);
    opt.forced_points = &targets;
    integrate_dopri5(f, r0, r1, Vec2{U0, dU0}, opt, cb);
    return out;
}

}  // namespace nckk::radial
