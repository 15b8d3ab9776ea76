#include "atomphase/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace atomphase {

namespace {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule,
// on [-1, 1]. Values from the QUADPACK tables.
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

struct PanelEstimate {
    double k15;
    double g7;
    double resabs;  // K15 applied to |f|, used as a machine-noise floor
};

PanelEstimate gk15_panel(const std::function<double(double)>& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double m = 0.5 * (a + b);

    const double fc = f(m);
    double k15 = kWgk[7] * fc;
    double g7 = kWg[3] * fc;
    double resabs = kWgk[7] * std::fabs(fc);

    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        const double f1 = f(m - dx);
        const double f2 = f(m + dx);
        k15 += kWgk[i] * (f1 + f2);
        resabs += kWgk[i] * (std::fabs(f1) + std::fabs(f2));
        if (i % 2 == 1) g7 += kWg[(i - 1) / 2] * (f1 + f2);
    }
    return {h * k15, h * g7, std::fabs(h) * resabs};
}

struct AdaptiveState {
    const std::function<double(double)>& f;
    int max_depth;
    double value = 0.0;
    double error = 0.0;
    bool depth_exceeded = false;

    void refine(double a, double b, const PanelEstimate& p, double tol, int depth) {
        const double err = std::fabs(p.k15 - p.g7);
        const double noise_floor = 50.0 * std::numeric_limits<double>::epsilon() * p.resabs;
        const double width_floor =
            4.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(a), std::fabs(b));

        if (err <= tol || err <= noise_floor || (b - a) <= width_floor) {
            value += p.k15;
            error += err;
            return;
        }
        if (depth >= max_depth) {
            value += p.k15;
            error += err;
            depth_exceeded = true;
            return;
        }
        const double m = 0.5 * (a + b);
        const PanelEstimate left = gk15_panel(f, a, m);
        const PanelEstimate right = gk15_panel(f, m, b);
        refine(a, m, left, 0.5 * tol, depth + 1);
        refine(m, b, right, 0.5 * tol, depth + 1);
    }
};

}  // namespace

IntegralResult integrate(const std::function<double(double)>& f, double a, double b,
                         const QuadratureConfig& cfg) {
    cfg.validate();
    if (a > b) throw std::invalid_argument("integrate: requires a <= b");
    if (a == b) return {0.0, 0.0};

    const PanelEstimate whole = gk15_panel(f, a, b);
    if (!std::isfinite(whole.k15))
        throw std::invalid_argument("integrate: integrand not finite on [a, b]");

    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(whole.k15));

    AdaptiveState state{f, cfg.max_depth};
    state.refine(a, b, whole, tol, 0);

    IntegralResult result{state.value, state.error};
    if (state.depth_exceeded && state.error > std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(state.value)))
        throw QuadratureError("integrate: max_depth exceeded before reaching tolerance", result);
    return result;
}

double find_root(const std::function<double(double)>& g, double lo, double hi,
                 const RootConfig& cfg) {
    cfg.validate();
    if (!(lo <= hi)) throw std::invalid_argument("find_root: requires lo <= hi");

    double a = lo, b = hi;
    double fa = g(a), fb = g(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw RootError("find_root: root not bracketed by [lo, hi]");

    // Brent: inverse quadratic / secant steps with a bisection fallback.
    double c = a, fc = fa;
    double d = b - a, e = d;
    const double eps = std::numeric_limits<double>::epsilon();

    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * eps * std::fabs(b) + 0.5 * cfg.rel_tol * std::max(std::fabs(b), 1e-300);
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) return b;

        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::fabs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = g(b);
    }
    throw RootError("find_root: max_iter exceeded");
}

}  // namespace atomphase
