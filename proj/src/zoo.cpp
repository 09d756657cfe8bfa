#include "isolab/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace isolab {

namespace {

constexpr double PI = std::numbers::pi;

}  // namespace

double PlanarCurve::speed_defect() const {
    double worst = 0;
    for (int k = 0; k < n(); ++k)
        worst = std::max(worst, std::abs(std::hypot(dr[k], dz[k]) - 1.0));
    return worst;
}

double PlanarCurve::r_min() const {
    double m = r.empty() ? 0.0 : r[0];
    for (double v : r) m = std::min(m, v);
    return m;
}

void PlanarCurve::validate(double speed_tol, double r_floor) const {
    if (n() < 8) throw std::invalid_argument("PlanarCurve: needs at least 8 samples");
    if (speed_defect() > speed_tol)
        throw std::invalid_argument("PlanarCurve: not unit speed (defect = " +
                                    std::to_string(speed_defect()) + ")");
    if (r_min() < r_floor)
        throw std::invalid_argument("PlanarCurve: profile touches the axis (r_min = " +
                                    std::to_string(r_min()) + ")");
}

PlanarCurve circle_profile(double cr, double cz, double rho, int n) {
    PlanarCurve c;
    c.closed = true;
    c.length = 2 * PI * rho;
    c.r.resize(n);
    c.z.resize(n);
    c.dr.resize(n);
    c.dz.resize(n);
    c.d2r.resize(n);
    c.d2z.resize(n);
    for (int k = 0; k < n; ++k) {
        const double phi = c.s_at(k) / rho;
        c.r[k] = cr + rho * std::cos(phi);
        c.z[k] = cz + rho * std::sin(phi);
        c.dr[k] = -std::sin(phi);
        c.dz[k] = std::cos(phi);
        c.d2r[k] = -std::cos(phi) / rho;
        c.d2z[k] = -std::sin(phi) / rho;
    }
    return c;
}

PlanarCurve line_profile(double radius, double z0, double z1, int n) {
    PlanarCurve c;
    c.closed = false;
    c.length = z1 - z0;
    if (!(c.length > 0)) throw std::invalid_argument("line_profile: z1 must exceed z0");
    c.r.assign(n, radius);
    c.dr.assign(n, 0.0);
    c.dz.assign(n, 1.0);
    c.d2r.assign(n, 0.0);
    c.d2z.assign(n, 0.0);
    c.z.resize(n);
    for (int k = 0; k < n; ++k) c.z[k] = z0 + c.s_at(k);
    return c;
}

PlanarCurve arc_profile(double s_max, int n) {
    PlanarCurve c;
    c.closed = false;
    c.length = 2 * s_max;
    c.r.resize(n);
    c.z.resize(n);
    c.dr.resize(n);
    c.dz.resize(n);
    c.d2r.resize(n);
    c.d2z.resize(n);
    for (int k = 0; k < n; ++k) {
        const double s = -s_max + c.s_at(k);
        c.r[k] = std::cos(s);
        c.z[k] = std::sin(s);
        c.dr[k] = -std::sin(s);
        c.dz[k] = std::cos(s);
        c.d2r[k] = -std::cos(s);
        c.d2z[k] = -std::sin(s);
    }
    return c;
}

namespace {

// Cubic Hermite evaluation of periodic/open sampled data with exact nodal
// derivatives; good to O(h^4) in value and O(h^3) in slope.
struct HermiteSeries {
    const std::vector<double>* val;
    const std::vector<double>* der;  // derivative wrt s
    double ds;
    int n;
    bool closed;

    void locate(double s, int& k, double& u) const {
        double q = s / ds;
        if (closed) {
            q -= std::floor(q / n) * n;
            k = static_cast<int>(std::floor(q));
            if (k >= n) k = n - 1;
        } else {
            k = static_cast<int>(std::floor(q));
            k = std::clamp(k, 0, n - 2);
        }
        u = q - k;
    }
    double eval(double s) const {
        int k;
        double u;
        locate(s, k, u);
        const int k1 = closed ? (k + 1) % n : k + 1;
        const double p0 = (*val)[k], p1 = (*val)[k1];
        const double m0 = (*der)[k] * ds, m1 = (*der)[k1] * ds;
        const double u2 = u * u, u3 = u2 * u;
        return (2 * u3 - 3 * u2 + 1) * p0 + (u3 - 2 * u2 + u) * m0 +
               (-2 * u3 + 3 * u2) * p1 + (u3 - u2) * m1;
    }
    double eval_deriv(double s) const {
        int k;
        double u;
        locate(s, k, u);
        const int k1 = closed ? (k + 1) % n : k + 1;
        const double p0 = (*val)[k], p1 = (*val)[k1];
        const double m0 = (*der)[k] * ds, m1 = (*der)[k1] * ds;
        const double u2 = u * u;
        return ((6 * u2 - 6 * u) * p0 + (3 * u2 - 4 * u + 1) * m0 + (-6 * u2 + 6 * u) * p1 +
                (3 * u2 - 2 * u) * m1) /
               ds;
    }
};

struct CurveEval {
    // Hermite views over a PlanarCurve: position fed by (r, dr), slope by
    // (dr, d2r), curvature-level by (d2r, finite-diff d3).
    const PlanarCurve& c;
    std::vector<double> d3r, d3z;
    HermiteSeries R, Z, DR, DZ, D2R, D2Z;

    explicit CurveEval(const PlanarCurve& curve) : c(curve) {
        const int n = c.n();
        d3r.resize(n);
        d3z.resize(n);
        const double ds = c.ds();
        for (int k = 0; k < n; ++k) {
            int kp = (k + 1), km = (k - 1);
            if (c.closed) {
                kp %= n;
                km = (km + n) % n;
            } else {
                kp = std::min(kp, n - 1);
                km = std::max(km, 0);
            }
            const double span = (kp - km == 0) ? 1.0 : (kp > km ? (kp - km) : (kp + n - km)) * ds;
            d3r[k] = (c.d2r[kp] - c.d2r[km]) / span;
            d3z[k] = (c.d2z[kp] - c.d2z[km]) / span;
        }
        R = {&c.r, &c.dr, ds, n, c.closed};
        Z = {&c.z, &c.dz, ds, n, c.closed};
        DR = {&c.dr, &c.d2r, ds, n, c.closed};
        DZ = {&c.dz, &c.d2z, ds, n, c.closed};
        D2R = {&c.d2r, &d3r, ds, n, c.closed};
        D2Z = {&c.d2z, &d3z, ds, n, c.closed};
    }

    void eval(double s, double p[2], double d1[2], double d2[2], double d3[2]) const {
        p[0] = R.eval(s);
        p[1] = Z.eval(s);
        d1[0] = DR.eval(s);
        d1[1] = DZ.eval(s);
        d2[0] = D2R.eval(s);
        d2[1] = D2Z.eval(s);
        d3[0] = D2R.eval_deriv(s);
        d3[1] = D2Z.eval_deriv(s);
    }
};

}  // namespace

PlanarCurve oscillating_curve(const PlanarCurve& base, const FamilySpec& fs) {
    base.validate();
    if (fs.frequency <= 0) throw std::invalid_argument("oscillating_curve: frequency must be positive");
    if (!(fs.amplitude > 0)) {
        if (fs.amplitude == 0.0) return base;
        throw std::invalid_argument("oscillating_curve: amplitude must be nonnegative");
    }
    const double a = fs.amplitude;
    const int kf = fs.frequency;
    const double eps = a / (static_cast<double>(kf) * kf);
    const double omega = 2 * PI * kf / base.length;  // integer oscillations along the curve

    CurveEval ev(base);
    // Perturbed curve c(s) = gamma + eps sin(w s) nu, nu = (dz, -dr).
    auto eval_c = [&](double s, double p[2], double d1[2], double d2[2]) {
        double g[2], g1[2], g2[2], g3[2];
        ev.eval(s, g, g1, g2, g3);
        const double sw = std::sin(omega * s), cw = std::cos(omega * s);
        const double nu[2] = {g1[1], -g1[0]};
        const double nu1[2] = {g2[1], -g2[0]};
        const double nu2[2] = {g3[1], -g3[0]};
        for (int d = 0; d < 2; ++d) {
            p[d] = g[d] + eps * sw * nu[d];
            d1[d] = g1[d] + eps * (omega * cw * nu[d] + sw * nu1[d]);
            d2[d] = g2[d] + eps * (-omega * omega * sw * nu[d] + 2 * omega * cw * nu1[d] +
                                   sw * nu2[d]);
        }
    };

    // Arclength of the perturbed curve on a dense parameter grid.
    const int dense = std::max(16 * base.n(), 64 * kf);
    const double hs = base.length / dense;
    std::vector<double> sigma(dense + 1, 0.0);
    auto speed = [&](double s) {
        double p[2], d1[2], d2[2];
        eval_c(s, p, d1, d2);
        return std::hypot(d1[0], d1[1]);
    };
    // Composite Simpson per interval.
    for (int k = 0; k < dense; ++k) {
        const double s0 = k * hs;
        sigma[k + 1] =
            sigma[k] + hs / 6.0 * (speed(s0) + 4 * speed(s0 + 0.5 * hs) + speed(s0 + hs));
    }
    const double total = sigma[dense];
    if (!(total > 0.5 * base.length))
        throw std::runtime_error("oscillating_curve: re-parametrization failed (degenerate speed)");

    const int n = base.n();
    PlanarCurve out;
    out.closed = base.closed;
    out.length = total;
    out.r.resize(n);
    out.z.resize(n);
    out.dr.resize(n);
    out.dz.resize(n);
    out.d2r.resize(n);
    out.d2z.resize(n);

    const int nseg = base.closed ? n : n - 1;
    int seg = 0;
    for (int k = 0; k < n; ++k) {
        const double target = total * k / nseg;
        while (seg + 1 < dense && sigma[seg + 1] < target) ++seg;
        // Newton on sigma(s) = target, seeded by linear interpolation.
        double s = seg * hs + hs * (target - sigma[seg]) /
                                  std::max(sigma[seg + 1] - sigma[seg], 1e-300);
        for (int it = 0; it < 50; ++it) {
            // Fine Simpson correction from the bracketing node keeps sigma(s) accurate.
            const double s0 = seg * hs;
            const double val = sigma[seg] + (s - s0) / 6.0 *
                                                (speed(s0) + 4 * speed(0.5 * (s0 + s)) + speed(s));
            const double step = (val - target) / speed(s);
            s -= step;
            if (std::abs(step) < 1e-12 * base.length) break;
        }
        double p[2], d1[2], d2[2];
        eval_c(s, p, d1, d2);
        const double sp = std::hypot(d1[0], d1[1]);
        out.r[k] = p[0];
        out.z[k] = p[1];
        out.dr[k] = d1[0] / sp;
        out.dz[k] = d1[1] / sp;
        // Unit-speed second derivative: c''/|c'|^2 - c' (c'.c'') / |c'|^4.
        const double cdot = d1[0] * d2[0] + d1[1] * d2[1];
        out.d2r[k] = d2[0] / (sp * sp) - d1[0] * cdot / (sp * sp * sp * sp);
        out.d2z[k] = d2[1] / (sp * sp) - d1[1] * cdot / (sp * sp * sp * sp);
    }
    if (out.r_min() <= 0 && base.r_min() > 0)
        throw std::runtime_error("oscillating_curve: perturbation violates r > 0");
    if (out.speed_defect() > 1e-8)
        throw std::runtime_error("oscillating_curve: re-parametrization failed (speed defect = " +
                                 std::to_string(out.speed_defect()) + ")");
    return out;
}

Immersion revolution(const PlanarCurve& curve, int n1, int n2, double speed_tol, double r_floor) {
    curve.validate(speed_tol, r_floor);
    CurveEval ev(curve);
    const int nc = curve.n();
    const double ds = curve.ds();

    // t(s) = integral ds / r; composite Simpson over the sample grid.
    std::vector<double> tcum(nc + 1, 0.0);
    const int nseg = curve.closed ? nc : nc - 1;
    for (int k = 0; k < nseg; ++k) {
        const double s0 = k * ds;
        const double mid = 1.0 / ev.R.eval(s0 + 0.5 * ds);
        const double left = 1.0 / curve.r[k];
        const double right = 1.0 / curve.r[curve.closed ? (k + 1) % nc : k + 1];
        tcum[k + 1] = tcum[k] + ds / 6.0 * (left + 4 * mid + right);
    }
    const double T = tcum[nseg];

    GridChart chart;
    chart.x1_min = 0;
    chart.x1_max = 2 * PI;
    chart.periodic1 = true;
    chart.x2_min = curve.closed ? 0.0 : -0.5 * T;
    chart.x2_max = curve.closed ? T : 0.5 * T;
    chart.periodic2 = curve.closed;
    chart.n1 = n1;
    chart.n2 = n2;
    chart.validate();

    Immersion im(chart, 3);
    im.lambda_analytic = ScalarField(chart);
    int seg = 0;
    for (int j = 0; j < n2; ++j) {
        const double tj = curve.closed ? chart.x2(j) : chart.x2(j) + 0.5 * T;
        while (seg + 1 < nseg && tcum[seg + 1] < tj) ++seg;
        double s = seg * ds + ds * (tj - tcum[seg]) /
                                  std::max(tcum[seg + 1] - tcum[seg], 1e-300);
        for (int it = 0; it < 50; ++it) {
            const double s0 = seg * ds;
            const double val = tcum[seg] + (s - s0) / 6.0 *
                                               (1.0 / ev.R.eval(s0) +
                                                4.0 / ev.R.eval(0.5 * (s0 + s)) + 1.0 / ev.R.eval(s));
            const double step = (val - tj) * ev.R.eval(s);
            s -= step;
            if (std::abs(step) < 1e-13 * curve.length) break;
        }
        const double rj = ev.R.eval(s);
        const double zj = ev.Z.eval(s);
        if (rj < r_floor)
            throw std::runtime_error("revolution: profile reaches r_min at t index " +
                                     std::to_string(j));
        for (int i = 0; i < n1; ++i) {
            const double th = chart.x1(i);
            im.at(i, j) = VecM(rj * std::cos(th), rj * std::sin(th), zj);
            im.lambda_analytic->at(i, j) = std::log(rj);
        }
    }
    return im;
}

namespace {

double param(const std::map<std::string, double>& p, const std::string& key, double dflt) {
    auto it = p.find(key);
    return it == p.end() ? dflt : it->second;
}

struct PointEval {
    VecM phi;
    double lambda;
    int m;
};

PointEval eval_analytic(const std::string& name, const std::map<std::string, double>& p,
                        double u, double v) {
    if (name == "flat_plane") return {VecM(u, v, 0.0), 0.0, 3};
    if (name == "cylinder") {
        const double R = param(p, "radius", 1.0);
        return {VecM(R * std::cos(u), R * std::sin(u), R * v), std::log(R), 3};
    }
    if (name == "sphere_stereographic") {
        const double w = 1.0 + u * u + v * v;
        return {VecM(2 * u / w, 2 * v / w, (u * u + v * v - 1) / w), std::log(2.0 / w), 3};
    }
    if (name == "catenoid") {
        const double ch = std::cosh(v);
        return {VecM(ch * std::cos(u), ch * std::sin(u), v), std::log(ch), 3};
    }
    if (name == "enneper") {
        const double w = 1.0 + u * u + v * v;
        return {VecM(u - u * u * u / 3 + u * v * v, -v + v * v * v / 3 - v * u * u, u * u - v * v),
                std::log(w), 3};
    }
    if (name == "torus_of_revolution") {
        const double R0 = param(p, "major_radius", 2.0);
        if (!(R0 > 1.0))
            throw std::invalid_argument("torus_of_revolution: major_radius must exceed 1");
        const double c = std::sqrt(R0 * R0 - 1.0);
        const double w = std::sqrt((R0 + 1.0) / (R0 - 1.0));
        const double T = 2 * PI / c;
        // Isothermal latitude: s(t) = 2 atan2(w sin(ct/2), cos(ct/2)) on the
        // principal branch; r = R0 + cos s then satisfies ds/dt = r.
        const double tt = v - T * std::floor(v / T + 0.5);
        const double s = 2 * std::atan2(w * std::sin(0.5 * c * tt), std::cos(0.5 * c * tt));
        const double r = R0 + std::cos(s);
        return {VecM(r * std::cos(u), r * std::sin(u), std::sin(s)), std::log(r), 3};
    }
    if (name == "clifford_torus_r4") {
        const double a = 1.0 / std::sqrt(2.0);
        VecM q(4);
        q[0] = a * std::cos(u / a);
        q[1] = a * std::sin(u / a);
        q[2] = a * std::cos(v / a);
        q[3] = a * std::sin(v / a);
        return {q, 0.0, 4};
    }
    throw std::invalid_argument("analytic: unknown generator '" + name + "'");
}

}  // namespace

Immersion analytic(const std::string& name, const std::map<std::string, double>& params,
                   const GridChart& chart) {
    chart.validate();
    PointEval probe = eval_analytic(name, params, chart.x1(0), chart.x2(0));
    Immersion im(chart, probe.m);
    im.lambda_analytic = ScalarField(chart);
    for (int j = 0; j < chart.n2; ++j)
        for (int i = 0; i < chart.n1; ++i) {
            PointEval e = eval_analytic(name, params, chart.x1(i), chart.x2(j));
            im.at(i, j) = e.phi;
            im.lambda_analytic->at(i, j) = e.lambda;
        }
    return im;
}

Immersion analytic(const std::string& name, const GridChart& chart) {
    return analytic(name, {}, chart);
}

Immersion analytic_rotated(const std::string& name, const std::map<std::string, double>& params,
                           const GridChart& chart, double angle) {
    GridChart c = chart;
    c.periodic1 = c.periodic2 = false;
    c.validate();
    const double ca = std::cos(angle), sa = std::sin(angle);
    PointEval probe = eval_analytic(name, params, c.x1(0), c.x2(0));
    Immersion im(c, probe.m);
    for (int j = 0; j < c.n2; ++j)
        for (int i = 0; i < c.n1; ++i) {
            const double u = ca * c.x1(i) - sa * c.x2(j);
            const double v = sa * c.x1(i) + ca * c.x2(j);
            im.at(i, j) = eval_analytic(name, params, u, v).phi;
        }
    return im;
}

GridChart default_chart(const std::string& name, int n) {
    GridChart c;
    c.n1 = c.n2 = n;
    if (name == "cylinder") {
        c = {0, 2 * PI, 0, 1, n, n, true, false};
    } else if (name == "sphere_stereographic") {
        c = {-1, 1, -1, 1, n, n, false, false};
    } else if (name == "catenoid") {
        c = {0, 2 * PI, -1, 1, n, n, true, false};
    } else if (name == "enneper") {
        c = {-1, 1, -1, 1, n, n, false, false};
    } else if (name == "torus_of_revolution") {
        c = {0, 2 * PI, 0, 2 * PI / std::sqrt(3.0), n, n, true, true};
    } else if (name == "flat_plane") {
        c = {0, 1, 0, 1, n, n, false, false};
    } else if (name == "clifford_torus_r4") {
        const double period = 2 * PI / std::sqrt(2.0);
        c = {0, period, 0, period, n, n, true, true};
    } else {
        throw std::invalid_argument("default_chart: unknown generator '" + name + "'");
    }
    return c;
}

}  // namespace isolab
