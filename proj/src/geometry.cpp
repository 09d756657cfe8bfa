#include "isolab/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace isolab {

namespace {

std::string node_label(const GridChart& c, int i, int j) {
    return "node (" + std::to_string(i) + "," + std::to_string(j) + ") at x=(" +
           std::to_string(c.x1(i)) + "," + std::to_string(c.x2(j)) + ")";
}

struct Frames {
    VecField t1, t2;       // orthonormalized tangents (Gram-Schmidt)
    ScalarField lambda;
    ScalarField e2l;       // e^{2 lambda}
};

Frames build_frames(const Immersion& im, const ImmersionDerivs& d, const Tolerances& tol) {
    const GridChart& c = im.chart;
    Frames fr{VecField(c, VecM(im.m)), VecField(c, VecM(im.m)), ScalarField(c), ScalarField(c)};
    for (int j = 0; j < c.n2; ++j)
        for (int i = 0; i < c.n1; ++i) {
            const VecM& g1 = d.d1.at(i, j);
            const VecM& g2 = d.d2.at(i, j);
            const double a1 = norm(g1), a2 = norm(g2);
            const double cross2 = std::max(a1 * a1 * a2 * a2 - dot(g1, g2) * dot(g1, g2), 0.0);
            if (a1 <= 0 || a2 <= 0 || std::sqrt(cross2) <= tol.rank_gate * a1 * a2)
                throw std::runtime_error("rank deficiency at " + node_label(c, i, j));
            VecM t1 = (1.0 / a1) * g1;
            VecM t2 = g2 - dot(g2, t1) * t1;
            t2 = (1.0 / norm(t2)) * t2;
            fr.t1.at(i, j) = t1;
            fr.t2.at(i, j) = t2;
            // Symmetric discrete conformal factor: keeps the operators exactly
            // equivariant under swapping the two chart axes.
            fr.lambda.at(i, j) = 0.5 * std::log(a1 * a2);
            fr.e2l.at(i, j) = a1 * a2;
        }
    return fr;
}

VecField scale_field(const VecField& f, const ScalarField& s) {
    VecField out(f.chart, VecM(f.v.empty() ? 3 : f.v[0].m));
    for (size_t k = 0; k < f.v.size(); ++k) out.v[k] = s.v[k] * f.v[k];
    return out;
}

CplxField dbar(const CplxField& f) {
    CplxField d1f = partial(f, 1), d2f = partial(f, 2);
    CplxField out(f.chart);
    for (size_t k = 0; k < f.v.size(); ++k)
        out.v[k] = 0.5 * (d1f.v[k] + cplx(0, 1) * d2f.v[k]);
    return out;
}

}  // namespace

ImmersionDerivs immersion_partials(const Immersion& im) {
    im.chart.validate();
    VecField phi(im.chart, VecM(im.m));
    phi.v = im.phi;
    ImmersionDerivs d;
    d.d1 = partial(phi, 1);
    d.d2 = partial(phi, 2);
    d.d11 = partial2(phi, 1);
    d.d22 = partial2(phi, 2);
    d.d12 = partial_mixed(phi);
    return d;
}

VecM project_normal(const VecM& v, const VecM& t1, const VecM& t2) {
    return v - dot(v, t1) * t1 - dot(v, t2) * t2;
}

QuadraticDifferential make_constant_differential(const GridChart& chart, cplx value) {
    QuadraticDifferential q{chart, CplxField(chart, value), 0.0};
    return q;
}

double cauchy_riemann_residual(const CplxField& f) {
    return interior_norms(magnitude(dbar(f))).linf;
}

ConformalFactorResult conformal_factor(const Immersion& im, const Tolerances& tol) {
    const GridChart& c = im.chart;
    ImmersionDerivs d = immersion_partials(im);
    ConformalFactorResult r{ScalarField(c), 0.0};
    for (int j = 0; j < c.n2; ++j)
        for (int i = 0; i < c.n1; ++i) {
            const VecM& g1 = d.d1.at(i, j);
            const VecM& g2 = d.d2.at(i, j);
            const double a1 = norm(g1), a2 = norm(g2);
            const double cross2 = std::max(a1 * a1 * a2 * a2 - dot(g1, g2) * dot(g1, g2), 0.0);
            if (a1 <= 0 || a2 <= 0 || std::sqrt(cross2) <= tol.rank_gate * a1 * a2)
                throw std::runtime_error("rank deficiency at " + node_label(c, i, j));
            r.lambda.at(i, j) = 0.5 * std::log(a1 * a1);
            const double scale2 = std::max(a1 * a1, a2 * a2);
            const double defect = std::max(std::abs(a1 - a2), std::abs(dot(g1, g2)));
            r.residual = std::max(r.residual, defect / scale2);
        }
    return r;
}

FrameField gauss_map(const Immersion& im, const Tolerances& tol) {
    const GridChart& c = im.chart;
    ImmersionDerivs d = immersion_partials(im);
    Frames fr = build_frames(im, d, tol);
    FrameField out{VecField(c, VecM(im.m)), VecField(c, VecM(im.m)), fr.lambda,
                   BladeField(c, im.m, im.m - 2)};
    for (int j = 0; j < c.n2; ++j)
        for (int i = 0; i < c.n1; ++i) {
            // Unit tangents from raw partials (not Gram-Schmidt): these house
            // e_i = e^{-lambda} d_i phi exactly as defined.
            const VecM& g1 = d.d1.at(i, j);
            const VecM& g2 = d.d2.at(i, j);
            VecM e1 = (1.0 / norm(g1)) * g1;
            VecM e2 = (1.0 / norm(g2)) * g2;
            out.e1.at(i, j) = e1;
            out.e2.at(i, j) = e2;
            out.n.set(i, j, star(wedge(mv_from_vector(e1), mv_from_vector(e2))));
        }
    return out;
}

WeingartenField weingarten(const Immersion& im, const Tolerances& tol) {
    const GridChart& c = im.chart;
    ImmersionDerivs d = immersion_partials(im);
    Frames fr = build_frames(im, d, tol);

    WeingartenField w{CVecField(c, CVecM(im.m)), CVecField(c, CVecM(im.m)), 0.0, 0.0};
    ScalarField hnorm(c);
    for (int j = 0; j < c.n2; ++j)
        for (int i = 0; i < c.n1; ++i) {
            const VecM& t1 = fr.t1.at(i, j);
            const VecM& t2 = fr.t2.at(i, j);
            const double inv = 1.0 / fr.e2l.at(i, j);
            const VecM re = 0.5 * inv * project_normal(d.d11.at(i, j) - d.d22.at(i, j), t1, t2);
            const VecM imv = -inv * project_normal(d.d12.at(i, j), t1, t2);
            w.h0.at(i, j) = CVecM(re, imv);
            const VecM Hvec = 0.5 * inv * project_normal(d.d11.at(i, j) + d.d22.at(i, j), t1, t2);
            hnorm.at(i, j) = norm(Hvec);
        }

    // Divergence form: 2 dz [ e^{-2 lambda} dz phi ].
    CVecField g(c, CVecM(im.m));
    for (size_t k = 0; k < g.v.size(); ++k) {
        const double inv = 1.0 / fr.e2l.v[k];
        g.v[k] = CVecM(0.5 * inv * d.d1.v[k], -0.5 * inv * d.d2.v[k]);
    }
    CVecField g1 = partial(g, 1), g2 = partial(g, 2);
    for (size_t k = 0; k < g.v.size(); ++k) {
        // (d1 - i d2)(gre + i gim) = (d1 gre + d2 gim) + i (d1 gim - d2 gre)
        w.h0_div.v[k] = CVecM(g1.v[k].re + g2.v[k].im, g1.v[k].im - g2.v[k].re);
    }

    ScalarField gap(c), h0mag(c);
    for (size_t k = 0; k < g.v.size(); ++k) {
        gap.v[k] = norm(w.h0.v[k] - w.h0_div.v[k]);
        h0mag.v[k] = norm(w.h0.v[k]);
    }
    const double num = interior_norms(gap).l2;
    const double den = std::max({interior_norms(h0mag).l2,
                                 interior_norms(magnitude(w.h0_div)).l2,
                                 interior_norms(hnorm).l2});
    // Flat charts have both fields at roundoff; report the absolute gap then.
    w.rel_gap = den > 1e-8 ? num / den : num;

    for (int j = 0; j < c.n2; ++j)
        for (int i = 0; i < c.n1; ++i) {
            const CVecM& h0 = w.h0.at(i, j);
            const VecM& t1 = fr.t1.at(i, j);
            const VecM& t2 = fr.t2.at(i, j);
            const VecM tan_re = h0.re - project_normal(h0.re, t1, t2);
            const VecM tan_im = h0.im - project_normal(h0.im, t1, t2);
            w.normality_residual =
                std::max(w.normality_residual, std::sqrt(norm2(tan_re) + norm2(tan_im)));
        }
    return w;
}

namespace {

// d1[e^{-2l} d2 phi] + d2[e^{-2l} d1 phi]: the coordinate form whose vanishing
// characterizes isothermic charts with unit differential.
VecField coordinate_form_field(const Immersion& im, const ImmersionDerivs& d, const Frames& fr) {
    ScalarField inv(im.chart);
    for (size_t k = 0; k < inv.v.size(); ++k) inv.v[k] = 1.0 / fr.e2l.v[k];
    VecField a = scale_field(d.d2, inv);
    VecField b = scale_field(d.d1, inv);
    VecField da = partial(a, 1), db = partial(b, 2);
    VecField out(im.chart, VecM(im.m));
    for (size_t k = 0; k < out.v.size(); ++k) out.v[k] = da.v[k] + db.v[k];
    return out;
}

}  // namespace

IsothermicResidual isothermic_residual(const Immersion& im, const QuadraticDifferential& q,
                                       const Tolerances& tol) {
    if (!q.chart.same_as(im.chart))
        throw std::invalid_argument("isothermic_residual: differential lives on another chart");
    const GridChart& c = im.chart;
    ImmersionDerivs d = immersion_partials(im);
    Frames fr = build_frames(im, d, tol);
    WeingartenField w = weingarten(im, tol);

    IsothermicResidual r{ScalarField(c), coordinate_form_field(im, d, fr), 0, 0, 0};
    ScalarField idgap(c);
    for (size_t k = 0; k < r.pointwise.v.size(); ++k) {
        const cplx f = q.f.v[k];
        const CVecM& h0 = w.h0.v[k];
        // Im(conj(f) h0) = f_re h0_im - f_im h0_re
        const VecM imv = f.real() * h0.im - f.imag() * h0.re;
        r.pointwise.v[k] = norm(imv);
        idgap.v[k] = norm(h0.im - 0.5 * r.coordinate_form.v[k]);
    }
    FieldNorms n = interior_norms(r.pointwise);
    r.linf_interior = n.linf;
    r.l1_interior = n.l1;
    r.identity_gap = interior_norms(idgap).linf;
    return r;
}

IsothermicResidual isothermic_residual(const Immersion& im, const Tolerances& tol) {
    return isothermic_residual(im, make_constant_differential(im.chart), tol);
}

MeanCurvatureResult mean_curvature(const Immersion& im, const Tolerances& tol) {
    const GridChart& c = im.chart;
    ImmersionDerivs d = immersion_partials(im);
    Frames fr = build_frames(im, d, tol);
    MeanCurvatureResult r{VecField(c, VecM(im.m)), 0.0};
    ScalarField density(c);
    for (int j = 0; j < c.n2; ++j)
        for (int i = 0; i < c.n1; ++i) {
            const double inv = 1.0 / fr.e2l.at(i, j);
            const VecM H = 0.5 * inv *
                           project_normal(d.d11.at(i, j) + d.d22.at(i, j), fr.t1.at(i, j),
                                          fr.t2.at(i, j));
            r.H.at(i, j) = H;
            density.at(i, j) = norm2(H) * fr.e2l.at(i, j);
        }
    r.willmore_energy = integrate(density);
    return r;
}

namespace {

VecField willmore_flux_divergence(const Immersion& im, const Tolerances& tol) {
    const GridChart& c = im.chart;
    ImmersionDerivs d = immersion_partials(im);
    Frames fr = build_frames(im, d, tol);
    MeanCurvatureResult mc = mean_curvature(im, tol);
    FrameField gm = gauss_map(im, tol);

    VecField dH1 = partial(mc.H, 1), dH2 = partial(mc.H, 2);
    BladeField dn1 = partial(gm.n, 1), dn2 = partial(gm.n, 2);

    VecField F1(c, VecM(im.m)), F2(c, VecM(im.m));
    for (int j = 0; j < c.n2; ++j)
        for (int i = 0; i < c.n1; ++i) {
            const VecM& t1 = fr.t1.at(i, j);
            const VecM& t2 = fr.t2.at(i, j);
            const Multivector mvH = mv_from_vector(mc.H.at(i, j));
            // star(grad^perp n ^ H) with grad^perp = (-d2, d1)
            const VecM s1 = -1.0 * mv_to_vector(star(wedge(dn2.get(i, j), mvH)));
            const VecM s2 = mv_to_vector(star(wedge(dn1.get(i, j), mvH)));
            F1.at(i, j) = dH1.at(i, j) - 3.0 * project_normal(dH1.at(i, j), t1, t2) + s1;
            F2.at(i, j) = dH2.at(i, j) - 3.0 * project_normal(dH2.at(i, j), t1, t2) + s2;
        }
    VecField div1 = partial(F1, 1), div2 = partial(F2, 2);
    VecField div(c, VecM(im.m));
    for (size_t k = 0; k < div.v.size(); ++k) div.v[k] = div1.v[k] + div2.v[k];
    return div;
}

}  // namespace

WillmoreResidual willmore_residual(const Immersion& im, const Tolerances& tol) {
    if (im.m > 6) throw std::invalid_argument("willmore_residual: ambient dimension above 6");
    WillmoreResidual r;
    r.divflux = willmore_flux_divergence(im, tol);
    FieldNorms n = interior_norms(magnitude(r.divflux));
    r.l1_interior = n.l1;
    r.linf_interior = n.linf;
    return r;
}

ConstrainedWillmoreResidual constrained_willmore_residual(const Immersion& im, double Q,
                                                          const Tolerances& tol) {
    const GridChart& c = im.chart;
    ImmersionDerivs d = immersion_partials(im);
    Frames fr = build_frames(im, d, tol);
    WeingartenField w = weingarten(im, tol);
    MeanCurvatureResult mc = mean_curvature(im, tol);
    VecField V = coordinate_form_field(im, d, fr);
    VecField div = willmore_flux_divergence(im, tol);

    ConstrainedWillmoreResidual r{VecField(c, VecM(im.m)), CplxField(c), 0, 0, 0};
    for (size_t k = 0; k < r.residual.v.size(); ++k) {
        r.residual.v[k] = div.v[k] - Q * V.v[k];
        r.f.v[k] = fr.e2l.v[k] * dot_bilinear(w.h0.v[k], mc.H.v[k]);
    }
    r.f_dbar_residual = interior_norms(magnitude(dbar(r.f))).linf;
    FieldNorms n = interior_norms(magnitude(r.residual));
    r.l1_interior = n.l1;
    r.linf_interior = n.linf;
    return r;
}

CodazziResidual codazzi_residual(const Immersion& im, const Tolerances& tol) {
    const GridChart& c = im.chart;
    ImmersionDerivs d = immersion_partials(im);
    Frames fr = build_frames(im, d, tol);
    WeingartenField w = weingarten(im, tol);
    MeanCurvatureResult mc = mean_curvature(im, tol);

    CplxField g(c);
    for (size_t k = 0; k < g.v.size(); ++k)
        g.v[k] = fr.e2l.v[k] * dot_bilinear(w.h0.v[k], mc.H.v[k]);
    CplxField dbar_g = dbar(g);

    VecField dH1 = partial(mc.H, 1), dH2 = partial(mc.H, 2);
    CodazziResidual r{CplxField(c), 0.0};
    for (size_t k = 0; k < r.pointwise.v.size(); ++k) {
        const CVecM dzH(0.5 * dH1.v[k], -0.5 * dH2.v[k]);
        const CVecM dzbH(0.5 * dH1.v[k], 0.5 * dH2.v[k]);
        const cplx lhs = dbar_g.v[k] / fr.e2l.v[k];
        const cplx rhs = dot_bilinear(dzH, mc.H.v[k]) + dot_bilinear(w.h0.v[k], dzbH);
        r.pointwise.v[k] = lhs - rhs;
    }
    r.linf_interior = interior_norms(magnitude(r.pointwise)).linf;
    return r;
}

ChristoffelDual christoffel_dual(const Immersion& im, const Tolerances& tol) {
    const GridChart& c = im.chart;
    IsothermicResidual iso = isothermic_residual(im, tol);
    if (iso.linf_interior > tol.isothermic_gate)
        throw std::runtime_error(
            "christoffel_dual: not isothermic in these coordinates (residual = " +
            std::to_string(iso.linf_interior) + ")");

    ImmersionDerivs d = immersion_partials(im);
    Frames fr = build_frames(im, d, tol);
    // 1-form P dx1 + Q dx2 with P = e^{-2l} d1 phi, Q = -e^{-2l} d2 phi.
    VecField P(c, VecM(im.m)), Qf(c, VecM(im.m));
    for (size_t k = 0; k < P.v.size(); ++k) {
        const double inv = 1.0 / fr.e2l.v[k];
        P.v[k] = inv * d.d1.v[k];
        Qf.v[k] = -inv * d.d2.v[k];
    }

    double closure = 0;
    if (c.periodic1) {
        for (int j = 0; j < c.n2; ++j) {
            VecM loop(im.m);
            for (int i = 0; i < c.n1; ++i) loop += c.h1() * P.at(i, j);
            closure = std::max(closure, norm(loop));
        }
    }
    if (c.periodic2) {
        for (int i = 0; i < c.n1; ++i) {
            VecM loop(im.m);
            for (int j = 0; j < c.n2; ++j) loop += c.h2() * Qf.at(i, j);
            closure = std::max(closure, norm(loop));
        }
    }
    ChristoffelDual out{Immersion(c, im.m), closure, 0, 0};
    if (closure > tol.closure_gate)
        throw std::runtime_error(
            "christoffel_dual: duality 1-form has a nonzero period (closure residual = " +
            std::to_string(closure) + "); not isothermic in these coordinates");

    // Spine along x2 at i = 0, then rows along x1.
    Immersion& L = out.dual;
    L.at(0, 0) = VecM(im.m);
    for (int j = 1; j < c.n2; ++j)
        L.at(0, j) = L.at(0, j - 1) + 0.5 * c.h2() * (Qf.at(0, j - 1) + Qf.at(0, j));
    for (int j = 0; j < c.n2; ++j)
        for (int i = 1; i < c.n1; ++i)
            L.at(i, j) = L.at(i - 1, j) + 0.5 * c.h1() * (P.at(i - 1, j) + P.at(i, j));

    VecField Lf(c, VecM(im.m));
    Lf.v = L.phi;
    VecField dL1 = partial(Lf, 1), dL2 = partial(Lf, 2);
    ScalarField rdot(c), rwedge(c);
    for (int j = 0; j < c.n2; ++j)
        for (int i = 0; i < c.n1; ++i) {
            rdot.at(i, j) = dot(d.d1.at(i, j), dL2.at(i, j)) - dot(d.d2.at(i, j), dL1.at(i, j));
            const Multivector wv =
                wedge(mv_from_vector(d.d1.at(i, j)), mv_from_vector(dL2.at(i, j))) -
                wedge(mv_from_vector(d.d2.at(i, j)), mv_from_vector(dL1.at(i, j)));
            rwedge.at(i, j) = mv_norm(wv);
        }
    out.dot_residual = interior_norms(rdot).linf;
    out.wedge_residual = interior_norms(rwedge).linf;
    return out;
}

LiouvilleResult liouville_check(const Immersion& im, const Tolerances& tol) {
    const GridChart& c = im.chart;
    ImmersionDerivs d = immersion_partials(im);
    Frames fr = build_frames(im, d, tol);
    ScalarField lap = partial2(fr.lambda, 1);
    ScalarField lap2 = partial2(fr.lambda, 2);
    LiouvilleResult r{ScalarField(c), 0, 0};
    for (int j = 0; j < c.n2; ++j)
        for (int i = 0; i < c.n1; ++i) {
            const VecM& t1 = fr.t1.at(i, j);
            const VecM& t2 = fr.t2.at(i, j);
            const VecM I11 = project_normal(d.d11.at(i, j), t1, t2);
            const VecM I22 = project_normal(d.d22.at(i, j), t1, t2);
            const VecM I12 = project_normal(d.d12.at(i, j), t1, t2);
            const double e2l = fr.e2l.at(i, j);
            const double K = (dot(I11, I22) - norm2(I12)) / (e2l * e2l);
            r.residual.at(i, j) = -(lap.at(i, j) + lap2.at(i, j)) - e2l * K;
        }
    FieldNorms n = interior_norms(r.residual);
    r.l1_interior = n.l1;
    r.linf_interior = n.linf;
    return r;
}

}  // namespace isolab
