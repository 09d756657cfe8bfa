#include "isolab/entropy.hpp"

#include <cmath>

namespace isolab {

namespace {

void remove_mean(ScalarField& f) {
    const GridChart& c = f.chart;
    double mean = 0, wsum = 0;
    for (int j = 0; j < c.n2; ++j)
        for (int i = 0; i < c.n1; ++i) {
            const double w = quad_weight(c, i, j);
            mean += w * f.at(i, j);
            wsum += w;
        }
    mean /= wsum;
    for (auto& v : f.v) v -= mean;
}

// Path integral of a gradient field, averaged over the two integration orders
// (x1 spine then x2 lines, and the transpose), anchored at the origin node.
ScalarField integrate_gradient(const ScalarField& gx, const ScalarField& gy, bool mean_zero) {
    const GridChart& c = gx.chart;
    const double h1 = c.h1(), h2 = c.h2();
    ScalarField pa(c), pb(c);

    // Order A: spine up x2 at i=0, then rows along x1.
    pa.at(0, 0) = 0;
    for (int j = 1; j < c.n2; ++j)
        pa.at(0, j) = pa.at(0, j - 1) + 0.5 * h2 * (gy.at(0, j - 1) + gy.at(0, j));
    for (int j = 0; j < c.n2; ++j)
        for (int i = 1; i < c.n1; ++i)
            pa.at(i, j) = pa.at(i - 1, j) + 0.5 * h1 * (gx.at(i - 1, j) + gx.at(i, j));

    // Order B: spine along x1 at j=0, then columns up x2.
    pb.at(0, 0) = 0;
    for (int i = 1; i < c.n1; ++i)
        pb.at(i, 0) = pb.at(i - 1, 0) + 0.5 * h1 * (gx.at(i - 1, 0) + gx.at(i, 0));
    for (int i = 0; i < c.n1; ++i)
        for (int j = 1; j < c.n2; ++j)
            pb.at(i, j) = pb.at(i, j - 1) + 0.5 * h2 * (gy.at(i, j - 1) + gy.at(i, j));

    ScalarField out(c);
    for (size_t k = 0; k < out.v.size(); ++k) out.v[k] = 0.5 * (pa.v[k] + pb.v[k]);
    if (mean_zero) remove_mean(out);
    return out;
}

}  // namespace

EntropyFields entropy_fields(const Immersion& im, const Tolerances& tol) {
    IsothermicResidual iso = isothermic_residual(im, tol);
    if (iso.linf_interior > tol.isothermic_gate)
        throw std::runtime_error(
            "entropy_fields: isothermic gate failed (residual = " +
            std::to_string(iso.linf_interior) + ", gate = " + std::to_string(tol.isothermic_gate) +
            ")");

    const GridChart& c = im.chart;
    FrameField fr = gauss_map(im, tol);
    ScalarField l1 = partial(fr.lambda, 1), l2 = partial(fr.lambda, 2);
    BladeField dn1 = partial(fr.n, 1), dn2 = partial(fr.n, 2);

    EntropyFields ef{ScalarField(c), ScalarField(c), ScalarField(c), ScalarField(c),
                     ScalarField(c), {}, {}};
    for (int j = 0; j < c.n2; ++j)
        for (int i = 0; i < c.n1; ++i) {
            const Multivector c2 =
                contraction(dn2.get(i, j), mv_from_vector(fr.e2.at(i, j)));
            const Multivector c1 =
                contraction(dn1.get(i, j), mv_from_vector(fr.e1.at(i, j)));
            const double g1 = l1.at(i, j), g2 = l2.at(i, j);
            ef.D1.at(i, j) = inner(c2, c2) + g1 * g1 - g2 * g2;
            ef.D2.at(i, j) = inner(c1, c1) + g2 * g2 - g1 * g1;
            ef.F.at(i, j) = 2 * g1 * g2;
        }
    ScalarField dD1 = partial(ef.D1, 1), dD2 = partial(ef.D2, 2);
    ScalarField dF1 = partial(ef.F, 1), dF2 = partial(ef.F, 2);
    for (size_t k = 0; k < ef.residual1.v.size(); ++k) {
        ef.residual1.v[k] = dD1.v[k] + dF2.v[k];
        ef.residual2.v[k] = dD2.v[k] + dF1.v[k];
    }
    ef.res1_norms = interior_norms(ef.residual1);
    ef.res2_norms = interior_norms(ef.residual2);
    return ef;
}

OrthogonalityReport orthogonality_checks(const Immersion& im, const Tolerances& tol) {
    const GridChart& c = im.chart;
    ImmersionDerivs d = immersion_partials(im);
    FrameField fr = gauss_map(im, tol);
    BladeField dn1 = partial(fr.n, 1), dn2 = partial(fr.n, 2);

    OrthogonalityReport rep;
    for (int j = 0; j < c.n2; ++j)
        for (int i = 0; i < c.n1; ++i) {
            if (!is_interior(c, i, j)) continue;
            const VecM pn = project_normal(d.d12.at(i, j), fr.e1.at(i, j),
                                           fr.e2.at(i, j));
            rep.normal_mixed_second = std::max(rep.normal_mixed_second, norm(pn));
            const Multivector a =
                contraction(dn2.get(i, j), mv_from_vector(d.d1.at(i, j)));
            const Multivector b =
                contraction(dn1.get(i, j), mv_from_vector(d.d2.at(i, j)));
            rep.n2_contract_d1phi = std::max(rep.n2_contract_d1phi, mv_norm(a));
            rep.n1_contract_d2phi = std::max(rep.n1_contract_d2phi, mv_norm(b));
        }
    return rep;
}

Potentials reconstruct_potentials(const EntropyFields& ef, double residual_tol) {
    if (ef.res1_norms.linf > residual_tol || ef.res2_norms.linf > residual_tol)
        throw std::runtime_error(
            "reconstruct_potentials: conservation residual above tolerance (" +
            std::to_string(std::max(ef.res1_norms.linf, ef.res2_norms.linf)) + ")");

    // Potentials may be multivalued around periodic loops (B = x1 on the
    // cylinder); they live on the open chart, so periodic wraps are dropped
    // for the construction and all derivative checks.  Ranges shrink by one
    // spacing so the node positions (and spacings) are preserved.
    GridChart open = ef.F.chart;
    if (open.periodic1) {
        open.x1_max -= open.h1();
        open.periodic1 = false;
    }
    if (open.periodic2) {
        open.x2_max -= open.h2();
        open.periodic2 = false;
    }
    auto reopen = [&open](const ScalarField& f) {
        ScalarField g(open);
        g.v = f.v;
        return g;
    };
    ScalarField D1 = reopen(ef.D1), D2 = reopen(ef.D2);
    ScalarField negF(open);
    for (size_t k = 0; k < negF.v.size(); ++k) negF.v[k] = -ef.F.v[k];

    // alpha integrates the unnormalized branches; all three are mean-zeroed
    // afterwards (the second-derivative identities are unaffected).
    ScalarField A_raw = integrate_gradient(negF, D1, false);
    ScalarField B_raw = integrate_gradient(D2, negF, false);
    Potentials p{A_raw, B_raw, integrate_gradient(B_raw, A_raw, true), 0, 0, 0};
    remove_mean(p.A);
    remove_mean(p.B);

    ScalarField dA1 = partial(p.A, 1), dA2 = partial(p.A, 2);
    ScalarField dB1 = partial(p.B, 1), dB2 = partial(p.B, 2);
    ScalarField curl(open), rd1(open), rd2(open);
    for (size_t k = 0; k < curl.v.size(); ++k) {
        curl.v[k] = dA1.v[k] - dB2.v[k];
        rd1.v[k] = dA2.v[k] - D1.v[k];
        rd2.v[k] = dB1.v[k] - D2.v[k];
    }
    p.curl_AB = interior_norms(curl).linf;
    p.roundtrip_D1 = interior_norms(rd1).linf;
    p.roundtrip_D2 = interior_norms(rd2).linf;
    return p;
}

double sobolev_w12_norm(const ScalarField& f) {
    ScalarField g1 = partial(f, 1), g2 = partial(f, 2);
    ScalarField density(f.chart);
    for (size_t k = 0; k < f.v.size(); ++k)
        density.v[k] = f.v[k] * f.v[k] + g1.v[k] * g1.v[k] + g2.v[k] * g2.v[k];
    const GridChart& c = f.chart;
    double s = 0;
    for (int j = 0; j < c.n2; ++j)
        for (int i = 0; i < c.n1; ++i)
            if (is_interior(c, i, j)) s += density.at(i, j);
    return std::sqrt(s * c.h1() * c.h2());
}

}  // namespace isolab
