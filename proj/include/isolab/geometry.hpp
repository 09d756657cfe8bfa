#ifndef ISOLAB_GEOMETRY_HPP
#define ISOLAB_GEOMETRY_HPP

#include <optional>
#include <string>

#include "isolab/grid.hpp"
#include "isolab/multivector.hpp"

namespace isolab {

// Conformally parametrized surface patch sampled on a chart, values in R^m.
struct Immersion {
    GridChart chart;
    int m = 3;
    std::vector<VecM> phi;
    // Analytic conformal factor, attached by generators that know it; used for
    // cross-validation only, never consumed by operators.
    std::optional<ScalarField> lambda_analytic;

    Immersion() = default;
    Immersion(const GridChart& c, int dim) : chart(c), m(dim), phi(c.nodes(), VecM(dim)) {}

    VecM& at(int i, int j) { return phi[chart.idx(i, j)]; }
    const VecM& at(int i, int j) const { return phi[chart.idx(i, j)]; }
};

struct Tolerances {
    double conformal_gate = 1e-3;    // generators must pass conformal_factor below this
    double isothermic_gate = 1e-3;   // gate for entropy laws and duality
    double rank_gate = 1e-8;         // sin of tangent angle below this = rank deficiency
    double closure_gate = 1e-6;      // loop-closure of the duality 1-form
};

// Sampled holomorphic quadratic differential q = f dz (x) dz on a chart,
// with its discrete Cauchy-Riemann defect.
struct QuadraticDifferential {
    GridChart chart;
    CplxField f;
    double cr_residual = 0;  // interior Linf of |dbar f|
};

QuadraticDifferential make_constant_differential(const GridChart& chart, cplx value = 1.0);
double cauchy_riemann_residual(const CplxField& f);

struct ConformalFactorResult {
    ScalarField lambda;
    double residual = 0;  // max over nodes, relative to max(|d1 phi|, |d2 phi|)^2
};

// lambda = (1/2) log |d1 phi|^2; the residual certifies conformality.
// Throws on rank deficiency, naming the offending node.
ConformalFactorResult conformal_factor(const Immersion& im, const Tolerances& tol = {});

struct FrameField {
    VecField e1, e2;   // unit tangents e_i = e^{-lambda} d_i phi
    ScalarField lambda;
    BladeField n;      // Gauss map, grade m-2, n = star(e1 ^ e2)
};

FrameField gauss_map(const Immersion& im, const Tolerances& tol = {});

struct WeingartenField {
    CVecField h0;              // from the second-fundamental-form expression
    CVecField h0_div;          // from the divergence-form expression 2 dz(e^{-2l} dz phi)
    double rel_gap = 0;        // interior-L2 distance between the two, relative
    double normality_residual = 0;  // max tangential part of h0
};

WeingartenField weingarten(const Immersion& im, const Tolerances& tol = {});

struct IsothermicResidual {
    ScalarField pointwise;     // |Im(conj(f) h0)| per node
    VecField coordinate_form;  // d1[e^{-2l} d2 phi] + d2[e^{-2l} d1 phi] (f == 1 only)
    double linf_interior = 0;
    double l1_interior = 0;
    // Interior Linf of | Im(h0) - (1/2) coordinate_form |; identity check.
    double identity_gap = 0;
};

IsothermicResidual isothermic_residual(const Immersion& im, const QuadraticDifferential& q,
                                       const Tolerances& tol = {});
IsothermicResidual isothermic_residual(const Immersion& im, const Tolerances& tol = {});

struct MeanCurvatureResult {
    VecField H;
    double willmore_energy = 0;
};

MeanCurvatureResult mean_curvature(const Immersion& im, const Tolerances& tol = {});

struct WillmoreResidual {
    VecField divflux;
    double l1_interior = 0;
    double linf_interior = 0;
};

// Divergence of grad H - 3 pi_n(grad H) + star(grad^perp n ^ H),
// with grad^perp = (-d2, d1).
WillmoreResidual willmore_residual(const Immersion& im, const Tolerances& tol = {});

struct ConstrainedWillmoreResidual {
    VecField residual;        // Willmore operator minus Q * coordinate_form
    CplxField f;              // e^{2 lambda} h0 . H
    double f_dbar_residual = 0;
    double l1_interior = 0;
    double linf_interior = 0;
};

ConstrainedWillmoreResidual constrained_willmore_residual(const Immersion& im, double Q,
                                                          const Tolerances& tol = {});

struct CodazziResidual {
    CplxField pointwise;
    double linf_interior = 0;
};

CodazziResidual codazzi_residual(const Immersion& im, const Tolerances& tol = {});

struct ChristoffelDual {
    Immersion dual;
    double closure_residual = 0;   // worst loop-closure defect of the duality 1-form
    double dot_residual = 0;       // interior Linf of d1 phi . d2 L - d2 phi . d1 L
    double wedge_residual = 0;     // interior Linf of |d1 phi ^ d2 L - d2 phi ^ d1 L|
};

// Path-integrates (e^{-2l} d1 phi) dx1 - (e^{-2l} d2 phi) dx2 along a spine
// (x2 first at the left edge, then x1 along rows).  Requires the isothermic
// gate; throws "not isothermic in these coordinates" when loop closure fails.
ChristoffelDual christoffel_dual(const Immersion& im, const Tolerances& tol = {});

struct LiouvilleResult {
    ScalarField residual;  // -Lap(lambda) - e^{2 lambda} K, K extrinsic
    double l1_interior = 0;
    double linf_interior = 0;
};

LiouvilleResult liouville_check(const Immersion& im, const Tolerances& tol = {});

// Derivative bundle shared by the operators above.
struct ImmersionDerivs {
    VecField d1, d2, d11, d22, d12;
};
ImmersionDerivs immersion_partials(const Immersion& im);

VecM project_normal(const VecM& v, const VecM& t1_unit, const VecM& t2_unit);

}  // namespace isolab

#endif
