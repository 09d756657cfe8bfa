#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "isolab/geometry.hpp"
#include "isolab/zoo.hpp"

using namespace isolab;

namespace {
constexpr double PI = std::numbers::pi;

Immersion make(const std::string& name, int n) {
    return analytic(name, default_chart(name, n));
}
}  // namespace

TEST_CASE("conformal factor: cylinder and sphere charts") {
    std::map<std::string, double> p{{"radius", 2.0}};
    Immersion cyl = analytic("cylinder", p, default_chart("cylinder", 64));
    ConformalFactorResult cf = conformal_factor(cyl);
    CHECK(cf.residual < 2e-3);  // sin(h)/h mismatch of the discrete theta-derivative
    for (double l : cf.lambda.v) CHECK(l == doctest::Approx(std::log(2.0)).epsilon(5e-3));

    // Stereographic chart with a node at the origin: lambda(0) = log 2.
    GridChart c{-1, 1, -1, 1, 65, 65, false, false};
    Immersion sph = analytic("sphere_stereographic", c);
    ConformalFactorResult cfs = conformal_factor(sph);
    CHECK(cfs.residual < 1e-3);
    CHECK(cfs.lambda.at(32, 32) == doctest::Approx(std::log(2.0)).epsilon(1e-3));
}

TEST_CASE("conformal factor flags the anisotropic map at 1/4 of scale") {
    GridChart c{0, 1, 0, 1, 32, 32, false, false};
    Immersion im(c, 3);
    for (int j = 0; j < c.n2; ++j)
        for (int i = 0; i < c.n1; ++i) im.at(i, j) = VecM(c.x1(i), 2.0 * c.x2(j), 0.0);
    ConformalFactorResult cf = conformal_factor(im);
    CHECK(cf.residual == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("rank deficiency is reported with the node") {
    GridChart c{0, 1, 0, 1, 16, 16, false, false};
    Immersion im(c, 3);
    for (int j = 0; j < c.n2; ++j)
        for (int i = 0; i < c.n1; ++i) im.at(i, j) = VecM(c.x1(i), 0.0, 0.0);
    CHECK_THROWS_WITH_AS(conformal_factor(im), doctest::Contains("rank deficiency"),
                         std::runtime_error);
}

TEST_CASE("gauss map: cylinder, plane, catenoid") {
    Immersion cyl = make("cylinder", 64);
    FrameField f = gauss_map(cyl);
    for (int j = 0; j < 64; ++j)
        for (int i = 0; i < 64; ++i) {
            const double th = cyl.chart.x1(i);
            VecM n = mv_to_vector(f.n.get(i, j));
            CHECK(norm(n - VecM(std::cos(th), std::sin(th), 0.0)) < 1e-12);
        }

    Immersion plane = make("flat_plane", 16);
    FrameField fp = gauss_map(plane);
    for (int j = 0; j < 16; ++j)
        for (int i = 0; i < 16; ++i)
            CHECK(norm(mv_to_vector(fp.n.get(i, j)) - VecM(0, 0, 1)) < 1e-14);

    // Catenoid: |n| = 1, and n approaches the analytic normal at O(h^2).
    double worst[2];
    int idx = 0;
    for (int n : {48, 96}) {
        Immersion cat = make("catenoid", n);
        FrameField fc = gauss_map(cat);
        double w = 0;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                if (!is_interior(cat.chart, i, j)) continue;
                VecM nv = mv_to_vector(fc.n.get(i, j));
                CHECK(std::abs(norm(nv) - 1.0) < 1e-8);
                const double th = cat.chart.x1(i), t = cat.chart.x2(j);
                const VecM exact(std::cos(th) / std::cosh(t), std::sin(th) / std::cosh(t),
                                 -std::tanh(t));
                w = std::max(w, std::min(norm(nv - exact), norm(nv + exact)));
            }
        worst[idx++] = w;
    }
    CHECK(std::log2(worst[0] / worst[1]) > 1.7);
}

TEST_CASE("weingarten oracle values") {
    SUBCASE("unit sphere is umbilic: h0 = 0") {
        Immersion sph = make("sphere_stereographic", 96);
        WeingartenField w = weingarten(sph);
        CHECK(interior_norms(magnitude(w.h0)).linf < 2e-3);
        CHECK(w.normality_residual < 1e-12);
    }
    SUBCASE("cylinder: h0 = -n/2, purely real") {
        Immersion cyl = make("cylinder", 96);
        WeingartenField w = weingarten(cyl);
        for (int j = 2; j < 94; ++j)
            for (int i = 0; i < 96; ++i) {
                const double th = cyl.chart.x1(i);
                const VecM expect = -0.5 * VecM(std::cos(th), std::sin(th), 0.0);
                CHECK(norm(w.h0.at(i, j).re - expect) < 2e-3);
                CHECK(norm(w.h0.at(i, j).im) < 1e-10);
            }
        CHECK(w.rel_gap < 4e-3);
    }
    SUBCASE("catenoid: |h0| = sech^2(x2)") {
        Immersion cat = make("catenoid", 128);
        WeingartenField w = weingarten(cat);
        for (int j = 2; j < 126; ++j)
            for (int i = 0; i < 128; ++i) {
                const double s = 1.0 / std::cosh(cat.chart.x2(j));
                CHECK(norm(w.h0.at(i, j)) == doctest::Approx(s * s).epsilon(2e-3));
            }
    }
    SUBCASE("the two formulas agree on every analytic generator") {
        for (const char* name : {"cylinder", "catenoid", "enneper", "torus_of_revolution",
                                 "clifford_torus_r4", "flat_plane"}) {
            Immersion im = make(name, 128);
            WeingartenField w = weingarten(im);
            CAPTURE(name);
            CHECK(w.rel_gap < 2e-3);
            CHECK(w.normality_residual < 1e-10);
        }
    }
}

TEST_CASE("isothermic residuals") {
    SUBCASE("catenoid residual is zero to roundoff (axial symmetry)") {
        for (int n : {48, 96})
            CHECK(isothermic_residual(make("catenoid", n)).linf_interior < 1e-10);
    }
    SUBCASE("cylinder residual is machine zero") {
        Immersion cyl = make("cylinder", 64);
        CHECK(isothermic_residual(cyl).linf_interior < 1e-12);
    }
    SUBCASE("sphere with holomorphic f = z") {
        Immersion sph = make("sphere_stereographic", 64);
        QuadraticDifferential q{sph.chart, CplxField(sph.chart), 0.0};
        for (int j = 0; j < 64; ++j)
            for (int i = 0; i < 64; ++i)
                q.f.at(i, j) = cplx(sph.chart.x1(i), sph.chart.x2(j));
        q.cr_residual = cauchy_riemann_residual(q.f);
        CHECK(q.cr_residual < 1e-10);
        CHECK(isothermic_residual(sph, q).linf_interior < 5e-3);
    }
    SUBCASE("imaginary part identity vs the coordinate form") {
        Immersion cat = make("catenoid", 96);
        CHECK(isothermic_residual(cat).identity_gap < 5e-3);
    }
    SUBCASE("chart mismatch is rejected") {
        Immersion cyl = make("cylinder", 64);
        QuadraticDifferential q = make_constant_differential(default_chart("catenoid", 64));
        q.chart.x2_min = -2;  // different range
        CHECK_THROWS(isothermic_residual(cyl, q));
    }
}

TEST_CASE("mean curvature and Willmore energy") {
    Immersion cyl = make("cylinder", 128);
    MeanCurvatureResult mc = mean_curvature(cyl);
    CHECK(mc.willmore_energy == doctest::Approx(PI / 2).epsilon(1e-3));
    for (int j = 2; j < 126; ++j)
        CHECK(norm(mc.H.at(7, j)) == doctest::Approx(0.5).epsilon(1e-3));

    Immersion sph = make("sphere_stereographic", 96);
    MeanCurvatureResult ms = mean_curvature(sph);
    for (int j = 3; j < 93; ++j)
        CHECK(norm(ms.H.at(48, j)) == doctest::Approx(1.0).epsilon(2e-3));

    Immersion cat = make("catenoid", 96);
    MeanCurvatureResult mcat = mean_curvature(cat);
    CHECK(interior_norms(magnitude(mcat.H)).linf < 1e-3);

    Immersion enn = make("enneper", 96);
    MeanCurvatureResult men = mean_curvature(enn);
    CHECK(interior_norms(magnitude(men.H)).linf < 1e-3);
}

TEST_CASE("willmore residual: minimal and round surfaces vanish, CMC cylinder does not") {
    double rcat[2];
    int idx = 0;
    for (int n : {48, 96}) rcat[idx++] = willmore_residual(make("catenoid", n)).linf_interior;
    CHECK(rcat[1] < rcat[0] / 3.0);

    CHECK(willmore_residual(make("sphere_stereographic", 96)).linf_interior < 2e-2);

    // |div flux| = 1/2 on the unit cylinder, independent of resolution.
    for (int n : {48, 96}) {
        WillmoreResidual wr = willmore_residual(make("cylinder", n));
        ScalarField mag = magnitude(wr.divflux);
        double lo = 1e300, hi = 0;
        for (int j = 2; j < n - 2; ++j)
            for (int i = 0; i < n; ++i) {
                lo = std::min(lo, mag.at(i, j));
                hi = std::max(hi, mag.at(i, j));
            }
        CHECK(lo > 0.45);
        CHECK(hi < 0.55);
    }
}

TEST_CASE("constrained Willmore: cylinder multiplier and the Q scan") {
    Immersion cyl = make("cylinder", 96);
    ConstrainedWillmoreResidual cw = constrained_willmore_residual(cyl, 0.0);
    for (int j = 3; j < 93; ++j)
        for (int i = 0; i < 96; ++i)
            CHECK(std::abs(cw.f.at(i, j)) == doctest::Approx(0.25).epsilon(2e-3));
    CHECK(cw.f_dbar_residual < 1e-10);

    // Chart rotated by pi/4: the multiplier term activates; the residual is
    // minimized at Q = 1/2 and nearly cancels there.
    GridChart rc{0, 2, 0, 2, 96, 96, false, false};
    Immersion rot = analytic_rotated("cylinder", {}, rc, PI / 4);
    double best_q = -1, best_val = 1e300, at_zero = 0;
    for (int qi = 0; qi <= 20; ++qi) {
        const double Q = 0.05 * qi;
        ConstrainedWillmoreResidual r = constrained_willmore_residual(rot, Q);
        if (r.l1_interior < best_val) {
            best_val = r.l1_interior;
            best_q = Q;
        }
        if (qi == 0) at_zero = r.l1_interior;
    }
    CHECK(best_q == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(best_val < at_zero / 20.0);

    // Minimal surface with Q = 0: the discrete Laplacian is exact on the
    // cubic Enneper polynomials, so the residual sits at roundoff.
    for (int n : {48, 96})
        CHECK(constrained_willmore_residual(make("enneper", n), 0.0).linf_interior < 1e-7);

    // Sphere: h0 = 0 kills the multiplier; any Q passes.
    CHECK(constrained_willmore_residual(make("sphere_stereographic", 96), 0.7).linf_interior <
          2e-2);
}

TEST_CASE("codazzi residual") {
    CHECK(codazzi_residual(make("sphere_stereographic", 96)).linf_interior < 5e-3);
    CHECK(codazzi_residual(make("catenoid", 96)).linf_interior < 1e-3);
    double r[2];
    int idx = 0;
    for (int n : {64, 128})
        r[idx++] = codazzi_residual(make("torus_of_revolution", n)).linf_interior;
    CHECK(std::log2(r[0] / r[1]) > 1.5);
}

TEST_CASE("christoffel dual") {
    SUBCASE("cylinder dual is the reciprocal cylinder") {
        std::map<std::string, double> p{{"radius", 2.0}};
        Immersion cyl = analytic("cylinder", p, default_chart("cylinder", 128));
        ChristoffelDual d = christoffel_dual(cyl);
        CHECK(d.closure_residual < 1e-12);
        CHECK(d.dot_residual < 1e-3);
        CHECK(d.wedge_residual < 1e-3);
        // Radius of the dual's cross-section circle: 1/R = 0.5.
        VecM c(3);
        for (const VecM& q : d.dual.phi) c += q;
        c *= 1.0 / static_cast<double>(d.dual.phi.size());
        for (int i = 0; i < 128; ++i) {
            const VecM q = d.dual.at(i, 64);
            CHECK(std::hypot(q[0] - c[0], q[1] - c[1]) == doctest::Approx(0.5).epsilon(1e-4));
        }
    }
    SUBCASE("dual of the dual returns the cylinder up to translation") {
        Immersion cyl = make("cylinder", 128);
        ChristoffelDual d1 = christoffel_dual(cyl);
        ChristoffelDual d2 = christoffel_dual(d1.dual);
        VecM shift(3);
        for (size_t k = 0; k < cyl.phi.size(); ++k) shift += d2.dual.phi[k] - cyl.phi[k];
        shift *= 1.0 / static_cast<double>(cyl.phi.size());
        double worst = 0;
        for (size_t k = 0; k < cyl.phi.size(); ++k)
            worst = std::max(worst, norm(d2.dual.phi[k] - cyl.phi[k] - shift));
        CHECK(worst < 2e-3);
    }
    SUBCASE("catenoid dual lies on a unit sphere") {
        Immersion cat = make("catenoid", 128);
        ChristoffelDual d = christoffel_dual(cat);
        VecM c(3);
        for (const VecM& q : d.dual.phi) c += q;
        c *= 1.0 / static_cast<double>(d.dual.phi.size());
        double lo = 1e300, hi = 0;
        for (const VecM& q : d.dual.phi) {
            lo = std::min(lo, norm(q - c));
            hi = std::max(hi, norm(q - c));
        }
        CHECK((hi - lo) / (0.5 * (hi + lo)) < 0.01);
    }
    SUBCASE("sphere duality residuals shrink under refinement") {
        double r[2];
        int idx = 0;
        for (int n : {48, 96}) {
            ChristoffelDual d = christoffel_dual(make("sphere_stereographic", n));
            r[idx++] = std::max(d.dot_residual, d.wedge_residual);
        }
        CHECK(r[1] < r[0] / 3.0);
    }
    SUBCASE("non-isothermic chart is refused") {
        GridChart rc{0, 2, 0, 2, 64, 64, false, false};
        Immersion rot = analytic_rotated("cylinder", {}, rc, PI / 4);
        CHECK_THROWS_WITH_AS(christoffel_dual(rot), doctest::Contains("not isothermic"),
                             std::runtime_error);
    }
    SUBCASE("torus duality 1-form has a nonzero period") {
        Immersion tor = make("torus_of_revolution", 64);
        CHECK_THROWS_WITH_AS(christoffel_dual(tor), doctest::Contains("period"),
                             std::runtime_error);
    }
}

TEST_CASE("liouville identity") {
    Immersion plane = make("flat_plane", 32);
    CHECK(liouville_check(plane).linf_interior < 1e-10);

    Immersion cyl = make("cylinder", 64);
    CHECK(liouville_check(cyl).linf_interior < 1e-10);

    double r[2];
    int idx = 0;
    for (int n : {48, 96}) r[idx++] = liouville_check(make("sphere_stereographic", n)).linf_interior;
    CHECK(std::log2(r[0] / r[1]) > 1.7);
}

TEST_CASE("operators are equivariant under ambient rotation and translation") {
    Immersion cat = make("catenoid", 64);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    // Random rotation by Gram-Schmidt of a Gaussian 3x3 matrix.
    double M[3][3];
    for (auto& row : M)
        for (double& x : row) x = g(rng);
    for (int r = 0; r < 3; ++r) {
        for (int s = 0; s < r; ++s) {
            double d = 0;
            for (int k = 0; k < 3; ++k) d += M[r][k] * M[s][k];
            for (int k = 0; k < 3; ++k) M[r][k] -= d * M[s][k];
        }
        double nn = 0;
        for (int k = 0; k < 3; ++k) nn += M[r][k] * M[r][k];
        for (int k = 0; k < 3; ++k) M[r][k] /= std::sqrt(nn);
    }
    const VecM shift(0.3, -1.2, 2.5);
    Immersion moved = cat;
    for (VecM& p : moved.phi) {
        VecM q(3);
        for (int r = 0; r < 3; ++r) q[r] = M[r][0] * p[0] + M[r][1] * p[1] + M[r][2] * p[2];
        p = q + shift;
    }
    CHECK(isothermic_residual(moved).linf_interior ==
          doctest::Approx(isothermic_residual(cat).linf_interior).epsilon(1e-8));
    CHECK(willmore_residual(moved).l1_interior ==
          doctest::Approx(willmore_residual(cat).l1_interior).epsilon(1e-8));
    CHECK(mean_curvature(moved).willmore_energy ==
          doctest::Approx(mean_curvature(cat).willmore_energy).epsilon(1e-10));
    CHECK(codazzi_residual(moved).linf_interior ==
          doctest::Approx(codazzi_residual(cat).linf_interior).epsilon(1e-8));
}
