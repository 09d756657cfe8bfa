#include <cmath>
#include <numbers>

#include "doctest.h"
#include "isolab/entropy.hpp"
#include "isolab/zoo.hpp"

using namespace isolab;

namespace {
constexpr double PI = std::numbers::pi;

Immersion make(const std::string& name, int n) {
    return analytic(name, default_chart(name, n));
}

// Torus sampled in the (angle, angle) parametrization sheared along x2; not
// conformal, not isothermic: a control input for the diagnostics.
Immersion sheared_torus(int n) {
    GridChart c{0, 2 * PI, 0, 2 * PI, n, n, true, true};
    Immersion im(c, 3);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double u = c.x1(i) + 0.3 * c.x2(j);
            const double v = c.x2(j);
            im.at(i, j) = VecM((2 + std::cos(v)) * std::cos(u), (2 + std::cos(v)) * std::sin(u),
                               std::sin(v));
        }
    return im;
}
}  // namespace

TEST_CASE("cylinder entropy fields: D1 = 0, D2 = 1, F = 0, residuals exactly zero") {
    EntropyFields ef = entropy_fields(make("cylinder", 64));
    for (int j = 0; j < 64; ++j)
        for (int i = 0; i < 64; ++i) {
            CHECK(std::abs(ef.D1.at(i, j)) < 1e-10);
            CHECK(ef.D2.at(i, j) == doctest::Approx(1.0).epsilon(5e-3));
            CHECK(std::abs(ef.F.at(i, j)) < 1e-10);
        }
    CHECK(ef.res1_norms.l1 < 1e-12);
    CHECK(ef.res2_norms.l1 < 1e-12);
}

TEST_CASE("conservation residuals: law1 exact by symmetry, law2 second order") {
    for (const char* name : {"torus_of_revolution", "catenoid"}) {
        double r2[2];
        int idx = 0;
        for (int n : {48, 96}) {
            EntropyFields ef = entropy_fields(make(name, n));
            CHECK(ef.res1_norms.l1 < 1e-9);  // chart is x1-independent
            r2[idx++] = ef.res2_norms.l1;
        }
        CAPTURE(name);
        CHECK(std::log2(r2[0] / r2[1]) > 1.5);
    }
}

TEST_CASE("entropy gate refuses non-isothermic charts with the measured residual") {
    GridChart rc{0, 2, 0, 2, 64, 64, false, false};
    Immersion rot = analytic_rotated("cylinder", {}, rc, PI / 4);
    CHECK_THROWS_WITH_AS(entropy_fields(rot), doctest::Contains("gate"), std::runtime_error);
}

TEST_CASE("conservation residuals are invariant under the chart swap") {
    // Swapped catenoid chart: phi~(x1, x2) = phi(x2, x1) exchanges the two laws.
    Immersion cat = make("catenoid", 64);
    GridChart sc{-1, 1, 0, 2 * PI, 64, 64, false, true};
    Immersion swapped(sc, 3);
    for (int j = 0; j < 64; ++j)
        for (int i = 0; i < 64; ++i) swapped.at(i, j) = cat.at(j, i);
    EntropyFields a = entropy_fields(cat);
    EntropyFields b = entropy_fields(swapped);
    CHECK(a.res1_norms.l1 == doctest::Approx(b.res2_norms.l1).epsilon(1e-10));
    CHECK(a.res2_norms.l1 == doctest::Approx(b.res1_norms.l1).epsilon(1e-10));
}

TEST_CASE("orthogonality diagnostics") {
    OrthogonalityReport cyl = orthogonality_checks(make("cylinder", 64));
    CHECK(cyl.normal_mixed_second < 1e-10);
    CHECK(cyl.n2_contract_d1phi < 1e-10);
    CHECK(cyl.n1_contract_d2phi < 1e-10);

    // Axially symmetric charts satisfy the identities to roundoff; the
    // stereographic sphere exercises the genuine O(h^2) decay.
    OrthogonalityReport cat = orthogonality_checks(make("catenoid", 64));
    CHECK(std::max({cat.normal_mixed_second, cat.n2_contract_d1phi, cat.n1_contract_d2phi}) <
          1e-10);
    double r[2];
    int idx = 0;
    for (int n : {48, 96}) {
        OrthogonalityReport o = orthogonality_checks(make("sphere_stereographic", n));
        r[idx++] = std::max({o.normal_mixed_second, o.n2_contract_d1phi, o.n1_contract_d2phi});
    }
    CHECK(r[1] < r[0] / 3.0);

    // Sheared (non-isothermic) torus chart: the normal mixed second derivative
    // stays bounded away from zero.
    OrthogonalityReport sheared = orthogonality_checks(sheared_torus(96));
    CHECK(sheared.normal_mixed_second > 0.1);
}

TEST_CASE("potentials on the cylinder: A = 0, B = x1, alpha = x1^2/2 up to normalization") {
    Immersion cyl = make("cylinder", 64);
    EntropyFields ef = entropy_fields(cyl);
    Potentials p = reconstruct_potentials(ef);
    const GridChart& c = cyl.chart;

    double amax = 0;
    for (double v : p.A.v) amax = std::max(amax, std::abs(v));
    CHECK(amax < 1e-10);

    // B is linear in x1 with slope D2 (a constant field on the cylinder);
    // alpha has the matching constant second derivative.
    const double slope = ef.D2.at(0, 0);
    double bshift = p.B.at(0, 0) - slope * c.x1(0);
    for (int i = 0; i < c.n1; ++i)
        CHECK(p.B.at(i, 7) - slope * c.x1(i) == doctest::Approx(bshift).epsilon(1e-9));
    ScalarField d2a = partial2(p.alpha, 1);
    for (int i = 2; i < c.n1 - 2; ++i)
        CHECK(d2a.at(i, 9) == doctest::Approx(slope).epsilon(1e-8));

    CHECK(p.curl_AB < 1e-10);
    CHECK(p.roundtrip_D1 < 1e-10);
    CHECK(p.roundtrip_D2 < 1e-10);
}

TEST_CASE("potentials on the flat plane vanish") {
    Potentials p = reconstruct_potentials(entropy_fields(make("flat_plane", 32)));
    for (double v : p.A.v) CHECK(std::abs(v) < 1e-12);
    for (double v : p.B.v) CHECK(std::abs(v) < 1e-12);
    for (double v : p.alpha.v) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("potential round trip reproduces the entropy fields at O(h^2)") {
    double r[2];
    int idx = 0;
    for (int n : {48, 96}) {
        EntropyFields ef = entropy_fields(make("torus_of_revolution", n));
        Potentials p = reconstruct_potentials(ef, 1.0);
        r[idx++] = std::max({p.curl_AB, p.roundtrip_D1, p.roundtrip_D2});
    }
    CHECK(std::log2(r[0] / r[1]) > 1.5);
}

TEST_CASE("gauss map energy splits into frame-contracted components (m = 3)") {
    for (const char* name : {"sphere_stereographic", "torus_of_revolution"}) {
        double r[2];
        int idx = 0;
        for (int n : {48, 96}) {
            Immersion im = make(name, n);
            FrameField fr = gauss_map(im);
            BladeField dn1 = partial(fr.n, 1), dn2 = partial(fr.n, 2);
            double worst = 0;
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    if (!is_interior(im.chart, i, j)) continue;
                    const double full = norm2_at(dn1, i, j) + norm2_at(dn2, i, j);
                    double parts = 0;
                    for (const BladeField* dn : {&dn1, &dn2})
                        for (const VecField* e : {&fr.e1, &fr.e2}) {
                            Multivector c = contraction(dn->get(i, j),
                                                        mv_from_vector(e->at(i, j)));
                            parts += inner(c, c);
                        }
                    worst = std::max(worst, std::abs(full - parts));
                }
            r[idx++] = worst;
        }
        CAPTURE(name);
        CHECK(r[1] < r[0] / 3.0);
    }
}
