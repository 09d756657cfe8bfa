#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "isolab/defect.hpp"
#include "isolab/entropy.hpp"
#include "isolab/wente.hpp"

using namespace isolab;

namespace {
constexpr double PI = std::numbers::pi;
}

TEST_CASE("curve energy measures: circle, segment, oscillating bins") {
    MeasureGrid circle = curve_energy_measure(circle_profile(2.0, 0.0, 1.0, 4096), 16);
    CHECK(circle.total() == doctest::Approx(2 * PI).epsilon(1e-10));

    MeasureGrid seg = curve_energy_measure(line_profile(1.0, 0.0, 2.0, 512), 8);
    CHECK(seg.total() == 0.0);

    PlanarCurve osc = oscillating_curve(circle_profile(2.0, 0.0, 1.0, 16384), {1.0, 32});
    MeasureGrid binned = curve_energy_measure(osc, 16);
    for (int i = 0; i < 16; ++i)
        CHECK(binned.at(i, 0) / binned.w1() == doctest::Approx(1.5).epsilon(0.02));
}

TEST_CASE("energy measures: plane, cylinder, sphere patch") {
    Immersion plane = analytic("flat_plane", default_chart("flat_plane", 32));
    MeasureGrid mp = energy_measure(plane, 8, 8);
    CHECK(mp.total_abs() < 1e-20);

    Immersion cyl = analytic("cylinder", default_chart("cylinder", 128));
    MeasureGrid mc = energy_measure(cyl, 16, 8);
    CHECK(mc.total() == doctest::Approx(2 * PI).epsilon(2e-3));

    // Sphere minus polar caps via the arc profile: total = 8 pi sin(s_max).
    // The deep chart needs a looser conformality gate (FD error scales like
    // h^2 / r near the removed poles).
    const double smax = 1.4;
    Immersion sph = revolution(arc_profile(smax, 4096), 128, 128);
    Tolerances deep;
    deep.conformal_gate = 1e-2;
    MeasureGrid ms = energy_measure(sph, 16, 8, deep);
    CHECK(ms.total() == doctest::Approx(8 * PI * std::sin(smax)).epsilon(2e-3));
}

TEST_CASE("box sum equals global quadrature of |grad n|^2") {
    Immersion tor = analytic("torus_of_revolution", default_chart("torus_of_revolution", 96));
    MeasureGrid m = energy_measure(tor, 12, 12);
    FrameField fr = gauss_map(tor);
    BladeField d1 = partial(fr.n, 1), d2 = partial(fr.n, 2);
    ScalarField density(tor.chart);
    for (int j = 0; j < 96; ++j)
        for (int i = 0; i < 96; ++i)
            density.at(i, j) = norm2_at(d1, i, j) + norm2_at(d2, i, j);
    CHECK(m.total() == doctest::Approx(integrate(density)).epsilon(1e-12));
}

TEST_CASE("defect estimate is linear in a fixed shift of family and limit") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto random_measure = [&](double scale) {
        MeasureGrid m(0, 1, 0, 1, 10, 10);
        for (double& v : m.mass) v = scale * u(rng);
        return m;
    };
    std::vector<MeasureGrid> family{random_measure(1.0), random_measure(0.7),
                                    random_measure(0.5)};
    MeasureGrid limit = random_measure(0.3);
    MeasureGrid fixed = random_measure(2.0);

    DefectReport base = defect_estimate(family, limit);
    const double c = 1.7;
    std::vector<MeasureGrid> shifted = family;
    MeasureGrid shifted_limit = limit;
    for (auto& m : shifted)
        for (size_t k = 0; k < m.mass.size(); ++k) m.mass[k] += c * fixed.mass[k];
    for (size_t k = 0; k < shifted_limit.mass.size(); ++k)
        shifted_limit.mass[k] += c * fixed.mass[k];
    DefectReport moved = defect_estimate(shifted, shifted_limit);
    for (size_t k = 0; k < base.defect.mass.size(); ++k)
        CHECK(moved.defect.mass[k] == doctest::Approx(base.defect.mass[k]).epsilon(1e-12));
}

TEST_CASE("product structure: additive measures fit exactly, multiplicative do not") {
    MeasureGrid additive(0, 1, 0, 1, 12, 10);
    std::vector<double> u(12), v(10);
    for (int i = 0; i < 12; ++i) u[i] = std::sin(0.7 * i) + 1.5;
    for (int j = 0; j < 10; ++j) v[j] = 0.3 * j * j - j;
    for (int j = 0; j < 10; ++j)
        for (int i = 0; i < 12; ++i)
            additive.at(i, j) = u[i] * additive.w2() + v[j] * additive.w1();
    DefectReport rep;
    product_structure_test(additive, rep);
    CHECK(rep.product_residual < 1e-12);
    // Residual is invariant under adding another exact product measure.
    MeasureGrid shifted = additive;
    for (int j = 0; j < 10; ++j)
        for (int i = 0; i < 12; ++i) shifted.at(i, j) += 2.0 * i * shifted.w2();
    DefectReport rep2;
    product_structure_test(shifted, rep2);
    CHECK(rep2.product_residual < 1e-12);

    MeasureGrid mult(0, 1, 0, 1, 12, 10);
    for (int j = 0; j < 10; ++j)
        for (int i = 0; i < 12; ++i) mult.at(i, j) = (1.0 + i) * (1.0 + 0.5 * j);
    DefectReport rep3;
    product_structure_test(mult, rep3);
    CHECK(rep3.product_residual > 0.01);

    // Independent oracle: dense normal equations for the same least squares.
    const int B1 = 12, B2 = 10, nun = B1 + B2 + 1;
    std::vector<double> N(nun * nun, 0.0), rhs(nun, 0.0);
    auto col = [&](int i, int j, int q) {
        if (q == 0) return 1.0;
        if (q <= B1) return q - 1 == i ? 1.0 : 0.0;
        return q - 1 - B1 == j ? 1.0 : 0.0;
    };
    for (int j = 0; j < B2; ++j)
        for (int i = 0; i < B1; ++i)
            for (int qa = 0; qa < nun; ++qa) {
                rhs[qa] += col(i, j, qa) * mult.at(i, j);
                for (int qb = 0; qb < nun; ++qb)
                    N[qa * nun + qb] += col(i, j, qa) * col(i, j, qb);
            }
    // Tikhonov epsilon pins the rank-deficient constant split.
    for (int q = 0; q < nun; ++q) N[q * nun + q] += 1e-9;
    for (int r = 0; r < nun; ++r) {  // Gaussian elimination with partial pivot
        int piv = r;
        for (int s = r + 1; s < nun; ++s)
            if (std::abs(N[s * nun + r]) > std::abs(N[piv * nun + r])) piv = s;
        for (int q = 0; q < nun; ++q) std::swap(N[r * nun + q], N[piv * nun + q]);
        std::swap(rhs[r], rhs[piv]);
        for (int s = 0; s < nun; ++s) {
            if (s == r) continue;
            const double f = N[s * nun + r] / N[r * nun + r];
            for (int q = r; q < nun; ++q) N[s * nun + q] -= f * N[r * nun + q];
            rhs[s] -= f * rhs[r];
        }
    }
    std::vector<double> sol(nun);
    for (int q = 0; q < nun; ++q) sol[q] = rhs[q] / N[q * nun + q];
    double err = 0, ref = 0;
    for (int j = 0; j < B2; ++j)
        for (int i = 0; i < B1; ++i) {
            const double fit = sol[0] + sol[1 + i] + sol[1 + B1 + j];
            const double d = mult.at(i, j) - fit;
            err += d * d;
            ref += mult.at(i, j) * mult.at(i, j);
        }
    CHECK(rep3.product_residual == doctest::Approx(std::sqrt(err / ref)).epsilon(1e-6));
}

TEST_CASE("atomic detection: smooth family has no atoms, concentration is caught") {
    // Fixed smooth density family: no concentration.
    std::vector<MeasureGrid> fixed;
    for (int rep = 0; rep < 3; ++rep) {
        MeasureGrid m(-2, 2, -2, 2, 128, 128);
        for (int j = 0; j < 128; ++j)
            for (int i = 0; i < 128; ++i) {
                const double x = m.a1 + (i + 0.5) * m.w1();
                const double y = m.a2 + (j + 0.5) * m.w2();
                m.at(i, j) = std::exp(-(x * x + y * y)) * m.w1() * m.w2();
            }
        fixed.push_back(m);
    }
    AtomReport none = atomic_detect(fixed);
    CHECK(none.atoms.empty());

    // Concentrating Jacobian family: a single atom near the origin whose
    // weight matches the k = 1 oracle by scale invariance.  At this reduced
    // grid the family stops at k = 4 to stay resolved.
    SquareGrid g{2.0, 256};
    ProfilePair prof{0.65, 0.5};
    std::vector<MeasureGrid> family;
    for (int k : {1, 2, 4}) {
        BoxField a, b;
        concentrating_pair(prof, k, 0.0, 0.0, g, a, b);
        BoxField phi = newtonian_potential(jacobian(a, b));
        BoxField gx = dx(phi), gy = dy(phi);
        BoxField F(g);
        for (size_t m = 0; m < F.v.size(); ++m) F.v[m] = gx.v[m] * gy.v[m];
        family.push_back(measure_of_boxfield(F));
    }
    const double oracle = family.front().total();
    AtomReport rep = atomic_detect(family);
    REQUIRE(rep.atoms.size() == 1);
    CHECK(rep.atoms[0].resolved);
    CHECK(std::hypot(rep.atoms[0].x1, rep.atoms[0].x2) < 0.15);
    CHECK(rep.atoms[0].weight == doctest::Approx(oracle).epsilon(0.15));

    // Translated pair: the atom follows the translation (narrower profile so
    // the shifted support stays inside the disc).
    std::vector<MeasureGrid> moved;
    ProfilePair narrow{0.4, 0.5};
    for (int k : {2, 4}) {
        BoxField a, b;
        concentrating_pair(narrow, k, 0.3, -0.2, g, a, b);
        BoxField phi = newtonian_potential(jacobian(a, b));
        BoxField gx = dx(phi), gy = dy(phi);
        BoxField F(g);
        for (size_t m = 0; m < F.v.size(); ++m) F.v[m] = gx.v[m] * gy.v[m];
        moved.push_back(measure_of_boxfield(F));
    }
    AtomReport rep2 = atomic_detect(moved);
    REQUIRE(rep2.atoms.size() == 1);
    CHECK(rep2.atoms[0].x1 == doctest::Approx(0.3).epsilon(0.2));
    CHECK(rep2.atoms[0].x2 == doctest::Approx(-0.2).epsilon(0.2));
}

TEST_CASE("alpha potentials stay bounded in W12 along the oscillating family") {
    PlanarCurve base = circle_profile(2.0, 0.0, 1.0, 16384);
    std::vector<double> norms;
    for (int k : {8, 16, 32}) {
        PlanarCurve osc = oscillating_curve(base, {1.0, k});
        Immersion im = revolution(osc, 16, 1024 * (k / 8));
        EntropyFields ef = entropy_fields(im);
        Potentials p = reconstruct_potentials(ef, 1.0);
        norms.push_back(sobolev_w12_norm(p.alpha));
    }
    for (double n : norms) {
        CHECK(n > 0.2 * norms.front());
        CHECK(n < 5.0 * norms.front());
    }
}
