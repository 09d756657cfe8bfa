#include <bit>
#include <random>

#include "doctest.h"
#include "isolab/multivector.hpp"

using namespace isolab;

namespace {
Multivector blade(int m, uint32_t mask) {
    Multivector b(m);
    b[mask] = 1.0;
    return b;
}
}  // namespace

TEST_CASE("contraction satisfies the adjunction on all blades, m = 3 and 4") {
    for (int m : {3, 4}) {
        for (uint32_t I = 0; I < (1u << m); ++I)
            for (uint32_t J = 0; J < (1u << m); ++J) {
                if (std::popcount(J) > std::popcount(I)) continue;
                Multivector lhs = contraction(blade(m, I), blade(m, J));
                for (uint32_t K = 0; K < (1u << m); ++K) {
                    const double want = inner(blade(m, I), wedge(blade(m, J), blade(m, K)));
                    CHECK(lhs[K] == doctest::Approx(want).epsilon(1e-14));
                }
            }
    }
}

TEST_CASE("adjunction holds for random multivectors (bilinearity)") {
    std::mt19937_64 rng(2026);
    std::normal_distribution<double> g;
    const int m = 4;
    for (int trial = 0; trial < 20; ++trial) {
        const int p = 2 + (trial % 2), q = 1;  // grades 3|_1 and 2|_1
        Multivector a(m), b(m), cvec(m);
        for (uint32_t mask = 0; mask < (1u << m); ++mask) {
            if (std::popcount(mask) == static_cast<int>(p)) a[mask] = g(rng);
            if (std::popcount(mask) == static_cast<int>(q)) b[mask] = g(rng);
            if (std::popcount(mask) == static_cast<int>(p - q)) cvec[mask] = g(rng);
        }
        CHECK(inner(contraction(a, b), cvec) ==
              doctest::Approx(inner(a, wedge(b, cvec))).epsilon(1e-12));
    }
}

TEST_CASE("contraction worked examples") {
    const int m = 3;
    Multivector e1 = blade(m, 0b001), e2 = blade(m, 0b010), e3 = blade(m, 0b100);
    Multivector e12 = wedge(e1, e2);

    Multivector r = contraction(e1, e1);
    CHECK(r[0] == doctest::Approx(1.0));

    r = contraction(e12, e2);  // = -e1
    CHECK(r[0b001] == doctest::Approx(-1.0));
    CHECK(mv_norm(r - (-1.0 * e1)) == doctest::Approx(0.0));

    r = contraction(e12, e3);
    CHECK(mv_norm(r) == 0.0);
}

TEST_CASE("grade mismatch is rejected") {
    const int m = 3;
    Multivector e1 = blade(m, 0b001);
    Multivector e12 = wedge(e1, blade(m, 0b010));
    CHECK_THROWS(contraction(e1, e12));
}

TEST_CASE("hodge star matches the cross product convention in R^3") {
    const int m = 3;
    Multivector e1 = blade(m, 1), e2 = blade(m, 2), e3 = blade(m, 4);
    CHECK(mv_norm(star(wedge(e1, e2)) - e3) == doctest::Approx(0.0));
    CHECK(mv_norm(star(wedge(e2, e3)) - e1) == doctest::Approx(0.0));
    CHECK(mv_norm(star(wedge(e3, e1)) - e2) == doctest::Approx(0.0));
}

TEST_CASE("blade norm and grade bookkeeping") {
    const int m = 4;
    Multivector a = blade(m, 0b0011);  // e1^e2
    int g = -1;
    CHECK(a.grade_homogeneous(&g));
    CHECK(g == 2);
    Multivector sum = a + blade(m, 0b0001);
    CHECK_FALSE(sum.grade_homogeneous());
    CHECK(mv_norm(a) == doctest::Approx(1.0));
    // star(star(x)) = +-x; on 2-blades in R^4 the sign is +1
    CHECK(mv_norm(star(star(a)) - a) == doctest::Approx(0.0));
}

TEST_CASE("wedge anticommutes on vectors") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    for (int m : {3, 5, 6}) {
        VecM u(m), v(m);
        for (int i = 0; i < m; ++i) {
            u[i] = g(rng);
            v[i] = g(rng);
        }
        Multivector uv = wedge(mv_from_vector(u), mv_from_vector(v));
        Multivector vu = wedge(mv_from_vector(v), mv_from_vector(u));
        CHECK(mv_norm(uv + vu) == doctest::Approx(0.0).epsilon(1e-12));
    }
}
