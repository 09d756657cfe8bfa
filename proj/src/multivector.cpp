#include "isolab/multivector.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

namespace isolab {

bool Multivector::grade_homogeneous(int* grade_out, double tol) const {
    int g = -1;
    for (int mask = 0; mask < nblades(); ++mask) {
        if (std::abs(c[mask]) <= tol) continue;
        const int gm = std::popcount(static_cast<uint32_t>(mask));
        if (g < 0) g = gm;
        else if (g != gm) return false;
    }
    if (grade_out) *grade_out = (g < 0 ? 0 : g);
    return true;
}

Multivector operator+(const Multivector& a, const Multivector& b) {
    Multivector r(a.m);
    for (int k = 0; k < a.nblades(); ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
}
Multivector operator-(const Multivector& a, const Multivector& b) {
    Multivector r(a.m);
    for (int k = 0; k < a.nblades(); ++k) r.c[k] = a.c[k] - b.c[k];
    return r;
}
Multivector operator*(double s, const Multivector& a) {
    Multivector r(a.m);
    for (int k = 0; k < a.nblades(); ++k) r.c[k] = s * a.c[k];
    return r;
}

int wedge_sign(uint32_t I, uint32_t J) {
    if (I & J) return 0;
    // Count transpositions needed to merge (I, J) into the sorted union:
    // for each bit j in J, count bits of I above j.
    int swaps = 0;
    for (uint32_t j = J; j; j &= j - 1) {
        const uint32_t bit = j & ~(j - 1);
        swaps += std::popcount(I & ~(bit | (bit - 1)));
    }
    return (swaps & 1) ? -1 : 1;
}

Multivector wedge(const Multivector& a, const Multivector& b) {
    Multivector r(a.m);
    const int n = a.nblades();
    for (int I = 0; I < n; ++I) {
        if (a.c[I] == 0.0) continue;
        for (int J = 0; J < n; ++J) {
            if (b.c[J] == 0.0) continue;
            const int s = wedge_sign(I, J);
            if (s) r.c[I | J] += s * a.c[I] * b.c[J];
        }
    }
    return r;
}

Multivector contraction(const Multivector& a, const Multivector& b) {
    // On blades: e_I |_ e_J = <e_I, e_J ^ e_{I\J}> e_{I\J}, zero unless J subset I.
    int ga = 0, gb = 0;
    if (a.grade_homogeneous(&ga) && b.grade_homogeneous(&gb) && ga < gb && mv_norm(a) > 0 &&
        mv_norm(b) > 0)
        throw std::invalid_argument("contraction: grade(a) < grade(b)");
    Multivector r(a.m);
    const int n = a.nblades();
    for (int I = 0; I < n; ++I) {
        if (a.c[I] == 0.0) continue;
        for (int J = 0; J < n; ++J) {
            if (b.c[J] == 0.0) continue;
            if ((I & J) != J) continue;
            const uint32_t K = static_cast<uint32_t>(I) & ~static_cast<uint32_t>(J);
            r.c[K] += wedge_sign(J, K) * a.c[I] * b.c[J];
        }
    }
    return r;
}

double inner(const Multivector& a, const Multivector& b) {
    double s = 0;
    for (int k = 0; k < a.nblades(); ++k) s += a.c[k] * b.c[k];
    return s;
}
double mv_norm(const Multivector& a) { return std::sqrt(inner(a, a)); }

Multivector star(const Multivector& a) {
    Multivector r(a.m);
    const uint32_t full = (1u << a.m) - 1;
    for (int I = 0; I < a.nblades(); ++I) {
        if (a.c[I] == 0.0) continue;
        const uint32_t C = full & ~static_cast<uint32_t>(I);
        r.c[C] += wedge_sign(static_cast<uint32_t>(I), C) * a.c[I];
    }
    return r;
}

Multivector grade_project(const Multivector& a, int k) {
    Multivector r(a.m);
    for (int mask = 0; mask < a.nblades(); ++mask)
        if (std::popcount(static_cast<uint32_t>(mask)) == k) r.c[mask] = a.c[mask];
    return r;
}

Multivector mv_from_vector(const VecM& v) {
    Multivector r(v.m);
    for (int i = 0; i < v.m; ++i) r.c[1u << i] = v[i];
    return r;
}

VecM mv_to_vector(const Multivector& a) {
    VecM v(a.m);
    for (int i = 0; i < a.m; ++i) v[i] = a.c[1u << i];
    return v;
}

int binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<int>(r);
}

const std::vector<uint32_t>& grade_blades(int m, int k) {
    static std::map<std::pair<int, int>, std::vector<uint32_t>> cache;
    auto key = std::make_pair(m, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<uint32_t> blades;
    for (uint32_t mask = 0; mask < (1u << m); ++mask)
        if (std::popcount(mask) == k) blades.push_back(mask);
    return cache.emplace(key, std::move(blades)).first->second;
}

Multivector BladeField::get(int i, int j) const {
    Multivector mv(m);
    const auto& blades = grade_blades(m, grade);
    const double* p = at(i, j);
    for (size_t k = 0; k < blades.size(); ++k) mv.c[blades[k]] = p[k];
    return mv;
}

void BladeField::set(int i, int j, const Multivector& mv) {
    const auto& blades = grade_blades(m, grade);
    double* p = at(i, j);
    for (size_t k = 0; k < blades.size(); ++k) p[k] = mv.c[blades[k]];
}

BladeField partial(const BladeField& f, int axis) {
    // Componentwise derivative of the coefficient fields.
    BladeField out(f.chart, f.m, f.grade);
    const int nc = f.ncoef();
    for (int k = 0; k < nc; ++k) {
        ScalarField comp(f.chart);
        for (size_t node = 0; node < f.chart.nodes(); ++node)
            comp.v[node] = f.coef[node * nc + k];
        ScalarField d = partial(comp, axis);
        for (size_t node = 0; node < f.chart.nodes(); ++node)
            out.coef[node * nc + k] = d.v[node];
    }
    return out;
}

double norm2_at(const BladeField& f, int i, int j) {
    const double* p = f.at(i, j);
    double s = 0;
    for (int k = 0; k < f.ncoef(); ++k) s += p[k] * p[k];
    return s;
}

}  // namespace isolab
