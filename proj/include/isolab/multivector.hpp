#ifndef ISOLAB_MULTIVECTOR_HPP
#define ISOLAB_MULTIVECTOR_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "isolab/grid.hpp"

namespace isolab {

// Dense element of the exterior algebra over R^m, m <= 6.  Coefficients are
// indexed by basis blades encoded as bitmasks: blade {i1<...<ik} <-> bit mask.
// The blade basis is orthonormal for the Euclidean inner product.
struct Multivector {
    int m = 3;
    std::array<double, 64> c{};

    explicit Multivector(int dim = 3) : m(dim) {}

    int nblades() const { return 1 << m; }
    double& operator[](int mask) { return c[static_cast<size_t>(mask)]; }
    double operator[](int mask) const { return c[static_cast<size_t>(mask)]; }

    bool grade_homogeneous(int* grade_out = nullptr, double tol = 0.0) const;
};

Multivector operator+(const Multivector& a, const Multivector& b);
Multivector operator-(const Multivector& a, const Multivector& b);
Multivector operator*(double s, const Multivector& a);

// Sign of e_I ^ e_J relative to the sorted blade e_{I u J}; 0 if I and J overlap.
int wedge_sign(uint32_t I, uint32_t J);

Multivector wedge(const Multivector& a, const Multivector& b);

// Left contraction a |_ b, defined by <a |_ b, c> = <a, b ^ c> for all blades c.
// Requires grade(a) >= grade(b) for grade-homogeneous inputs; for general
// inputs, blade pairs with J not a subset of I contribute zero.
Multivector contraction(const Multivector& a, const Multivector& b);

// Euclidean inner product on blade coefficients.
double inner(const Multivector& a, const Multivector& b);
double mv_norm(const Multivector& a);

// Hodge star: e_I -> sign * e_{complement(I)} with e_I ^ star(e_I) = e_{1..m}.
Multivector star(const Multivector& a);

Multivector grade_project(const Multivector& a, int k);
Multivector mv_from_vector(const VecM& v);
VecM mv_to_vector(const Multivector& a);

// Enumeration of grade-k blades of Lambda(R^m) in increasing bitmask order.
const std::vector<uint32_t>& grade_blades(int m, int k);
int binom(int n, int k);

// Compact field of grade-k coefficients (used for Gauss maps and their
// derivatives; saves storing the full 2^m array per node).
struct BladeField {
    GridChart chart;
    int m = 3;
    int grade = 1;
    std::vector<double> coef;  // nodes * ncoef, node-major

    BladeField() = default;
    BladeField(const GridChart& c, int dim, int k)
        : chart(c), m(dim), grade(k), coef(c.nodes() * grade_blades(dim, k).size(), 0.0) {}

    int ncoef() const { return static_cast<int>(grade_blades(m, grade).size()); }
    double* at(int i, int j) { return &coef[chart.idx(i, j) * ncoef()]; }
    const double* at(int i, int j) const { return &coef[chart.idx(i, j) * ncoef()]; }

    Multivector get(int i, int j) const;
    void set(int i, int j, const Multivector& mv);
};

BladeField partial(const BladeField& f, int axis);
double norm2_at(const BladeField& f, int i, int j);

}  // namespace isolab

#endif
