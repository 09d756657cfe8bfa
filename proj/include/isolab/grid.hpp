#ifndef ISOLAB_GRID_HPP
#define ISOLAB_GRID_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace isolab {

using cplx = std::complex<double>;

// Ambient vector with runtime dimension m <= 6.
struct VecM {
    int m = 3;
    std::array<double, 6> a{};

    VecM() = default;
    explicit VecM(int dim) : m(dim) {}
    VecM(double x, double y, double z) : m(3), a{x, y, z} {}

    double& operator[](int i) { return a[static_cast<size_t>(i)]; }
    double operator[](int i) const { return a[static_cast<size_t>(i)]; }

    VecM& operator+=(const VecM& o) {
        for (int i = 0; i < m; ++i) a[i] += o.a[i];
        return *this;
    }
    VecM& operator-=(const VecM& o) {
        for (int i = 0; i < m; ++i) a[i] -= o.a[i];
        return *this;
    }
    VecM& operator*=(double s) {
        for (int i = 0; i < m; ++i) a[i] *= s;
        return *this;
    }
};

inline VecM operator+(VecM u, const VecM& v) { return u += v; }
inline VecM operator-(VecM u, const VecM& v) { return u -= v; }
inline VecM operator*(double s, VecM u) { return u *= s; }
inline VecM operator*(VecM u, double s) { return u *= s; }

inline double dot(const VecM& u, const VecM& v) {
    double s = 0;
    for (int i = 0; i < u.m; ++i) s += u.a[i] * v.a[i];
    return s;
}
inline double norm2(const VecM& u) { return dot(u, u); }
inline double norm(const VecM& u) { return std::sqrt(norm2(u)); }

// Complex ambient vector, stored as real and imaginary parts.
struct CVecM {
    VecM re, im;

    CVecM() = default;
    explicit CVecM(int m) : re(m), im(m) {}
    CVecM(const VecM& r, const VecM& i) : re(r), im(i) {}

    int dim() const { return re.m; }

    CVecM& operator+=(const CVecM& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    CVecM& operator-=(const CVecM& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
};

inline CVecM operator+(CVecM u, const CVecM& v) { return u += v; }
inline CVecM operator-(CVecM u, const CVecM& v) { return u -= v; }
inline CVecM operator*(cplx s, const CVecM& u) {
    CVecM w(u.dim());
    w.re = s.real() * u.re - s.imag() * u.im;
    w.im = s.real() * u.im + s.imag() * u.re;
    return w;
}
inline CVecM conj(const CVecM& u) { return {u.re, -1.0 * u.im}; }
// Bilinear (unconjugated) dot product of complex vectors.
inline cplx dot_bilinear(const CVecM& u, const CVecM& v) {
    return {dot(u.re, v.re) - dot(u.im, v.im), dot(u.re, v.im) + dot(u.im, v.re)};
}
inline cplx dot_bilinear(const CVecM& u, const VecM& v) {
    return {dot(u.re, v), dot(u.im, v)};
}
inline double norm2(const CVecM& u) { return norm2(u.re) + norm2(u.im); }
inline double norm(const CVecM& u) { return std::sqrt(norm2(u)); }

// Uniform tensor chart for conformal coordinates (x1, x2).
// Periodic axes identify node n with node 0; non-periodic axes include both endpoints.
struct GridChart {
    double x1_min = 0, x1_max = 1;
    double x2_min = 0, x2_max = 1;
    int n1 = 8, n2 = 8;
    bool periodic1 = false, periodic2 = false;

    double h1() const { return (x1_max - x1_min) / (periodic1 ? n1 : n1 - 1); }
    double h2() const { return (x2_max - x2_min) / (periodic2 ? n2 : n2 - 1); }
    double x1(int i) const { return x1_min + i * h1(); }
    double x2(int j) const { return x2_min + j * h2(); }
    size_t nodes() const { return static_cast<size_t>(n1) * static_cast<size_t>(n2); }
    size_t idx(int i, int j) const { return static_cast<size_t>(j) * n1 + i; }

    void validate() const;
    bool same_as(const GridChart& o, double tol = 1e-12) const;
};

template <class T>
struct Field {
    GridChart chart;
    std::vector<T> v;

    Field() = default;
    explicit Field(const GridChart& c) : chart(c), v(c.nodes()) {}
    Field(const GridChart& c, const T& fill) : chart(c), v(c.nodes(), fill) {}

    T& at(int i, int j) { return v[chart.idx(i, j)]; }
    const T& at(int i, int j) const { return v[chart.idx(i, j)]; }
};

using ScalarField = Field<double>;
using CplxField = Field<cplx>;
using VecField = Field<VecM>;
using CVecField = Field<CVecM>;

// Second-order finite differences: central in the interior and across periodic
// wraps, one-sided (still second-order) at non-periodic boundaries.
template <class T>
Field<T> partial(const Field<T>& f, int axis);
template <class T>
Field<T> partial2(const Field<T>& f, int axis);  // axis 1 or 2, pure second derivative
template <class T>
Field<T> partial_mixed(const Field<T>& f);  // d^2/dx1 dx2

// Trapezoidal quadrature weight of node (i,j); periodic axes carry unit weight.
double quad_weight(const GridChart& c, int i, int j);

// Integral of f over the chart.
double integrate(const ScalarField& f);

struct FieldNorms {
    double l1 = 0;      // integral of |f|
    double l2 = 0;      // sqrt of integral of f^2
    double linf = 0;    // max |f|
};

// Norms over the interior: a margin is dropped on non-periodic axes so that
// boundary-stencil pollution (which propagates one extra row through derived
// fields) never enters residual statistics.
FieldNorms interior_norms(const ScalarField& f, int margin = 3);
bool is_interior(const GridChart& c, int i, int j, int margin = 3);

ScalarField magnitude(const VecField& f);
ScalarField magnitude(const CplxField& f);
ScalarField magnitude(const CVecField& f);

// Integral of f over the chart region |x| <= radius, with sub-sampled
// cell/circle overlap weights at the rim (second-order accurate).
double disc_chart_integral(const ScalarField& f, double radius);

}  // namespace isolab

#endif
