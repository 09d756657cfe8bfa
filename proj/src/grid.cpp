#include "isolab/grid.hpp"

#include <algorithm>

namespace isolab {

void GridChart::validate() const {
    if (n1 < 8 || n2 < 8) throw std::invalid_argument("GridChart: grid counts must be >= 8");
    if (nodes() < 64) throw std::invalid_argument("GridChart: n1*n2 must be >= 64");
    if (!(x1_max > x1_min) || !(x2_max > x2_min))
        throw std::invalid_argument("GridChart: degenerate coordinate range");
    if (!(h1() > 0) || !(h2() > 0)) throw std::invalid_argument("GridChart: zero spacing");
}

bool GridChart::same_as(const GridChart& o, double tol) const {
    return n1 == o.n1 && n2 == o.n2 && periodic1 == o.periodic1 && periodic2 == o.periodic2 &&
           std::abs(x1_min - o.x1_min) <= tol && std::abs(x1_max - o.x1_max) <= tol &&
           std::abs(x2_min - o.x2_min) <= tol && std::abs(x2_max - o.x2_max) <= tol;
}

namespace {

template <class T>
T zero_like(const T&) {
    return T{};
}
inline VecM zero_like(const VecM& v) { return VecM(v.m); }
inline CVecM zero_like(const CVecM& v) { return CVecM(v.dim()); }

template <class T>
struct LineView {
    // Presents one grid line (along the differentiation axis) with stride access.
    const T* base;
    size_t stride;
    int n;
    bool periodic;
    const T& operator()(int k) const { return base[static_cast<size_t>(k) * stride]; }
};

template <class T>
void diff_line(const LineView<T>& in, T* out, size_t out_stride, double h, int order) {
    const int n = in.n;
    auto O = [&](int k) -> T& { return out[static_cast<size_t>(k) * out_stride]; };
    if (in.periodic) {
        for (int k = 0; k < n; ++k) {
            const T& p = in((k + 1) % n);
            const T& m = in((k - 1 + n) % n);
            if (order == 1) {
                O(k) = (1.0 / (2 * h)) * (p - m);
            } else {
                O(k) = (1.0 / (h * h)) * ((p - in(k)) - (in(k) - m));
            }
        }
        return;
    }
    if (order == 1) {
        for (int k = 1; k + 1 < n; ++k) O(k) = (1.0 / (2 * h)) * (in(k + 1) - in(k - 1));
        O(0) = (1.0 / (2 * h)) * (-3.0 * in(0) + 4.0 * in(1) - in(2));
        O(n - 1) = (1.0 / (2 * h)) * (3.0 * in(n - 1) - 4.0 * in(n - 2) + in(n - 3));
    } else {
        for (int k = 1; k + 1 < n; ++k)
            O(k) = (1.0 / (h * h)) * ((in(k + 1) - in(k)) - (in(k) - in(k - 1)));
        O(0) = (1.0 / (h * h)) * (2.0 * in(0) - 5.0 * in(1) + 4.0 * in(2) - in(3));
        O(n - 1) =
            (1.0 / (h * h)) * (2.0 * in(n - 1) - 5.0 * in(n - 2) + 4.0 * in(n - 3) - in(n - 4));
    }
}

template <class T>
Field<T> diff_axis(const Field<T>& f, int axis, int order) {
    const GridChart& c = f.chart;
    c.validate();
    Field<T> out(c);
    if (!f.v.empty())
        for (auto& x : out.v) x = zero_like(f.v[0]);
    if (axis == 1) {
        for (int j = 0; j < c.n2; ++j) {
            LineView<T> line{&f.v[c.idx(0, j)], 1, c.n1, c.periodic1};
            diff_line(line, &out.v[c.idx(0, j)], 1, c.h1(), order);
        }
    } else {
        for (int i = 0; i < c.n1; ++i) {
            LineView<T> line{&f.v[c.idx(i, 0)], static_cast<size_t>(c.n1), c.n2, c.periodic2};
            diff_line(line, &out.v[c.idx(i, 0)], static_cast<size_t>(c.n1), c.h2(), order);
        }
    }
    return out;
}

}  // namespace

template <class T>
Field<T> partial(const Field<T>& f, int axis) {
    return diff_axis(f, axis, 1);
}
template <class T>
Field<T> partial2(const Field<T>& f, int axis) {
    return diff_axis(f, axis, 2);
}
template <class T>
Field<T> partial_mixed(const Field<T>& f) {
    return diff_axis(diff_axis(f, 2, 1), 1, 1);
}

template Field<double> partial(const Field<double>&, int);
template Field<cplx> partial(const Field<cplx>&, int);
template Field<VecM> partial(const Field<VecM>&, int);
template Field<CVecM> partial(const Field<CVecM>&, int);
template Field<double> partial2(const Field<double>&, int);
template Field<cplx> partial2(const Field<cplx>&, int);
template Field<VecM> partial2(const Field<VecM>&, int);
template Field<CVecM> partial2(const Field<CVecM>&, int);
template Field<double> partial_mixed(const Field<double>&);
template Field<cplx> partial_mixed(const Field<cplx>&);
template Field<VecM> partial_mixed(const Field<VecM>&);
template Field<CVecM> partial_mixed(const Field<CVecM>&);

double quad_weight(const GridChart& c, int i, int j) {
    double w = 1.0;
    if (!c.periodic1 && (i == 0 || i == c.n1 - 1)) w *= 0.5;
    if (!c.periodic2 && (j == 0 || j == c.n2 - 1)) w *= 0.5;
    return w;
}

double integrate(const ScalarField& f) {
    const GridChart& c = f.chart;
    double s = 0;
    for (int j = 0; j < c.n2; ++j)
        for (int i = 0; i < c.n1; ++i) s += quad_weight(c, i, j) * f.at(i, j);
    return s * c.h1() * c.h2();
}

bool is_interior(const GridChart& c, int i, int j, int margin) {
    if (!c.periodic1 && (i < margin || i >= c.n1 - margin)) return false;
    if (!c.periodic2 && (j < margin || j >= c.n2 - margin)) return false;
    return true;
}

FieldNorms interior_norms(const ScalarField& f, int margin) {
    const GridChart& c = f.chart;
    FieldNorms r;
    double l2sq = 0;
    const double cell = c.h1() * c.h2();
    for (int j = 0; j < c.n2; ++j)
        for (int i = 0; i < c.n1; ++i) {
            if (!is_interior(c, i, j, margin)) continue;
            const double x = f.at(i, j);
            r.l1 += std::abs(x) * cell;
            l2sq += x * x * cell;
            r.linf = std::max(r.linf, std::abs(x));
        }
    r.l2 = std::sqrt(l2sq);
    return r;
}

double disc_chart_integral(const ScalarField& f, double radius) {
    const GridChart& c = f.chart;
    const double h1 = c.h1(), h2 = c.h2();
    const double half = 0.5 * std::hypot(h1, h2);
    const int sub = 16;
    double s = 0;
    for (int j = 0; j < c.n2; ++j)
        for (int i = 0; i < c.n1; ++i) {
            const double x = c.x1(i), y = c.x2(j);
            const double rad = std::hypot(x, y);
            double w;
            if (rad < radius - half) {
                w = 1.0;
            } else if (rad > radius + half) {
                w = 0.0;
            } else {
                int hits = 0;
                for (int sj = 0; sj < sub; ++sj)
                    for (int si = 0; si < sub; ++si) {
                        const double px = x + ((si + 0.5) / sub - 0.5) * h1;
                        const double py = y + ((sj + 0.5) / sub - 0.5) * h2;
                        if (px * px + py * py < radius * radius) ++hits;
                    }
                w = static_cast<double>(hits) / (sub * sub);
            }
            s += w * quad_weight(c, i, j) * f.at(i, j);
        }
    return s * h1 * h2;
}

ScalarField magnitude(const VecField& f) {
    ScalarField out(f.chart);
    for (size_t k = 0; k < f.v.size(); ++k) out.v[k] = norm(f.v[k]);
    return out;
}
ScalarField magnitude(const CplxField& f) {
    ScalarField out(f.chart);
    for (size_t k = 0; k < f.v.size(); ++k) out.v[k] = std::abs(f.v[k]);
    return out;
}
ScalarField magnitude(const CVecField& f) {
    ScalarField out(f.chart);
    for (size_t k = 0; k < f.v.size(); ++k) out.v[k] = norm(f.v[k]);
    return out;
}

}  // namespace isolab
