#include "isolab/disc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace isolab {

namespace {

void diff_axis(const BoxField& f, BoxField& out, bool along_x) {
    const int n = f.g.n;
    const double inv2h = 1.0 / (2 * f.g.h());
    auto get = [&](int i, int j) { return f.at(i, j); };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const int k = along_x ? i : j;
            double d;
            if (k == 0) {
                d = along_x ? (-3 * get(0, j) + 4 * get(1, j) - get(2, j))
                            : (-3 * get(i, 0) + 4 * get(i, 1) - get(i, 2));
            } else if (k == n - 1) {
                d = along_x ? (3 * get(n - 1, j) - 4 * get(n - 2, j) + get(n - 3, j))
                            : (3 * get(i, n - 1) - 4 * get(i, n - 2) + get(i, n - 3));
            } else {
                d = along_x ? (get(i + 1, j) - get(i - 1, j)) : (get(i, j + 1) - get(i, j - 1));
            }
            out.at(i, j) = d * inv2h;
        }
}

}  // namespace

BoxField dx(const BoxField& f) {
    BoxField out(f.g);
    diff_axis(f, out, true);
    return out;
}

BoxField dy(const BoxField& f) {
    BoxField out(f.g);
    diff_axis(f, out, false);
    return out;
}

double interp(const BoxField& f, double x, double y) {
    const SquareGrid& g = f.g;
    const double fx = (x + g.L) / g.h() - 0.5;
    const double fy = (y + g.L) / g.h() - 0.5;
    const int i0 = std::clamp(static_cast<int>(std::floor(fx)), 0, g.n - 2);
    const int j0 = std::clamp(static_cast<int>(std::floor(fy)), 0, g.n - 2);
    const double u = std::clamp(fx - i0, 0.0, 1.0);
    const double v = std::clamp(fy - j0, 0.0, 1.0);
    return (1 - u) * (1 - v) * f.at(i0, j0) + u * (1 - v) * f.at(i0 + 1, j0) +
           (1 - u) * v * f.at(i0, j0 + 1) + u * v * f.at(i0 + 1, j0 + 1);
}

DiscMask::DiscMask(const SquareGrid& grid) : g(grid) {
    inside.assign(g.nodes(), 0);
    weight.assign(g.nodes(), 0.0);
    arm.assign(g.nodes(), {1.f, 1.f, 1.f, 1.f});
    const double h = g.h();
    const int sub = 16;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const double cx = g.x(i), cy = g.x(j);
            const double rad = std::hypot(cx, cy);
            const size_t k = g.idx(i, j);
            inside[k] = rad < 1.0 ? 1 : 0;
            const double half = 0.5 * h * std::numbers::sqrt2;
            if (rad < 1.0 - half) {
                weight[k] = 1.0;
            } else if (rad > 1.0 + half) {
                weight[k] = 0.0;
            } else {
                int hits = 0;
                for (int sj = 0; sj < sub; ++sj)
                    for (int si = 0; si < sub; ++si) {
                        const double px = cx + ((si + 0.5) / sub - 0.5) * h;
                        const double py = cy + ((sj + 0.5) / sub - 0.5) * h;
                        if (px * px + py * py < 1.0) ++hits;
                    }
                weight[k] = static_cast<double>(hits) / (sub * sub);
            }
            if (!inside[k]) continue;
            // Arm fraction toward each neighbor: solve |p + t h e|^2 = 1.
            const std::array<std::array<double, 2>, 4> dirs{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
            for (int d = 0; d < 4; ++d) {
                const double ex = dirs[d][0], ey = dirs[d][1];
                const double nx = cx + ex * h, ny = cy + ey * h;
                if (nx * nx + ny * ny < 1.0) continue;  // neighbor inside, full arm
                const double b = 2 * h * (cx * ex + cy * ey);
                const double a = h * h;
                const double cc = cx * cx + cy * cy - 1.0;
                const double disc = b * b - 4 * a * cc;
                double t = disc > 0 ? (-b + std::sqrt(disc)) / (2 * a) : 1.0;
                arm[k][d] = static_cast<float>(std::clamp(t, 0.0, 1.0));
            }
        }
}

double disc_integral(const BoxField& f, const DiscMask& mask) {
    double s = 0;
    for (size_t k = 0; k < f.v.size(); ++k) s += f.v[k] * mask.weight[k];
    return s * f.g.h() * f.g.h();
}

double disc_grad_l2(const BoxField& f, const DiscMask& mask) {
    BoxField gx = dx(f), gy = dy(f);
    double s = 0;
    for (size_t k = 0; k < f.v.size(); ++k)
        s += (gx.v[k] * gx.v[k] + gy.v[k] * gy.v[k]) * mask.weight[k];
    return std::sqrt(s * f.g.h() * f.g.h());
}

double disc_sup(const BoxField& f, const DiscMask& mask) {
    double s = 0;
    for (size_t k = 0; k < f.v.size(); ++k)
        if (mask.inside[k]) s = std::max(s, std::abs(f.v[k]));
    return s;
}

BoxField jacobian(const BoxField& a, const BoxField& b) {
    if (!a.g.same_as(b.g)) throw std::invalid_argument("jacobian: grid mismatch");
    BoxField ax = dx(a), ay = dy(a), bx = dx(b), by = dy(b);
    BoxField out(a.g);
    for (size_t k = 0; k < out.v.size(); ++k)
        out.v[k] = ax.v[k] * by.v[k] - ay.v[k] * bx.v[k];
    return out;
}

namespace {

// Symmetric 5-point operator with Dirichlet fold-in at cut arms.
struct DiscOperator {
    const DiscMask& mask;
    std::vector<double> diag;        // diagonal of A = -Lap
    std::vector<uint8_t> link;       // bit d set when coupled to neighbor d (E,W,N,S)
    std::vector<size_t> cells;       // indices of active (inside) nodes
    double offdiag;                  // -1/h^2
    static constexpr double theta_floor = 1e-6;

    explicit DiscOperator(const DiscMask& m) : mask(m) {
        const SquareGrid& g = m.g;
        const double h2 = g.h() * g.h();
        offdiag = -1.0 / h2;
        diag.assign(g.nodes(), 0.0);
        link.assign(g.nodes(), 0);
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                const size_t k = g.idx(i, j);
                if (!m.inside[k]) continue;
                double d = 4.0;
                uint8_t lk = 0;
                const int di[4] = {1, -1, 0, 0};
                const int dj[4] = {0, 0, 1, -1};
                for (int dir = 0; dir < 4; ++dir) {
                    const int ii = i + di[dir], jj = j + dj[dir];
                    const bool nb_in = ii >= 0 && jj >= 0 && ii < g.n && jj < g.n &&
                                       m.inside[g.idx(ii, jj)];
                    if (nb_in) {
                        lk |= static_cast<uint8_t>(1 << dir);
                    } else {
                        const double theta =
                            std::max<double>(m.arm[k][dir], theta_floor);
                        d += 1.0 / theta - 1.0;
                    }
                }
                diag[k] = d / h2;
                link[k] = lk;
                cells.push_back(k);
            }
    }

    void apply(const std::vector<double>& u, std::vector<double>& out) const {
        const int n = mask.g.n;
        std::fill(out.begin(), out.end(), 0.0);
        for (size_t k : cells) {
            double s = diag[k] * u[k];
            const uint8_t lk = link[k];
            if (lk & 1) s += offdiag * u[k + 1];
            if (lk & 2) s += offdiag * u[k - 1];
            if (lk & 4) s += offdiag * u[k + n];
            if (lk & 8) s += offdiag * u[k - n];
            out[k] = s;
        }
    }

    // SSOR preconditioner solve M z = r (forward sweep, diagonal scale, backward sweep).
    void ssor(const std::vector<double>& r, std::vector<double>& z, double omega) const {
        const int n = mask.g.n;
        std::fill(z.begin(), z.end(), 0.0);
        for (size_t idx = 0; idx < cells.size(); ++idx) {
            const size_t k = cells[idx];
            double s = r[k];
            const uint8_t lk = link[k];
            if (lk & 2) s -= offdiag * z[k - 1];
            if (lk & 8) s -= offdiag * z[k - n];
            z[k] = omega * s / diag[k];
        }
        for (size_t k : cells) z[k] *= diag[k] * (2.0 - omega) / omega;
        for (size_t idx = cells.size(); idx-- > 0;) {
            const size_t k = cells[idx];
            double s = z[k];
            const uint8_t lk = link[k];
            if (lk & 1) s -= offdiag * z[k + 1];
            if (lk & 4) s -= offdiag * z[k + n];
            z[k] = omega * s / diag[k];
        }
    }
};

}  // namespace

PoissonResult poisson_dirichlet(const BoxField& omega, const DiscMask& mask, double rel_tol,
                                int max_iter) {
    if (!omega.g.same_as(mask.g)) throw std::invalid_argument("poisson_dirichlet: grid mismatch");
    const DiscOperator A(mask);
    const size_t N = omega.g.nodes();
    std::vector<double> b(N, 0.0);
    for (size_t k : A.cells) b[k] = -omega.v[k];  // A = -Lap

    PoissonResult res;
    res.phi = BoxField(omega.g);
    std::vector<double>& u = res.phi.v;
    std::vector<double> r = b, z(N, 0.0), p(N, 0.0), Ap(N, 0.0);

    double bnorm = 0;
    for (size_t k : A.cells) bnorm += b[k] * b[k];
    bnorm = std::sqrt(bnorm);
    if (bnorm == 0) {
        res.converged = true;
        return res;
    }
    const double omega_ssor = 1.6;
    A.ssor(r, z, omega_ssor);
    p = z;
    double rz = 0;
    for (size_t k : A.cells) rz += r[k] * z[k];

    for (int it = 0; it < max_iter; ++it) {
        A.apply(p, Ap);
        double pAp = 0;
        for (size_t k : A.cells) pAp += p[k] * Ap[k];
        const double alpha = rz / pAp;
        for (size_t k : A.cells) {
            u[k] += alpha * p[k];
            r[k] -= alpha * Ap[k];
        }
        double rnorm = 0;
        for (size_t k : A.cells) rnorm += r[k] * r[k];
        rnorm = std::sqrt(rnorm);
        res.iterations = it + 1;
        res.rel_residual = rnorm / bnorm;
        if (res.rel_residual <= rel_tol) {
            res.converged = true;
            return res;
        }
        A.ssor(r, z, omega_ssor);
        double rz_new = 0;
        for (size_t k : A.cells) rz_new += r[k] * z[k];
        const double beta = rz_new / rz;
        rz = rz_new;
        for (size_t k : A.cells) p[k] = z[k] + beta * p[k];
    }
    return res;  // converged = false; caller decides how loud to be
}

}  // namespace isolab
