#include "isolab/wente.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace isolab {

namespace {

constexpr double PI = std::numbers::pi;

int next_pow2(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

struct Cgrid {
    int n = 0;
    std::vector<std::complex<double>> v;
    explicit Cgrid(int size) : n(size), v(static_cast<size_t>(size) * size) {}
    std::complex<double>& at(int i, int j) { return v[static_cast<size_t>(j) * n + i]; }
};

void fft2_inplace(Cgrid& g, int sign) {
    fftw_plan plan = fftw_plan_dft_2d(g.n, g.n, reinterpret_cast<fftw_complex*>(g.v.data()),
                                      reinterpret_cast<fftw_complex*>(g.v.data()),
                                      sign, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
}

// Linear (free-space) convolution of f with kernel samples k(lag) on an
// enlarged periodic grid; result cropped back to f's grid and scaled by h^2.
BoxField convolve_kernel(const BoxField& f, const std::function<double(double, double)>& kernel,
                         double zero_lag, int pad_factor) {
    const int n = f.g.n;
    const int M = next_pow2(pad_factor * n);
    const double h = f.g.h();
    Cgrid F(M), K(M);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) F.at(i, j) = f.at(i, j);
    for (int j = 0; j < M; ++j)
        for (int i = 0; i < M; ++i) {
            const int li = i <= M / 2 ? i : i - M;
            const int lj = j <= M / 2 ? j : j - M;
            K.at(i, j) = (li == 0 && lj == 0) ? zero_lag : kernel(li * h, lj * h);
        }
    fft2_inplace(F, FFTW_FORWARD);
    fft2_inplace(K, FFTW_FORWARD);
    for (size_t k = 0; k < F.v.size(); ++k) F.v[k] *= K.v[k];
    fft2_inplace(F, FFTW_BACKWARD);
    BoxField out(f.g);
    const double scale = h * h / (static_cast<double>(M) * M);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) out.at(i, j) = F.at(i, j).real() * scale;
    return out;
}

BoxField apply_multiplier(const BoxField& f,
                          const std::function<double(double, double)>& multiplier,
                          int pad_factor) {
    const int n = f.g.n;
    const int M = next_pow2(pad_factor * n);
    const double h = f.g.h();
    Cgrid F(M);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) F.at(i, j) = f.at(i, j);
    fft2_inplace(F, FFTW_FORWARD);
    const double dxi = 2 * PI / (M * h);
    for (int j = 0; j < M; ++j)
        for (int i = 0; i < M; ++i) {
            const int ki = i <= M / 2 ? i : i - M;
            const int kj = j <= M / 2 ? j : j - M;
            if (ki == 0 && kj == 0) {
                F.at(i, j) = 0.0;  // principal value: drop the zeroth mode
                continue;
            }
            F.at(i, j) *= multiplier(ki * dxi, kj * dxi);
        }
    fft2_inplace(F, FFTW_BACKWARD);
    BoxField out(f.g);
    const double scale = 1.0 / (static_cast<double>(M) * M);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) out.at(i, j) = F.at(i, j).real() * scale;
    return out;
}

void require_compact_support(const BoxField& f, int margin, const char* who) {
    const int n = f.g.n;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            if (f.at(i, j) == 0.0) continue;
            if (i < margin || j < margin || i >= n - margin || j >= n - margin)
                throw std::invalid_argument(std::string(who) +
                                            ": source support touches the box boundary");
        }
}

}  // namespace

BoxField whitney_extend(const BoxField& u) {
    const SquareGrid& g = u.g;
    BoxField out = u;
    // Two passes: the first maps comfortably-inside targets, the second fills
    // the thin shell near the rim where the inverted cell straddles the circle.
    for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                const double x = g.x(i), y = g.x(j);
                const double r2 = x * x + y * y;
                if (r2 < 1.0) continue;
                const double ix = x / r2, iy = y / r2;
                // Bilinear stencil around the inverted point.
                const double fx = (ix + g.L) / g.h() - 0.5;
                const double fy = (iy + g.L) / g.h() - 0.5;
                const int i0 = std::clamp(static_cast<int>(std::floor(fx)), 0, g.n - 2);
                const int j0 = std::clamp(static_cast<int>(std::floor(fy)), 0, g.n - 2);
                const double uu = std::clamp(fx - i0, 0.0, 1.0);
                const double vv = std::clamp(fy - j0, 0.0, 1.0);
                double wsum = 0, val = 0;
                const double w[4] = {(1 - uu) * (1 - vv), uu * (1 - vv), (1 - uu) * vv, uu * vv};
                const int ci[4] = {i0, i0 + 1, i0, i0 + 1};
                const int cj[4] = {j0, j0, j0 + 1, j0 + 1};
                for (int c = 0; c < 4; ++c) {
                    const double px = g.x(ci[c]), py = g.x(cj[c]);
                    const bool valid = pass == 0 ? (px * px + py * py < 1.0) : true;
                    if (!valid) continue;
                    wsum += w[c];
                    val += w[c] * out.at(ci[c], cj[c]);
                }
                if (wsum > 0.25) out.at(i, j) = val / wsum;
            }
    }
    return out;
}

WhitneyEnergyReport whitney_energy_report(const BoxField& f) {
    const SquareGrid& g = f.g;
    BoxField gx = dx(f), gy = dy(f);
    WhitneyEnergyReport rep;
    const double cell = g.h() * g.h();
    const double cap = 1.0 / g.L;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const double r = std::hypot(g.x(i), g.x(j));
            const double e = (gx.at(i, j) * gx.at(i, j) + gy.at(i, j) * gy.at(i, j)) * cell;
            if (r < 1.0) {
                rep.energy_inside += e;
                if (r < cap) rep.energy_center_cap += e;
            } else {
                rep.energy_outside_box += e;
            }
        }
    const double denom = rep.energy_inside - rep.energy_center_cap;
    rep.ratio = denom > 0 ? rep.energy_outside_box / denom : 0.0;
    return rep;
}

BoxField newtonian_potential(const BoxField& omega) {
    require_compact_support(omega, 2, "newtonian_potential");
    const double h = omega.g.h();
    // Cell average of log|x| over the zero-lag cell.
    const double zero_lag =
        (std::log(0.5 * h) + 0.5 * (std::log(2.0) + PI / 2 - 3.0)) / (2 * PI);
    return convolve_kernel(
        omega, [](double x, double y) { return std::log(std::hypot(x, y)) / (2 * PI); },
        zero_lag, 4);
}

RieszResult riesz_second(const BoxField& omega, RieszKind kind, int pad_factor) {
    require_compact_support(omega, 2, "riesz_second");
    BoxField w = omega;
    double mean = 0;
    for (double v : w.v) mean += v;
    mean /= static_cast<double>(w.v.size());
    for (double& v : w.v) v -= mean;

    RieszResult res;
    if (kind == RieszKind::cross) {
        res.spectral = apply_multiplier(
            w,
            [](double xi1, double xi2) {
                const double q = xi1 * xi1 + xi2 * xi2;
                return -xi1 * xi2 / (q * q);
            },
            pad_factor);
        res.spatial_raw = convolve_kernel(
            w, [](double x, double y) { return x * y / (x * x + y * y); }, 0.0, pad_factor);
    } else {
        res.spectral = apply_multiplier(
            w,
            [](double xi1, double xi2) {
                const double q = xi1 * xi1 + xi2 * xi2;
                return -(xi1 * xi1 - xi2 * xi2) / (q * q);
            },
            pad_factor);
        res.spatial_raw = convolve_kernel(
            w, [](double x, double y) { return (x * x - y * y) / (x * x + y * y); }, 0.0,
            pad_factor);
    }
    double num = 0, den = 0, ref = 0;
    for (size_t k = 0; k < res.spectral.v.size(); ++k) {
        num += res.spectral.v[k] * res.spatial_raw.v[k];
        den += res.spatial_raw.v[k] * res.spatial_raw.v[k];
        ref += res.spectral.v[k] * res.spectral.v[k];
    }
    res.c0 = den > 0 ? num / den : 0.0;
    double err = 0;
    for (size_t k = 0; k < res.spectral.v.size(); ++k) {
        const double d = res.spectral.v[k] - res.c0 * res.spatial_raw.v[k];
        err += d * d;
    }
    res.rel_l2 = ref > 0 ? std::sqrt(err / ref) : 0.0;
    return res;
}

namespace {

// Spectral toolbox on the padded torus used by the three-term identity.
struct Spectral {
    using cplx_t = std::complex<double>;
    int M;
    double h;

    Cgrid embed(const BoxField& f) const {
        Cgrid g(M);
        for (int j = 0; j < f.g.n; ++j)
            for (int i = 0; i < f.g.n; ++i) g.at(i, j) = f.at(i, j);
        return g;
    }
    void for_modes(Cgrid& f, const std::function<cplx_t(double, double)>& mult) const {
        fft2_inplace(f, FFTW_FORWARD);
        const double dxi = 2 * std::numbers::pi / (M * h);
        for (int j = 0; j < M; ++j)
            for (int i = 0; i < M; ++i) {
                const int ki = i <= M / 2 ? i : i - M;
                const int kj = j <= M / 2 ? j : j - M;
                f.at(i, j) *= mult(ki * dxi, kj * dxi);
            }
        fft2_inplace(f, FFTW_BACKWARD);
        const double scale = 1.0 / (static_cast<double>(M) * M);
        for (auto& v : f.v) v *= scale;
    }
    Cgrid d1(Cgrid f) const {
        for_modes(f, [](double x1, double) { return cplx_t(0, x1); });
        return f;
    }
    Cgrid d2(Cgrid f) const {
        for_modes(f, [](double, double x2) { return cplx_t(0, x2); });
        return f;
    }
    Cgrid inv_lap(Cgrid f) const {
        for_modes(f, [](double x1, double x2) {
            const double q = x1 * x1 + x2 * x2;
            return q == 0 ? cplx_t(0) : cplx_t(-1.0 / q);
        });
        return f;
    }
    double pair(const Cgrid& a, const Cgrid& b) const {
        double s = 0;
        for (size_t k = 0; k < a.v.size(); ++k) s += a.v[k].real() * b.v[k].real();
        return s * h * h;
    }
    double triple(const Cgrid& a, const Cgrid& b, const Cgrid& c) const {
        double s = 0;
        for (size_t k = 0; k < a.v.size(); ++k)
            s += a.v[k].real() * b.v[k].real() * c.v[k].real();
        return s * h * h;
    }
};

}  // namespace

ThreeTermReport three_term_identity(const BoxField& omega, const BoxField& psi, int pad_factor) {
    if (!omega.g.same_as(psi.g)) throw std::invalid_argument("three_term_identity: grid mismatch");
    Spectral sp{next_pow2(pad_factor * omega.g.n), omega.g.h()};

    Cgrid w = sp.embed(omega);
    Cgrid ps = sp.embed(psi);
    Cgrid phi = sp.inv_lap(w);
    Cgrid phi1 = sp.d1(phi), phi2 = sp.d2(phi);
    Cgrid phi12 = sp.d1(sp.d2(phi));
    Cgrid psi1 = sp.d1(ps);

    Cgrid pw(sp.M);
    for (size_t k = 0; k < pw.v.size(); ++k) pw.v[k] = ps.v[k].real() * w.v[k].real();
    Cgrid K_pw = sp.inv_lap(pw);
    Cgrid R = sp.d1(sp.d2(sp.inv_lap(sp.inv_lap(w))));

    ThreeTermReport rep;
    rep.lhs = sp.triple(ps, phi1, phi2);
    rep.term1 = -sp.triple(psi1, phi, phi2);
    Cgrid comm(sp.M);
    for (size_t k = 0; k < comm.v.size(); ++k)
        comm.v[k] = K_pw.v[k].real() - ps.v[k].real() * phi.v[k].real();
    rep.term2 = sp.pair(comm, phi12);
    rep.term3 = -sp.pair(pw, R);
    const double sum = rep.term1 + rep.term2 + rep.term3;
    rep.relative_gap = std::abs(rep.lhs - sum) / std::max(std::abs(rep.lhs), 1e-300);
    return rep;
}

WenteReport wente_check(const BoxField& alpha, const BoxField& beta, const DiscMask& mask) {
    WenteReport rep;
    rep.grad_a = disc_grad_l2(alpha, mask);
    rep.grad_b = disc_grad_l2(beta, mask);
    const double denom = rep.grad_a * rep.grad_b;
    BoxField J = jacobian(alpha, beta);
    PoissonResult pr = poisson_dirichlet(J, mask);
    rep.poisson_iterations = pr.iterations;
    rep.converged = pr.converged;
    if (denom < 1e-14) {
        rep.degenerate = true;
        return rep;
    }
    rep.ratio_sup = disc_sup(pr.phi, mask) / denom;
    rep.ratio_grad = disc_grad_l2(pr.phi, mask) / denom;
    return rep;
}

namespace {
double bump_eta(double t) {
    if (t >= 1.0) return 0.0;
    const double q = 1.0 - t * t;
    return q * q * q * q;
}
}  // namespace

double ProfilePair::A(double x, double y) const {
    return bump_eta(std::hypot(x - offset * sigma, y) / sigma);
}
double ProfilePair::B(double x, double y) const {
    return bump_eta(std::hypot(x, y - offset * sigma) / sigma);
}

void concentrating_pair(const ProfilePair& p, int k, double center_x, double center_y,
                        const SquareGrid& g, BoxField& alpha, BoxField& beta) {
    if (k < 1) throw std::invalid_argument("concentrating_pair: k must be a positive integer");
    const double reach = p.support_radius() / k + std::hypot(center_x, center_y);
    if (reach > 1.0)
        throw std::invalid_argument("concentrating_pair: scaled support leaves the unit disc");
    alpha = BoxField(g);
    beta = BoxField(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const double x = k * (g.x(i) - center_x), y = k * (g.x(j) - center_y);
            alpha.at(i, j) = p.A(x, y);
            beta.at(i, j) = p.B(x, y);
        }
}

}  // namespace isolab
