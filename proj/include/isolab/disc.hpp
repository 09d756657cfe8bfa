#ifndef ISOLAB_DISC_HPP
#define ISOLAB_DISC_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace isolab {

// Cell-centered square grid on [-L, L]^2, symmetric about the origin.
struct SquareGrid {
    double L = 2.0;
    int n = 256;

    double h() const { return 2.0 * L / n; }
    double x(int i) const { return -L + (i + 0.5) * h(); }
    size_t idx(int i, int j) const { return static_cast<size_t>(j) * n + i; }
    size_t nodes() const { return static_cast<size_t>(n) * n; }
    bool same_as(const SquareGrid& o) const { return n == o.n && L == o.L; }
};

struct BoxField {
    SquareGrid g;
    std::vector<double> v;

    BoxField() = default;
    explicit BoxField(const SquareGrid& grid) : g(grid), v(grid.nodes(), 0.0) {}

    double& at(int i, int j) { return v[g.idx(i, j)]; }
    double at(int i, int j) const { return v[g.idx(i, j)]; }
};

// Central differences on the box; one-sided second-order rows at the edges.
BoxField dx(const BoxField& f);
BoxField dy(const BoxField& f);
// Bilinear interpolation among cell centers (clamped at the box edge).
double interp(const BoxField& f, double x, double y);

// Unit-disc geometry attached to a SquareGrid: inside flags, quadrature
// weights with sub-sampled cell/disc overlap at the rim, and stencil arm
// fractions to the circle for the Dirichlet solver.
struct DiscMask {
    SquareGrid g;
    std::vector<uint8_t> inside;
    std::vector<double> weight;           // cell overlap fraction with the disc
    std::vector<std::array<float, 4>> arm;  // E,W,N,S arm fraction in (0,1]

    explicit DiscMask(const SquareGrid& grid);
    bool in(int i, int j) const { return inside[g.idx(i, j)] != 0; }
};

// Quadrature over the disc with overlap weights.
double disc_integral(const BoxField& f, const DiscMask& mask);
double disc_grad_l2(const BoxField& f, const DiscMask& mask);
double disc_sup(const BoxField& f, const DiscMask& mask);

struct PoissonResult {
    BoxField phi;
    int iterations = 0;
    double rel_residual = 0;
    bool converged = false;
};

// Solve Lap(phi) = omega on the unit disc, phi = 0 on the circle.  Curved
// boundary handled by linear one-sided interpolation to the circle, which
// keeps the operator symmetric positive definite; solved by SSOR-PCG.
PoissonResult poisson_dirichlet(const BoxField& omega, const DiscMask& mask,
                                double rel_tol = 1e-11, int max_iter = 20000);

BoxField jacobian(const BoxField& a, const BoxField& b);

}  // namespace isolab

#endif
