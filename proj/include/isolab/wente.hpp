#ifndef ISOLAB_WENTE_HPP
#define ISOLAB_WENTE_HPP

#include <functional>
#include <string>

#include "isolab/disc.hpp"

namespace isolab {

// Whitney-type extension by inversion: u(x/|x|^2) outside the unit disc.
// Input values are meaningful inside the disc; the output fills the box.
BoxField whitney_extend(const BoxField& u);

struct WhitneyEnergyReport {
    double energy_inside = 0;
    double energy_outside_box = 0;   // over the box minus the disc
    double energy_center_cap = 0;    // over |x| < 1/L, the inversion image of the box complement
    double ratio = 0;                // outside_box / (inside - center_cap)
};

WhitneyEnergyReport whitney_energy_report(const BoxField& extended);

// Free-space potential: convolution with (2 pi)^{-1} log |x| on a zero-padded
// spectral grid; the zero-lag kernel entry carries the cell average of the
// logarithm.  Rejects sources whose support touches the box boundary.
BoxField newtonian_potential(const BoxField& omega);

enum class RieszKind { cross, diff };  // d1 d2 Lap^{-2}  |  (d1^2 - d2^2) Lap^{-2}

struct RieszResult {
    BoxField spectral;     // multiplier path
    BoxField spatial_raw;  // bounded-kernel path, unit constant
    double c0 = 0;         // fitted constant between the two paths
    double rel_l2 = 0;     // relative L2 disagreement after the fit
};

// Both evaluation routes for the bounded-kernel operators; the mean of omega
// is removed and the zeroth Fourier mode zeroed (principal-value reading).
RieszResult riesz_second(const BoxField& omega, RieszKind kind, int pad_factor = 8);

// Three-term splitting of the quadratic pairing of a potential's gradient:
//   sum psi d1(phi) d2(phi) = - sum d1(psi) phi d2(phi)
//                             + sum [Lap^{-1}(psi w) - psi Lap^{-1} w] d1 d2 phi
//                             - sum (psi w) d1 d2 Lap^{-2} w,   phi = Lap^{-1} w.
// Assembled with spectral operators on the padded torus, where integration by
// parts and operator self-adjointness are exact; the only slack is product
// aliasing, which is at quadrature level for smooth inputs.
struct ThreeTermReport {
    double lhs = 0;
    double term1 = 0, term2 = 0, term3 = 0;
    double relative_gap = 0;
};

ThreeTermReport three_term_identity(const BoxField& omega, const BoxField& psi,
                                    int pad_factor = 4);

struct WenteReport {
    double ratio_sup = 0;    // sup |phi| / (|grad a|_2 |grad b|_2)
    double ratio_grad = 0;   // |grad phi|_2 / (same)
    double grad_a = 0, grad_b = 0;
    bool degenerate = false;
    int poisson_iterations = 0;
    bool converged = false;
};

WenteReport wente_check(const BoxField& alpha, const BoxField& beta, const DiscMask& mask);

// Smooth compactly supported profile pair used by the concentration
// experiments: two radial bumps eta = (1-t^2)^4 of width sigma, offset along
// the two axes so their Jacobian is neither radial nor mean-degenerate.
struct ProfilePair {
    double sigma = 1.0;
    double offset = 0.5;  // bump-center offset in units of sigma
    double support_radius() const { return sigma * (1.0 + offset); }
    double A(double x, double y) const;
    double B(double x, double y) const;
};

// alpha_k(x) = A(k (x - center)), beta_k likewise; throws when the scaled
// support leaves the unit disc.
void concentrating_pair(const ProfilePair& p, int k, double center_x, double center_y,
                        const SquareGrid& g, BoxField& alpha, BoxField& beta);

}  // namespace isolab

#endif
