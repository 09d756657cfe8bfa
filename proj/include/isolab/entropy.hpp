#ifndef ISOLAB_ENTROPY_HPP
#define ISOLAB_ENTROPY_HPP

#include "isolab/geometry.hpp"

namespace isolab {

// Densities and fluxes of the two divergence-form conservation laws that hold
// on isothermic charts, plus their discrete divergence residuals:
//   d1[ D1 ] + d2[ F ] = 0   and   d2[ D2 ] + d1[ F ] = 0,
// with D1 = |d2 n |_ e2|^2 + l1^2 - l2^2, D2 mirrored, F = 2 l1 l2.
struct EntropyFields {
    ScalarField D1, D2, F;
    ScalarField residual1, residual2;
    FieldNorms res1_norms, res2_norms;
};

// Refuses (with the measured residual) unless the isothermic gate passes;
// the laws are only asserted where their hypothesis holds.
EntropyFields entropy_fields(const Immersion& im, const Tolerances& tol = {});

struct OrthogonalityReport {
    double normal_mixed_second = 0;   // max |pi_n(d^2 phi / dx1 dx2)|
    double n2_contract_d1phi = 0;     // max |d2 n |_ d1 phi|
    double n1_contract_d2phi = 0;     // max |d1 n |_ d2 phi|
};

OrthogonalityReport orthogonality_checks(const Immersion& im, const Tolerances& tol = {});

// Potentials A, B, alpha with grad A = (-F, D1), grad B = (D2, -F),
// grad alpha = (B, A); all mean-zero on the chart.
struct Potentials {
    ScalarField A, B, alpha;
    double curl_AB = 0;       // interior Linf of d1 A - d2 B
    double roundtrip_D1 = 0;  // interior Linf of d2 A - D1
    double roundtrip_D2 = 0;  // interior Linf of d1 B - D2
};

Potentials reconstruct_potentials(const EntropyFields& ef, double residual_tol = 1e-2);

// Discrete W^{1,2} norm of a scalar field over the chart interior.
double sobolev_w12_norm(const ScalarField& f);

}  // namespace isolab

#endif
