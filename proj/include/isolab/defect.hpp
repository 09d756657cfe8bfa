#ifndef ISOLAB_DEFECT_HPP
#define ISOLAB_DEFECT_HPP

#include "isolab/disc.hpp"
#include "isolab/geometry.hpp"
#include "isolab/zoo.hpp"

namespace isolab {

// Box-averaged surrogate for a (possibly signed) Radon measure on a rectangle.
// One-dimensional measures use B2 = 1.
struct MeasureGrid {
    double a1 = 0, b1 = 1, a2 = 0, b2 = 1;
    int B1 = 1, B2 = 1;
    std::vector<double> mass;

    MeasureGrid() = default;
    MeasureGrid(double x1a, double x1b, double x2a, double x2b, int n1, int n2)
        : a1(x1a), b1(x1b), a2(x2a), b2(x2b), B1(n1), B2(n2),
          mass(static_cast<size_t>(n1) * n2, 0.0) {}

    double w1() const { return (b1 - a1) / B1; }
    double w2() const { return (b2 - a2) / B2; }
    double& at(int i, int j) { return mass[static_cast<size_t>(j) * B1 + i]; }
    double at(int i, int j) const { return mass[static_cast<size_t>(j) * B1 + i]; }
    void deposit(double x1, double x2, double m);
    double total() const;
    double total_abs() const;
    bool compatible(const MeasureGrid& o, double rel_tol = 0.02) const;
};

// Box-integrated |grad n|^2 dx over the chart (the conformally invariant
// Dirichlet density of the Gauss map).  Gate: conformality residual.
MeasureGrid energy_measure(const Immersion& im, int B1, int B2, const Tolerances& tol = {});

// Binned curvature-squared measure |ddot gamma|^2 ds of a unit-speed curve.
MeasureGrid curve_energy_measure(const PlanarCurve& curve, int bins);

struct DefectReport {
    MeasureGrid defect;       // tail estimate: mean of the last two members minus the limit
    MeasureGrid error_bar;    // |last - previous| per box
    bool monotone = true;     // family distances to the limit were non-increasing
    // Additive transport decomposition D_ij ~ u_i w2 + v_j w1 (filled by
    // product_structure_test).
    std::vector<double> u, v;
    double product_residual = 0;
    std::vector<std::pair<std::array<double, 2>, double>> atoms;  // location, weight
};

DefectReport defect_estimate(const std::vector<MeasureGrid>& family, const MeasureGrid& limit);

// Least-squares additive decomposition; exact for measures of transport type.
void product_structure_test(const MeasureGrid& defect, DefectReport& report);

struct AtomDetectParams {
    double stabilization = 0.2;  // |m(r) - m(r/2)| <= stab * |m(r)|
    double family_drift = 0.2;   // |m_k2(r) - m_k1(r)| <= drift * |m(r)|
    double mass_floor = 0.1;     // atom must carry this fraction of total |mass|
};

struct AtomReport {
    struct Atom {
        double x1 = 0, x2 = 0;
        double weight = 0;
        bool resolved = true;
    };
    std::vector<Atom> atoms;
    bool any_unresolved = false;
};

// Two-scale concentration test at radii {8,4,2} box widths on the family tail.
AtomReport atomic_detect(const std::vector<MeasureGrid>& family,
                         const AtomDetectParams& params = {});

// Fine-grained signed measure of a box field (one grid cell per measure box).
MeasureGrid measure_of_boxfield(const BoxField& f);

}  // namespace isolab

#endif
