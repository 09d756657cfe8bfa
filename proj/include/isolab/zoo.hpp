#ifndef ISOLAB_ZOO_HPP
#define ISOLAB_ZOO_HPP

#include <functional>
#include <map>
#include <string>

#include "isolab/geometry.hpp"

namespace isolab {

// Planar profile curve (r(s), z(s)) in the half plane r > 0, sampled at
// uniform arclength.  Derivative fields are with respect to arclength; the
// invariant |(dr,dz)| = 1 certifies the parametrization.
struct PlanarCurve {
    std::vector<double> r, z;
    std::vector<double> dr, dz;
    std::vector<double> d2r, d2z;
    bool closed = true;
    double length = 0;

    int n() const { return static_cast<int>(r.size()); }
    double ds() const { return length / (closed ? n() : n() - 1); }
    double s_at(int k) const { return k * ds(); }

    double speed_defect() const;  // max | |(dr,dz)| - 1 |
    double r_min() const;
    void validate(double speed_tol = 1e-8, double r_floor = 1e-6) const;
};

PlanarCurve circle_profile(double center_r, double center_z, double radius, int n);
PlanarCurve line_profile(double radius, double z0, double z1, int n);
// Arc of the unit circle r = cos(s), z = sin(s), s in [-s_max, s_max];
// its revolution is the round sphere minus two polar caps.
PlanarCurve arc_profile(double s_max, int n);

struct FamilySpec {
    double amplitude = 1.0;  // oscillation amplitude of the second derivative
    int frequency = 8;       // integer frequency index k
};

// gamma_k = gamma + (a/k^2) sin(k s) nu, resampled to unit speed.
// nu is the curve normal (dz, -dr).  Throws when the re-parametrization
// fails to converge or the perturbation violates r > 0.
PlanarCurve oscillating_curve(const PlanarCurve& base, const FamilySpec& fs);

// Conformal surface of revolution: (theta, t) -> (r cos theta, r sin theta, z)
// with dt = ds / r(s), so e^lambda = r.  Periodic in theta; periodic in t
// exactly when the profile is closed.
Immersion revolution(const PlanarCurve& curve, int n1, int n2,
                     double speed_tol = 1e-8, double r_floor = 1e-6);

// Named analytic generators with known conformal factor attached.
// Names: sphere_stereographic, cylinder, catenoid, enneper,
//        torus_of_revolution, flat_plane, clifford_torus_r4.
Immersion analytic(const std::string& name, const std::map<std::string, double>& params,
                   const GridChart& chart);
Immersion analytic(const std::string& name, const GridChart& chart);

// Same surface, sampled along chart coordinates rotated by `angle`
// (a conformal re-parametrization; output chart is never periodic).
Immersion analytic_rotated(const std::string& name, const std::map<std::string, double>& params,
                           const GridChart& chart, double angle);

// Natural chart for a named generator at resolution n x n.
GridChart default_chart(const std::string& name, int n);

// Two-column text format (columns r z, arclength implicit by index; '#'
// comments allowed).  The polyline is re-parametrized to unit speed with
// spline-filled derivative fields.
PlanarCurve load_curve_rz(const std::string& path, bool closed);
void save_curve_rz(const PlanarCurve& curve, const std::string& path);

}  // namespace isolab

#endif
