#ifndef ISOLAB_EXPERIMENTS_HPP
#define ISOLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <string>

#include "isolab/io.hpp"

namespace isolab {

// Shared configuration for the experiment drivers; the CLI and the acceptance
// suite both run through these so every headline check is a single command.
struct ExperimentConfig {
    int grid = 256;
    std::vector<int> ladder = {64, 128, 256};
    uint64_t seed = 2026;
    std::string out_dir;                     // empty: no artifacts written
    Tolerances tol;
    double entropy_order_min = 1.5;          // observed order gate for the ladders
    double weingarten_rel_max = 1e-3;
    double isothermic_max = 1e-3;
    double duality_max = 1e-3;
    double dual_sphere_radius_var_max = 0.01;
    double wente_analytic_rel_max = 0.02;
    double wente_drift_max = 0.05;
    double riesz_rel_max = 0.01;
    double riesz_c0_drift_max = 0.01;
    double atom_weight_rel_max = 0.10;
    double curve_defect_density = 0.5;
    double curve_defect_rel_max = 0.05;
    double transport_residual_max = 0.05;
    double transport_theta_var_max = 0.05;
    double willmore_sphere_order_min = 1.5;
    double willmore_cylinder_rel_max = 0.005;
    double runtime_per_surface_s = 60.0;
    double runtime_transport_s = 600.0;

    nlohmann::json echo() const;
};

RunReport run_entropy_conservation(const ExperimentConfig& cfg);   // criterion 1
RunReport run_weingarten_consistency(const ExperimentConfig& cfg); // criterion 2
RunReport run_isothermic_examples(const ExperimentConfig& cfg);    // criterion 3
RunReport run_duality(const ExperimentConfig& cfg);                // criterion 4
RunReport run_wente_battery(const ExperimentConfig& cfg);          // criterion 5
RunReport run_riesz_kernels(const ExperimentConfig& cfg);          // criterion 6
RunReport run_atomic_defect(const ExperimentConfig& cfg);          // criterion 7
RunReport run_defect_transport(const ExperimentConfig& cfg);       // criterion 8
RunReport run_willmore_energies(const ExperimentConfig& cfg);      // criterion 9

// Generic per-surface residual diagnostics (weingarten, isothermic, willmore,
// codazzi, liouville) for the CLI `residuals` subcommand.
RunReport run_surface_residuals(const std::string& name, const ExperimentConfig& cfg);

// Refinement studies for the CLI `convergence` subcommand:
// study in {poisson, entropy, willmore_sphere, isothermic}.
RunReport run_convergence_study(const std::string& study, const ExperimentConfig& cfg);

// Two-chart stereographic Willmore energy of the unit sphere at resolution n:
// both polar charts integrated over the unit disc with overlap weights.
double sphere_willmore_two_charts(int n, const Tolerances& tol);

}  // namespace isolab

#endif
