#include "isolab/experiments.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "isolab/entropy.hpp"
#include "isolab/wente.hpp"
#include "isolab/zoo.hpp"

namespace isolab {

namespace {

constexpr double PI = std::numbers::pi;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ScalarField willmore_density(const Immersion& im, const Tolerances& tol) {
    MeanCurvatureResult mc = mean_curvature(im, tol);
    ConformalFactorResult cf = conformal_factor(im, tol);
    ScalarField density(im.chart);
    for (size_t k = 0; k < density.v.size(); ++k)
        density.v[k] = norm2(mc.H.v[k]) * std::exp(2.0 * cf.lambda.v[k]);
    return density;
}

Immersion sphere_chart_south(const GridChart& chart) {
    // Stereographic chart from the south pole (mirror of the named generator).
    Immersion im(chart, 3);
    for (int j = 0; j < chart.n2; ++j)
        for (int i = 0; i < chart.n1; ++i) {
            const double u = chart.x1(i), v = chart.x2(j);
            const double w = 1.0 + u * u + v * v;
            im.at(i, j) = VecM(2 * u / w, 2 * v / w, (1 - u * u - v * v) / w);
        }
    return im;
}

// Deterministic smooth trig pair for the battery, supported on the whole disc.
void seeded_trig_pair(uint64_t seed, const SquareGrid& g, BoxField& a, BoxField& b) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    double c[12];
    for (double& x : c) x = amp(rng);
    a = BoxField(g);
    b = BoxField(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const double x = g.x(i), y = g.x(j);
            a.at(i, j) = c[0] * std::sin(x + 2 * y) + c[1] * std::cos(2 * x - y) +
                         c[2] * x * y + c[3] * std::sin(3 * x) * std::cos(y);
            b.at(i, j) = c[4] * std::cos(x - y) + c[5] * std::sin(2 * x + y) +
                         c[6] * (x * x - y * y) + c[7] * std::cos(2 * y) * std::sin(x);
        }
}

struct BatteryOutcome {
    std::vector<double> ratios;
    double analytic_ratio = 0;
    bool all_converged = true;
};

BatteryOutcome wente_battery_at(int n, uint64_t seed) {
    SquareGrid g{1.0, n};
    DiscMask mask(g);
    BatteryOutcome out;

    auto run_pair = [&](const BoxField& a, const BoxField& b) {
        WenteReport rep = wente_check(a, b, mask);
        out.all_converged = out.all_converged && rep.converged && !rep.degenerate;
        out.ratios.push_back(rep.ratio_sup);
        return rep;
    };

    // 1: the analytic pair alpha = x1, beta = x2.
    BoxField a(g), b(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            a.at(i, j) = g.x(i);
            b.at(i, j) = g.x(j);
        }
    out.analytic_ratio = run_pair(a, b).ratio_sup;

    // 2-5: concentrating family k = 1, 2, 4, 8.
    ProfilePair prof{0.65, 0.5};
    for (int k : {1, 2, 4, 8}) {
        concentrating_pair(prof, k, 0.0, 0.0, g, a, b);
        run_pair(a, b);
    }
    // 6: translated concentrating pair.
    concentrating_pair(prof, 4, 0.3, -0.2, g, a, b);
    run_pair(a, b);
    // 7: global smooth trig pair.
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const double x = g.x(i), y = g.x(j);
            a.at(i, j) = std::sin(2 * x) * std::cos(y);
            b.at(i, j) = x * y;
        }
    run_pair(a, b);
    // 8: radial against linear.
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const double x = g.x(i), y = g.x(j);
            a.at(i, j) = x * x + y * y;
            b.at(i, j) = x;
        }
    run_pair(a, b);
    // 9-10: seeded random trig pairs.
    seeded_trig_pair(seed, g, a, b);
    run_pair(a, b);
    seeded_trig_pair(seed + 1, g, a, b);
    run_pair(a, b);
    return out;
}

// Compactly supported polynomial bump psi = (1 - |x/rho|^2)^p and its exact
// Laplacian and bilaplacian (test sources for the kernel identities).
struct PolyBump {
    double rho = 0.8;
    int p = 8;

    double value(double x, double y) const {
        const double u = (x * x + y * y) / (rho * rho);
        if (u >= 1.0) return 0.0;
        return std::pow(1.0 - u, p);
    }
    double laplacian(double x, double y) const {
        const double u = (x * x + y * y) / (rho * rho);
        if (u >= 1.0) return 0.0;
        const double f = 4.0 * p * std::pow(1.0 - u, p - 2) * (p * u - 1.0);
        return f / (rho * rho);
    }
    double bilaplacian(double x, double y) const {
        const double u = (x * x + y * y) / (rho * rho);
        if (u >= 1.0) return 0.0;
        // Lap(g(u)) = 4 (u g'' + g') with g = 4 p (1-u)^{p-2} (p u - 1) / rho^2.
        const double q = 1.0 - u;
        const double g1 =
            4.0 * p * (-(p - 2) * std::pow(q, p - 3) * (p * u - 1.0) + p * std::pow(q, p - 2));
        const double g2 = 4.0 * p * (p - 2) * std::pow(q, p - 4) *
                          ((p - 3) * (p * u - 1.0) - 2.0 * p * q);
        return 4.0 * (u * g2 + g1) / (rho * rho * rho * rho);
    }
    double d12(double x, double y) const {
        const double u = (x * x + y * y) / (rho * rho);
        if (u >= 1.0) return 0.0;
        const double f2 = p * (p - 1) * std::pow(1.0 - u, p - 2);
        return 4.0 * x * y * f2 / (rho * rho * rho * rho);
    }
};

BoxField seeded_compact_source(uint64_t seed, const SquareGrid& g) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    const double c1 = amp(rng), c2 = amp(rng), c3 = amp(rng);
    PolyBump cut{1.2, 6};
    BoxField f(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const double x = g.x(i), y = g.x(j);
            f.at(i, j) = cut.value(x, y) * (c1 * std::sin(3 * x + y) + c2 * std::cos(2 * y - x) +
                                            c3 * std::sin(2 * x) * std::sin(2 * y));
        }
    return f;
}

struct TransportArtifacts {
    MeasureGrid curve_defect;
    MeasureGrid surface_defect;
};

}  // namespace

nlohmann::json ExperimentConfig::echo() const {
    return nlohmann::json{{"grid", grid},
                          {"ladder", ladder},
                          {"seed", seed},
                          {"out_dir", out_dir},
                          {"isothermic_gate", tol.isothermic_gate},
                          {"conformal_gate", tol.conformal_gate}};
}

RunReport run_entropy_conservation(const ExperimentConfig& cfg) {
    RunReport rep;
    rep.command = "entropy";
    rep.config_echo = cfg.echo();

    auto t0 = std::chrono::steady_clock::now();
    Immersion cyl = analytic("cylinder", default_chart("cylinder", cfg.grid));
    EntropyFields ef = entropy_fields(cyl, cfg.tol);
    rep.add(check_leq("cylinder law1 interior L1", ef.res1_norms.l1, 1e-12));
    rep.add(check_leq("cylinder law2 interior L1", ef.res2_norms.l1, 1e-12));
    rep.add(check_leq("cylinder runtime [s]", seconds_since(t0), cfg.runtime_per_surface_s));

    for (const char* name : {"torus_of_revolution", "catenoid"}) {
        std::vector<LadderEntry> lad1, lad2;
        t0 = std::chrono::steady_clock::now();
        double worst_time = 0;
        for (int n : cfg.ladder) {
            auto ts = std::chrono::steady_clock::now();
            Immersion im = analytic(name, default_chart(name, n));
            EntropyFields e = entropy_fields(im, cfg.tol);
            lad1.push_back({n, e.res1_norms.l1});
            lad2.push_back({n, e.res2_norms.l1});
            worst_time = std::max(worst_time, seconds_since(ts));
        }
        // Axially symmetric charts conserve the first law identically; an
        // exactly-zero ladder is reported as such instead of a fit order.
        const double exact_floor = 1e-9;
        OrderTable t1 = observed_orders(lad1, exact_floor);
        OrderTable t2 = observed_orders(lad2, exact_floor);
        for (const OrderTable* t : {&t1, &t2}) {
            const char* law = t == &t1 ? " law1" : " law2";
            if (t->exact) {
                rep.add(check_leq(std::string(name) + law + " exact (max residual)",
                                  t->entries.back().residual, exact_floor));
                continue;
            }
            for (size_t k = 0; k < t->orders.size(); ++k)
                rep.add(check_geq(std::string(name) + law + " order step " + std::to_string(k),
                                  t->orders[k], cfg.entropy_order_min));
        }
        rep.add(check_leq(std::string(name) + " runtime/surface [s]", worst_time,
                          cfg.runtime_per_surface_s));
        if (!cfg.out_dir.empty()) {
            std::vector<std::vector<std::pair<double, double>>> series(2);
            for (const auto& e : lad1) series[0].push_back({1.0 / e.n, e.residual});
            for (const auto& e : lad2) series[1].push_back({1.0 / e.n, e.residual});
            svg_loglog(series, {"law1 L1", "law2 L1"}, std::string("entropy residuals: ") + name,
                       cfg.out_dir + "/entropy_" + name + ".svg");
        }
    }
    return rep;
}

RunReport run_weingarten_consistency(const ExperimentConfig& cfg) {
    RunReport rep;
    rep.command = "residuals --check weingarten";
    rep.config_echo = cfg.echo();
    for (const char* name : {"sphere_stereographic", "cylinder", "catenoid", "enneper",
                             "torus_of_revolution", "flat_plane", "clifford_torus_r4"}) {
        Immersion im = analytic(name, default_chart(name, cfg.grid));
        WeingartenField w = weingarten(im, cfg.tol);
        rep.add(check_leq(std::string(name) + " formula gap (rel L2)", w.rel_gap,
                          cfg.weingarten_rel_max));
    }
    return rep;
}

RunReport run_isothermic_examples(const ExperimentConfig& cfg) {
    RunReport rep;
    rep.command = "residuals --check isothermic";
    rep.config_echo = cfg.echo();
    for (const char* name : {"cylinder", "catenoid", "sphere_stereographic"}) {
        Immersion im = analytic(name, default_chart(name, cfg.grid));
        IsothermicResidual iso = isothermic_residual(im, cfg.tol);
        rep.add(check_leq(std::string(name) + " |Im h0| interior", iso.linf_interior,
                          cfg.isothermic_max));
    }
    const int ns = 16 * cfg.grid;
    struct Gen {
        const char* label;
        PlanarCurve curve;
    };
    const Gen gens[] = {
        {"revolution(torus profile)", circle_profile(2.0, 0.0, 1.0, ns)},
        {"revolution(arc profile)", arc_profile(1.45, ns)},
        {"revolution(line profile)", line_profile(1.0, 0.0, 1.0, ns)},
    };
    for (const Gen& g : gens) {
        Immersion im = revolution(g.curve, cfg.grid, cfg.grid);
        IsothermicResidual iso = isothermic_residual(im, cfg.tol);
        rep.add(check_leq(std::string(g.label) + " |Im h0| interior", iso.linf_interior,
                          cfg.isothermic_max));
        if (!cfg.out_dir.empty()) save_surface(im, cfg.out_dir + "/" + g.label + ".json");
    }
    return rep;
}

RunReport run_duality(const ExperimentConfig& cfg) {
    RunReport rep;
    rep.command = "dual";
    rep.config_echo = cfg.echo();

    for (const char* name : {"cylinder", "catenoid"}) {
        Immersion im = analytic(name, default_chart(name, cfg.grid));
        ChristoffelDual d = christoffel_dual(im, cfg.tol);
        rep.add(check_leq(std::string(name) + " dot residual", d.dot_residual, cfg.duality_max));
        rep.add(
            check_leq(std::string(name) + " wedge residual", d.wedge_residual, cfg.duality_max));
        if (std::string(name) == "catenoid") {
            VecM center(3);
            for (const VecM& p : d.dual.phi) center += p;
            center *= 1.0 / static_cast<double>(d.dual.phi.size());
            double rmin = 1e300, rmax = 0, rmean = 0;
            for (const VecM& p : d.dual.phi) {
                const double r = norm(p - center);
                rmin = std::min(rmin, r);
                rmax = std::max(rmax, r);
                rmean += r;
            }
            rmean /= static_cast<double>(d.dual.phi.size());
            rep.add(check_leq("catenoid dual radius variation", (rmax - rmin) / rmean,
                              cfg.dual_sphere_radius_var_max));
        }
        if (!cfg.out_dir.empty()) save_surface(d.dual, cfg.out_dir + "/dual_" + name + ".json");
    }
    return rep;
}

RunReport run_wente_battery(const ExperimentConfig& cfg) {
    RunReport rep;
    rep.command = "wente";
    rep.config_echo = cfg.echo();

    BatteryOutcome lo = wente_battery_at(cfg.grid, cfg.seed);
    BatteryOutcome hi = wente_battery_at(2 * cfg.grid, cfg.seed);
    rep.add(check_leq("poisson solves converged", lo.all_converged && hi.all_converged ? 0 : 1,
                      0));
    rep.add(check_leq("analytic pair ratio vs 1/(4 pi)",
                      std::abs(lo.analytic_ratio * 4 * PI - 1.0), cfg.wente_analytic_rel_max));

    auto spread = [](const BatteryOutcome& b) {
        double mn = 1e300, mx = 0;
        for (double r : b.ratios) {
            mn = std::min(mn, r);
            mx = std::max(mx, r);
        }
        return std::pair<double, double>{mn, mx};
    };
    auto [mn_lo, mx_lo] = spread(lo);
    auto [mn_hi, mx_hi] = spread(hi);
    rep.add(check_leq("battery max ratio (uniform bound)", mx_lo, 0.25));
    const double spread_lo = mx_lo / mn_lo, spread_hi = mx_hi / mn_hi;
    rep.add(check_leq("battery spread drift between grids",
                      std::abs(spread_hi / spread_lo - 1.0), cfg.wente_drift_max));
    for (size_t k = 0; k < lo.ratios.size(); ++k)
        rep.add(check_leq("pair " + std::to_string(k + 1) + " ratio", lo.ratios[k], 0.25));
    return rep;
}

RunReport run_riesz_kernels(const ExperimentConfig& cfg) {
    RunReport rep;
    rep.command = "riesz";
    rep.config_echo = cfg.echo();
    SquareGrid g{2.0, cfg.grid};

    PolyBump psi;
    BoxField in1(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) in1.at(i, j) = psi.bilaplacian(g.x(i), g.x(j));
    BoxField in2 = seeded_compact_source(cfg.seed, g);

    for (RieszKind kind : {RieszKind::cross, RieszKind::diff}) {
        const char* kname = kind == RieszKind::cross ? "cross" : "diff";
        RieszResult r1 = riesz_second(in1, kind);
        RieszResult r2 = riesz_second(in2, kind);
        rep.add(check_leq(std::string(kname) + " path disagreement input1", r1.rel_l2,
                          cfg.riesz_rel_max));
        rep.add(check_leq(std::string(kname) + " path disagreement input2", r2.rel_l2,
                          cfg.riesz_rel_max));
        rep.add(check_leq(std::string(kname) + " fitted c0 drift",
                          std::abs(r1.c0 / r2.c0 - 1.0), cfg.riesz_c0_drift_max));
    }
    return rep;
}

RunReport run_atomic_defect(const ExperimentConfig& cfg) {
    RunReport rep;
    rep.command = "defect --experiment atoms";
    rep.config_echo = cfg.echo();

    SquareGrid g{2.0, std::max(cfg.grid, 512)};
    ProfilePair prof{0.6, 0.5};
    std::vector<MeasureGrid> family;
    for (int k : {1, 2, 4, 8}) {
        BoxField a, b;
        concentrating_pair(prof, k, 0.0, 0.0, g, a, b);
        BoxField phi = newtonian_potential(jacobian(a, b));
        BoxField gx = dx(phi), gy = dy(phi);
        BoxField F(g);
        for (size_t m = 0; m < F.v.size(); ++m) F.v[m] = gx.v[m] * gy.v[m];
        family.push_back(measure_of_boxfield(F));
    }
    const double oracle = family.front().total();
    AtomReport atoms = atomic_detect(family);
    rep.add(check_leq("atom count deviation from 1",
                      std::abs(static_cast<double>(atoms.atoms.size()) - 1.0), 0.0));
    if (atoms.atoms.size() == 1) {
        const auto& a = atoms.atoms[0];
        rep.add(check_leq("atom resolved", a.resolved ? 0 : 1, 0));
        rep.add(check_leq("atom distance from origin", std::hypot(a.x1, a.x2), 0.1));
        rep.add(check_leq("atom weight vs k=1 oracle", std::abs(a.weight / oracle - 1.0),
                          cfg.atom_weight_rel_max));
    }
    return rep;
}

RunReport run_defect_transport(const ExperimentConfig& cfg) {
    RunReport rep;
    rep.command = "defect --experiment transport";
    rep.config_echo = cfg.echo();
    auto t0 = std::chrono::steady_clock::now();

    const int ns = 16384;
    const int bins = 16;
    PlanarCurve base = circle_profile(2.0, 0.0, 1.0, ns);
    MeasureGrid curve_limit = curve_energy_measure(base, bins);
    std::vector<MeasureGrid> curve_family;
    std::vector<int> ks = {8, 16, 32};
    for (int k : ks)
        curve_family.push_back(
            curve_energy_measure(oscillating_curve(base, {1.0, k}), bins));
    DefectReport curve_rep = defect_estimate(curve_family, curve_limit);
    double worst = 0;
    for (int i = 0; i < bins; ++i) {
        const double density = curve_rep.defect.at(i, 0) / curve_rep.defect.w1();
        worst = std::max(worst, std::abs(density / cfg.curve_defect_density - 1.0));
    }
    rep.add(check_leq("curve defect density vs 1/2 (worst bin)", worst,
                      cfg.curve_defect_rel_max));

    // Rotated family: energy measures of the revolved oscillating profiles.
    // The theta-resolution sets the conformality residual (h^2/6 per node),
    // so it stays at 128; the t-resolution tracks the oscillation frequency.
    const int B1 = 16, B2 = 8;
    MeasureGrid surf_limit = energy_measure(revolution(base, 128, 1024), B1, B2, cfg.tol);
    std::vector<MeasureGrid> surf_family;
    for (int k : ks) {
        const int n2 = 1024 * (k / 8);
        surf_family.push_back(energy_measure(
            revolution(oscillating_curve(base, {1.0, k}), 128, n2), B1, B2, cfg.tol));
    }
    DefectReport surf_rep = defect_estimate(surf_family, surf_limit);
    product_structure_test(surf_rep.defect, surf_rep);
    rep.add(check_leq("surface defect product residual", surf_rep.product_residual,
                      cfg.transport_residual_max));

    double theta_var = 0;
    for (int j = 0; j < B2; ++j) {
        double mn = 1e300, mx = -1e300, mean = 0;
        for (int i = 0; i < B1; ++i) {
            const double v = surf_rep.defect.at(i, j);
            mn = std::min(mn, v);
            mx = std::max(mx, v);
            mean += v;
        }
        mean /= B1;
        if (std::abs(mean) > 1e-12) theta_var = std::max(theta_var, (mx - mn) / std::abs(mean));
    }
    rep.add(check_leq("surface defect variation along theta", theta_var,
                      cfg.transport_theta_var_max));
    rep.add(check_leq("transport experiment runtime [s]", seconds_since(t0),
                      cfg.runtime_transport_s));

    if (!cfg.out_dir.empty()) {
        write_measure_table(surf_rep.defect, cfg.out_dir + "/transport_defect.txt");
        svg_heatmap(surf_rep.defect, "surface defect measure", cfg.out_dir + "/transport_defect.svg");
        write_measure_table(curve_rep.defect, cfg.out_dir + "/curve_defect.txt");
    }
    return rep;
}

double sphere_willmore_two_charts(int n, const Tolerances& tol) {
    GridChart chart{-1.1, 1.1, -1.1, 1.1, n, n, false, false};
    Immersion north = analytic("sphere_stereographic", chart);
    Immersion south = sphere_chart_south(chart);
    const double wn = disc_chart_integral(willmore_density(north, tol), 1.0);
    const double ws = disc_chart_integral(willmore_density(south, tol), 1.0);
    return wn + ws;
}

RunReport run_willmore_energies(const ExperimentConfig& cfg) {
    RunReport rep;
    rep.command = "convergence --study willmore";
    rep.config_echo = cfg.echo();

    std::vector<LadderEntry> lad;
    for (int n : cfg.ladder)
        lad.push_back({n, std::abs(sphere_willmore_two_charts(n, cfg.tol) - 4 * PI)});
    OrderTable t = observed_orders(lad);
    for (size_t k = 0; k < t.orders.size(); ++k)
        rep.add(check_geq("sphere W->4pi order step " + std::to_string(k), t.orders[k],
                          cfg.willmore_sphere_order_min));

    Immersion cyl = analytic("cylinder", default_chart("cylinder", cfg.grid));
    MeanCurvatureResult mc = mean_curvature(cyl, cfg.tol);
    rep.add(check_leq("cylinder W vs pi/2", std::abs(mc.willmore_energy / (PI / 2) - 1.0),
                      cfg.willmore_cylinder_rel_max));

    if (!cfg.out_dir.empty()) {
        std::vector<std::vector<std::pair<double, double>>> series(1);
        for (const auto& e : lad) series[0].push_back({1.0 / e.n, e.residual});
        svg_loglog(series, {"|W - 4pi|"}, "sphere Willmore convergence",
                   cfg.out_dir + "/willmore_sphere.svg");
    }
    return rep;
}

RunReport run_surface_residuals(const std::string& name, const ExperimentConfig& cfg) {
    RunReport rep;
    rep.command = "residuals " + name;
    rep.config_echo = cfg.echo();
    Immersion im = analytic(name, default_chart(name, cfg.grid));

    ConformalFactorResult cf = conformal_factor(im, cfg.tol);
    rep.add(check_leq(name + " conformality residual", cf.residual, cfg.tol.conformal_gate));
    WeingartenField w = weingarten(im, cfg.tol);
    rep.add(check_leq(name + " weingarten gap", w.rel_gap, cfg.weingarten_rel_max));
    rep.add(check_leq(name + " weingarten normality", w.normality_residual, 1e-8));
    IsothermicResidual iso = isothermic_residual(im, cfg.tol);
    rep.add(check_leq(name + " isothermic residual", iso.linf_interior, 1e9));
    rep.add(check_leq(name + " isothermic identity gap", iso.identity_gap, 1e-2));
    WillmoreResidual wr = willmore_residual(im, cfg.tol);
    rep.add(check_leq(name + " willmore residual L1", wr.l1_interior, 1e9));
    CodazziResidual cod = codazzi_residual(im, cfg.tol);
    rep.add(check_leq(name + " codazzi residual Linf", cod.linf_interior, 1e9));
    LiouvilleResult lio = liouville_check(im, cfg.tol);
    rep.add(check_leq(name + " liouville residual Linf", lio.linf_interior, 1e9));
    if (im.lambda_analytic) {
        double gap = 0;
        for (size_t k = 0; k < cf.lambda.v.size(); ++k)
            gap = std::max(gap, std::abs(cf.lambda.v[k] - im.lambda_analytic->v[k]));
        rep.add(check_leq(name + " lambda vs analytic", gap, 1e-6));
    }
    return rep;
}

RunReport run_convergence_study(const std::string& study, const ExperimentConfig& cfg) {
    if (study == "entropy") {
        ExperimentConfig c = cfg;
        return run_entropy_conservation(c);
    }
    if (study == "willmore") return run_willmore_energies(cfg);

    RunReport rep;
    rep.command = "convergence --study " + study;
    rep.config_echo = cfg.echo();
    if (study == "poisson") {
        std::vector<LadderEntry> lad;
        for (int n : cfg.ladder) {
            SquareGrid g{1.0, n};
            DiscMask mask(g);
            BoxField omega(g);
            for (double& v : omega.v) v = 1.0;
            PoissonResult pr = poisson_dirichlet(omega, mask);
            double worst = 0;
            for (int j = 0; j < g.n; ++j)
                for (int i = 0; i < g.n; ++i) {
                    if (!mask.in(i, j)) continue;
                    const double exact =
                        (g.x(i) * g.x(i) + g.x(j) * g.x(j) - 1.0) / 4.0;
                    worst = std::max(worst, std::abs(pr.phi.at(i, j) - exact));
                }
            lad.push_back({n, worst});
        }
        OrderTable t = observed_orders(lad);
        for (size_t k = 0; k < t.orders.size(); ++k)
            rep.add(check_geq("poisson disc order step " + std::to_string(k), t.orders[k], 1.8));
        return rep;
    }
    if (study == "isothermic") {
        std::vector<LadderEntry> lad;
        for (int n : cfg.ladder) {
            Immersion im = analytic("catenoid", default_chart("catenoid", n));
            lad.push_back({n, isothermic_residual(im, cfg.tol).linf_interior});
        }
        OrderTable t = observed_orders(lad);
        if (t.exact) {
            rep.add(check_leq("isothermic residual exact", 0, 0));
            return rep;
        }
        for (size_t k = 0; k < t.orders.size(); ++k)
            rep.add(check_geq("catenoid isothermic order step " + std::to_string(k), t.orders[k],
                              1.5));
        return rep;
    }
    throw std::invalid_argument("run_convergence_study: unknown study '" + study + "'");
}

}  // namespace isolab
