#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "isolab/experiments.hpp"
#include "isolab/zoo.hpp"

using namespace isolab;

namespace {

struct CliState {
    ExperimentConfig cfg;
    std::string config_path;
    std::string out_dir = "out";
};

void apply_config_file(CliState& st) {
    if (st.config_path.empty()) return;
    std::ifstream in(st.config_path);
    if (!in) throw std::runtime_error("cannot open config '" + st.config_path + "'");
    nlohmann::json doc;
    in >> doc;
    if (doc.contains("grid")) st.cfg.grid = doc["grid"].get<int>();
    if (doc.contains("ladder")) st.cfg.ladder = doc["ladder"].get<std::vector<int>>();
    if (doc.contains("seed")) st.cfg.seed = doc["seed"].get<uint64_t>();
    if (doc.contains("isothermic_gate"))
        st.cfg.tol.isothermic_gate = doc["isothermic_gate"].get<double>();
    if (doc.contains("conformal_gate"))
        st.cfg.tol.conformal_gate = doc["conformal_gate"].get<double>();
}

int finish(const RunReport& rep, const CliState& st, const std::string& stem) {
    std::cout << rep.to_text();
    rep.save(st.out_dir, stem);
    return rep.all_pass() ? 0 : 1;
}

void add_common(CLI::App* cmd, CliState& st) {
    cmd->add_option("--grid", st.cfg.grid, "grid resolution per axis");
    cmd->add_option("--ladder", st.cfg.ladder, "refinement ladder resolutions");
    cmd->add_option("--tol", st.cfg.tol.isothermic_gate, "isothermic gate tolerance");
    cmd->add_option("--seed", st.cfg.seed, "seed for randomized batteries");
    cmd->add_option("--out", st.out_dir, "output directory for reports and artifacts");
    cmd->add_option("--config", st.config_path, "JSON config overriding the flags");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for conformal immersions, isothermic conservation laws,\n"
                 "Wente-type compensated compactness, and weak-convergence defect experiments"};
    app.require_subcommand(1);
    CliState st;

    std::string gen_name = "cylinder";
    auto* generate = app.add_subcommand("generate", "sample a named surface and save it");
    generate->add_option("--name", gen_name, "generator name")->required();
    add_common(generate, st);

    std::string res_name = "cylinder", res_check = "all";
    auto* residuals = app.add_subcommand("residuals", "differential-geometric residual checks");
    residuals->add_option("--name", res_name, "generator name");
    residuals->add_option("--check", res_check, "weingarten | isothermic | all");
    add_common(residuals, st);

    auto* entropy = app.add_subcommand("entropy", "conservation-law residuals and orders");
    add_common(entropy, st);

    auto* wente = app.add_subcommand("wente", "Wente ratio battery");
    add_common(wente, st);

    auto* riesz = app.add_subcommand("riesz", "bounded-kernel identity checks");
    add_common(riesz, st);

    std::string defect_exp = "transport";
    auto* defect = app.add_subcommand("defect", "weak-convergence defect experiments");
    defect->add_option("--experiment", defect_exp, "transport | atoms");
    add_common(defect, st);

    auto* dual = app.add_subcommand("dual", "Christoffel duality residuals");
    add_common(dual, st);

    std::string study = "poisson";
    auto* convergence = app.add_subcommand("convergence", "refinement-order studies");
    convergence->add_option("--study", study, "poisson | entropy | willmore | isothermic");
    add_common(convergence, st);

    CLI11_PARSE(app, argc, argv);

    try {
        apply_config_file(st);
        st.cfg.out_dir = st.out_dir;
        std::filesystem::create_directories(st.out_dir);

        if (generate->parsed()) {
            Immersion im = analytic(gen_name, default_chart(gen_name, st.cfg.grid));
            const std::string path = st.out_dir + "/" + gen_name + ".json";
            save_surface(im, path);
            RunReport rep = run_surface_residuals(gen_name, st.cfg);
            std::cout << "wrote " << path << "\n";
            return finish(rep, st, "generate_" + gen_name);
        }
        if (residuals->parsed()) {
            if (res_check == "weingarten")
                return finish(run_weingarten_consistency(st.cfg), st, "weingarten");
            if (res_check == "isothermic")
                return finish(run_isothermic_examples(st.cfg), st, "isothermic");
            return finish(run_surface_residuals(res_name, st.cfg), st, "residuals_" + res_name);
        }
        if (entropy->parsed()) return finish(run_entropy_conservation(st.cfg), st, "entropy");
        if (wente->parsed()) return finish(run_wente_battery(st.cfg), st, "wente");
        if (riesz->parsed()) return finish(run_riesz_kernels(st.cfg), st, "riesz");
        if (defect->parsed()) {
            if (defect_exp == "atoms")
                return finish(run_atomic_defect(st.cfg), st, "defect_atoms");
            return finish(run_defect_transport(st.cfg), st, "defect_transport");
        }
        if (dual->parsed()) return finish(run_duality(st.cfg), st, "dual");
        if (convergence->parsed())
            return finish(run_convergence_study(study, st.cfg), st, "convergence_" + study);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
