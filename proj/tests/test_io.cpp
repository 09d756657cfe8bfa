#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "isolab/io.hpp"
#include "isolab/zoo.hpp"

using namespace isolab;

namespace {
std::string tmpdir() {
    auto p = std::filesystem::temp_directory_path() / "isolab_io_tests";
    std::filesystem::create_directories(p);
    return p.string();
}
}  // namespace

TEST_CASE("surface round trip is bitwise exact") {
    Immersion im = analytic("catenoid", default_chart("catenoid", 16));
    std::mt19937_64 rng(99);
    std::normal_distribution<double> g;
    for (VecM& p : im.phi)
        for (int d = 0; d < 3; ++d) p[d] += 1e-3 * g(rng);  // irrational-looking doubles

    const std::string path = tmpdir() + "/surface.json";
    save_surface(im, path);
    Immersion back = load_surface(path);
    REQUIRE(back.m == im.m);
    REQUIRE(back.chart.same_as(im.chart, 0.0));
    for (size_t k = 0; k < im.phi.size(); ++k)
        for (int d = 0; d < 3; ++d) CHECK(back.phi[k][d] == im.phi[k][d]);
}

TEST_CASE("schema errors name the offending field") {
    nlohmann::json doc = surface_to_json(analytic("flat_plane", default_chart("flat_plane", 8)));
    doc.erase("data");
    CHECK_THROWS_WITH_AS(surface_from_json(doc), doctest::Contains("data"), std::runtime_error);

    nlohmann::json doc2 = surface_to_json(analytic("flat_plane", default_chart("flat_plane", 8)));
    doc2.erase("n1");
    CHECK_THROWS_WITH_AS(surface_from_json(doc2), doctest::Contains("n1"), std::runtime_error);
}

TEST_CASE("older minor versions load with a warning, newer majors fail") {
    nlohmann::json doc = surface_to_json(analytic("flat_plane", default_chart("flat_plane", 8)));
    doc["format_version"] = "1.0";
    std::vector<std::string> warnings;
    Immersion im = surface_from_json(doc, &warnings);
    CHECK(im.m == 3);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("older minor") != std::string::npos);

    doc["format_version"] = "2.0";
    CHECK_THROWS(surface_from_json(doc));
}

TEST_CASE("field and measure round trips") {
    GridChart c{0, 1, 0, 2, 8, 8, false, true};
    ScalarField f(c);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (double& v : f.v) v = g(rng);
    const std::string path = tmpdir() + "/field.json";
    save_field(f, path);
    ScalarField back = load_field(path);
    for (size_t k = 0; k < f.v.size(); ++k) CHECK(back.v[k] == f.v[k]);

    MeasureGrid m(0, 1, -1, 1, 6, 4);
    for (double& v : m.mass) v = g(rng);
    const std::string mpath = tmpdir() + "/measure.json";
    save_measure(m, mpath);
    MeasureGrid mb = load_measure(mpath);
    for (size_t k = 0; k < m.mass.size(); ++k) CHECK(mb.mass[k] == m.mass[k]);

    write_field_table(f, tmpdir() + "/field.txt");
    write_measure_table(m, tmpdir() + "/measure.txt");
    CHECK(std::filesystem::file_size(tmpdir() + "/field.txt") > 0);
}

TEST_CASE("reports are deterministic and self-contained") {
    RunReport a, b;
    a.command = b.command = "demo";
    a.config_echo = b.config_echo = nlohmann::json{{"grid", 64}, {"seed", 2026}};
    a.add(check_leq("residual", 1e-4, 1e-3));
    b.add(check_leq("residual", 1e-4, 1e-3));
    a.add(check_geq("order", 1.97, 1.5));
    b.add(check_geq("order", 1.97, 1.5));
    CHECK(a.to_json().dump() == b.to_json().dump());
    CHECK(a.all_pass());
    a.add(check_leq("failing", 2.0, 1.0));
    CHECK_FALSE(a.all_pass());
    CHECK(a.to_text().find("[FAIL]") != std::string::npos);
}

TEST_CASE("observed orders classify exact ladders") {
    OrderTable t = observed_orders({{64, 1e-15}, {128, 2e-16}, {256, 1e-16}});
    CHECK(t.exact);
    OrderTable q = observed_orders({{64, 1e-2}, {128, 2.5e-3}, {256, 6.2e-4}});
    CHECK_FALSE(q.exact);
    REQUIRE(q.orders.size() == 2);
    CHECK(q.orders[0] == doctest::Approx(2.0).epsilon(0.01));
    CHECK(q.monotone);
    OrderTable bad = observed_orders({{64, 1e-3}, {128, 2e-3}, {256, 4e-3}});
    CHECK_FALSE(bad.monotone);
}

TEST_CASE("svg artifacts are written") {
    const std::string p1 = tmpdir() + "/plot.svg";
    svg_loglog({{{1.0 / 64, 1e-2}, {1.0 / 128, 2.5e-3}}}, {"res"}, "demo", p1);
    CHECK(std::filesystem::file_size(p1) > 100);
    MeasureGrid m(0, 1, 0, 1, 8, 8);
    for (size_t k = 0; k < m.mass.size(); ++k) m.mass[k] = static_cast<double>(k);
    const std::string p2 = tmpdir() + "/heat.svg";
    svg_heatmap(m, "demo", p2);
    CHECK(std::filesystem::file_size(p2) > 100);
}
