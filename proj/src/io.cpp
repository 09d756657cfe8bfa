#include "isolab/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace isolab {

using nlohmann::json;

namespace {

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed document '" + path + "': " + e.what());
    }
    return doc;
}

void write_json_file(const json& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << doc.dump(1) << "\n";
}

const json& need(const json& doc, const char* key, const char* where) {
    auto it = doc.find(key);
    if (it == doc.end())
        throw std::runtime_error(std::string("schema error at ") + where + ": missing field '" +
                                 key + "'");
    return *it;
}

double need_num(const json& doc, const char* key, const char* where) {
    const json& v = need(doc, key, where);
    if (!v.is_number())
        throw std::runtime_error(std::string("schema error at ") + where + "." + key +
                                 ": expected a number");
    return v.get<double>();
}

void check_version(const json& doc, const char* where, std::vector<std::string>* warnings) {
    const json& v = need(doc, "format_version", where);
    if (!v.is_string())
        throw std::runtime_error(std::string("schema error at ") + where +
                                 ".format_version: expected a string");
    const std::string s = v.get<std::string>();
    const auto dot = s.find('.');
    int major = -1, minor = -1;
    try {
        major = std::stoi(s.substr(0, dot));
        minor = dot == std::string::npos ? 0 : std::stoi(s.substr(dot + 1));
    } catch (...) {
        throw std::runtime_error(std::string("schema error at ") + where +
                                 ".format_version: unparsable '" + s + "'");
    }
    if (major != kFormatMajor)
        throw std::runtime_error(std::string(where) + ": unsupported major format version " + s);
    if (minor < kFormatMinor && warnings)
        warnings->push_back(std::string(where) + ": older minor format version " + s +
                            " (current " + kFormatVersion + "), accepted");
}

json chart_to_json(const GridChart& c) {
    return json{{"n1", c.n1},
                {"n2", c.n2},
                {"x1_range", json::array({c.x1_min, c.x1_max})},
                {"x2_range", json::array({c.x2_min, c.x2_max})},
                {"periodic1", c.periodic1},
                {"periodic2", c.periodic2}};
}

GridChart chart_from_json(const json& doc, const char* where) {
    GridChart c;
    c.n1 = static_cast<int>(need_num(doc, "n1", where));
    c.n2 = static_cast<int>(need_num(doc, "n2", where));
    const json& r1 = need(doc, "x1_range", where);
    const json& r2 = need(doc, "x2_range", where);
    if (!r1.is_array() || r1.size() != 2 || !r2.is_array() || r2.size() != 2)
        throw std::runtime_error(std::string("schema error at ") + where +
                                 ".x*_range: expected [lo, hi]");
    c.x1_min = r1[0].get<double>();
    c.x1_max = r1[1].get<double>();
    c.x2_min = r2[0].get<double>();
    c.x2_max = r2[1].get<double>();
    c.periodic1 = need(doc, "periodic1", where).get<bool>();
    c.periodic2 = need(doc, "periodic2", where).get<bool>();
    c.validate();
    return c;
}

}  // namespace

json surface_to_json(const Immersion& im) {
    json doc = chart_to_json(im.chart);
    doc["format_version"] = kFormatVersion;
    doc["kind"] = "surface";
    doc["m"] = im.m;
    json data = json::array();
    for (const VecM& p : im.phi) {
        json row = json::array();
        for (int d = 0; d < im.m; ++d) row.push_back(p[d]);
        data.push_back(std::move(row));
    }
    doc["data"] = std::move(data);
    return doc;
}

Immersion surface_from_json(const json& doc, std::vector<std::string>* warnings) {
    const char* where = "surface";
    check_version(doc, where, warnings);
    const int m = static_cast<int>(need_num(doc, "m", where));
    if (m < 3 || m > 6)
        throw std::runtime_error("schema error at surface.m: ambient dimension out of [3,6]");
    GridChart c = chart_from_json(doc, where);
    const json& data = need(doc, "data", where);
    if (!data.is_array() || data.size() != c.nodes())
        throw std::runtime_error("schema error at surface.data: expected " +
                                 std::to_string(c.nodes()) + " rows");
    Immersion im(c, m);
    for (size_t k = 0; k < im.phi.size(); ++k) {
        const json& row = data[k];
        if (!row.is_array() || row.size() != static_cast<size_t>(m))
            throw std::runtime_error("schema error at surface.data[" + std::to_string(k) +
                                     "]: expected " + std::to_string(m) + " components");
        VecM p(m);
        for (int d = 0; d < m; ++d) p[d] = row[d].get<double>();
        im.phi[k] = p;
    }
    return im;
}

void save_surface(const Immersion& im, const std::string& path) {
    write_json_file(surface_to_json(im), path);
}
Immersion load_surface(const std::string& path, std::vector<std::string>* warnings) {
    return surface_from_json(load_json_file(path), warnings);
}

json field_to_json(const ScalarField& f) {
    json doc = chart_to_json(f.chart);
    doc["format_version"] = kFormatVersion;
    doc["kind"] = "field";
    doc["values"] = f.v;
    return doc;
}

ScalarField field_from_json(const json& doc) {
    const char* where = "field";
    check_version(doc, where, nullptr);
    GridChart c = chart_from_json(doc, where);
    const json& values = need(doc, "values", where);
    if (!values.is_array() || values.size() != c.nodes())
        throw std::runtime_error("schema error at field.values: expected " +
                                 std::to_string(c.nodes()) + " values");
    ScalarField f(c);
    for (size_t k = 0; k < f.v.size(); ++k) f.v[k] = values[k].get<double>();
    return f;
}

void save_field(const ScalarField& f, const std::string& path) {
    write_json_file(field_to_json(f), path);
}
ScalarField load_field(const std::string& path) { return field_from_json(load_json_file(path)); }

void write_field_table(const ScalarField& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "# idx x1 x2 value\n";
    const GridChart& c = f.chart;
    for (int j = 0; j < c.n2; ++j)
        for (int i = 0; i < c.n1; ++i)
            out << c.idx(i, j) << " " << c.x1(i) << " " << c.x2(j) << " " << f.at(i, j) << "\n";
}

json measure_to_json(const MeasureGrid& m) {
    return json{{"format_version", kFormatVersion},
                {"kind", "measure"},
                {"x1_range", json::array({m.a1, m.b1})},
                {"x2_range", json::array({m.a2, m.b2})},
                {"B1", m.B1},
                {"B2", m.B2},
                {"mass", m.mass}};
}

MeasureGrid measure_from_json(const json& doc) {
    const char* where = "measure";
    check_version(doc, where, nullptr);
    const json& r1 = need(doc, "x1_range", where);
    const json& r2 = need(doc, "x2_range", where);
    MeasureGrid m(r1[0].get<double>(), r1[1].get<double>(), r2[0].get<double>(),
                  r2[1].get<double>(), static_cast<int>(need_num(doc, "B1", where)),
                  static_cast<int>(need_num(doc, "B2", where)));
    const json& mass = need(doc, "mass", where);
    if (!mass.is_array() || mass.size() != m.mass.size())
        throw std::runtime_error("schema error at measure.mass: expected " +
                                 std::to_string(m.mass.size()) + " entries");
    for (size_t k = 0; k < m.mass.size(); ++k) m.mass[k] = mass[k].get<double>();
    return m;
}

void save_measure(const MeasureGrid& m, const std::string& path) {
    write_json_file(measure_to_json(m), path);
}
MeasureGrid load_measure(const std::string& path) {
    return measure_from_json(load_json_file(path));
}

void write_measure_table(const MeasureGrid& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "# i j x1_center x2_center mass\n";
    for (int j = 0; j < m.B2; ++j)
        for (int i = 0; i < m.B1; ++i)
            out << i << " " << j << " " << m.a1 + (i + 0.5) * m.w1() << " "
                << m.a2 + (j + 0.5) * m.w2() << " " << m.at(i, j) << "\n";
}

Check check_leq(const std::string& name, double value, double threshold) {
    return {name, value, threshold, "<=", value <= threshold};
}
Check check_geq(const std::string& name, double value, double threshold) {
    return {name, value, threshold, ">=", value >= threshold};
}

bool RunReport::all_pass() const {
    for (const Check& c : checks)
        if (!c.pass) return false;
    return true;
}

json environment_stamp() {
    return json{{"compiler", __VERSION__},
                {"cxx_standard", static_cast<long>(__cplusplus)},
                {"lib_version", kFormatVersion}};
}

json RunReport::to_json() const {
    json checks_j = json::array();
    for (const Check& c : checks)
        checks_j.push_back(json{{"name", c.name},
                                {"value", c.value},
                                {"threshold", c.threshold},
                                {"cmp", c.cmp},
                                {"pass", c.pass}});
    return json{{"format_version", kFormatVersion},
                {"kind", "report"},
                {"command", command},
                {"config", config_echo},
                {"environment", environment_stamp()},
                {"checks", checks_j},
                {"all_pass", all_pass()}};
}

std::string RunReport::to_text() const {
    std::ostringstream out;
    out << "report: " << command << "\n";
    for (const Check& c : checks)
        out << (c.pass ? "[pass] " : "[FAIL] ") << c.name << ": " << c.value << " " << c.cmp << " "
            << c.threshold << "\n";
    out << (all_pass() ? "ALL CHECKS PASSED" : "CHECKS FAILED") << "\n";
    return out.str();
}

void RunReport::save(const std::string& dir, const std::string& stem) const {
    std::filesystem::create_directories(dir);
    write_json_file(to_json(), dir + "/" + stem + ".json");
    std::ofstream out(dir + "/" + stem + ".txt");
    out << to_text();
}

OrderTable observed_orders(const std::vector<LadderEntry>& ladder, double exact_floor) {
    OrderTable t;
    t.entries = ladder;
    t.exact_floor = exact_floor;
    t.exact = true;
    for (const auto& e : ladder)
        if (std::abs(e.residual) > exact_floor) t.exact = false;
    for (size_t k = 0; k + 1 < ladder.size(); ++k) {
        if (ladder[k + 1].residual > ladder[k].residual) t.monotone = false;
        const double num = std::log(std::max(ladder[k].residual, 1e-300) /
                                    std::max(ladder[k + 1].residual, 1e-300));
        const double den = std::log(static_cast<double>(ladder[k + 1].n) / ladder[k].n);
        t.orders.push_back(num / den);
    }
    return t;
}

namespace {

void svg_header(std::ofstream& out, int w, int h, const std::string& title) {
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='12' y='20' font-family='monospace' font-size='14'>" << title << "</text>\n";
}

}  // namespace

void svg_loglog(const std::vector<std::vector<std::pair<double, double>>>& series,
                const std::vector<std::string>& labels, const std::string& title,
                const std::string& path) {
    const int W = 640, H = 480, M = 60;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (auto [x, y] : s) {
            if (x <= 0 || y <= 0) continue;
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (xmin >= xmax) xmax = xmin * 10 + 1;
    if (ymin >= ymax) ymax = ymin * 10 + 1;
    auto px = [&](double x) {
        return M + (std::log10(x) - std::log10(xmin)) / (std::log10(xmax) - std::log10(xmin)) *
                       (W - 2 * M);
    };
    auto py = [&](double y) {
        return H - M - (std::log10(y) - std::log10(ymin)) / (std::log10(ymax) - std::log10(ymin)) *
                           (H - 2 * M);
    };
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    svg_header(out, W, H, title);
    out << "<rect x='" << M << "' y='" << M << "' width='" << W - 2 * M << "' height='"
        << H - 2 * M << "' fill='none' stroke='black'/>\n";
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    for (size_t s = 0; s < series.size(); ++s) {
        out << "<polyline fill='none' stroke='" << colors[s % 6] << "' stroke-width='1.5' points='";
        for (auto [x, y] : series[s])
            if (x > 0 && y > 0) out << px(x) << "," << py(y) << " ";
        out << "'/>\n";
        if (s < labels.size())
            out << "<text x='" << W - M - 150 << "' y='" << M + 16 + 16 * s
                << "' font-family='monospace' font-size='12' fill='" << colors[s % 6] << "'>"
                << labels[s] << "</text>\n";
    }
    out << "</svg>\n";
}

void svg_heatmap(const MeasureGrid& m, const std::string& title, const std::string& path) {
    const int W = 640, H = 560, M = 40;
    double lo = 1e300, hi = -1e300;
    for (double v : m.mass) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi <= lo) hi = lo + 1;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    svg_header(out, W, H, title);
    const double cw = static_cast<double>(W - 2 * M) / m.B1;
    const double ch = static_cast<double>(H - 2 * M - 20) / m.B2;
    for (int j = 0; j < m.B2; ++j)
        for (int i = 0; i < m.B1; ++i) {
            const double t = (m.at(i, j) - lo) / (hi - lo);
            const int r = static_cast<int>(255 * t);
            const int b = static_cast<int>(255 * (1 - t));
            out << "<rect x='" << M + i * cw << "' y='" << H - M - (j + 1) * ch << "' width='"
                << cw + 0.5 << "' height='" << ch + 0.5 << "' fill='rgb(" << r << ",64," << b
                << ")'/>\n";
        }
    out << "<text x='12' y='" << H - 12 << "' font-family='monospace' font-size='12'>min="
        << lo << " max=" << hi << "</text>\n";
    out << "</svg>\n";
}

}  // namespace isolab
