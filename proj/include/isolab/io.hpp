#ifndef ISOLAB_IO_HPP
#define ISOLAB_IO_HPP

#include <string>
#include <vector>

#include "isolab/defect.hpp"
#include "isolab/geometry.hpp"

#include "json.hpp"

namespace isolab {

inline constexpr const char* kFormatVersion = "1.2";
inline constexpr int kFormatMajor = 1;
inline constexpr int kFormatMinor = 2;

// Surface document: {format_version, m, n1, n2, x1_range, x2_range,
// periodic1, periodic2, data}, data row-major with x1 fastest.  Numbers are
// serialized in shortest round-trip form, so save/load is bit exact.
nlohmann::json surface_to_json(const Immersion& im);
Immersion surface_from_json(const nlohmann::json& doc, std::vector<std::string>* warnings = nullptr);
void save_surface(const Immersion& im, const std::string& path);
Immersion load_surface(const std::string& path, std::vector<std::string>* warnings = nullptr);

nlohmann::json field_to_json(const ScalarField& f);
ScalarField field_from_json(const nlohmann::json& doc);
void save_field(const ScalarField& f, const std::string& path);
ScalarField load_field(const std::string& path);
// Tabular text (node index, x1, x2, value) for plotting.
void write_field_table(const ScalarField& f, const std::string& path);

nlohmann::json measure_to_json(const MeasureGrid& m);
MeasureGrid measure_from_json(const nlohmann::json& doc);
void save_measure(const MeasureGrid& m, const std::string& path);
MeasureGrid load_measure(const std::string& path);
void write_measure_table(const MeasureGrid& m, const std::string& path);

struct Check {
    std::string name;
    double value = 0;
    double threshold = 0;
    std::string cmp = "<=";  // "<=" or ">="
    bool pass = false;
};

Check check_leq(const std::string& name, double value, double threshold);
Check check_geq(const std::string& name, double value, double threshold);

// Self-contained run report: config echo, environment stamp, checks.
// Deliberately carries no timestamps so identical configs produce
// byte-identical reports.
struct RunReport {
    std::string command;
    nlohmann::json config_echo;
    std::vector<Check> checks;

    bool all_pass() const;
    void add(const Check& c) { checks.push_back(c); }
    nlohmann::json to_json() const;
    std::string to_text() const;
    void save(const std::string& dir, const std::string& stem) const;
};

nlohmann::json environment_stamp();

// Observed-order table from a residual ladder.
struct LadderEntry {
    int n = 0;
    double residual = 0;
};
struct OrderTable {
    std::vector<LadderEntry> entries;
    std::vector<double> orders;  // between consecutive entries
    bool exact = false;          // all residuals below the exact floor
    bool monotone = true;
    double exact_floor = 1e-12;
};
OrderTable observed_orders(const std::vector<LadderEntry>& ladder, double exact_floor = 1e-12);

// Minimal SVG emitters for residual curves and box measures.
void svg_loglog(const std::vector<std::vector<std::pair<double, double>>>& series,
                const std::vector<std::string>& labels, const std::string& title,
                const std::string& path);
void svg_heatmap(const MeasureGrid& m, const std::string& title, const std::string& path);

}  // namespace isolab

#endif
