#include "isolab/defect.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isolab {

void MeasureGrid::deposit(double x1, double x2, double m) {
    // The nudge keeps nodes that sit exactly on a box edge (up to roundoff)
    // assigned to the upper box consistently.
    int i = static_cast<int>(std::floor((x1 - a1) / w1() + 1e-9));
    int j = static_cast<int>(std::floor((x2 - a2) / w2() + 1e-9));
    i = std::clamp(i, 0, B1 - 1);
    j = std::clamp(j, 0, B2 - 1);
    at(i, j) += m;
}

double MeasureGrid::total() const {
    double s = 0;
    for (double m : mass) s += m;
    return s;
}

double MeasureGrid::total_abs() const {
    double s = 0;
    for (double m : mass) s += std::abs(m);
    return s;
}

bool MeasureGrid::compatible(const MeasureGrid& o, double rel_tol) const {
    if (B1 != o.B1 || B2 != o.B2) return false;
    const double s1 = std::abs(b1 - a1) + std::abs(b2 - a2);
    const double d = std::abs(a1 - o.a1) + std::abs(b1 - o.b1) + std::abs(a2 - o.a2) +
                     std::abs(b2 - o.b2);
    return d <= rel_tol * s1;
}

MeasureGrid energy_measure(const Immersion& im, int B1, int B2, const Tolerances& tol) {
    ConformalFactorResult cf = conformal_factor(im, tol);
    if (cf.residual > tol.conformal_gate)
        throw std::runtime_error("energy_measure: conformal gate failed (residual = " +
                                 std::to_string(cf.residual) + ")");
    const GridChart& c = im.chart;
    FrameField fr = gauss_map(im, tol);
    BladeField dn1 = partial(fr.n, 1), dn2 = partial(fr.n, 2);
    MeasureGrid mg(c.x1_min, c.x1_max, c.x2_min, c.x2_max, B1, B2);
    const double cell = c.h1() * c.h2();
    for (int j = 0; j < c.n2; ++j)
        for (int i = 0; i < c.n1; ++i) {
            const double density = norm2_at(dn1, i, j) + norm2_at(dn2, i, j);
            mg.deposit(c.x1(i), c.x2(j), density * quad_weight(c, i, j) * cell);
        }
    return mg;
}

MeasureGrid curve_energy_measure(const PlanarCurve& curve, int bins) {
    curve.validate();
    MeasureGrid mg(0.0, curve.length, 0.0, 1.0, bins, 1);
    const double ds = curve.ds();
    const int n = curve.n();
    for (int k = 0; k < n; ++k) {
        const double kappa2 = curve.d2r[k] * curve.d2r[k] + curve.d2z[k] * curve.d2z[k];
        double w = 1.0;
        if (!curve.closed && (k == 0 || k == n - 1)) w = 0.5;
        mg.deposit(curve.s_at(k), 0.5, kappa2 * w * ds);
    }
    return mg;
}

DefectReport defect_estimate(const std::vector<MeasureGrid>& family, const MeasureGrid& limit) {
    if (family.size() < 3)
        throw std::invalid_argument("defect_estimate: need at least 3 family members");
    for (const auto& m : family)
        if (!m.compatible(limit))
            throw std::invalid_argument("defect_estimate: family/limit boxes incompatible");

    const MeasureGrid& ma = family[family.size() - 2];
    const MeasureGrid& mb = family.back();
    DefectReport rep;
    rep.defect = limit;
    rep.error_bar = limit;
    for (size_t k = 0; k < limit.mass.size(); ++k) {
        rep.defect.mass[k] = 0.5 * (ma.mass[k] + mb.mass[k]) - limit.mass[k];
        rep.error_bar.mass[k] = std::abs(mb.mass[k] - ma.mass[k]);
    }
    // Convergence indicator: successive distances between family members.
    double prev = -1;
    for (size_t f = 1; f < family.size(); ++f) {
        double d = 0;
        for (size_t k = 0; k < limit.mass.size(); ++k)
            d += std::abs(family[f].mass[k] - family[f - 1].mass[k]);
        if (prev >= 0 && d > prev) rep.monotone = false;
        prev = d;
    }
    return rep;
}

void product_structure_test(const MeasureGrid& D, DefectReport& report) {
    if (D.B1 < 8 || D.B2 < 8)
        throw std::invalid_argument("product_structure_test: needs at least 8x8 boxes");
    // Least squares for D_ij = mu + a_i + b_j with sum a = sum b = 0 is the
    // two-way mean decomposition; the additive split u_i w2 + v_j w1 then
    // carries mu evenly.
    const int B1 = D.B1, B2 = D.B2;
    double mu = 0;
    std::vector<double> rowmean(B1, 0.0), colmean(B2, 0.0);
    for (int j = 0; j < B2; ++j)
        for (int i = 0; i < B1; ++i) {
            mu += D.at(i, j);
            rowmean[i] += D.at(i, j);
            colmean[j] += D.at(i, j);
        }
    mu /= static_cast<double>(B1) * B2;
    for (int i = 0; i < B1; ++i) rowmean[i] /= B2;
    for (int j = 0; j < B2; ++j) colmean[j] /= B1;

    double err = 0, ref = 0;
    for (int j = 0; j < B2; ++j)
        for (int i = 0; i < B1; ++i) {
            const double fit = rowmean[i] + colmean[j] - mu;
            const double d = D.at(i, j) - fit;
            err += d * d;
            ref += D.at(i, j) * D.at(i, j);
        }
    report.product_residual = ref > 0 ? std::sqrt(err / ref) : 0.0;
    report.u.assign(B1, 0.0);
    report.v.assign(B2, 0.0);
    for (int i = 0; i < B1; ++i) report.u[i] = (rowmean[i] - 0.5 * mu) / D.w2();
    for (int j = 0; j < B2; ++j) report.v[j] = (colmean[j] - 0.5 * mu) / D.w1();
}

namespace {

// Summed-area table over measure boxes for O(1) window masses.
struct Sat {
    int B1, B2;
    std::vector<double> s;
    explicit Sat(const MeasureGrid& m) : B1(m.B1), B2(m.B2), s((B1 + 1) * (B2 + 1), 0.0) {
        for (int j = 0; j < B2; ++j)
            for (int i = 0; i < B1; ++i)
                s[(j + 1) * (B1 + 1) + (i + 1)] = m.at(i, j) + s[j * (B1 + 1) + i + 1] +
                                                  s[(j + 1) * (B1 + 1) + i] - s[j * (B1 + 1) + i];
    }
    double window(int i0, int j0, int i1, int j1) const {  // inclusive box range
        i0 = std::max(i0, 0);
        j0 = std::max(j0, 0);
        i1 = std::min(i1, B1 - 1);
        j1 = std::min(j1, B2 - 1);
        if (i0 > i1 || j0 > j1) return 0;
        return s[(j1 + 1) * (B1 + 1) + i1 + 1] - s[j0 * (B1 + 1) + i1 + 1] -
               s[(j1 + 1) * (B1 + 1) + i0] + s[j0 * (B1 + 1) + i0];
    }
};

}  // namespace

AtomReport atomic_detect(const std::vector<MeasureGrid>& family, const AtomDetectParams& prm) {
    if (family.size() < 2)
        throw std::invalid_argument("atomic_detect: need at least 2 family members");
    const MeasureGrid& tail = family.back();
    const MeasureGrid& prev = family[family.size() - 2];
    if (!tail.compatible(prev))
        throw std::invalid_argument("atomic_detect: family boxes incompatible");

    Sat sat_tail(tail), sat_prev(prev);
    const double total = tail.total_abs();
    AtomReport rep;
    if (total <= 0) return rep;

    const int R8 = 8, R4 = 4, R2 = 2;  // window radii in box widths
    std::vector<std::pair<double, std::pair<int, int>>> candidates;
    for (int j = 0; j < tail.B2; ++j)
        for (int i = 0; i < tail.B1; ++i) {
            const double m8 = sat_tail.window(i - R8, j - R8, i + R8, j + R8);
            if (std::abs(m8) < prm.mass_floor * total) continue;
            candidates.push_back({std::abs(m8), {i, j}});
        }
    std::sort(candidates.rbegin(), candidates.rend());

    std::vector<std::pair<int, int>> picked;
    for (const auto& c : candidates) {
        bool clash = false;
        for (const auto& p : picked)
            if (std::abs(p.first - c.second.first) <= 2 * R8 &&
                std::abs(p.second - c.second.second) <= 2 * R8)
                clash = true;
        if (clash) continue;
        picked.push_back(c.second);
    }

    for (const auto& p : picked) {
        // Re-center on the strongest 2-box window inside the candidate patch:
        // the wide-window maximum sits on a plateau, not on the concentration.
        int i = p.first, j = p.second;
        double best = 0;
        int bi = i, bj = j;
        for (int dj = -R8; dj <= R8; ++dj)
            for (int di = -R8; di <= R8; ++di) {
                const int ii = i + di, jj = j + dj;
                if (ii < 0 || jj < 0 || ii >= tail.B1 || jj >= tail.B2) continue;
                const double w = std::abs(
                    sat_tail.window(ii - R2, jj - R2, ii + R2, jj + R2));
                if (w > best) {
                    best = w;
                    bi = ii;
                    bj = jj;
                }
            }
        i = bi;
        j = bj;
        const double m8 = sat_tail.window(i - R8, j - R8, i + R8, j + R8);
        const double m4 = sat_tail.window(i - R4, j - R4, i + R4, j + R4);
        const double m2 = sat_tail.window(i - R2, j - R2, i + R2, j + R2);
        const double m8_prev = sat_prev.window(i - R8, j - R8, i + R8, j + R8);
        AtomReport::Atom atom;
        atom.x1 = tail.a1 + (i + 0.5) * tail.w1();
        atom.x2 = tail.a2 + (j + 0.5) * tail.w2();
        atom.weight = m8;
        const bool scale_stable = std::abs(m8 - m4) <= prm.stabilization * std::abs(m8);
        const bool family_stable = std::abs(m8 - m8_prev) <= prm.family_drift * std::abs(m8);
        const bool nonzero = std::abs(m2) > 0.25 * std::abs(m8);
        atom.resolved = scale_stable && family_stable && nonzero;
        if (!atom.resolved) rep.any_unresolved = true;
        rep.atoms.push_back(atom);
    }
    return rep;
}

MeasureGrid measure_of_boxfield(const BoxField& f) {
    const SquareGrid& g = f.g;
    MeasureGrid mg(-g.L, g.L, -g.L, g.L, g.n, g.n);
    const double cell = g.h() * g.h();
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) mg.at(i, j) = f.at(i, j) * cell;
    return mg;
}

}  // namespace isolab
