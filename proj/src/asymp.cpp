#include "tvsph/asymp.hpp"

#include <cmath>
#include <numbers>

namespace tvsph {

double length_map(Color j, ScaledLevel s) {
    if (!j.valid_at(Level(s.r)))
        throw std::invalid_argument("length_map: color out of range at base level");
    const double rk = static_cast<double>(s.rk());
    return 2.0 * std::numbers::pi * (s.k * 0.5 * j.twice_j + 0.5) / rk;
}

EdgeLengths6 lengths_of(const SixTuple& t, ScaledLevel s) {
    // slot p corresponds to the color j_ab of an edge of the tetrahedron
    // on vertices {1,2,3,4}; translate to 0-based edge_slot positions
    static constexpr int pair[6][2] = {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {0, 3}, {1, 3}};
    EdgeLengths6 l{};
    for (int p = 0; p < 6; ++p)
        l[static_cast<size_t>(edge_slot(pair[p][0], pair[p][1]))] =
            length_map(t.j[static_cast<size_t>(p)], s);
    return l;
}

AsymptoticEstimate asymptotic_sixj(const SixTuple& t, ScaledLevel s) {
    AsymptoticEstimate out;
    out.lengths = lengths_of(t, s);
    if (!tetra_exists_spherical(out.lengths))
        throw GeometryError("asymptotic_sixj: limit tetrahedron does not exist or is degenerate");

    const TetraGeometry g = tetra_geometry(out.lengths);
    out.gram = g.gram;

    const double rk = static_cast<double>(s.rk());
    // action = sum l_ab * theta_ab + 2 vol; the relative sign of the volume
    // term is fixed empirically against the exact symbols (the opposite
    // sign drifts out of phase immediately)
    double action = 0.0;
    for (int e = 0; e < 6; ++e)
        action += out.lengths[static_cast<size_t>(e)] * g.exterior[static_cast<size_t>(e)];
    action += 2.0 * g.volume;
    out.phase = rk / (2.0 * std::numbers::pi) * action;

    out.envelope = 2.0 * std::numbers::pi / (std::pow(rk, 1.5) * std::pow(out.gram, 0.25));
    out.value = out.envelope * std::cos(std::numbers::pi / 4.0 + out.phase);
    return out;
}

SeriesSummary compare_series(const SixTuple& t, int r, int kmin, int kmax,
                             int window) {
    if (kmin < 1 || kmax < kmin) throw std::invalid_argument("compare_series: bad k range");
    SeriesSummary out;
    out.window = window;

    for (int k = kmin; k <= kmax; ++k) {
        SeriesRow row;
        row.k = k;
        const ScaledLevel s(r, k);
        row.rk = s.rk();

        SixTuple scaled;
        for (int p = 0; p < 6; ++p)
            scaled.j[static_cast<size_t>(p)] = Color(k * t.j[static_cast<size_t>(p)].twice_j);
        row.exact = sixj(scaled, Level(row.rk), Convention::TuraevViro);

        try {
            const AsymptoticEstimate est = asymptotic_sixj(t, s);
            row.estimate = est.value;
            row.envelope = est.envelope;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        out.rows.push_back(std::move(row));
    }

    // non-overlapping windows over the valid rows, in k order
    std::vector<const SeriesRow*> valid;
    for (const auto& row : out.rows)
        if (!row.error) valid.push_back(&row);

    auto ratio_over = [](const std::vector<const SeriesRow*>& rows, size_t lo, size_t n) {
        double num = 0.0, den = 0.0;
        for (size_t i = lo; i < lo + n; ++i) {
            const double d = rows[i]->exact - rows[i]->estimate;
            num += d * d;
            den += rows[i]->envelope * rows[i]->envelope;
        }
        return den > 0.0 ? std::sqrt(num / den) : 0.0;
    };

    const size_t w = static_cast<size_t>(window);
    for (size_t lo = 0; lo + w <= valid.size(); lo += w)
        out.window_ratios.push_back(ratio_over(valid, lo, w));
    if (!valid.empty()) out.summary_ratio = ratio_over(valid, 0, valid.size());
    return out;
}

}  // namespace tvsph
