#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tvsph/sixj.hpp"
#include "tvsph/sphgeom.hpp"

namespace tvsph {

// Base level r with a rescaling k; the rescaled level is r(k) = k(r-2)+2,
// so colors j at level r map to colors k*j at level r(k).
struct ScaledLevel {
    int r;
    int k;

    ScaledLevel(int base_r, int scale) : r(base_r), k(scale) {
        if (base_r < 3) throw std::invalid_argument("ScaledLevel: r must be >= 3");
        if (scale < 1) throw std::invalid_argument("ScaledLevel: k must be >= 1");
    }
    int rk() const { return k * (r - 2) + 2; }
};

// l_ab = 2*pi*(k*j + 1/2)/r(k); strictly increasing in j, lands in (0,pi)
// for every color at the base level
double length_map(Color j, ScaledLevel s);

// geodesic edge lengths for the six colors; SixTuple slot -> tetrahedron
// edge: (j12,j23,j13; j34,j14,j24) on vertices {1,2,3,4} mapped to
// EdgeLengths6 positions via edge_slot
EdgeLengths6 lengths_of(const SixTuple& t, ScaledLevel s);

struct AsymptoticEstimate {
    EdgeLengths6 lengths;
    double phase = 0.0;     // phi
    double gram = 0.0;      // G
    double value = 0.0;     // 2*pi*cos(pi/4 + phi) / (r(k)^{3/2} G^{1/4})
    double envelope = 0.0;  // 2*pi / (r(k)^{3/2} G^{1/4})
};

// Stationary-phase estimate of the rescaled symbol; throws GeometryError
// when the spherical tetrahedron with the mapped lengths does not exist
// or is degenerate.
AsymptoticEstimate asymptotic_sixj(const SixTuple& t, ScaledLevel s);

struct SeriesRow {
    int k = 0;
    int rk = 0;
    double exact = 0.0;
    double estimate = 0.0;
    double envelope = 0.0;
    std::optional<std::string> error;  // set when the estimate is undefined
};

struct SeriesSummary {
    std::vector<SeriesRow> rows;
    // windowed RMS(exact - estimate) / windowed RMS(envelope), one value
    // per window of `window` consecutive valid rows (non-overlapping)
    std::vector<double> window_ratios;
    double summary_ratio = 0.0;  // ratio over all valid rows
    int window = 0;
};

// Exact symbol (colors k*j at level r(k), TV convention) against the
// estimate for each k in [kmin, kmax].
SeriesSummary compare_series(const SixTuple& t, int r, int kmin, int kmax,
                             int window = 20);

}  // namespace tvsph
