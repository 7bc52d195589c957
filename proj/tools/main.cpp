#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tvsph/asymp.hpp"
#include "tvsph/qnum.hpp"
#include "tvsph/semiclassical.hpp"
#include "tvsph/sixj.hpp"
#include "tvsph/sphgeom.hpp"
#include "tvsph/statesum.hpp"
#include "tvsph/trimesh.hpp"

using nlohmann::json;

namespace {

// exit codes: 0 success, 1 computation failure, 2 flag validation error
struct ValidationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        f << j.dump(2) << "\n";
    }
}

tvsph::SixTuple tuple_from(const std::vector<int>& twice, int r, const char* flag) {
    if (twice.size() != 6)
        throw ValidationFailure(std::string(flag) + ": need six doubled colors (2j)");
    tvsph::SixTuple t;
    for (int i = 0; i < 6; ++i) {
        if (twice[static_cast<size_t>(i)] < 0 || twice[static_cast<size_t>(i)] > r - 2)
            throw ValidationFailure(std::string(flag) + ": doubled color " +
                                    std::to_string(twice[static_cast<size_t>(i)]) +
                                    " outside 0..r-2 = " + std::to_string(r - 2));
        t.j[static_cast<size_t>(i)] = tvsph::Color(twice[static_cast<size_t>(i)]);
    }
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum 6j symbols, Turaev-Viro state sums, and spherical-"
                 "tetrahedron semiclassical identities"};
    app.require_subcommand(1);
    std::string out_path, format = "json";
    app.add_option("--out", out_path, "write results to this file instead of stdout");
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    // tv
    auto* tv_cmd = app.add_subcommand("tv", "Turaev-Viro state sum of a triangulation");
    std::string tv_in;
    int tv_r = 3, tv_threads = 0;
    std::int64_t tv_budget = 200'000'000;
    tv_cmd->add_option("--in", tv_in, "triangulation JSON file")->required();
    tv_cmd->add_option("--r", tv_r, "level (q = exp(pi i / r))")->required();
    tv_cmd->add_option("--threads", tv_threads, "worker threads (0 = all cores)");
    tv_cmd->add_option("--budget", tv_budget, "search-node budget");

    // sixj
    auto* sixj_cmd = app.add_subcommand("sixj", "single quantum 6j symbol");
    int sj_r = 3;
    std::vector<int> sj_colors;
    std::string sj_conv = "tv";
    sixj_cmd->add_option("--r", sj_r, "level")->required();
    sixj_cmd->add_option("--colors", sj_colors,
                         "six doubled colors 2j in symbol order "
                         "(j12,j23,j13,j34,j14,j24)")
        ->required()
        ->delimiter(',');
    sixj_cmd->add_option("--convention", sj_conv, "tv or classical")
        ->check(CLI::IsMember({"tv", "classical"}));

    // asymp
    auto* asymp_cmd = app.add_subcommand(
        "asymp", "exact symbols at scaled level against the asymptotic formula");
    int as_r = 7, as_kmin = 1, as_kmax = 50, as_window = 20;
    std::vector<int> as_colors;
    asymp_cmd->add_option("--r", as_r, "base level")->required();
    asymp_cmd->add_option("--colors", as_colors, "six doubled base colors")
        ->required()
        ->delimiter(',');
    asymp_cmd->add_option("--kmin", as_kmin, "first scale factor");
    asymp_cmd->add_option("--kmax", as_kmax, "last scale factor");
    asymp_cmd->add_option("--window", as_window, "RMS window width");

    // geom
    auto* geom_cmd =
        app.add_subcommand("geom", "spherical tetrahedron from six edge lengths");
    std::vector<double> gm_lengths;
    double gm_tol = 1e-8;
    geom_cmd->add_option("--lengths", gm_lengths,
                         "l01,l02,l03,l12,l13,l23 in radians")
        ->required()
        ->delimiter(',');
    geom_cmd->add_option("--tol", gm_tol, "volume quadrature tolerance");

    // identities
    auto* id_cmd = app.add_subcommand("identities", "semiclassical identity verifiers");
    std::string id_which;
    int id_samples = 100, id_grid = 10;
    std::uint64_t id_seed = 1;
    double id_tol = 1e-9;
    id_cmd->add_option("which", id_which, "sjac, normalization, or delinfty")
        ->required()
        ->check(CLI::IsMember({"sjac", "normalization", "delinfty"}));
    id_cmd->add_option("--samples", id_samples, "configuration count (sjac)");
    id_cmd->add_option("--seed", id_seed, "random seed");
    id_cmd->add_option("--grid", id_grid, "grid points (normalization/delinfty)");
    id_cmd->add_option("--tol", id_tol, "quadrature tolerance");

    // semiclassical
    auto* sc_cmd = app.add_subcommand("semiclassical", "the invariant of the 5-cell");
    auto* s3_cmd = sc_cmd->add_subcommand("s3", "I(S^3)");
    std::string s3_method = "reduction";
    long long s3_samples = 10'000'000;
    std::uint64_t s3_seed = 1;
    int s3_threads = 0;
    bool s3_restrict_flat = false;
    s3_cmd->add_option("--method", s3_method, "reduction or mc")
        ->check(CLI::IsMember({"reduction", "mc"}));
    s3_cmd->add_option("--samples", s3_samples, "Monte Carlo samples");
    s3_cmd->add_option("--seed", s3_seed, "random seed");
    s3_cmd->add_option("--threads", s3_threads, "worker threads (0 = all cores)");
    s3_cmd->add_flag("--restrict-flat", s3_restrict_flat,
                     "only count samples on the flat locus of the sign assignment");

    // pachner
    auto* pa_cmd = app.add_subcommand("pachner", "apply one bistellar move");
    std::string pa_in, pa_move, pa_out;
    std::vector<int> pa_target;
    pa_cmd->add_option("--in", pa_in, "triangulation JSON file")->required();
    pa_cmd->add_option("--move", pa_move, "2-3, 3-2, 1-4, or 4-1")
        ->required()
        ->check(CLI::IsMember({"2-3", "3-2", "1-4", "4-1"}));
    pa_cmd->add_option("--target", pa_target,
                       "face (i,j,k), edge (i,j), tet (i,j,k,l), or vertex (i)")
        ->required()
        ->delimiter(',');
    pa_cmd->add_option("--write", pa_out, "write the moved triangulation here");

    // corpus
    auto* co_cmd = app.add_subcommand("corpus", "write the bundled triangulations");
    std::string co_dir = ".";
    co_cmd->add_option("--dir", co_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*tv_cmd) {
            if (tv_r < 3) throw ValidationFailure("--r: level must be >= 3");
            tvsph::Triangulation t = tvsph::load_triangulation(tv_in);
            const auto problems = tvsph::validate(t);
            if (!problems.empty())
                throw std::runtime_error("--in: invalid triangulation: " + problems.front());
            tvsph::SixJEvaluator ev{tvsph::Level(tv_r)};
            tvsph::TvOptions opts;
            opts.node_budget = tv_budget;
            opts.threads = tv_threads > 0
                               ? tv_threads
                               : static_cast<int>(std::thread::hardware_concurrency());
            const tvsph::StateSumResult res = tvsph::tv(t, ev, opts);
            emit(json{{"name", t.name()},
                      {"r", tv_r},
                      {"value", res.value},
                      {"colorings", res.admissible_count},
                      {"nodes", res.colorings_visited}},
                 out_path);
        } else if (*sixj_cmd) {
            if (sj_r < 3) throw ValidationFailure("--r: level must be >= 3");
            const tvsph::SixTuple t = tuple_from(sj_colors, sj_r, "--colors");
            const auto conv = sj_conv == "tv" ? tvsph::Convention::TuraevViro
                                              : tvsph::Convention::Classical;
            emit(json{{"r", sj_r},
                      {"convention", sj_conv},
                      {"admissible", t.q_admissible(tvsph::Level(sj_r))},
                      {"value", tvsph::sixj(t, tvsph::Level(sj_r), conv)}},
                 out_path);
        } else if (*asymp_cmd) {
            if (as_r < 3) throw ValidationFailure("--r: level must be >= 3");
            if (as_kmin < 1 || as_kmax < as_kmin)
                throw ValidationFailure("--kmin/--kmax: need 1 <= kmin <= kmax");
            const tvsph::SixTuple t = tuple_from(as_colors, as_r, "--colors");
            const tvsph::SeriesSummary sum =
                tvsph::compare_series(t, as_r, as_kmin, as_kmax, as_window);
            if (format == "csv") {
                std::string csv = "k,rk,exact,estimate,envelope,error\n";
                for (const auto& row : sum.rows) {
                    csv += std::to_string(row.k) + "," + std::to_string(row.rk) + "," +
                           std::to_string(row.exact) + "," + std::to_string(row.estimate) +
                           "," + std::to_string(row.envelope) + "," +
                           (row.error ? *row.error : "") + "\n";
                }
                if (out_path.empty())
                    std::cout << csv;
                else
                    std::ofstream(out_path) << csv;
            } else {
                json rows = json::array();
                for (const auto& row : sum.rows) {
                    json r{{"k", row.k},
                           {"rk", row.rk},
                           {"exact", row.exact},
                           {"estimate", row.estimate},
                           {"envelope", row.envelope}};
                    if (row.error) r["error"] = *row.error;
                    rows.push_back(std::move(r));
                }
                emit(json{{"rows", rows},
                          {"window", sum.window},
                          {"window_ratios", sum.window_ratios},
                          {"summary_ratio", sum.summary_ratio}},
                     out_path);
            }
        } else if (*geom_cmd) {
            if (gm_lengths.size() != 6)
                throw ValidationFailure("--lengths: need six edge lengths");
            tvsph::EdgeLengths6 l{};
            for (int i = 0; i < 6; ++i) l[static_cast<size_t>(i)] = gm_lengths[static_cast<size_t>(i)];
            const bool exists = tvsph::tetra_exists_spherical(l);
            json j{{"exists", exists}, {"gram", tvsph::gram_det(l)}};
            if (exists) {
                const tvsph::TetraGeometry g = tvsph::tetra_geometry(l, gm_tol);
                j["volume"] = g.volume;
                j["interior_dihedrals"] = g.interior;
                j["exterior_dihedrals"] = g.exterior;
            }
            emit(j, out_path);
        } else if (*id_cmd) {
            if (id_which == "sjac") {
                const tvsph::SjacReport rep =
                    tvsph::verify_sjac(id_seed, id_samples);
                emit(json{{"identity", "sjac"},
                          {"count", rep.count},
                          {"max_rel_dev", rep.max_rel_dev},
                          {"resolved_sign", rep.resolved_sign},
                          {"resampled", rep.resampled}},
                     out_path);
            } else if (id_which == "normalization") {
                tvsph::EdgeLengths6 ctx{};
                ctx.fill(std::numbers::pi / 2);
                std::vector<double> grid;
                for (int i = 1; i <= id_grid; ++i)
                    grid.push_back(std::numbers::pi * i / (id_grid + 1));
                const auto vals = tvsph::verify_normalization(ctx, 0, grid, id_tol);
                double worst = 0;
                for (double v : vals) worst = std::max(worst, std::abs(v - std::numbers::pi));
                emit(json{{"identity", "normalization"},
                          {"grid", grid},
                          {"values", vals},
                          {"expected", std::numbers::pi},
                          {"max_abs_dev", worst}},
                     out_path);
            } else {
                std::vector<double> grid, vals;
                for (int i = 1; i <= id_grid; ++i) {
                    grid.push_back(std::numbers::pi * i / (id_grid + 1));
                    vals.push_back(tvsph::delinfty_value(grid.back(), id_tol));
                }
                double worst = 0;
                for (double v : vals) worst = std::max(worst, std::abs(v - std::numbers::pi));
                emit(json{{"identity", "delinfty"},
                          {"grid", grid},
                          {"values", vals},
                          {"measured_constant", std::numbers::pi},
                          {"printed_constant_in_source", 2.0},
                          {"max_abs_dev_from_pi", worst}},
                     out_path);
            }
        } else if (*s3_cmd) {
            const tvsph::SjacReport sj = tvsph::verify_sjac(1, 10);
            json j{{"resolved_defect_sign", sj.resolved_sign}};
            if (s3_method == "reduction") {
                const tvsph::InvariantResult res = tvsph::invariant_s3();
                j["method"] = res.method;
                j["per_sign"] = res.per_sign[0];
                j["sign_assignments"] = res.per_sign.size();
                j["total"] = res.total;
                j["error"] = res.error;
            } else {
                if (s3_samples < 1)
                    throw ValidationFailure("--samples: must be positive");
                tvsph::McOptions opts;
                opts.samples = s3_samples;
                opts.seed = s3_seed;
                opts.threads = s3_threads;
                opts.restrict_flat = s3_restrict_flat;
                const tvsph::InvariantResult res =
                    tvsph::invariant_mc(tvsph::fivecell(), tvsph::SignAssignment(5, 1), opts);
                j["method"] = res.method;
                j["per_sign"] = res.per_sign[0];
                j["total"] = res.total;
                j["std_error"] = res.error;
                j["samples"] = res.samples;
                j["accepted"] = res.accepted;
                j["root_failures"] = res.root_failures;
                j["restrict_flat"] = s3_restrict_flat;
            }
            emit(j, out_path);
        } else if (*pa_cmd) {
            tvsph::Triangulation t = tvsph::load_triangulation(pa_in);
            tvsph::MoveResult moved = [&] {
                if (pa_move == "2-3") {
                    if (pa_target.size() != 3)
                        throw ValidationFailure("--target: 2-3 needs a face i,j,k");
                    return tvsph::pachner_23(t, {pa_target[0], pa_target[1], pa_target[2]});
                }
                if (pa_move == "3-2") {
                    if (pa_target.size() != 2)
                        throw ValidationFailure("--target: 3-2 needs an edge i,j");
                    return tvsph::pachner_32(t, {pa_target[0], pa_target[1]});
                }
                if (pa_move == "1-4") {
                    if (pa_target.size() != 4)
                        throw ValidationFailure("--target: 1-4 needs a tet i,j,k,l");
                    return tvsph::pachner_14(
                        t, {pa_target[0], pa_target[1], pa_target[2], pa_target[3]});
                }
                if (pa_target.size() != 1)
                    throw ValidationFailure("--target: 4-1 needs a vertex i");
                return tvsph::pachner_41(t, pa_target[0]);
            }();
            if (!pa_out.empty()) tvsph::save_triangulation(moved.triangulation, pa_out);
            emit(json{{"move", moved.record.kind},
                      {"vertices", moved.triangulation.num_vertices()},
                      {"edges", moved.triangulation.num_edges()},
                      {"faces", moved.triangulation.num_faces()},
                      {"tets", moved.triangulation.num_tets()},
                      {"written", pa_out}},
                 out_path);
        } else if (*co_cmd) {
            tvsph::Triangulation five = tvsph::fivecell();
            tvsph::Triangulation t23 = tvsph::pachner_23(five, {1, 2, 3}).triangulation;
            t23.set_name("fivecell_23");
            tvsph::Triangulation t14 = tvsph::pachner_14(five, {0, 1, 2, 3}).triangulation;
            t14.set_name("fivecell_14");
            json files = json::array();
            for (const auto& t : {five, t23, t14}) {
                const std::string path = co_dir + "/" + t.name() + ".json";
                tvsph::save_triangulation(t, path);
                files.push_back(path);
            }
            emit(json{{"files", files}}, out_path);
        }
    } catch (const ValidationFailure& e) {
        std::cerr << json{{"error", "validation"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", "validation"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "computation"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}
