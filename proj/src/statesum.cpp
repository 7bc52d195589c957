#include "tvsph/statesum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numeric>
#include <thread>

#include "tvsph/quadrature.hpp"

namespace tvsph {

namespace {

struct TetSlots {
    std::array<int, 6> edge;  // edge index per symbol slot
};

// symbol slot order for ascending tet vertices (a,b,c,d):
// (j_ab, j_bc, j_ac; j_cd, j_ad, j_bd)
TetSlots tet_slots(const Triangulation& t, int tet_idx) {
    const auto& v = t.tets()[static_cast<size_t>(tet_idx)].v;
    auto e = [&](int p, int q) {
        return t.edge_class(tet_idx, v[static_cast<size_t>(p)], v[static_cast<size_t>(q)]);
    };
    return TetSlots{{e(0, 1), e(1, 2), e(0, 2), e(2, 3), e(0, 3), e(1, 3)}};
}

struct FaceEdges {
    std::array<int, 3> edge;
};

std::vector<FaceEdges> face_edges(const Triangulation& t) {
    std::vector<FaceEdges> out;
    out.reserve(static_cast<size_t>(t.num_faces()));
    for (const auto& fi : t.face_info()) {
        const int ti = fi.slot_a / 4;
        const auto& f = fi.vertices;
        out.push_back(FaceEdges{{t.edge_class(ti, f[0], f[1]), t.edge_class(ti, f[0], f[2]),
                                 t.edge_class(ti, f[1], f[2])}});
    }
    return out;
}

// accumulates leaf terms in deterministic pairwise blocks
class BlockAccumulator {
public:
    void add(double v) {
        block_.push_back(v);
        if (block_.size() == kBlock) flush();
    }
    double total() {
        flush();
        return pairwise_sum(partials_);
    }

private:
    static constexpr size_t kBlock = 4096;
    void flush() {
        if (block_.empty()) return;
        partials_.push_back(pairwise_sum(block_));
        block_.clear();
    }
    std::vector<double> block_;
    std::vector<double> partials_;
};

struct SearchContext {
    const Triangulation& t;
    const SixJEvaluator& ev;
    std::vector<Color> palette;              // colors at this level
    std::vector<int> order;                  // edge index per search depth
    std::vector<std::vector<std::array<int, 3>>> checks;  // faces closed at depth
    std::vector<FaceEdges> faces;
    std::vector<TetSlots> tets;
    double delta_pow;                        // Delta^{-v}
    std::vector<double> delta_by_color;      // Delta_j per palette entry
    std::int64_t budget;
};

struct BranchResult {
    double value = 0.0;
    std::int64_t nodes = 0;
    std::int64_t admissible = 0;
};

BranchResult run_branch(const SearchContext& ctx, Color first,
                        std::atomic<std::int64_t>& nodes_global) {
    const Level level = ctx.ev.level();
    const int n_edges = static_cast<int>(ctx.order.size());
    std::vector<Color> assign(static_cast<size_t>(n_edges));
    BranchResult res;
    BlockAccumulator acc;

    auto admissible_here = [&](int depth) {
        for (const auto& fe : ctx.checks[static_cast<size_t>(depth)])
            if (!is_admissible(assign[static_cast<size_t>(fe[0])],
                               assign[static_cast<size_t>(fe[1])],
                               assign[static_cast<size_t>(fe[2])], level))
                return false;
        return true;
    };

    auto leaf_value = [&]() {
        double v = ctx.delta_pow;
        for (int e = 0; e < n_edges; ++e)
            v *= ctx.delta_by_color[static_cast<size_t>(assign[static_cast<size_t>(e)].twice_j)];
        // each symbol carries a quarter-turn phase i^{sum 2j}; over a closed
        // complex the phases collapse to one real sign per glued face pair
        for (const auto& fe : ctx.faces) {
            const int twice_sum = assign[static_cast<size_t>(fe.edge[0])].twice_j +
                                  assign[static_cast<size_t>(fe.edge[1])].twice_j +
                                  assign[static_cast<size_t>(fe.edge[2])].twice_j;
            if ((twice_sum / 2) % 2 != 0) v = -v;
        }
        for (const auto& ts : ctx.tets) {
            const auto& s = ts.edge;
            v *= ctx.ev(SixTuple(assign[static_cast<size_t>(s[0])], assign[static_cast<size_t>(s[1])],
                                 assign[static_cast<size_t>(s[2])], assign[static_cast<size_t>(s[3])],
                                 assign[static_cast<size_t>(s[4])], assign[static_cast<size_t>(s[5])]),
                        Convention::TuraevViro);
        }
        return v;
    };

    // iterative depth-first search over depths 1..n_edges-1 (depth 0 fixed)
    std::function<void(int)> descend = [&](int depth) {
        if (depth == n_edges) {
            ++res.admissible;
            acc.add(leaf_value());
            return;
        }
        for (Color col : ctx.palette) {
            ++res.nodes;
            if ((nodes_global.fetch_add(1, std::memory_order_relaxed) + 1) > ctx.budget)
                throw BudgetExceeded("tv: admissible search tree exceeded node budget");
            assign[static_cast<size_t>(ctx.order[static_cast<size_t>(depth)])] = col;
            if (!admissible_here(depth)) continue;
            descend(depth + 1);
        }
    };

    ++res.nodes;
    if ((nodes_global.fetch_add(1, std::memory_order_relaxed) + 1) > ctx.budget)
        throw BudgetExceeded("tv: admissible search tree exceeded node budget");
    assign[static_cast<size_t>(ctx.order[0])] = first;
    if (admissible_here(0)) descend(1);
    res.value = acc.total();
    return res;
}

}  // namespace

double tv_term(const Triangulation& t, const SixJEvaluator& ev, const Coloring& c) {
    const Level level = ev.level();
    if (static_cast<int>(c.size()) != t.num_edges())
        throw std::invalid_argument("tv_term: coloring size != number of edges");
    for (Color col : c)
        if (!col.valid_at(level))
            throw std::invalid_argument("tv_term: color out of range for level");

    const auto fes = face_edges(t);
    for (const auto& fe : fes)
        if (!is_admissible(c[static_cast<size_t>(fe.edge[0])], c[static_cast<size_t>(fe.edge[1])],
                           c[static_cast<size_t>(fe.edge[2])], level))
            return 0.0;

    double v = std::pow(delta_total(Color(0), level), -t.num_vertices());
    for (Color col : c) v *= delta_color(col, level);
    // quarter-turn symbol phases i^{sum 2j}, collapsed to one real sign per
    // glued face pair (each face is shared by exactly two tetrahedra)
    for (const auto& fe : fes) {
        const int twice_sum = c[static_cast<size_t>(fe.edge[0])].twice_j +
                              c[static_cast<size_t>(fe.edge[1])].twice_j +
                              c[static_cast<size_t>(fe.edge[2])].twice_j;
        if ((twice_sum / 2) % 2 != 0) v = -v;
    }
    for (int ti = 0; ti < t.num_tets(); ++ti) {
        const auto& s = tet_slots(t, ti).edge;
        v *= ev(SixTuple(c[static_cast<size_t>(s[0])], c[static_cast<size_t>(s[1])],
                         c[static_cast<size_t>(s[2])], c[static_cast<size_t>(s[3])],
                         c[static_cast<size_t>(s[4])], c[static_cast<size_t>(s[5])]),
                Convention::TuraevViro);
    }
    return v;
}

StateSumResult tv(const Triangulation& t, const SixJEvaluator& ev,
                  const TvOptions& opts) {
    const Level level = ev.level();
    if (level.r < 3) throw std::invalid_argument("tv: requires r >= 3");
    if (auto viol = validate(t); !viol.empty())
        throw std::invalid_argument("tv: triangulation invalid: " + viol.front());

    SearchContext ctx{t, ev, colors(level), {}, {}, {}, {}, 0.0, {}, opts.node_budget};

    // most-constrained first: edges on many faces come early
    const int n_edges = t.num_edges();
    std::vector<int> incidence(static_cast<size_t>(n_edges), 0);
    const auto fes = face_edges(t);
    for (const auto& fe : fes)
        for (int e : fe.edge) ++incidence[static_cast<size_t>(e)];
    ctx.order.resize(static_cast<size_t>(n_edges));
    std::iota(ctx.order.begin(), ctx.order.end(), 0);
    std::stable_sort(ctx.order.begin(), ctx.order.end(), [&](int a, int b) {
        return incidence[static_cast<size_t>(a)] > incidence[static_cast<size_t>(b)];
    });
    std::vector<int> depth_of(static_cast<size_t>(n_edges));
    for (int d = 0; d < n_edges; ++d) depth_of[static_cast<size_t>(ctx.order[static_cast<size_t>(d)])] = d;

    // schedule each face's admissibility check at the depth where its last
    // edge receives a color
    ctx.faces = fes;
    ctx.checks.resize(static_cast<size_t>(n_edges));
    for (const auto& fe : fes) {
        const int d = std::max({depth_of[static_cast<size_t>(fe.edge[0])],
                                depth_of[static_cast<size_t>(fe.edge[1])],
                                depth_of[static_cast<size_t>(fe.edge[2])]});
        ctx.checks[static_cast<size_t>(d)].push_back({fe.edge[0], fe.edge[1], fe.edge[2]});
    }

    for (int ti = 0; ti < t.num_tets(); ++ti) ctx.tets.push_back(tet_slots(t, ti));
    ctx.delta_pow = std::pow(delta_total(Color(0), level), -t.num_vertices());
    ctx.delta_by_color.resize(static_cast<size_t>(level.r - 1));
    for (Color col : ctx.palette)
        ctx.delta_by_color[static_cast<size_t>(col.twice_j)] = delta_color(col, level);

    std::atomic<std::int64_t> nodes_global{0};
    const int n_branches = static_cast<int>(ctx.palette.size());
    std::vector<BranchResult> branches(static_cast<size_t>(n_branches));

    if (opts.threads <= 1 || n_branches <= 1) {
        for (int i = 0; i < n_branches; ++i)
            branches[static_cast<size_t>(i)] =
                run_branch(ctx, ctx.palette[static_cast<size_t>(i)], nodes_global);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<size_t>(n_branches));
        std::atomic<int> next{0};
        const int workers = std::min(opts.threads, n_branches);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&]() {
                for (int i = next.fetch_add(1); i < n_branches; i = next.fetch_add(1)) {
                    try {
                        branches[static_cast<size_t>(i)] =
                            run_branch(ctx, ctx.palette[static_cast<size_t>(i)], nodes_global);
                    } catch (...) {
                        errors[static_cast<size_t>(i)] = std::current_exception();
                    }
                }
            });
        for (auto& th : pool) th.join();
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    StateSumResult out;
    std::vector<double> branch_values;
    branch_values.reserve(static_cast<size_t>(n_branches));
    for (const auto& b : branches) {
        branch_values.push_back(b.value);
        out.colorings_visited += b.nodes;
        out.admissible_count += b.admissible;
    }
    out.value = pairwise_sum(branch_values);
    return out;
}

}  // namespace tvsph
