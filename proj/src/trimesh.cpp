#include "tvsph/trimesh.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tvsph {

namespace {

std::string face_str(const Face& f) {
    std::ostringstream os;
    os << "(" << f[0] << "," << f[1] << "," << f[2] << ")";
    return os.str();
}

std::string edge_str(const Edge& e) {
    std::ostringstream os;
    os << "(" << e[0] << "," << e[1] << ")";
    return os.str();
}

Edge make_edge(int a, int b) {
    if (a > b) std::swap(a, b);
    return {a, b};
}

Face make_face(int a, int b, int c) {
    Face f{a, b, c};
    std::sort(f.begin(), f.end());
    return f;
}

// local edge index within a tet for vertex positions p < q:
// (01,02,03,12,13,23) -> 0..5
int local_edge(int p, int q) {
    if (p > q) std::swap(p, q);
    static constexpr int base[3] = {0, 3, 5};
    return base[p] + (q - p - 1);
}

int find_root(std::vector<int>& parent, int x) {
    while (parent[static_cast<size_t>(x)] != x) {
        parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
        x = parent[static_cast<size_t>(x)];
    }
    return x;
}

void unite(std::vector<int>& parent, int a, int b) {
    a = find_root(parent, a);
    b = find_root(parent, b);
    if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
}

}  // namespace

Triangulation::Tet Triangulation::make_tet(std::array<int, 4> vertices, int sign) {
    // bubble sort, flipping the sign per swap
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3 - i; ++k)
            if (vertices[static_cast<size_t>(k)] > vertices[static_cast<size_t>(k + 1)]) {
                std::swap(vertices[static_cast<size_t>(k)], vertices[static_cast<size_t>(k + 1)]);
                sign = -sign;
            }
    return Tet{vertices, sign};
}

Triangulation::Triangulation(std::vector<std::string> vertex_names,
                             std::vector<Tet> tets)
    : vertex_names_(std::move(vertex_names)), tets_(std::move(tets)) {
    for (auto& tet : tets_) tet = make_tet(tet.v, tet.sign);
    rebuild_derived();
}

void Triangulation::rebuild_derived() {
    const int nt = static_cast<int>(tets_.size());

    // pair face occurrences of equal vertex triples in list order
    face_partner_.assign(static_cast<size_t>(4 * nt), -1);
    std::map<Face, std::vector<int>> occ;  // triple -> face slots in order
    for (int i = 0; i < nt; ++i) {
        for (int omit = 0; omit < 4; ++omit) {
            std::array<int, 3> f{};
            int k = 0;
            for (int p = 0; p < 4; ++p)
                if (p != omit) f[static_cast<size_t>(k++)] = tets_[static_cast<size_t>(i)].v[static_cast<size_t>(p)];
            occ[make_face(f[0], f[1], f[2])].push_back(4 * i + omit);
        }
    }
    faces_.clear();
    std::vector<FaceInfo> unordered;
    for (const auto& [f, slots] : occ) {
        for (size_t k = 0; k + 1 < slots.size(); k += 2) {
            face_partner_[static_cast<size_t>(slots[k])] = slots[k + 1];
            face_partner_[static_cast<size_t>(slots[k + 1])] = slots[k];
            unordered.push_back({f, slots[k], slots[k + 1]});
        }
        if (slots.size() % 2 == 1) unordered.push_back({f, slots.back(), -1});
    }
    std::sort(unordered.begin(), unordered.end(),
              [](const FaceInfo& a, const FaceInfo& b) { return a.slot_a < b.slot_a; });
    faces_ = std::move(unordered);

    // edge classes: union tet-local edges across every glued face pair
    std::vector<int> parent(static_cast<size_t>(6 * nt));
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& fi : faces_) {
        if (fi.slot_b < 0) continue;
        const int ta = fi.slot_a / 4, tb = fi.slot_b / 4;
        const auto& va = tets_[static_cast<size_t>(ta)].v;
        const auto& vb = tets_[static_cast<size_t>(tb)].v;
        auto pos = [](const std::array<int, 4>& v, int vertex) {
            for (int p = 0; p < 4; ++p)
                if (v[static_cast<size_t>(p)] == vertex) return p;
            return -1;
        };
        for (int x = 0; x < 3; ++x)
            for (int y = x + 1; y < 3; ++y) {
                const int u = fi.vertices[static_cast<size_t>(x)];
                const int w = fi.vertices[static_cast<size_t>(y)];
                unite(parent, 6 * ta + local_edge(pos(va, u), pos(va, w)),
                      6 * tb + local_edge(pos(vb, u), pos(vb, w)));
            }
    }
    edge_class_of_slot_.assign(static_cast<size_t>(6 * nt), -1);
    edges_.clear();
    std::map<int, int> root_to_class;
    for (int s = 0; s < 6 * nt; ++s) {
        const int root = find_root(parent, s);
        auto it = root_to_class.find(root);
        if (it == root_to_class.end()) {
            const int cls = static_cast<int>(edges_.size());
            root_to_class.emplace(root, cls);
            const int tet = s / 6, le = s % 6;
            static constexpr std::array<std::array<int, 2>, 6> pairs = {{
                {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
            edges_.push_back(make_edge(
                tets_[static_cast<size_t>(tet)].v[static_cast<size_t>(pairs[static_cast<size_t>(le)][0])],
                tets_[static_cast<size_t>(tet)].v[static_cast<size_t>(pairs[static_cast<size_t>(le)][1])]));
            edge_class_of_slot_[static_cast<size_t>(s)] = cls;
        } else {
            edge_class_of_slot_[static_cast<size_t>(s)] = it->second;
        }
    }
}

std::vector<Face> Triangulation::faces() const {
    std::vector<Face> out;
    out.reserve(faces_.size());
    for (const auto& fi : faces_) out.push_back(fi.vertices);
    return out;
}

int Triangulation::edge_class(int tet_idx, int u, int v) const {
    const auto& tv = tets_[static_cast<size_t>(tet_idx)].v;
    int p = -1, q = -1;
    for (int i = 0; i < 4; ++i) {
        if (tv[static_cast<size_t>(i)] == u) p = i;
        if (tv[static_cast<size_t>(i)] == v) q = i;
    }
    if (p < 0 || q < 0 || p == q)
        throw std::invalid_argument("edge_class: vertices not an edge of the tetrahedron");
    return edge_class_of_slot_[static_cast<size_t>(6 * tet_idx + local_edge(p, q))];
}

int Triangulation::edge_index(const Edge& e) const {
    const auto classes = edge_classes_of(e);
    if (classes.empty()) return -1;
    if (classes.size() > 1) return -2;
    return classes.front();
}

std::vector<int> Triangulation::edge_classes_of(const Edge& e) const {
    const Edge key = make_edge(e[0], e[1]);
    std::vector<int> out;
    for (int c = 0; c < static_cast<int>(edges_.size()); ++c)
        if (edges_[static_cast<size_t>(c)] == key) out.push_back(c);
    return out;
}

int Triangulation::face_partner(int slot) const {
    return face_partner_[static_cast<size_t>(slot)];
}

int Triangulation::induced_face_parity(const Tet& tet, const Face& face) {
    int omit = -1;
    for (int i = 0; i < 4; ++i) {
        const int v = tet.v[static_cast<size_t>(i)];
        if (std::find(face.begin(), face.end(), v) == face.end()) {
            omit = i;
            break;
        }
    }
    if (omit < 0) throw std::logic_error("induced_face_parity: face not in tet");
    return (omit % 2 == 0) ? tet.sign : -tet.sign;
}

std::vector<std::string> validate(const Triangulation& t) {
    std::vector<std::string> violations;
    const int nv = t.num_vertices();

    for (const auto& tet : t.tets()) {
        for (int v : tet.v)
            if (v < 0 || v >= nv)
                violations.push_back("tetrahedron vertex index out of range: " +
                                     std::to_string(v));
        if (tet.v[0] == tet.v[1] || tet.v[1] == tet.v[2] || tet.v[2] == tet.v[3])
            violations.push_back("tetrahedron with repeated vertex");
        if (tet.sign != 1 && tet.sign != -1)
            violations.push_back("tetrahedron sign not +-1");
    }
    if (!violations.empty()) return violations;

    for (const auto& fi : t.face_info()) {
        if (fi.slot_b < 0) {
            violations.push_back("face " + face_str(fi.vertices) +
                                 " has an unglued occurrence (odd count)");
            continue;
        }
        const auto& ta = t.tets()[static_cast<size_t>(fi.slot_a / 4)];
        const auto& tb = t.tets()[static_cast<size_t>(fi.slot_b / 4)];
        if (Triangulation::induced_face_parity(ta, fi.vertices) ==
            Triangulation::induced_face_parity(tb, fi.vertices))
            violations.push_back("face " + face_str(fi.vertices) +
                                 " induced with equal orientations");
    }
    if (!violations.empty()) return violations;

    for (int c = 0; c < t.num_edges(); ++c) {
        try {
            edge_star_class(t, c);
        } catch (const std::exception& ex) {
            violations.push_back(ex.what());
        }
    }

    const int chi = t.num_vertices() - t.num_edges() + t.num_faces() - t.num_tets();
    if (chi != 0)
        violations.push_back("Euler characteristic " + std::to_string(chi) +
                             ", expected 0");
    return violations;
}

std::vector<std::pair<Triangulation::Tet, int>> edge_star_class(const Triangulation& t,
                                                                int edge_class) {
    if (edge_class < 0 || edge_class >= t.num_edges())
        throw std::invalid_argument("edge_star: edge class out of range");
    const Edge e = t.edges()[static_cast<size_t>(edge_class)];

    // slots (tet, local faces containing the edge) of this class
    std::vector<int> member_tets;
    for (int i = 0; i < t.num_tets(); ++i) {
        const auto& tet = t.tets()[static_cast<size_t>(i)];
        if (tet.has_edge(e) && t.edge_class(i, e[0], e[1]) == edge_class)
            member_tets.push_back(i);
    }
    if (member_tets.empty())
        throw std::runtime_error("edge_star: empty star at " + edge_str(e));

    // walk around the edge by crossing glued faces that contain it; a face
    // of tet i contains the edge iff the omitted vertex is one of the two
    // vertices not on the edge
    auto faces_with_edge = [&](int tet_idx) {
        std::array<int, 2> out{};
        int k = 0;
        const auto& tv = t.tets()[static_cast<size_t>(tet_idx)].v;
        for (int p = 0; p < 4; ++p)
            if (tv[static_cast<size_t>(p)] != e[0] && tv[static_cast<size_t>(p)] != e[1])
                out[static_cast<size_t>(k++)] = 4 * tet_idx + p;
        return out;
    };

    std::vector<std::pair<Triangulation::Tet, int>> cycle;
    const int start = member_tets.front();
    const int home_slot = faces_with_edge(start)[1];  // closes the cycle
    int cur = start;
    int entry_slot = -1;  // face slot we entered through
    std::set<int> visited;
    for (;;) {
        if (!visited.insert(cur).second)
            throw std::runtime_error("edge star at " + edge_str(e) +
                                     " revisits a tetrahedron before closing");
        cycle.push_back({t.tets()[static_cast<size_t>(cur)],
                         t.tets()[static_cast<size_t>(cur)].sign});
        const auto fs = faces_with_edge(cur);
        const int exit_slot = (fs[0] == entry_slot) ? fs[1] : fs[0];
        const int next_slot = t.face_partner(exit_slot);
        if (next_slot < 0)
            throw std::runtime_error("edge star at " + edge_str(e) +
                                     " hits an unglued face");
        if (next_slot == home_slot) break;
        cur = next_slot / 4;
        entry_slot = next_slot;
    }
    if (cycle.size() != member_tets.size())
        throw std::runtime_error("edge star at " + edge_str(e) +
                                 " is not a single cycle");
    return cycle;
}

std::vector<std::pair<Triangulation::Tet, int>> edge_star(const Triangulation& t,
                                                          const Edge& e) {
    const auto classes = t.edge_classes_of(e);
    if (classes.empty())
        throw std::invalid_argument("edge_star: " + edge_str(e) + " is not an edge");
    if (classes.size() > 1)
        throw std::invalid_argument("edge_star: " + edge_str(e) +
                                    " is ambiguous (parallel edges); use the class form");
    return edge_star_class(t, classes.front());
}

namespace {

// sign that gives the tet (+1-signed, ascending) the required induced
// parity on the given face
int sign_for_parity(const std::array<int, 4>& sorted_tet, const Face& face,
                    int wanted_parity) {
    const auto q = Triangulation::induced_face_parity(
        Triangulation::Tet{sorted_tet, 1}, face);
    return wanted_parity * q;
}

std::array<int, 4> sorted4(std::array<int, 4> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

MoveResult pachner_23(const Triangulation& t, const Face& face_in) {
    const Face face = make_face(face_in[0], face_in[1], face_in[2]);
    // require a face with exactly two occurrences, in distinct tets
    std::vector<int> owner_idx;
    for (const auto& fi : t.face_info())
        if (fi.vertices == face) {
            owner_idx.push_back(fi.slot_a / 4);
            if (fi.slot_b >= 0) owner_idx.push_back(fi.slot_b / 4);
        }
    if (owner_idx.size() != 2)
        throw std::invalid_argument("pachner 2-3 rejected: face " + face_str(face) +
                                    " occurs " + std::to_string(owner_idx.size()) +
                                    " times, expected 2");
    if (owner_idx[0] == owner_idx[1])
        throw std::invalid_argument("pachner 2-3 rejected: face " + face_str(face) +
                                    " glued within a single tetrahedron");
    const Triangulation::Tet o0 = t.tets()[static_cast<size_t>(owner_idx[0])];
    const Triangulation::Tet o1 = t.tets()[static_cast<size_t>(owner_idx[1])];
    auto apex = [&](const Triangulation::Tet& tet) {
        for (int v : tet.v)
            if (std::find(face.begin(), face.end(), v) == face.end()) return v;
        throw std::logic_error("pachner 2-3: degenerate owner");
    };
    const int d = apex(o0);
    const int e = apex(o1);
    if (d == e)
        throw std::invalid_argument("pachner 2-3 rejected: apexes coincide at face " +
                                    face_str(face));

    std::vector<Triangulation::Tet> tets;
    MoveRecord rec;
    rec.kind = "2-3";
    rec.target = {face[0], face[1], face[2]};
    rec.removed_tets = {o0.v, o1.v};
    for (int i = 0; i < t.num_tets(); ++i)
        if (i != owner_idx[0] && i != owner_idx[1])
            tets.push_back(t.tets()[static_cast<size_t>(i)]);
    static constexpr std::array<std::array<int, 2>, 3> fe = {{{0, 1}, {0, 2}, {1, 2}}};
    for (const auto& p : fe) {
        const int u = face[static_cast<size_t>(p[0])];
        const int v = face[static_cast<size_t>(p[1])];
        const auto nv = sorted4({d, e, u, v});
        // match the orientation o0 induced on face (d,u,v)
        const Face outer = make_face(d, u, v);
        const int wanted = Triangulation::induced_face_parity(o0, outer);
        tets.push_back({nv, sign_for_parity(nv, outer, wanted)});
        rec.created_tets.push_back(nv);
    }
    rec.created_edge = make_edge(d, e);

    MoveResult out{Triangulation(t.vertex_names(), tets), rec};
    out.triangulation.set_name(t.name());
    return out;
}

namespace {

MoveResult pachner_32_class(const Triangulation& t, int cls) {
    const Edge edge = t.edges()[static_cast<size_t>(cls)];
    auto star = edge_star_class(t, cls);
    if (star.size() != 3)
        throw std::invalid_argument("pachner 3-2 rejected: edge " + edge_str(edge) +
                                    " has star of size " + std::to_string(star.size()));
    std::set<int> link;
    for (const auto& [tet, sign] : star) {
        (void)sign;
        for (int v : tet.v)
            if (v != edge[0] && v != edge[1]) link.insert(v);
    }
    if (link.size() != 3)
        throw std::invalid_argument("pachner 3-2 rejected: degenerate link at " +
                                    edge_str(edge));
    std::array<int, 3> xyz{};
    std::copy(link.begin(), link.end(), xyz.begin());

    std::vector<Triangulation::Tet> tets;
    MoveRecord rec;
    rec.kind = "3-2";
    rec.target = {edge[0], edge[1]};
    // remove the star tets by list index (vertex tuples may repeat)
    std::vector<int> star_idx;
    for (int i = 0; i < t.num_tets(); ++i) {
        const auto& tet = t.tets()[static_cast<size_t>(i)];
        if (tet.has_edge(edge) && t.edge_class(i, edge[0], edge[1]) == cls)
            star_idx.push_back(i);
    }
    if (star_idx.size() != 3)
        throw std::invalid_argument("pachner 3-2 rejected: star tets not distinct at " +
                                    edge_str(edge));
    for (int i = 0; i < t.num_tets(); ++i) {
        if (std::find(star_idx.begin(), star_idx.end(), i) != star_idx.end()) {
            rec.removed_tets.push_back(t.tets()[static_cast<size_t>(i)].v);
            continue;
        }
        tets.push_back(t.tets()[static_cast<size_t>(i)]);
    }

    for (int apex : {edge[0], edge[1]}) {
        const auto nv = sorted4({xyz[0], xyz[1], xyz[2], apex});
        // match orientation on the external face (xyz[0], xyz[1], apex),
        // previously induced by the star tet {edge, xyz[0], xyz[1]}
        const Face outer = make_face(xyz[0], xyz[1], apex);
        const Triangulation::Tet* old_owner = nullptr;
        for (const auto& p : star)
            if (p.first.has_face(outer)) old_owner = &p.first;
        if (!old_owner)
            throw std::logic_error("pachner 3-2: missing external face owner");
        const int wanted = Triangulation::induced_face_parity(*old_owner, outer);
        tets.push_back({nv, sign_for_parity(nv, outer, wanted)});
        rec.created_tets.push_back(nv);
    }

    MoveResult out{Triangulation(t.vertex_names(), tets), rec};
    out.triangulation.set_name(t.name());
    return out;
}

}  // namespace

MoveResult pachner_32(const Triangulation& t, const Edge& edge_in) {
    const Edge edge = make_edge(edge_in[0], edge_in[1]);
    const auto classes = t.edge_classes_of(edge);
    if (classes.empty())
        throw std::invalid_argument("pachner 3-2 rejected: " + edge_str(edge) +
                                    " is not an edge");
    std::string last_error;
    for (int cls : classes) {
        try {
            auto res = pachner_32_class(t, cls);
            if (validate(res.triangulation).empty()) return res;
            last_error = "result fails validation";
        } catch (const std::exception& ex) {
            last_error = ex.what();
        }
    }
    throw std::invalid_argument("pachner 3-2 rejected at " + edge_str(edge) + ": " +
                                last_error);
}

MoveResult pachner_14(const Triangulation& t, const std::array<int, 4>& tet_in) {
    const auto key = sorted4(tet_in);
    int target = -1;
    for (int i = 0; i < t.num_tets(); ++i)
        if (t.tets()[static_cast<size_t>(i)].v == key) {
            target = i;
            break;
        }
    if (target < 0)
        throw std::invalid_argument("pachner 1-4 rejected: tetrahedron not present");
    const Triangulation::Tet old = t.tets()[static_cast<size_t>(target)];

    auto names = t.vertex_names();
    std::string nn = std::to_string(names.size());
    while (std::find(names.begin(), names.end(), nn) != names.end()) nn += "'";
    const int nv = static_cast<int>(names.size());
    names.push_back(nn);

    std::vector<Triangulation::Tet> tets;
    MoveRecord rec;
    rec.kind = "1-4";
    rec.target = {key[0], key[1], key[2], key[3]};
    rec.removed_tets.push_back(key);
    rec.created_vertex = nv;
    // The four new tets take the removed tet's position in the list, not
    // the end: face occurrences of the same vertex triple are paired in
    // list order, and when that triple occurs four times in the complex
    // (two parallel face pairs, as after a 2-3 move) appending would
    // scramble which occurrences pair up.
    std::vector<Triangulation::Tet> created;
    for (int omit = 0; omit < 4; ++omit) {
        std::array<int, 3> f{};
        int k = 0;
        for (int i = 0; i < 4; ++i)
            if (i != omit) f[static_cast<size_t>(k++)] = key[static_cast<size_t>(i)];
        const Face outer = make_face(f[0], f[1], f[2]);
        const auto nvtx = sorted4({f[0], f[1], f[2], nv});
        const int wanted = Triangulation::induced_face_parity(old, outer);
        created.push_back({nvtx, sign_for_parity(nvtx, outer, wanted)});
        rec.created_tets.push_back(nvtx);
    }
    for (int i = 0; i < t.num_tets(); ++i) {
        if (i == target)
            tets.insert(tets.end(), created.begin(), created.end());
        else
            tets.push_back(t.tets()[static_cast<size_t>(i)]);
    }

    MoveResult out{Triangulation(std::move(names), tets), rec};
    out.triangulation.set_name(t.name());
    return out;
}

MoveResult pachner_41(const Triangulation& t, int vertex) {
    std::vector<int> star_idx;
    for (int i = 0; i < t.num_tets(); ++i)
        if (t.tets()[static_cast<size_t>(i)].contains(vertex)) star_idx.push_back(i);
    if (star_idx.size() != 4)
        throw std::invalid_argument("pachner 4-1 rejected: vertex " +
                                    std::to_string(vertex) + " has star of size " +
                                    std::to_string(star_idx.size()));
    std::set<int> link;
    for (int i : star_idx)
        for (int v : t.tets()[static_cast<size_t>(i)].v)
            if (v != vertex) link.insert(v);
    if (link.size() != 4)
        throw std::invalid_argument("pachner 4-1 rejected: degenerate link at vertex " +
                                    std::to_string(vertex));
    std::array<int, 4> abcd{};
    std::copy(link.begin(), link.end(), abcd.begin());

    MoveRecord rec;
    rec.kind = "4-1";
    rec.target = {vertex};
    std::vector<Triangulation::Tet> tets;
    for (int i = 0; i < t.num_tets(); ++i) {
        if (std::find(star_idx.begin(), star_idx.end(), i) != star_idx.end()) {
            rec.removed_tets.push_back(t.tets()[static_cast<size_t>(i)].v);
            continue;
        }
        tets.push_back(t.tets()[static_cast<size_t>(i)]);
    }
    // orientation matched on face (a,b,c), previously induced by the star
    // tet {a,b,c,vertex}
    const Face outer = make_face(abcd[0], abcd[1], abcd[2]);
    const Triangulation::Tet* old_owner = nullptr;
    for (int i : star_idx)
        if (t.tets()[static_cast<size_t>(i)].has_face(outer))
            old_owner = &t.tets()[static_cast<size_t>(i)];
    if (!old_owner) throw std::logic_error("pachner 4-1: missing face owner");
    const int wanted = Triangulation::induced_face_parity(*old_owner, outer);
    tets.push_back({abcd, sign_for_parity(abcd, outer, wanted)});
    rec.created_tets.push_back(abcd);

    // drop the vertex and shift indices above it
    auto names = t.vertex_names();
    names.erase(names.begin() + vertex);
    for (auto& tet : tets)
        for (auto& v : tet.v)
            if (v > vertex) --v;

    MoveResult out{Triangulation(std::move(names), tets), rec};
    out.triangulation.set_name(t.name());
    return out;
}

std::vector<int> canonical_form(const Triangulation& t) {
    const int n = t.num_vertices();
    if (n > 8)
        throw std::invalid_argument("canonical_form: refusing more than 8 vertices");
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best;
    do {
        std::vector<std::array<int, 5>> tets;
        tets.reserve(t.tets().size());
        for (const auto& tet : t.tets()) {
            std::array<int, 4> mapped{};
            for (int i = 0; i < 4; ++i)
                mapped[static_cast<size_t>(i)] = perm[static_cast<size_t>(tet.v[static_cast<size_t>(i)])];
            const auto nt = Triangulation::make_tet(mapped, tet.sign);
            tets.push_back({nt.v[0], nt.v[1], nt.v[2], nt.v[3], nt.sign});
        }
        std::sort(tets.begin(), tets.end());
        std::vector<int> flat;
        flat.reserve(tets.size() * 5);
        for (const auto& row : tets)
            flat.insert(flat.end(), row.begin(), row.end());
        if (best.empty() || flat < best) best = std::move(flat);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

bool isomorphic(const Triangulation& a, const Triangulation& b) {
    if (a.num_vertices() != b.num_vertices() || a.num_tets() != b.num_tets())
        return false;
    return canonical_form(a) == canonical_form(b);
}

std::string to_json(const Triangulation& t) {
    nlohmann::json j;
    j["name"] = t.name();
    j["vertices"] = t.vertex_names();
    j["tetrahedra"] = nlohmann::json::array();
    for (const auto& tet : t.tets()) {
        nlohmann::json jt;
        jt["vertices"] = tet.v;
        jt["sign"] = tet.sign;
        j["tetrahedra"].push_back(jt);
    }
    return j.dump(2);
}

Triangulation from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    std::vector<std::string> names = j.at("vertices").get<std::vector<std::string>>();
    std::vector<Triangulation::Tet> tets;
    for (const auto& jt : j.at("tetrahedra")) {
        const auto v = jt.at("vertices").get<std::array<int, 4>>();
        tets.push_back(Triangulation::make_tet(v, jt.at("sign").get<int>()));
    }
    Triangulation t(std::move(names), std::move(tets));
    if (j.contains("name")) t.set_name(j.at("name").get<std::string>());
    return t;
}

Triangulation load_triangulation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open triangulation file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

void save_triangulation(const Triangulation& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write triangulation file: " + path);
    out << to_json(t) << "\n";
}

Triangulation fivecell() {
    std::vector<std::string> names = {"0", "1", "2", "3", "4"};
    std::vector<Triangulation::Tet> tets;
    for (int omit = 0; omit < 5; ++omit) {
        std::array<int, 4> v{};
        int k = 0;
        for (int i = 0; i < 5; ++i)
            if (i != omit) v[static_cast<size_t>(k++)] = i;
        tets.push_back({v, (omit % 2 == 0) ? 1 : -1});
    }
    Triangulation t(std::move(names), std::move(tets));
    t.set_name("fivecell");
    return t;
}

}  // namespace tvsph
