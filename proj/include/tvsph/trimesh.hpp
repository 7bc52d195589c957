#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tvsph {

using Edge = std::array<int, 2>;   // vertex indices, ascending
using Face = std::array<int, 3>;   // vertex indices, ascending

// A vertex-labelled triangulation of a closed oriented 3-manifold.
// Tetrahedra are stored with ascending vertex indices plus an orientation
// sign for that ordering.
//
// The complex is a gluing complex, not a plain simplicial complex: the
// same vertex 4-tuple may occur more than once (a 2-3 move on the 5-cell
// produces exactly that), so faces and edges carry identity beyond their
// vertex sets. Face gluing is derived deterministically: occurrences of
// the same sorted vertex triple are paired in tetrahedron-list order
// (1st with 2nd, 3rd with 4th, ...). Edges are the equivalence classes of
// tetrahedron-local edges under these gluings. Move constructors keep
// surviving tetrahedra in their original order and append new ones, which
// preserves the intended gluings; validate() re-checks every invariant
// after each move.
class Triangulation {
public:
    struct Tet {
        std::array<int, 4> v;  // ascending
        int sign;              // +1 or -1

        bool contains(int vertex) const {
            return v[0] == vertex || v[1] == vertex || v[2] == vertex || v[3] == vertex;
        }
        bool has_edge(const Edge& e) const { return contains(e[0]) && contains(e[1]); }
        bool has_face(const Face& f) const {
            return contains(f[0]) && contains(f[1]) && contains(f[2]);
        }
    };

    // one glued pair of face occurrences; slot = tet_index*4 + local_face,
    // where local_face is the index of the omitted vertex
    struct FaceInfo {
        Face vertices;
        int slot_a;
        int slot_b;  // -1 when unpaired (invalid complex)
    };

    Triangulation() = default;
    Triangulation(std::vector<std::string> vertex_names, std::vector<Tet> tets);

    // normalizes vertex order within each tet, folding the permutation
    // parity into the sign
    static Tet make_tet(std::array<int, 4> vertices, int sign);

    const std::vector<std::string>& vertex_names() const { return vertex_names_; }
    const std::vector<Tet>& tets() const { return tets_; }
    const std::vector<Edge>& edges() const { return edges_; }          // one per class
    const std::vector<FaceInfo>& face_info() const { return faces_; }  // one per glued pair
    std::vector<Face> faces() const;

    int num_vertices() const { return static_cast<int>(vertex_names_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    int num_faces() const { return static_cast<int>(faces_.size()); }
    int num_tets() const { return static_cast<int>(tets_.size()); }

    // edge class of the local edge {u,v} of tetrahedron tet_idx
    int edge_class(int tet_idx, int u, int v) const;

    // class index when exactly one edge class has these endpoints;
    // -1 when absent, -2 when ambiguous (parallel edges)
    int edge_index(const Edge& e) const;

    // all classes with these endpoints, in class order
    std::vector<int> edge_classes_of(const Edge& e) const;

    // glued partner of a face slot (tet_index*4 + omitted vertex position),
    // or -1
    int face_partner(int slot) const;

    // parity (+1/-1) of the orientation a tet induces on one of its faces,
    // relative to the ascending ordering of the face
    static int induced_face_parity(const Tet& tet, const Face& face);

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

private:
    void rebuild_derived();

    std::string name_;
    std::vector<std::string> vertex_names_;
    std::vector<Tet> tets_;
    std::vector<Edge> edges_;
    std::vector<FaceInfo> faces_;
    std::vector<int> face_partner_;      // per face slot
    std::vector<int> edge_class_of_slot_;  // per edge slot (tet*6 + local)
};

struct MoveRecord {
    std::string kind;                  // "2-3", "3-2", "1-4", "4-1"
    std::vector<int> target;           // face / edge / tet vertices / vertex
    std::vector<std::array<int, 4>> removed_tets;
    std::vector<std::array<int, 4>> created_tets;
    std::optional<Edge> created_edge;
    std::optional<int> created_vertex;
};

struct MoveResult {
    Triangulation triangulation;
    MoveRecord record;
};

// Empty iff the triangulation is a closed oriented 3-manifold complex:
// every face occurrence glued (occurrence count even per triple), glued
// pairs inducing opposite orientations, every edge star a single cycle,
// and v - e + f - t = 0.
std::vector<std::string> validate(const Triangulation& t);

MoveResult pachner_23(const Triangulation& t, const Face& face);
MoveResult pachner_32(const Triangulation& t, const Edge& edge);
MoveResult pachner_14(const Triangulation& t, const std::array<int, 4>& tet);
MoveResult pachner_41(const Triangulation& t, int vertex);

// Tetrahedra around an edge class, cyclically ordered so consecutive
// entries are glued along a face containing the edge; second element is
// the orientation sign.
std::vector<std::pair<Triangulation::Tet, int>> edge_star_class(const Triangulation& t,
                                                                int edge_class);
// convenience: by endpoints, requiring a unique class
std::vector<std::pair<Triangulation::Tet, int>> edge_star(const Triangulation& t,
                                                          const Edge& e);

// Canonical relabelling (minimal over all vertex permutations); only for
// v <= 8. Compares tetrahedron multisets; gluing order is not part of the
// canonical form.
std::vector<int> canonical_form(const Triangulation& t);
bool isomorphic(const Triangulation& a, const Triangulation& b);

// JSON serialization per the file contract: {"name", "vertices",
// "tetrahedra": [{"vertices":[i,j,k,l], "sign": s}, ...]}. Tetrahedron
// order is part of the contract (it fixes the gluing).
std::string to_json(const Triangulation& t);
Triangulation from_json(const std::string& text);
Triangulation load_triangulation(const std::string& path);
void save_triangulation(const Triangulation& t, const std::string& path);

// boundary of the 4-simplex: the minimal triangulation of S^3
Triangulation fivecell();

}  // namespace tvsph
