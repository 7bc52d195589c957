#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "tvsph/trimesh.hpp"

using namespace tvsph;

TEST_CASE("five-cell counts and validity") {
    Triangulation t = fivecell();
    CHECK(t.num_vertices() == 5);
    CHECK(t.num_edges() == 10);
    CHECK(t.num_faces() == 10);
    CHECK(t.num_tets() == 5);
    CHECK(validate(t).empty());
    // alternating orientation over the ascending tet list
    for (int i = 0; i < 5; ++i)
        CHECK(t.tets()[static_cast<size_t>(i)].sign == (i % 2 == 0 ? 1 : -1));
}

TEST_CASE("make_tet folds permutation parity into the sign") {
    auto a = Triangulation::make_tet({0, 1, 2, 3}, 1);
    auto b = Triangulation::make_tet({1, 0, 2, 3}, 1);  // one transposition
    auto c = Triangulation::make_tet({3, 2, 1, 0}, 1);  // even permutation
    CHECK(a.v == std::array<int, 4>{0, 1, 2, 3});
    CHECK(a.sign == 1);
    CHECK(b.sign == -1);
    CHECK(c.sign == 1);
}

TEST_CASE("2-3 move counts, parallel edge, and inverse") {
    Triangulation t = fivecell();
    MoveResult mv = pachner_23(t, Face{1, 2, 3});
    const Triangulation& u = mv.triangulation;
    CHECK(u.num_vertices() == 5);
    CHECK(u.num_edges() == 11);
    CHECK(u.num_faces() == 12);
    CHECK(u.num_tets() == 6);
    CHECK(validate(u).empty());
    REQUIRE(mv.record.created_edge.has_value());
    Edge ce = *mv.record.created_edge;
    CHECK(ce == Edge{0, 4});
    // the created edge is parallel to an original one, so lookup by
    // endpoints is ambiguous
    CHECK(u.edge_index(ce) == -2);
    CHECK(u.edge_classes_of(ce).size() == 2);
    // undo through the created class: 3-2 must give back the 5-cell
    MoveResult back = pachner_32(u, ce);
    CHECK(validate(back.triangulation).empty());
    CHECK(isomorphic(back.triangulation, t));
}

TEST_CASE("1-4 move counts and inverse") {
    Triangulation t = fivecell();
    MoveResult mv = pachner_14(t, {0, 1, 2, 3});
    const Triangulation& u = mv.triangulation;
    CHECK(u.num_vertices() == 6);
    CHECK(u.num_edges() == 14);
    CHECK(u.num_faces() == 16);
    CHECK(u.num_tets() == 8);
    CHECK(validate(u).empty());
    REQUIRE(mv.record.created_vertex.has_value());
    MoveResult back = pachner_41(u, *mv.record.created_vertex);
    CHECK(validate(back.triangulation).empty());
    CHECK(isomorphic(back.triangulation, t));
}

TEST_CASE("composite moves stay valid") {
    Triangulation t = fivecell();
    Triangulation u = pachner_23(t, Face{1, 2, 3}).triangulation;
    // subdivide one of the tets created by the 2-3 move
    Triangulation w = pachner_14(u, u.tets().back().v).triangulation;
    CHECK(validate(w).empty());
    CHECK(w.num_tets() == 9);
    CHECK(w.num_vertices() - w.num_edges() + w.num_faces() - w.num_tets() == 0);
}

TEST_CASE("validate rejects broken complexes") {
    Triangulation t = fivecell();
    // drop one tetrahedron: faces become unpaired
    std::vector<Triangulation::Tet> tets(t.tets().begin(), t.tets().end() - 1);
    Triangulation broken(t.vertex_names(), tets);
    CHECK(!validate(broken).empty());
    // two same-oriented copies of one tet: gluing parities clash
    std::vector<Triangulation::Tet> doubled = {
        Triangulation::make_tet({0, 1, 2, 3}, 1),
        Triangulation::make_tet({0, 1, 2, 3}, 1)};
    Triangulation mirror(std::vector<std::string>{"a", "b", "c", "d"}, doubled);
    CHECK(!validate(mirror).empty());
}

TEST_CASE("edge stars are closed cycles") {
    Triangulation t = fivecell();
    for (int e = 0; e < t.num_edges(); ++e) {
        auto star = edge_star_class(t, e);
        CHECK(star.size() == 3);  // every 5-cell edge has three tets around it
        for (auto& [tet, sign] : star) CHECK((sign == 1 || sign == -1));
    }
}

TEST_CASE("json round trip") {
    Triangulation t = pachner_23(fivecell(), Face{1, 2, 3}).triangulation;
    t.set_name("fivecell-after-23");
    Triangulation u = from_json(to_json(t));
    CHECK(u.name() == t.name());
    REQUIRE(u.num_tets() == t.num_tets());
    for (size_t i = 0; i < t.tets().size(); ++i) {
        CHECK(u.tets()[i].v == t.tets()[i].v);
        CHECK(u.tets()[i].sign == t.tets()[i].sign);
    }
    CHECK(u.num_edges() == t.num_edges());
    CHECK(validate(u).empty());

    std::string path = "/tmp/tvsph_test_roundtrip.json";
    save_triangulation(t, path);
    Triangulation w = load_triangulation(path);
    CHECK(isomorphic(w, t));
    std::remove(path.c_str());
}

TEST_CASE("isomorphism is label-independent") {
    Triangulation t = fivecell();
    // relabel vertices by a 5-cycle
    std::vector<Triangulation::Tet> tets;
    auto perm = [](int v) { return (v + 1) % 5; };
    for (const auto& tet : t.tets())
        tets.push_back(Triangulation::make_tet(
            {perm(tet.v[0]), perm(tet.v[1]), perm(tet.v[2]), perm(tet.v[3])},
            tet.sign));
    Triangulation u(t.vertex_names(), tets);
    CHECK(isomorphic(t, u));
    CHECK(!isomorphic(t, pachner_23(t, Face{1, 2, 3}).triangulation));
}
