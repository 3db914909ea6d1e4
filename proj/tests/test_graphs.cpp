#include <set>

#include "doctest.h"
#include "hurwitz/graphs.hpp"
#include "support.hpp"

using namespace hurwitz;
using testsupport::group;

namespace {

GroupPtr cyclic(long n) { return std::make_shared<const Group>(Group::cyclic(n)); }

// Cycle on m vertices of genus 0; edge i joins i and i+1 through half-edges 2i, 2i+1.
ModularGraph cycle_graph(size_t m) {
    ModularGraph g;
    g.genus.assign(m, 0);
    for (size_t i = 0; i < m; ++i) {
        g.vertex_of.push_back(i);
        g.vertex_of.push_back((i + 1) % m);
        g.opposite.push_back(2 * i + 1);
        g.opposite.push_back(2 * i);
    }
    return g;
}

// Hexagon with Z/2 acting by rotation through three steps.
GGraph hexagon() {
    auto g = cyclic(2);
    std::vector<uint32_t> he(12), ve(6);
    for (uint32_t i = 0; i < 6; ++i) {
        ve[i] = (i + 3) % 6;
        he[2 * i] = 2 * ((i + 3) % 6);
        he[2 * i + 1] = 2 * ((i + 3) % 6) + 1;
    }
    return act_by_generators(cycle_graph(6), g, {he}, {ve}, {});
}

void check_genus_against_datum(const GGraph& gg) {
    auto q = quotient_and_genus(gg);
    CHECK(q.upstairs_genus == genus_from_datum(q.downstairs_genus.get_si(), q.datum).genus);
}

// Identity image tables, one per generator.
std::vector<std::vector<uint32_t>> identity_images(const Group& g, size_t n) {
    std::vector<uint32_t> id(n);
    for (uint32_t i = 0; i < n; ++i) id[i] = i;
    return std::vector<std::vector<uint32_t>>(g.generators().size(), id);
}

size_t index_of(const Group& g, const ElemSet& h) { return g.order() / h.size(); }

}  // namespace

TEST_CASE("modular graphs") {
    SUBCASE("betti number and genus") {
        auto g = cycle_graph(4);
        g.genus = {1, 0, 2, 0};
        g.vertex_of.push_back(1);
        g.opposite.push_back(8);
        validate(g);
        CHECK(g.connected());
        CHECK(g.edge_count() == 4);
        CHECK(g.leg_count() == 1);
        CHECK(g.betti() == 1);
        CHECK(g.arithmetic_genus() == 4);
        CHECK_FALSE(g.stable());
        CHECK_THROWS_AS(validate(g, true), DomainError);
    }
    SUBCASE("malformed") {
        auto g = cycle_graph(3);
        g.opposite[0] = 2;
        CHECK_THROWS_AS(validate(g), DomainError);
    }
}

TEST_CASE("quotients") {
    SUBCASE("trivial group") {
        auto g = group("C1");
        auto graph = cycle_graph(3);
        graph.genus = {1, 2, 0};
        auto gg = act_by_generators(graph, g, identity_images(*g, 6), identity_images(*g, 3), {});
        auto q = quotient_and_genus(gg);
        CHECK(q.quotient.genus == graph.genus);
        CHECK(q.quotient.vertex_of == graph.vertex_of);
        CHECK(q.quotient.opposite == graph.opposite);
        CHECK(q.upstairs_genus == q.downstairs_genus);
    }
    SUBCASE("hexagon") {
        auto gg = hexagon();
        auto q = quotient_and_genus(gg);
        CHECK(q.quotient.vertex_count() == 3);
        CHECK(q.quotient.edge_count() == 3);
        CHECK(q.quotient.betti() == 1);
        CHECK(q.upstairs_genus == 1);
        CHECK(q.downstairs_genus == 1);
    }
    SUBCASE("inversion is rejected") {
        auto g = cyclic(2);
        ModularGraph seg;
        seg.genus = {0, 0};
        seg.vertex_of = {0, 1};
        seg.opposite = {1, 0};
        CHECK_THROWS_AS(act_by_generators(seg, g, {{1, 0}}, {{1, 0}}, {}), DomainError);
    }
    SUBCASE("non-homomorphic images are rejected") {
        auto g = cyclic(2);
        CHECK_THROWS_AS(act_by_generators(cycle_graph(3), g, {{2, 3, 4, 5, 0, 1}}, {{1, 2, 0}}, {}), DomainError);
    }
    SUBCASE("disconnected graph is rejected") {
        auto g = group("C1");
        ModularGraph two;
        two.genus = {1, 1};
        CHECK_THROWS_AS(act_by_generators(two, g, identity_images(*g, 0), identity_images(*g, 2), {}), DomainError);
    }
    SUBCASE("iterated quotient") {
        auto s3 = group("S3");
        auto comb = build_comb(s3, {s3->parse_element("(1,2)"), s3->parse_element("(1,3)"), s3->parse_element("(1,2,3)")});
        auto loop = level_loop_example(2, 2);
        std::vector<std::pair<GGraph, ElemSet>> cases;
        cases.push_back({comb, s3->generated({s3->parse_element("(1,2,3)")})});
        cases.push_back({loop, loop.group->generated({loop.group->generators()[0]})});
        cases.push_back({loop, loop.group->generated({loop.group->generators()[3]})});
        for (const auto& [gg, k] : cases) {
            Projection p;
            auto mid = quotient_by_normal(gg, k, &p);
            auto direct = quotient_and_genus(gg);
            auto step = quotient_and_genus(mid);
            CHECK(step.downstairs_genus == direct.downstairs_genus);
            CHECK(step.quotient.vertex_count() == direct.quotient.vertex_count());
            CHECK(step.quotient.edge_count() == direct.quotient.edge_count());
            CHECK(step.quotient.leg_count() == direct.quotient.leg_count());
            auto a = step.quotient.genus, b = direct.quotient.genus;
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            CHECK(a == b);
            CHECK(step.datum == corestrict(direct.datum, p, true));
            CHECK(quotient_and_genus(mid).upstairs_genus == mid.graph.arithmetic_genus());
        }
    }
}

TEST_CASE("standard builds") {
    SUBCASE("comb") {
        struct Case {
            std::string group;
            std::vector<std::string> s;
        };
        for (const Case& c : std::vector<Case>{{"C2", {"(1,2)", "(1,2)", "(1,2)"}},
                                               {"S3", {"(1,2)", "(1,3)", "(1,2,3)"}},
                                               {"S3", {"(1,2)", "(2,3)", "(1,3)", "(1,2)"}},
                                               {"C6", {"(1,2,3,4,5,6)", "(1,3,5)(2,4,6)", "(1,4)(2,5)(3,6)"}}}) {
            auto g = group(c.group);
            std::vector<Elem> s;
            for (const auto& x : c.s) s.push_back(g->parse_element(x));
            auto gg = build_comb(g, s);
            long k = static_cast<long>(s.size()), order = static_cast<long>(g->order());
            long cosets = 0;
            for (Elem x : s) cosets += static_cast<long>(index_of(*g, g->generated({x})));
            // Vertex and half-edge sets of the comb: sum G/H_i plus G, and 2k copies of G plus two legs per leaf.
            CHECK(static_cast<long>(gg.graph.vertex_count()) == cosets + order);
            CHECK(static_cast<long>(gg.graph.edge_count()) == k * order);
            CHECK(static_cast<long>(gg.graph.leg_count()) == 2 * cosets);
            for (long x : gg.graph.genus) CHECK(x == 0);
            auto q = quotient_and_genus(gg);
            CHECK(q.downstairs_genus == 0);
            CHECK(q.upstairs_genus == 1 + (k - 1) * order - cosets);
            check_genus_against_datum(gg);
            CHECK(decomposition_inertia(gg).exact());
        }
        auto c2 = group("C2");
        CHECK(quotient_and_genus(build_comb(c2, {1, 1, 1})).upstairs_genus == 2);
        CHECK_THROWS_AS(build_comb(c2, {1, 1}), DomainError);
        CHECK_THROWS_AS(build_comb(group("S3"), {1, 1, 1}), DomainError);
    }
    SUBCASE("segment") {
        auto c3 = cyclic(3);
        Elem s = c3->generators()[0];
        SegmentSpec spec;
        spec.g1 = spec.g2 = {0, 1, 2};
        spec.holonomy = s;
        spec.legs1 = {s, s};
        spec.legs2 = {c3->inv(s), c3->inv(s)};
        auto gg = build_segment(c3, spec);
        CHECK(gg.graph.vertex_count() == 2);
        CHECK(gg.graph.edge_count() == 1);
        auto q = quotient_and_genus(gg);
        CHECK(q.upstairs_genus == gg.graph.genus[0] + gg.graph.genus[1]);
        check_genus_against_datum(gg);
        auto ex = decomposition_inertia(gg);
        CHECK(ex.exact());
        CHECK(ex.decomposition.size() == 3);
        CHECK(ex.h1_quotient == 0);

        auto s3 = group("S3");
        Elem t = s3->parse_element("(1,2)"), u = s3->parse_element("(1,2,3)");
        SegmentSpec mixed;
        mixed.g1 = s3->generated({t});
        mixed.g2 = s3->generated({u});
        mixed.holonomy = 0;
        mixed.genus1 = 1;
        mixed.genus2 = 0;
        mixed.legs1 = {t, t};
        mixed.legs2 = {u, u, u};
        auto sg = build_segment(s3, mixed);
        long g1 = sg.graph.genus.front(), g2 = sg.graph.genus.back();
        long i1 = static_cast<long>(index_of(*s3, mixed.g1)), i2 = static_cast<long>(index_of(*s3, mixed.g2));
        long ih = static_cast<long>(s3->order());
        CHECK(sg.graph.arithmetic_genus() == i1 * g1 + i2 * g2 + ih - i1 - i2 + 1);
        check_genus_against_datum(sg);
        CHECK(decomposition_inertia(sg).exact());
        SegmentSpec bad = mixed;
        bad.g2 = mixed.g1;
        bad.legs2 = {};
        CHECK_THROWS_AS(build_segment(s3, bad), DomainError);
    }
    SUBCASE("loop is a circuit when G_0 is trivial") {
        for (long n : {2, 3, 5, 8}) {
            auto g = cyclic(n);
            LoopSpec spec;
            spec.g0 = {0};
            spec.g0_element = g->generators()[0];
            spec.genus = 1;
            auto gg = build_loop(g, spec);
            CHECK(static_cast<long>(gg.graph.vertex_count()) == n);
            CHECK(static_cast<long>(gg.graph.edge_count()) == n);
            CHECK(gg.graph.betti() == 1);
            std::vector<int> valence(gg.graph.vertex_count(), 0);
            for (size_t v : gg.graph.vertex_of) ++valence[v];
            for (int x : valence) CHECK(x == 2);
            auto ex = decomposition_inertia(gg);
            CHECK(ex.exact());
            CHECK(ex.abelianized_order == static_cast<size_t>(n));
            check_genus_against_datum(gg);
        }
    }
    SUBCASE("loop with a dihedral twist") {
        auto s3 = group("S3");
        Elem s = s3->parse_element("(1,2,3)"), g0 = s3->parse_element("(1,2)");
        LoopSpec spec;
        spec.g0 = s3->generated({s});
        spec.holonomy = s;
        spec.g0_element = g0;
        spec.legs = {s};
        auto gg = build_loop(s3, spec);
        long ih = static_cast<long>(index_of(*s3, spec.g0));
        CHECK(gg.graph.betti() == ih - ih + 1);
        check_genus_against_datum(gg);
        auto ex = decomposition_inertia(gg);
        CHECK(ex.exact());
        CHECK(ex.abelianized_order == 2);
        LoopSpec wrong = spec;
        wrong.g0_element = s;
        CHECK_THROWS_AS(build_loop(s3, wrong), DomainError);
        auto c6 = cyclic(6);
        LoopSpec clash;
        clash.g0 = c6->generated({c6->pow(c6->generators()[0], 2)});
        clash.holonomy = c6->pow(c6->generators()[0], 2);
        clash.g0_element = c6->generators()[0];
        CHECK_THROWS_AS(build_loop(c6, clash), DomainError);
        clash.opposite_characters = false;
        clash.legs = {c6->inv(clash.holonomy), c6->inv(clash.holonomy)};
        CHECK_NOTHROW(build_loop(c6, clash));
    }
}

TEST_CASE("decomposition and inertia") {
    SUBCASE("hexagon") {
        auto ex = decomposition_inertia(hexagon());
        CHECK(ex.decomposition == ElemSet{0});
        CHECK(ex.inertia == ElemSet{0});
        CHECK(ex.h1_upstairs == 1);
        CHECK(ex.h1_quotient == 1);
        CHECK(ex.abelianized_order == 2);
        CHECK(ex.exact());
    }
    SUBCASE("trivial action") {
        auto g = cyclic(2);
        ModularGraph petal;
        petal.genus = {2};
        petal.vertex_of = {0, 0};
        petal.opposite = {1, 0};
        auto gg = act_by_generators(petal, g, {{0, 1}}, {{0}}, {1, 1});
        auto q = quotient_and_genus(gg);
        CHECK(q.quotient.genus == std::vector<long>{1});
        auto ex = decomposition_inertia(gg);
        CHECK(ex.decomposition.size() == 2);
        CHECK(ex.abelianized_order == 1);
        CHECK(ex.exact());
    }
    SUBCASE("smith invariants") {
        CHECK(smith_invariants({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}) == std::vector<Int>{2, 6, 12});
        CHECK(smith_invariants({{0, 0}, {0, 0}}).empty());
        CHECK(smith_invariants({{6}, {4}}) == std::vector<Int>{2});
    }
}

TEST_CASE("level structures") {
    SUBCASE("one loop") {
        for (long n : {2, 3, 4}) {
            auto gg = level_loop_example(n, 2);
            auto r = level_structure_check(gg, n);
            for (const auto& item : r.items) {
                INFO(item.name);
                CHECK(item.pass);
            }
            CHECK(r.h1 == 1);
            CHECK(r.inertia_order == static_cast<size_t>(n));
            CHECK(r.automorphism_index == 1);
            check_genus_against_datum(gg);
            CHECK(decomposition_inertia(gg).exact());
        }
    }
    SUBCASE("two vertices, two edges") {
        for (long n : {2, 3, 4}) {
            auto gg = level_two_edge_example(n, 1, 1);
            auto r = level_structure_check(gg, n);
            for (const auto& item : r.items) {
                INFO(item.name);
                CHECK(item.pass);
            }
            CHECK(r.genus == 3);
            CHECK(r.h1 == 1);
            CHECK(r.inertia_order == static_cast<size_t>(n));
            CHECK(r.automorphism_index == static_cast<size_t>(n));
        }
    }
    SUBCASE("tree quotient") {
        long n = 3;
        auto g = std::make_shared<const Group>(Group::abelian({n, n, n, n}));
        const auto& e = g->generators();
        SegmentSpec spec;
        spec.g1 = g->generated({e[0], e[1]});
        spec.g2 = g->generated({e[2], e[3]});
        spec.genus1 = spec.genus2 = 1;
        auto gg = build_segment(g, spec);
        auto r = level_structure_check(gg, n);
        CHECK(r.pass());
        CHECK(r.h1 == 0);
        CHECK(decomposition_inertia(gg).decomposition.size() == g->order());
    }
    SUBCASE("wrong group") {
        CHECK_THROWS_AS(level_structure_check(hexagon(), 3), DomainError);
    }
}

TEST_CASE("cyclic boundary") {
    SUBCASE("hyperelliptic") {
        std::vector<CyclicBranch> b(6, {2, 1});
        auto comps = boundary_components(2, 0, b, BoundaryShape::segment);
        size_t r = 0, ns = 0;
        for (const auto& c : comps) {
            CHECK(c.part1.size() + c.part2.size() == 6);
            if (c.part1.size() % 2 == 0) {
                CHECK_FALSE(c.node.ns());
                ++r;
            } else {
                CHECK(c.node.ns());
                CHECK(c.node.a == 1);
                CHECK(c.node.b == 1);
                ++ns;
            }
        }
        // Unordered splittings with at least two points per side: by size 2|4 and 3|3.
        CHECK(r == 15);
        CHECK(ns == 10);
        auto ram = discriminant_ramification(comps);
        CHECK(ram.size() == 10);
        for (const auto& t : ram) CHECK(t.coefficient == 1);
    }
    SUBCASE("symbol identities and swap invariance") {
        struct Case {
            long n, genus;
            std::vector<CyclicBranch> b;
        };
        for (const Case& c : std::vector<Case>{{3, 0, {{3, 1}, {3, 1}, {3, 1}, {3, 2}, {3, 2}, {3, 2}}},
                                               {6, 0, {{2, 1}, {3, 1}, {6, 1}, {6, 5}, {3, 2}, {2, 1}}},
                                               {4, 1, {{4, 1}, {4, 3}, {2, 1}, {2, 1}}},
                                               {5, 2, {{5, 1}, {5, 4}}}}) {
            auto comps = boundary_components(c.n, c.genus, c.b);
            CHECK_FALSE(comps.empty());
            std::set<BoundaryComponent> all(comps.begin(), comps.end());
            for (const auto& x : comps) {
                if (x.node.ns()) {
                    CHECK(x.node.nu1 + x.node.nu2 == x.node.e);
                    CHECK(x.node.a + x.node.b == c.n);
                    CHECK(gcd_l(x.node.a, x.node.b) * x.node.e == c.n);
                }
                if (x.shape == BoundaryShape::segment) {
                    CHECK(lcm_l(x.n1, x.n2) == c.n);
                    BoundaryComponent swapped = x;
                    std::swap(swapped.g1, swapped.g2);
                    std::swap(swapped.part1, swapped.part2);
                    std::swap(swapped.n1, swapped.n2);
                    std::swap(swapped.node.nu1, swapped.node.nu2);
                    std::swap(swapped.node.a, swapped.node.b);
                    CHECK(all.count(canonical_component(swapped)) == 1);
                    CHECK(canonical_component(swapped).label() == x.label());
                }
            }
        }
    }
    SUBCASE("loops") {
        auto comps = boundary_components(3, 1, {{3, 1}, {3, 2}}, BoundaryShape::loop);
        REQUIRE(comps.size() == 2);
        CHECK_FALSE(comps[0].node.ns());
        CHECK(comps[1].node.e == 3);
        CHECK(comps[1].node.nu1 == 1);
        CHECK(comps[1].node.nu2 == 2);
        CHECK(comps[0].n1 == 3);
    }
    SUBCASE("inconsistent datum") {
        CHECK_THROWS_AS(boundary_components(3, 0, {{3, 1}, {3, 1}}), DomainError);
        CHECK_THROWS_AS(boundary_components(4, 0, {{3, 1}, {3, 2}}), DomainError);
    }
}
