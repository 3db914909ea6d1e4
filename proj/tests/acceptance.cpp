#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "hurwitz/characters.hpp"
#include "hurwitz/chevalley_weil.hpp"
#include "hurwitz/graphs.hpp"
#include "hurwitz/nielsen.hpp"
#include "hurwitz/taut.hpp"
#include "support.hpp"

using namespace hurwitz;
using testsupport::group;

namespace {

struct Outcome {
    long failures = 0;
    long checks = 0;
    std::string first;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (ok) return;
        if (failures++ == 0) first = what;
    }
};

GroupPtr cyclic(long n) { return std::make_shared<const Group>(Group::cyclic(n)); }

std::string str(const Rat& x) { return rat_to_string(x); }
std::string str(const Int& x) { return x.get_str(); }

// Datum on Z/n with entries summing to zero; nullopt if the last entry would be trivial.
std::optional<HurwitzDatum> random_abelian_datum(const GroupPtr& g, long b, std::mt19937& rng) {
    std::uniform_int_distribution<Elem> pick(1, static_cast<Elem>(g->order() - 1));
    HurwitzDatum xi(g);
    Elem p = 0;
    for (long i = 0; i + 1 < b; ++i) {
        Elem x = pick(rng);
        xi.add(x);
        p = g->mul(p, x);
    }
    if (b > 0) {
        if (p == 0) return std::nullopt;
        xi.add(g->inv(p));
    }
    return xi;
}

Outcome nielsen_cyclic() {
    Outcome o;
    std::mt19937 rng(1001);
    for (long n = 2; n <= 12; ++n) {
        GroupPtr g = cyclic(n);
        int done = 0;
        for (int attempt = 0; attempt < 2000 && done < 50; ++attempt) {
            long b = 2 + static_cast<long>(rng() % 5);
            auto xi = testsupport::random_realizable_datum(g, b, rng);
            if (!xi) continue;
            size_t orbits = nielsen_orbits(0, *xi).nielsen_number;
            o.expect(orbits == 1, "C" + std::to_string(n) + " b=" + std::to_string(b) + ": " + std::to_string(orbits) +
                                      " orbits");
            ++done;
        }
        o.expect(done == 50, "C" + std::to_string(n) + ": only " + std::to_string(done) + " data drawn");
    }
    return o;
}

Outcome component_count() {
    Outcome o;
    Group g = Group::cyclic(3);
    for (long genus = 1; genus <= 7; ++genus) {
        long b = genus + 2;
        Int formula = 0;
        for (long l = 0; l <= b; ++l)
            if (mod_l(2 * l - (genus - 1), 3) == 0) formula += binomial(b, l);
        Int count = static_cast<long>(enumerate_data(g, b, {true, true}).size());
        o.expect(2 * count == formula, "g=" + std::to_string(genus) + ": " + str(count) + " vs " + str(formula) + "/2");
    }
    return o;
}

Outcome simple_covers() {
    Outcome o;
    GroupPtr g = group("S3");
    for (long b : {4, 6}) {
        HurwitzDatum xi(g);
        xi.add(g->parse_element("(1 2)"), b);
        size_t h = nielsen_orbits(0, xi).nielsen_number;
        o.expect(h == 1, "b=" + std::to_string(b) + ": Nielsen number " + std::to_string(h));
    }
    return o;
}

bool product_in_derived(const Group& g, const HurwitzDatum& xi, const ElemSet& derived) {
    Elem p = 0;
    for (Elem x : xi.entries()) p = g.mul(p, x);
    return std::binary_search(derived.begin(), derived.end(), p);
}

Outcome dimension_identity() {
    Outcome o;
    std::mt19937 rng(1004);
    const std::vector<std::string> names = {"C2", "C5", "C12", "S3", "D4", "Ab[2,2]", "D5", "A4", "D6",
                                            "Ab[2,2,2]", "S4", "D10", "Ab[3,3]", "C30", "A5", "Ab[2,30]"};
    int done = 0;
    for (int attempt = 0; attempt < 5000 && done < 100; ++attempt) {
        const std::string& name = names[static_cast<size_t>(done) % names.size()];
        GroupPtr g = group(name);
        long gp = static_cast<long>(rng() % 3);
        long b = static_cast<long>(rng() % 6) + (gp == 0 ? 2 : 0);
        std::optional<HurwitzDatum> xi;
        if (gp == 0) {
            xi = testsupport::random_realizable_datum(g, b, rng);
        } else {
            xi = testsupport::random_datum(g, gp, b, rng);
            if (xi && !product_in_derived(*g, *xi, g->derived_subgroup())) xi.reset();
        }
        if (!xi) continue;
        CharacterTable t = character_table(*g);
        std::vector<Int> ranks = hodge_ranks(gp, *xi, t);
        Int sum = 0;
        for (size_t v = 0; v < t.size(); ++v) sum += ranks[v] * t.degrees[v];
        Int genus = genus_from_datum(gp, *xi).genus;
        o.expect(sum == genus, name + " g'=" + std::to_string(gp) + ": " + str(sum) + " vs genus " + str(genus));
        ++done;
    }
    o.expect(done == 100, "only " + std::to_string(done) + " data drawn");
    return o;
}

Outcome simple_cover_characters() {
    Outcome o;
    for (const char* name : {"S3", "S4"}) {
        GroupPtr g = group(name);
        CharacterTable t = character_table(*g);
        Elem tr = g->parse_element("(1 2)");
        long lowest = 2 * static_cast<long>(g->degree()) - 2;
        for (long r = lowest; r <= lowest + 6; r += 2) {
            HurwitzDatum xi(g);
            xi.add(tr, r);
            std::vector<Int> chi = cw_euler_characteristics(0, xi, 1, t);
            for (size_t v = 0; v < t.size(); ++v) {
                Rat expected = make_rat(r - 4, 4) * t.degrees[v] - make_rat(r, 4) * t.rows[v][g->class_of(tr)].rational_value();
                o.expect(Rat(chi[v]) == expected, std::string(name) + " r=" + std::to_string(r) + " v=" +
                                                      std::to_string(v) + ": " + str(chi[v]) + " vs " + str(expected));
            }
        }
    }
    return o;
}

Outcome inversion_round_trip() {
    Outcome o;
    std::mt19937 rng(1006);
    int done = 0;
    for (int attempt = 0; attempt < 20000 && done < 200; ++attempt) {
        long n = 2 + done % 19;
        GroupPtr g = cyclic(n);
        long gp = static_cast<long>(rng() % 3);
        auto xi = random_abelian_datum(g, static_cast<long>(rng() % 7), rng);
        if (!xi || (gp == 0 && g->generated(xi->entries()).size() != g->order())) continue;
        if (genus_from_datum(gp, *xi).genus < 2) continue;
        CharacterTable t = character_table(*g);
        std::map<long, std::vector<Int>> cache;
        CwOracle oracle = [&](long m, size_t v) {
            auto it = cache.find(m);
            if (it == cache.end()) it = cache.emplace(m, cw_multiplicities(gp, *xi, m, t)).first;
            return it->second.at(v);
        };
        InversionResult r = invert_cw(oracle, g, t);
        o.expect(r.datum == *xi && r.base_genus == gp, "C" + std::to_string(n) + " g'=" + std::to_string(gp));
        ++done;
    }
    o.expect(done == 200, "only " + std::to_string(done) + " data drawn");
    return o;
}

GGraph hexagon() {
    GroupPtr g = cyclic(2);
    ModularGraph m;
    m.genus.assign(6, 0);
    for (size_t i = 0; i < 6; ++i) {
        m.vertex_of.push_back(i);
        m.vertex_of.push_back((i + 1) % 6);
        m.opposite.push_back(2 * i + 1);
        m.opposite.push_back(2 * i);
    }
    std::vector<uint32_t> he(12), ve(6);
    for (uint32_t i = 0; i < 6; ++i) {
        ve[i] = (i + 3) % 6;
        he[2 * i] = 2 * ((i + 3) % 6);
        he[2 * i + 1] = 2 * ((i + 3) % 6) + 1;
    }
    return act_by_generators(m, g, {he}, {ve}, {});
}

Outcome graph_homology() {
    Outcome o;
    struct Comb {
        std::string group;
        std::vector<std::string> s;
    };
    for (const Comb& c : std::vector<Comb>{{"C2", {"(1 2)", "(1 2)", "(1 2)"}},
                                           {"S3", {"(1 2)", "(1 3)", "(1 2 3)"}},
                                           {"S3", {"(1 2)", "(2 3)", "(1 3)", "(1 2)"}},
                                           {"C6", {"(1 2 3 4 5 6)", "(1 3 5)(2 4 6)", "(1 4)(2 5)(3 6)"}}}) {
        GroupPtr g = group(c.group);
        std::vector<Elem> s;
        long k = static_cast<long>(c.s.size()), order = static_cast<long>(g->order());
        Int closed = 1 + k * order;
        for (const std::string& x : c.s) {
            s.push_back(g->parse_element(x));
            closed -= order / g->element_order(s.back());
        }
        GGraph gg = build_comb(g, s);
        o.expect(decomposition_inertia(gg).exact(), "comb " + c.group + ": sequence not exact");
        Int from_graph = quotient_and_genus(gg).upstairs_genus;
        o.expect(from_graph == closed, "comb " + c.group + " k=" + std::to_string(k) + ": genus from the graph " +
                                           str(from_graph) + ", closed form " + str(closed));
    }
    {
        GroupPtr c3 = cyclic(3);
        Elem s = c3->generators()[0];
        SegmentSpec spec;
        spec.g1 = spec.g2 = {0, 1, 2};
        spec.holonomy = s;
        spec.legs1 = {s, s};
        spec.legs2 = {c3->inv(s), c3->inv(s)};
        o.expect(decomposition_inertia(build_segment(c3, spec)).exact(), "segment: sequence not exact");
    }
    for (long n : {2, 3, 5, 8}) {
        GroupPtr g = cyclic(n);
        LoopSpec spec;
        spec.g0 = {0};
        spec.g0_element = g->generators()[0];
        spec.genus = 1;
        o.expect(decomposition_inertia(build_loop(g, spec)).exact(), "loop n=" + std::to_string(n) + ": not exact");
    }
    {
        GroupPtr s3 = group("S3");
        Elem s = s3->parse_element("(1 2 3)");
        LoopSpec spec;
        spec.g0 = s3->generated({s});
        spec.holonomy = s;
        spec.g0_element = s3->parse_element("(1 2)");
        spec.legs = {s};
        o.expect(decomposition_inertia(build_loop(s3, spec)).exact(), "dihedral loop: not exact");
    }
    ExactnessReport hex = decomposition_inertia(hexagon());
    o.expect(hex.exact() && hex.abelianized_order == 2 && hex.h1_quotient == 1, "hexagon: not exact");
    return o;
}

Outcome level_structures() {
    Outcome o;
    for (long n : {2, 3, 4}) {
        LevelReport loop = level_structure_check(level_loop_example(n, 2), n);
        for (const LevelItem& it : loop.items) o.expect(it.pass, "loop n=" + std::to_string(n) + " " + it.name + ": " + it.detail);
        o.expect(loop.inertia_order == static_cast<size_t>(n), "loop n=" + std::to_string(n) + ": |I|");
        LevelReport two = level_structure_check(level_two_edge_example(n, 1, 1), n);
        for (const LevelItem& it : two.items) o.expect(it.pass, "two-edge n=" + std::to_string(n) + " " + it.name + ": " + it.detail);
        o.expect(two.automorphism_index == static_cast<size_t>(n), "two-edge n=" + std::to_string(n) + ": Aut index");
    }
    return o;
}

void all_compositions(long parts, long total, std::vector<long>& cur, const std::function<void()>& f) {
    if (static_cast<long>(cur.size()) == parts - 1) {
        cur.push_back(total);
        f();
        cur.pop_back();
        return;
    }
    for (long x = 0; x <= total; ++x) {
        cur.push_back(x);
        all_compositions(parts, total - x, cur, f);
        cur.pop_back();
    }
}

Outcome hodge_integrals() {
    Outcome o;
    for (long n = 3; n <= 12; ++n)
        for (long a = 0; a <= n - 3; ++a)
            o.expect(tau_recursive(a, n) == binomial(n - 2, a + 1),
                     "tau a=" + std::to_string(a) + " n=" + std::to_string(n));
    for (long n = 3; n <= 10; ++n) {
        std::vector<long> alpha;
        all_compositions(n, n - 3, alpha, [&] {
            o.expect(psi_integral(n, alpha) == psi_integral_string(n, alpha), "psi n=" + std::to_string(n));
        });
    }
    for (long g = 1; g <= 5; ++g) {
        for (long a = 0; a <= 2 * g - 1; ++a)
            o.expect(hyperelliptic_integral_closed(g, a) == hyperelliptic_integral_pipeline(g, a),
                     "hyperelliptic g=" + std::to_string(g) + " a=" + std::to_string(a));
        Rat mu = hyperelliptic_mu_integral(g);
        Rat expected = Rat(1) / (Rat(Int(1) << static_cast<unsigned>(2 * g)) * Rat(factorial(2 * g + 1)));
        o.expect(mu == expected, "mu g=" + std::to_string(g) + ": " + str(mu));
    }
    o.expect(hyperelliptic_integral_closed(1, 0) == make_rat(1, 24), "g=1 a=0: " + str(hyperelliptic_integral_closed(1, 0)));
    o.expect(hyperelliptic_integral_pipeline(1, 0) == make_rat(1, 24), "g=1 a=0 pipeline");
    return o;
}

Outcome boundary_relation() {
    Outcome o;
    for (long g = 2; g <= 6; ++g) {
        HyperellipticBoundaryRelation r = hyperelliptic_boundary_relation(g);
        o.expect(r.lambda == 8 * (2 * g + 1), "g=" + std::to_string(g) + " lambda " + str(r.lambda));
        long r_rows = 0, ns_rows = 0;
        for (const BoundaryRelationRow& row : r.rows) {
            long i = row.index;
            Rat want = row.ns ? Rat(8 * i * (g - i)) : Rat(4 * i * (g + 1 - i));
            o.expect(row.coefficient == want, "g=" + std::to_string(g) + (row.ns ? " NS " : " R ") + std::to_string(i) +
                                                  ": " + str(row.coefficient) + " vs " + str(want));
            ++(row.ns ? ns_rows : r_rows);
        }
        o.expect(r_rows == (g + 1) / 2 && ns_rows == g / 2, "g=" + std::to_string(g) + ": row count");
    }
    std::mt19937 rng(1010);
    for (long p : {2, 3, 5}) {
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<long> nu;
            long b = 3 + static_cast<long>(rng() % 4), sum = 0;
            for (long i = 0; i + 1 < b; ++i) {
                nu.push_back(1 + static_cast<long>(rng() % (p - 1)));
                sum += nu.back();
            }
            if (mod_l(sum, p) == 0) continue;
            nu.push_back(p - mod_l(sum, p));
            o.expect(summed_relation(p, nu) == summed_relation_expected(p, nu), "summed p=" + std::to_string(p));
        }
    }
    return o;
}

Outcome closure_counts() {
    Outcome o;
    int instances = 0;
    for (const char* name : {"S3", "S4", "D4", "D5", "D6", "A4", "A5"}) {
        GroupPtr g = group(name);
        for (const CyclicSubgroup& hc : g->cyclic_subgroups()) {
            ElemSet h = hc.members, core = hc.members;
            for (Elem x = 0; x < g->order(); ++x) core = g->intersection(core, g->conjugate_set(x, h));
            if (core.size() != 1 || h.size() == 1) continue;
            std::vector<std::vector<long>> d;
            for (const CyclicSubgroup& ic : g->cyclic_subgroups()) {
                if (ic.order == 1) continue;
                std::vector<long> node = local_indices(*g, h, ic.generator);
                long l = 1;
                for (long x : node) l = lcm_l(l, x);
                o.expect(l == ic.order, std::string(name) + ": lcm of local indices");
                d.push_back(node);
                if (d.size() == 3) break;
            }
            o.expect(closure_count(d) == closure_count_direct(d), std::string(name) + ": product formula vs orbits");
            ++instances;
        }
    }
    o.expect(instances >= 20, "only " + std::to_string(instances) + " instances");
    GroupPtr s3 = group("S3");
    HurwitzDatum xi(s3);
    xi.add(s3->parse_element("(1 2)"), 4);
    Int genus = induced_ramification(0, xi, s3->generated({s3->parse_element("(1 2)")})).genus;
    o.expect(genus == 0, "S3/<(12)> genus " + str(genus));
    return o;
}

Outcome hodge_recursion_check() {
    Outcome o;
    o.expect(hodge_base(3, {1, 1, 1}) == make_rat(1, 18), "p=3 (1,1,1)");
    o.expect(hodge_base(3, {2, 2, 2}) == make_rat(1, 18), "p=3 (2,2,2)");
    o.expect(hodge_base(5, {1, 1, 3}) == make_rat(1, 10), "p=5 (1,1,3)");
    o.expect(hodge_base(7, {1, 2, 4}) == make_rat(1, 7), "p=7 (1,2,4)");
    for (RecursionWeight w : {RecursionWeight::published, RecursionWeight::rederived}) {
        Rat base = hodge_recursion(3, 2, {1, 1, 2, 2}, w);
        Rat twisted = hodge_recursion(3, 2, {2, 2, 1, 1}, w);
        Rat reordered = hodge_recursion(3, 2, {1, 2, 1, 2}, w);
        Rat threaded;
        std::thread th([&] { threaded = hodge_recursion(3, 2, {2, 1, 2, 1}, w); });
        th.join();
        o.expect(base == twisted && base == reordered && base == threaded, "p=3 g=2 twist or order changes " + str(base));
        for (long g = 3; g <= 4; ++g) {
            std::vector<long> xi(static_cast<size_t>(g + 2), 1), tw(static_cast<size_t>(g + 2), 2);
            long b = g + 2;
            if (mod_l(b, 3) != 0) continue;
            o.expect(hodge_recursion(3, g, xi, w) == hodge_recursion(3, g, tw, w), "p=3 g=" + std::to_string(g));
        }
    }
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double limit;  // seconds, 0 for none
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"nielsen-cyclic", 30, nielsen_cyclic},
        {"component-count-z3", 1, component_count},
        {"simple-covers-s3", 10, simple_covers},
        {"hodge-rank-dimension", 60, dimension_identity},
        {"simple-cover-characters", 0, simple_cover_characters},
        {"inversion-round-trip", 60, inversion_round_trip},
        {"graph-homology-comb-genus", 0, graph_homology},
        {"level-structures", 0, level_structures},
        {"hodge-integrals", 30, hodge_integrals},
        {"boundary-relation", 0, boundary_relation},
        {"closure-counts", 0, closure_counts},
        {"hodge-recursion", 5, hodge_recursion_check},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const Criterion& c = criteria[i];
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.expect(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit > 0 && secs >= c.limit) o.expect(false, "time limit exceeded");
        bool pass = o.failures == 0;
        failed += !pass;
        std::ostringstream line;
        line << (pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << c.name << " (" << o.checks << " checks, ";
        char t[32];
        std::snprintf(t, sizeof t, "%.2f s)", secs);
        line << t;
        if (!pass) line << ": " << o.failures << " failed, first: " << o.first;
        std::puts(line.str().c_str());
    }
    return failed == 0 ? 0 : 1;
}
