#include "hurwitz/graphs.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

namespace hurwitz {

namespace {

using Table = std::vector<uint32_t>;

struct UnionFind {
    std::vector<size_t> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    size_t find(size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(size_t a, size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

/// Orbit index per point, orbits numbered by least member.
std::vector<size_t> orbits_of(size_t npoints, const std::vector<const Table*>& gens, std::vector<size_t>& reps) {
    UnionFind uf(npoints);
    for (const Table* t : gens)
        for (size_t p = 0; p < npoints; ++p) uf.unite(p, (*t)[p]);
    std::vector<size_t> id(npoints, SIZE_MAX);
    reps.clear();
    for (size_t p = 0; p < npoints; ++p) {
        size_t r = uf.find(p);
        if (id[r] == SIZE_MAX) {
            id[r] = reps.size();
            reps.push_back(p);
        }
        id[p] = id[r];
    }
    return id;
}

/// Tables for every element from the generator tables, by left multiplication.
std::vector<Table> extend_action(const Group& g, const std::vector<Table>& gen_tables, size_t npoints) {
    std::vector<Table> table(g.order());
    std::vector<bool> done(g.order(), false);
    table[0].resize(npoints);
    std::iota(table[0].begin(), table[0].end(), 0);
    done[0] = true;
    std::deque<Elem> queue{0};
    const auto& gens = g.generators();
    while (!queue.empty()) {
        Elem a = queue.front();
        queue.pop_front();
        for (size_t i = 0; i < gens.size(); ++i) {
            Elem c = g.mul(gens[i], a);
            Table t(npoints);
            for (size_t p = 0; p < npoints; ++p) t[p] = gen_tables[i][table[a][p]];
            if (done[c]) {
                if (table[c] != t) throw DomainError("action_homomorphism", "generator images do not define an action");
                continue;
            }
            table[c] = std::move(t);
            done[c] = true;
            queue.push_back(c);
        }
    }
    return table;
}

std::vector<const Table*> generator_tables(const GGraph& gg, bool vertices) {
    std::vector<const Table*> out;
    for (Elem x : gg.group->generators()) out.push_back(vertices ? &gg.vertex_action[x] : &gg.half_edge_action[x]);
    return out;
}

std::vector<size_t> orbit_sizes(const std::vector<size_t>& orbit, size_t norbits) {
    std::vector<size_t> size(norbits, 0);
    for (size_t o : orbit) ++size[o];
    return size;
}

/// Quotient genus of a vertex from Riemann-Hurwitz for its stabilizer.
long quotient_vertex_genus(long upstairs_genus, long stab, long branch) {
    long num = 2 * upstairs_genus - 2 - branch;
    if (num % (2 * stab) != 0) throw DomainError("quotient_genus", "Riemann-Hurwitz does not give an integer genus");
    long g = num / (2 * stab) + 1;
    if (g < 0) throw DomainError("quotient_genus", "negative quotient genus");
    return g;
}

ElemSet elements_of(const Group& g) {
    ElemSet all(g.order());
    std::iota(all.begin(), all.end(), 0);
    return all;
}

bool contains(const ElemSet& s, Elem x) { return std::binary_search(s.begin(), s.end(), x); }

/// S/N is (Z/n)^r for abelian S and N inside S.
bool homocyclic_quotient(const Group& g, const ElemSet& s, const ElemSet& n_sub, long n, long r) {
    Int expected;
    mpz_ui_pow_ui(expected.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
    if (n_sub.empty() || s.size() % n_sub.size() != 0 || Int(static_cast<unsigned long>(s.size() / n_sub.size())) != expected)
        return false;
    std::vector<bool> in_n(g.order(), false);
    for (Elem x : n_sub) in_n[x] = true;
    for (long d : divisors(n)) {
        size_t count = 0;
        for (Elem x : s)
            if (in_n[g.pow(x, d)]) ++count;
        Int want;
        mpz_ui_pow_ui(want.get_mpz_t(), static_cast<unsigned long>(gcd_l(d, n)), static_cast<unsigned long>(r));
        if (Int(static_cast<unsigned long>(count)) != want * static_cast<unsigned long>(n_sub.size())) return false;
    }
    return true;
}

/// Largest subgroup of k normal in G.
ElemSet normal_core(const Group& g, ElemSet k) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (Elem x : g.generators()) {
            ElemSet next = g.intersection(k, g.conjugate_set(x, k));
            if (next.size() != k.size()) {
                k = std::move(next);
                changed = true;
            }
        }
    }
    return k;
}

std::string join(const std::vector<size_t>& v) {
    std::string s = "{";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

}  // namespace

size_t ModularGraph::edge_count() const {
    size_t c = 0;
    for (size_t h = 0; h < half_edge_count(); ++h)
        if (!is_leg(h)) ++c;
    return c / 2;
}

size_t ModularGraph::leg_count() const {
    size_t c = 0;
    for (size_t h = 0; h < half_edge_count(); ++h)
        if (is_leg(h)) ++c;
    return c;
}

namespace {
size_t component_count(const ModularGraph& g) {
    UnionFind uf(g.vertex_count());
    for (size_t h = 0; h < g.half_edge_count(); ++h) uf.unite(g.vertex_of[h], g.vertex_of[g.opposite[h]]);
    size_t c = 0;
    for (size_t v = 0; v < g.vertex_count(); ++v)
        if (uf.find(v) == v) ++c;
    return c;
}
}  // namespace

bool ModularGraph::connected() const { return vertex_count() > 0 && component_count(*this) == 1; }

long ModularGraph::betti() const {
    return static_cast<long>(edge_count()) - static_cast<long>(vertex_count()) + static_cast<long>(component_count(*this));
}

Int ModularGraph::arithmetic_genus() const {
    Int g = betti();
    for (long x : genus) g += x;
    return g;
}

bool ModularGraph::stable() const {
    std::vector<long> valence(vertex_count(), 0);
    for (size_t h = 0; h < half_edge_count(); ++h) ++valence[vertex_of[h]];
    for (size_t v = 0; v < vertex_count(); ++v)
        if (2 * genus[v] - 2 + valence[v] <= 0) return false;
    return true;
}

void validate(const ModularGraph& g, bool require_stable) {
    if (g.opposite.size() != g.vertex_of.size()) throw DomainError("graph_shape", "opposite and incidence differ in size");
    for (long x : g.genus)
        if (x < 0) throw DomainError("graph_genus", "negative vertex genus");
    for (size_t h = 0; h < g.half_edge_count(); ++h) {
        if (g.vertex_of[h] >= g.vertex_count()) throw DomainError("graph_incidence", "half-edge on a missing vertex");
        if (g.opposite[h] >= g.half_edge_count() || g.opposite[g.opposite[h]] != h)
            throw DomainError("graph_involution", "opposite is not an involution");
    }
    if (require_stable && !g.stable()) throw DomainError("graph_stability", "2g - 2 + valence must be positive");
}

ElemSet GGraph::half_edge_stabilizer(size_t h) const {
    ElemSet s;
    for (Elem x = 0; x < group->order(); ++x)
        if (half_edge_action[x][h] == h) s.push_back(x);
    return s;
}

ElemSet GGraph::vertex_stabilizer(size_t v) const {
    ElemSet s;
    for (Elem x = 0; x < group->order(); ++x)
        if (vertex_action[x][v] == v) s.push_back(x);
    return s;
}

GGraph act_by_generators(ModularGraph graph, GroupPtr group, const std::vector<std::vector<uint32_t>>& half_edge_images,
                         const std::vector<std::vector<uint32_t>>& vertex_images, std::vector<Elem> decor) {
    validate(graph);
    size_t ngens = group->generators().size();
    if (half_edge_images.size() != ngens || vertex_images.size() != ngens)
        throw DomainError("action_generators", "one image table per group generator is required");
    for (size_t i = 0; i < ngens; ++i) {
        if (half_edge_images[i].size() != graph.half_edge_count() || vertex_images[i].size() != graph.vertex_count())
            throw DomainError("action_generators", "image table has the wrong size");
    }
    if (decor.empty()) decor.assign(graph.half_edge_count(), 0);
    GGraph gg;
    gg.half_edge_action = extend_action(*group, half_edge_images, graph.half_edge_count());
    gg.vertex_action = extend_action(*group, vertex_images, graph.vertex_count());
    gg.graph = std::move(graph);
    gg.group = std::move(group);
    gg.decor = std::move(decor);
    validate(gg);
    return gg;
}

void validate(const GGraph& gg) {
    const ModularGraph& g = gg.graph;
    const Group& grp = *gg.group;
    validate(g);
    if (!g.connected()) throw DomainError("graph_connected", "graph is not connected");
    size_t nf = g.half_edge_count(), nv = g.vertex_count();
    if (gg.half_edge_action.size() != grp.order() || gg.vertex_action.size() != grp.order() || gg.decor.size() != nf)
        throw DomainError("action_shape", "action tables or decorations have the wrong size");
    for (Elem x = 0; x < grp.order(); ++x) {
        const Table& th = gg.half_edge_action[x];
        const Table& tv = gg.vertex_action[x];
        if (th.size() != nf || tv.size() != nv) throw DomainError("action_shape", "action table has the wrong size");
        std::vector<bool> hit_h(nf, false), hit_v(nv, false);
        for (size_t h = 0; h < nf; ++h) {
            if (th[h] >= nf || hit_h[th[h]]) throw DomainError("action_bijective", "half-edge action is not a permutation");
            hit_h[th[h]] = true;
        }
        for (size_t v = 0; v < nv; ++v) {
            if (tv[v] >= nv || hit_v[tv[v]]) throw DomainError("action_bijective", "vertex action is not a permutation");
            hit_v[tv[v]] = true;
        }
    }
    for (size_t h = 0; h < nf; ++h)
        if (gg.half_edge_action[0][h] != h) throw DomainError("action_identity", "identity acts nontrivially");
    for (size_t v = 0; v < nv; ++v)
        if (gg.vertex_action[0][v] != v) throw DomainError("action_identity", "identity acts nontrivially");
    for (Elem s : grp.generators()) {
        const Table& sh = gg.half_edge_action[s];
        const Table& sv = gg.vertex_action[s];
        for (Elem x = 0; x < grp.order(); ++x) {
            Elem sx = grp.mul(s, x);
            for (size_t h = 0; h < nf; ++h)
                if (gg.half_edge_action[sx][h] != sh[gg.half_edge_action[x][h]])
                    throw DomainError("action_homomorphism", "half-edge action is not a homomorphism");
            for (size_t v = 0; v < nv; ++v)
                if (gg.vertex_action[sx][v] != sv[gg.vertex_action[x][v]])
                    throw DomainError("action_homomorphism", "vertex action is not a homomorphism");
        }
        for (size_t h = 0; h < nf; ++h) {
            if (g.opposite[sh[h]] != sh[g.opposite[h]]) throw DomainError("action_involution", "action does not commute with tau");
            if (g.vertex_of[sh[h]] != sv[g.vertex_of[h]]) throw DomainError("action_incidence", "action does not commute with incidence");
            if (gg.decor[sh[h]] != grp.conj(s, gg.decor[h]))
                throw DomainError("decoration_equivariance", "decoration at g.h is not the conjugate");
        }
        for (size_t v = 0; v < nv; ++v)
            if (g.genus[sv[v]] != g.genus[v]) throw DomainError("action_genus", "action does not preserve genera");
    }
    std::vector<size_t> reps;
    auto orbit = orbits_of(nf, generator_tables(gg, false), reps);
    for (size_t h = 0; h < nf; ++h) {
        if (g.is_leg(h)) continue;
        if (orbit[h] == orbit[g.opposite[h]]) throw DomainError("action_inversion", "an element maps a half-edge to its opposite");
        if (gg.decor[g.opposite[h]] != grp.inv(gg.decor[h]))
            throw DomainError("decoration_opposite", "opposite half-edges must carry inverse holonomies");
    }
    for (size_t h : reps)
        if (grp.generated({gg.decor[h]}) != gg.half_edge_stabilizer(h))
            throw DomainError("decoration_stabilizer", "decoration does not generate the half-edge stabilizer");
}

GraphQuotient quotient_and_genus(const GGraph& gg) {
    validate(gg);
    const ModularGraph& g = gg.graph;
    long order = static_cast<long>(gg.group->order());
    GraphQuotient q;
    q.vertex_orbit = orbits_of(g.vertex_count(), generator_tables(gg, true), q.vertex_rep);
    q.half_edge_orbit = orbits_of(g.half_edge_count(), generator_tables(gg, false), q.half_edge_rep);
    auto vsize = orbit_sizes(q.vertex_orbit, q.vertex_rep.size());
    auto hsize = orbit_sizes(q.half_edge_orbit, q.half_edge_rep.size());

    std::vector<long> branch(q.vertex_rep.size(), 0);
    std::vector<bool> is_rep(g.vertex_count(), false);
    for (size_t v : q.vertex_rep) is_rep[v] = true;
    for (size_t h = 0; h < g.half_edge_count(); ++h)
        if (is_rep[g.vertex_of[h]]) branch[q.vertex_orbit[g.vertex_of[h]]] += order / static_cast<long>(hsize[q.half_edge_orbit[h]]) - 1;

    for (size_t i = 0; i < q.vertex_rep.size(); ++i) {
        long stab = order / static_cast<long>(vsize[i]);
        q.quotient.genus.push_back(quotient_vertex_genus(g.genus[q.vertex_rep[i]], stab, branch[i]));
    }
    q.datum = HurwitzDatum(gg.group);
    for (size_t h : q.half_edge_rep) {
        q.quotient.vertex_of.push_back(q.vertex_orbit[g.vertex_of[h]]);
        q.quotient.opposite.push_back(q.half_edge_orbit[g.opposite[h]]);
        if (g.is_leg(h) && gg.decor[h] != 0) q.datum.add(gg.decor[h]);
    }
    q.upstairs_genus = g.arithmetic_genus();
    q.downstairs_genus = q.quotient.arithmetic_genus();
    return q;
}

GGraph quotient_by_normal(const GGraph& gg, const ElemSet& k, Projection* projection) {
    validate(gg);
    const Group& grp = *gg.group;
    if (!grp.is_subgroup(k) || !grp.is_normal(k)) throw DomainError("normal_subgroup", "K must be a normal subgroup");
    const ModularGraph& g = gg.graph;
    std::vector<const Table*> kh, kv;
    for (Elem x : k) {
        kh.push_back(&gg.half_edge_action[x]);
        kv.push_back(&gg.vertex_action[x]);
    }
    std::vector<size_t> vrep, hrep;
    auto vorb = orbits_of(g.vertex_count(), kv, vrep);
    auto horb = orbits_of(g.half_edge_count(), kh, hrep);
    auto vsize = orbit_sizes(vorb, vrep.size());
    auto hsize = orbit_sizes(horb, hrep.size());
    long korder = static_cast<long>(k.size());

    ModularGraph out;
    std::vector<long> branch(vrep.size(), 0);
    std::vector<bool> is_rep(g.vertex_count(), false);
    for (size_t v : vrep) is_rep[v] = true;
    for (size_t h = 0; h < g.half_edge_count(); ++h)
        if (is_rep[g.vertex_of[h]]) branch[vorb[g.vertex_of[h]]] += korder / static_cast<long>(hsize[horb[h]]) - 1;
    for (size_t i = 0; i < vrep.size(); ++i)
        out.genus.push_back(quotient_vertex_genus(g.genus[vrep[i]], korder / static_cast<long>(vsize[i]), branch[i]));
    for (size_t h : hrep) {
        if (!g.is_leg(h) && horb[g.opposite[h]] == horb[h])
            throw DomainError("action_inversion", "K maps a half-edge to its opposite");
        out.vertex_of.push_back(vorb[g.vertex_of[h]]);
        out.opposite.push_back(horb[g.opposite[h]]);
    }

    Projection p = quotient_group(grp, k);
    const Group& qg = *p.quotient;
    std::vector<Elem> lift(qg.order(), UINT32_MAX);
    for (Elem x = 0; x < grp.order(); ++x)
        if (lift[p.image[x]] == UINT32_MAX) lift[p.image[x]] = x;
    std::vector<Table> he, ve;
    for (Elem gen : qg.generators()) {
        Elem x = lift[gen];
        Table th(hrep.size()), tv(vrep.size());
        for (size_t i = 0; i < hrep.size(); ++i) th[i] = static_cast<uint32_t>(horb[gg.half_edge_action[x][hrep[i]]]);
        for (size_t i = 0; i < vrep.size(); ++i) tv[i] = static_cast<uint32_t>(vorb[gg.vertex_action[x][vrep[i]]]);
        he.push_back(std::move(th));
        ve.push_back(std::move(tv));
    }
    std::vector<Elem> decor;
    for (size_t h : hrep) decor.push_back(p.image[gg.decor[h]]);
    GGraph result = act_by_generators(std::move(out), p.quotient, he, ve, std::move(decor));
    if (projection) *projection = std::move(p);
    return result;
}

GGraph build_from_quotient(GroupPtr gp, const std::vector<QuotientVertex>& vertices, const std::vector<QuotientEdge>& edges) {
    const Group& g = *gp;
    if (vertices.empty()) throw DomainError("graph_connected", "no vertices");
    ModularGraph graph;
    std::vector<Elem> decor;
    // Per item: coset index table, coset representatives, offset.
    struct Cosets {
        std::vector<int> index;
        std::vector<Elem> reps;
    };
    auto cosets_of = [&](const ElemSet& h) {
        Cosets c;
        c.index = g.left_coset_index(h);
        for (const ElemSet& cs : g.left_cosets(h)) c.reps.push_back(cs.front());
        return c;
    };

    std::vector<Cosets> vcos;
    std::vector<size_t> voffset;
    std::vector<long> branch_per_vertex(vertices.size(), 0);
    for (const QuotientVertex& v : vertices) {
        if (!g.is_subgroup(v.stabilizer)) throw DomainError("vertex_stabilizer", "stabilizer is not a subgroup");
        if (v.genus < 0) throw DomainError("graph_genus", "negative quotient genus");
        voffset.push_back(graph.genus.size());
        vcos.push_back(cosets_of(v.stabilizer));
        graph.genus.resize(graph.genus.size() + vcos.back().reps.size(), 0);
    }

    // Half-edges, with the coset description needed for the generator action.
    struct Family {
        Cosets cosets;
        size_t offset;
        size_t vertex;   // quotient vertex
        Elem shift;      // the half-edge xH sits at vertex x * shift
        Elem holonomy;   // decoration of the half-edge with representative x is x holonomy x^-1
        long pair = 0;   // offset of the opposite family minus this offset (0 for legs)
    };
    std::vector<Family> families;
    auto add_family = [&](const ElemSet& h, size_t vertex, Elem shift, Elem hol) {
        Family f{cosets_of(h), graph.vertex_of.size(), vertex, shift, hol};
        for (Elem x : f.cosets.reps) {
            Elem at = g.mul(x, shift);
            graph.vertex_of.push_back(voffset[vertex] + static_cast<size_t>(vcos[vertex].index[at]));
            graph.opposite.push_back(graph.vertex_of.size() - 1);
            decor.push_back(g.conj(x, hol));
        }
        families.push_back(std::move(f));
        return families.size() - 1;
    };

    for (const QuotientEdge& e : edges) {
        if (e.source >= vertices.size() || e.target >= vertices.size()) throw DomainError("edge_incidence", "edge on a missing vertex");
        ElemSet h = g.generated({e.holonomy});
        if (!g.subset(h, vertices[e.source].stabilizer))
            throw DomainError("edge_stabilizer", "edge stabilizer must lie in the source stabilizer");
        if (!g.subset(g.conjugate_set(g.inv(e.twist), h), vertices[e.target].stabilizer))
            throw DomainError("edge_stabilizer", "twisted edge stabilizer must lie in the target stabilizer");
        size_t a = add_family(h, e.source, 0, e.holonomy);
        size_t b = add_family(h, e.target, e.twist, g.inv(e.holonomy));
        size_t count = families[a].cosets.reps.size();
        for (size_t i = 0; i < count; ++i) {
            graph.opposite[families[a].offset + i] = families[b].offset + i;
            graph.opposite[families[b].offset + i] = families[a].offset + i;
        }
        long stab = static_cast<long>(h.size());
        branch_per_vertex[e.source] += (stab - 1) * static_cast<long>(vertices[e.source].stabilizer.size() / h.size());
        branch_per_vertex[e.target] += (stab - 1) * static_cast<long>(vertices[e.target].stabilizer.size() / h.size());
    }
    for (size_t i = 0; i < vertices.size(); ++i) {
        for (Elem l : vertices[i].legs) {
            if (!contains(vertices[i].stabilizer, l)) throw DomainError("leg_holonomy", "leg holonomy must lie in the vertex stabilizer");
            ElemSet h = g.generated({l});
            add_family(h, i, 0, l);
            branch_per_vertex[i] += (static_cast<long>(h.size()) - 1) * static_cast<long>(vertices[i].stabilizer.size() / h.size());
        }
    }
    for (size_t i = 0; i < vertices.size(); ++i) {
        long stab = static_cast<long>(vertices[i].stabilizer.size());
        long twice = stab * (2 * vertices[i].genus - 2) + branch_per_vertex[i];
        if (twice % 2 != 0 || twice < -2) throw DomainError("riemann_hurwitz", "vertex data give no integral genus");
        for (size_t c = 0; c < vcos[i].reps.size(); ++c) graph.genus[voffset[i] + c] = twice / 2 + 1;
    }

    std::vector<Table> he, ve;
    for (Elem s : g.generators()) {
        Table tv(graph.vertex_count()), th(graph.half_edge_count());
        for (size_t i = 0; i < vertices.size(); ++i)
            for (size_t c = 0; c < vcos[i].reps.size(); ++c)
                tv[voffset[i] + c] = static_cast<uint32_t>(voffset[i] + static_cast<size_t>(vcos[i].index[g.mul(s, vcos[i].reps[c])]));
        for (const Family& f : families)
            for (size_t c = 0; c < f.cosets.reps.size(); ++c)
                th[f.offset + c] = static_cast<uint32_t>(f.offset + static_cast<size_t>(f.cosets.index[g.mul(s, f.cosets.reps[c])]));
        he.push_back(std::move(th));
        ve.push_back(std::move(tv));
    }
    return act_by_generators(std::move(graph), std::move(gp), he, ve, std::move(decor));
}

GGraph build_comb(GroupPtr gp, const std::vector<Elem>& s) {
    const Group& g = *gp;
    if (s.size() < 3) throw DomainError("comb_branches", "a comb needs at least three branches");
    if (g.generated(s).size() != g.order()) throw DomainError("generation", "the subgroups H_i must generate G");
    std::vector<QuotientVertex> vertices{{ElemSet{0}, 0, {}}};
    std::vector<QuotientEdge> edges;
    for (size_t i = 0; i < s.size(); ++i) {
        vertices.push_back({g.generated({s[i]}), 0, {s[i], g.inv(s[i])}});
        edges.push_back({0, i + 1, 0, 0});
    }
    return build_from_quotient(std::move(gp), vertices, edges);
}

GGraph build_segment(GroupPtr gp, const SegmentSpec& spec) {
    const Group& g = *gp;
    ElemSet both = spec.g1;
    both.insert(both.end(), spec.g2.begin(), spec.g2.end());
    if (g.generated(both).size() != g.order()) throw DomainError("generation", "G_1 and G_2 must generate G");
    std::vector<QuotientVertex> vertices{{spec.g1, spec.genus1, spec.legs1}, {spec.g2, spec.genus2, spec.legs2}};
    return build_from_quotient(std::move(gp), vertices, {{0, 1, spec.holonomy, 0}});
}

GGraph build_loop(GroupPtr gp, const LoopSpec& spec) {
    const Group& g = *gp;
    Elem g0 = spec.g0_element, s = spec.holonomy;
    if (contains(spec.g0, g0)) throw DomainError("loop_element", "g_0 must lie outside G_0");
    ElemSet gens = spec.g0;
    gens.push_back(g0);
    if (g.generated(gens).size() != g.order()) throw DomainError("generation", "G_0 and g_0 must generate G");
    if (spec.opposite_characters && g.mul(g.mul(g.inv(g0), s), g0) != g.inv(s))
        throw DomainError("loop_characters", "local characters at the two ends of the loop must be opposite");
    std::vector<QuotientVertex> vertices{{spec.g0, spec.genus, spec.legs}};
    return build_from_quotient(std::move(gp), vertices, {{0, 0, s, g0}});
}

namespace {
void normalize_divisibility(std::vector<Int>& diag) {
    for (size_t i = 0; i < diag.size(); ++i)
        for (size_t j = i + 1; j < diag.size(); ++j) {
            Int a = gcd(diag[i], diag[j]), b = lcm(diag[i], diag[j]);
            diag[i] = a;
            diag[j] = b;
        }
}
}  // namespace

std::vector<Int> smith_invariants(std::vector<std::vector<Int>> m) {
    std::vector<Int> diag;
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (size_t k = 0; k < rows && k < cols; ++k) {
        while (true) {
            size_t pr = rows, pc = cols;
            for (size_t i = k; i < rows; ++i)
                for (size_t j = k; j < cols; ++j)
                    if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < abs(m[pr][pc]))) {
                        pr = i;
                        pc = j;
                    }
            if (pr == rows) {
                normalize_divisibility(diag);
                return diag;
            }
            std::swap(m[k], m[pr]);
            for (auto& row : m) std::swap(row[k], row[pc]);
            bool clean = true;
            for (size_t i = k + 1; i < rows; ++i) {
                Int q = m[i][k] / m[k][k];
                if (q != 0)
                    for (size_t j = k; j < cols; ++j) m[i][j] -= q * m[k][j];
                if (m[i][k] != 0) clean = false;
            }
            for (size_t j = k + 1; j < cols; ++j) {
                Int q = m[k][j] / m[k][k];
                if (q != 0)
                    for (size_t i = k; i < rows; ++i) m[i][j] -= q * m[i][k];
                if (m[k][j] != 0) clean = false;
            }
            if (clean) break;
        }
        diag.push_back(abs(m[k][k]));
    }
    normalize_divisibility(diag);
    return diag;
}

namespace {

/// Spanning forest data of a graph: tree flag per half-edge and BFS order.
struct SpanningTree {
    std::vector<bool> tree;           // per half-edge (both halves of a tree edge)
    std::vector<size_t> parent_half;  // per vertex: half-edge at the parent pointing to it, SIZE_MAX at the root
    std::vector<size_t> order;        // BFS order
};

SpanningTree spanning_tree(const ModularGraph& g) {
    SpanningTree t;
    t.tree.assign(g.half_edge_count(), false);
    t.parent_half.assign(g.vertex_count(), SIZE_MAX);
    std::vector<std::vector<size_t>> at(g.vertex_count());
    for (size_t h = 0; h < g.half_edge_count(); ++h) at[g.vertex_of[h]].push_back(h);
    std::vector<bool> seen(g.vertex_count(), false);
    seen[0] = true;
    t.order.push_back(0);
    for (size_t i = 0; i < t.order.size(); ++i) {
        for (size_t h : at[t.order[i]]) {
            if (g.is_leg(h)) continue;
            size_t w = g.vertex_of[g.opposite[h]];
            if (seen[w]) continue;
            seen[w] = true;
            t.tree[h] = t.tree[g.opposite[h]] = true;
            t.parent_half[w] = h;
            t.order.push_back(w);
        }
    }
    return t;
}

/// Edge orientation: an edge is named by its lower half-edge.
bool positive(const ModularGraph& g, size_t h) { return h < g.opposite[h]; }

}  // namespace

ExactnessReport decomposition_inertia(const GGraph& gg) {
    GraphQuotient q = quotient_and_genus(gg);
    const Group& grp = *gg.group;
    const ModularGraph& up = gg.graph;
    const ModularGraph& down = q.quotient;
    ExactnessReport r;

    std::vector<Elem> vgens, egens;
    for (size_t v : q.vertex_rep)
        for (Elem x : gg.vertex_stabilizer(v)) vgens.push_back(x);
    for (size_t h : q.half_edge_rep)
        if (!up.is_leg(h)) egens.push_back(gg.decor[h]);
    r.decomposition = grp.normal_closure(vgens);
    r.inertia = grp.normal_closure(egens);
    r.inertia_in_decomposition = grp.subset(r.inertia, r.decomposition);
    r.normal = grp.is_normal(r.decomposition) && grp.is_normal(r.inertia);
    r.h1_upstairs = up.betti();
    r.h1_quotient = down.betti();

    Projection p1 = quotient_group(grp, r.decomposition);
    Projection p2 = quotient_group(*p1.quotient, p1.quotient->derived_subgroup());
    const Group& a = *p2.quotient;
    auto to_a = [&](Elem x) { return p2.image[p1.image[x]]; };
    r.abelianized_order = a.order();

    // Non-tree edges of the quotient index H_1 of the quotient.
    SpanningTree dt = spanning_tree(down);
    std::vector<long> coord(down.half_edge_count(), -1);
    size_t b = 0;
    for (size_t h = 0; h < down.half_edge_count(); ++h)
        if (!down.is_leg(h) && !dt.tree[h] && positive(down, h)) coord[h] = coord[down.opposite[h]] = static_cast<long>(b++);

    // Dart labels in A: lift at the source representative, read off the target translate.
    std::vector<Elem> label(down.half_edge_count(), 0);
    for (size_t qh = 0; qh < down.half_edge_count(); ++qh) {
        if (down.is_leg(qh)) continue;
        size_t src_rep = q.vertex_rep[down.vertex_of[qh]];
        size_t tgt_rep = q.vertex_rep[down.vertex_of[down.opposite[qh]]];
        size_t h0 = q.half_edge_rep[qh];
        Elem lift = UINT32_MAX;
        for (Elem x = 0; x < grp.order() && lift == UINT32_MAX; ++x)
            if (up.vertex_of[gg.half_edge_action[x][h0]] == src_rep) lift = x;
        size_t h = gg.half_edge_action[lift][h0];
        size_t end = up.vertex_of[up.opposite[h]];
        Elem y = UINT32_MAX;
        for (Elem x = 0; x < grp.order() && y == UINT32_MAX; ++x)
            if (gg.vertex_action[x][tgt_rep] == end) y = x;
        label[qh] = to_a(y);
    }

    // phi on the fundamental cycles of the quotient: walk the tree paths.
    std::vector<std::vector<long>> path(down.vertex_count(), std::vector<long>(down.half_edge_count(), 0));
    for (size_t i = 1; i < dt.order.size(); ++i) {
        size_t v = dt.order[i];
        size_t h = dt.parent_half[v];
        path[v] = path[down.vertex_of[h]];
        if (positive(down, h))
            path[v][h] += 1;
        else
            path[v][down.opposite[h]] -= 1;
    }
    auto a_combination = [&](const std::vector<long>& c) {
        Elem acc = 0;
        for (size_t h = 0; h < c.size(); ++h)
            if (c[h] != 0) acc = a.mul(acc, a.pow(label[h], c[h]));
        return acc;
    };
    std::vector<Elem> phi_basis(b, 0);
    for (size_t h = 0; h < down.half_edge_count(); ++h) {
        if (coord[h] < 0 || !positive(down, h)) continue;
        std::vector<long> c = path[down.vertex_of[h]];
        c[h] += 1;
        const auto& back = path[down.vertex_of[down.opposite[h]]];
        for (size_t i = 0; i < c.size(); ++i) c[i] -= back[i];
        phi_basis[static_cast<size_t>(coord[h])] = a_combination(c);
    }
    r.surjective = a.generated(phi_basis).size() == a.order();

    // Projected fundamental cycles of Gamma in quotient coordinates.
    auto project = [&](size_t h, std::vector<Int>& w, long sign) {
        size_t qh = q.half_edge_orbit[h];
        if (coord[qh] < 0) return;
        w[static_cast<size_t>(coord[qh])] += positive(down, qh) ? sign : -sign;
    };
    SpanningTree ut = spanning_tree(up);
    std::vector<std::vector<Int>> potential(up.vertex_count(), std::vector<Int>(b, 0));
    for (size_t i = 1; i < ut.order.size(); ++i) {
        size_t v = ut.order[i];
        size_t h = ut.parent_half[v];
        potential[v] = potential[up.vertex_of[h]];
        project(h, potential[v], 1);
    }
    std::vector<std::vector<Int>> lattice;
    r.composite_zero = true;
    for (size_t h = 0; h < up.half_edge_count(); ++h) {
        if (up.is_leg(h) || ut.tree[h] || !positive(up, h)) continue;
        std::vector<Int> w = potential[up.vertex_of[h]];
        project(h, w, 1);
        const auto& back = potential[up.vertex_of[up.opposite[h]]];
        for (size_t i = 0; i < b; ++i) w[i] -= back[i];
        Elem img = 0;
        for (size_t i = 0; i < b; ++i) img = a.mul(img, a.pow(phi_basis[i], mpz_fdiv_ui(w[i].get_mpz_t(), static_cast<unsigned long>(a.element_order(phi_basis[i])))));
        if (img != 0) r.composite_zero = false;
        if (b > 0) lattice.push_back(std::move(w));
    }
    auto inv = smith_invariants(lattice);
    Int index = 1;
    for (const Int& d : inv) index *= d;
    r.exact_middle = inv.size() == b && index == static_cast<unsigned long>(a.order());
    return r;
}

bool LevelReport::pass() const {
    return std::all_of(items.begin(), items.end(), [](const LevelItem& i) { return i.pass; });
}

LevelReport level_structure_check(const GGraph& gg, long n) {
    GraphQuotient q = quotient_and_genus(gg);
    const Group& grp = *gg.group;
    const ModularGraph& down = q.quotient;
    LevelReport r;
    r.n = n;
    r.genus = q.downstairs_genus.get_si();
    r.h1 = down.betti();
    long g = r.genus, h = r.h1;
    ElemSet all = elements_of(grp);
    ElemSet trivial{0};
    if (!grp.is_abelian() || !homocyclic_quotient(grp, all, trivial, n, 2 * g))
        throw DomainError("level_group", "G must be (Z/n)^(2g) for the quotient genus g");

    ExactnessReport ex = decomposition_inertia(gg);
    const ElemSet& d = ex.decomposition;
    const ElemSet& in = ex.inertia;
    r.inertia_order = in.size();
    auto item = [&](std::string name, const ElemSet& s, const ElemSet& sub, long rank) {
        bool ok = grp.subset(sub, s) && homocyclic_quotient(grp, s, sub, n, rank);
        r.items.push_back({std::move(name), ok, "expected (Z/" + std::to_string(n) + ")^" + std::to_string(rank)});
    };
    item("G/D", all, d, h);
    item("G/I", all, in, 2 * g - h);
    item("D", d, trivial, 2 * g - h);
    item("I", in, trivial, h);

    for (size_t i = 0; i < down.vertex_count(); ++i) {
        size_t v = q.vertex_rep[i];
        ElemSet gi = gg.vertex_stabilizer(v);
        std::vector<Elem> gens;
        long valence = 0;
        for (size_t e = 0; e < gg.graph.half_edge_count(); ++e)
            if (gg.graph.vertex_of[e] == v && !gg.graph.is_leg(e)) gens.push_back(gg.decor[e]);
        for (size_t qh = 0; qh < down.half_edge_count(); ++qh)
            if (down.vertex_of[qh] == i && !down.is_leg(qh)) ++valence;
        ElemSet ii = grp.generated(gens);
        long gi_genus = down.genus[i];
        std::string tag = "vertex " + std::to_string(i) + ": ";
        r.items.push_back({tag + "I_i = I cap G_i", ii == grp.intersection(in, gi), ""});
        item(tag + "G_i/I_i", gi, ii, 2 * gi_genus);
        item(tag + "I_i", ii, trivial, valence - 1);
        item(tag + "G_i", gi, trivial, 2 * gi_genus + valence - 1);
    }

    // Kernel of the edge-compatibility map with sigma fixed to 1 at the root.
    std::vector<ElemSet> kernel_of_edge(down.half_edge_count());
    for (size_t qh = 0; qh < down.half_edge_count(); ++qh)
        if (!down.is_leg(qh) && positive(down, qh)) kernel_of_edge[qh] = normal_core(grp, gg.half_edge_stabilizer(q.half_edge_rep[qh]));
    SpanningTree t = spanning_tree(down);
    double combos = 1;
    for (size_t qh = 0; qh < down.half_edge_count(); ++qh)
        if (t.tree[qh] && positive(down, qh)) combos *= static_cast<double>(kernel_of_edge[qh].size());
    if (combos > 1e6) throw DomainError("automorphism_enumeration", "too many tree choices");
    std::vector<Elem> sigma(down.vertex_count(), 0);
    size_t count = 0;
    auto check = [&] {
        for (size_t qh = 0; qh < down.half_edge_count(); ++qh) {
            if (down.is_leg(qh) || !positive(down, qh) || t.tree[qh]) continue;
            Elem rel = grp.mul(grp.inv(sigma[down.vertex_of[down.opposite[qh]]]), sigma[down.vertex_of[qh]]);
            if (!contains(kernel_of_edge[qh], rel)) return false;
        }
        return true;
    };
    std::function<void(size_t)> walk = [&](size_t i) {
        if (i == t.order.size()) {
            if (check()) ++count;
            return;
        }
        size_t v = t.order[i];
        size_t hp = t.parent_half[v];
        size_t parent = down.vertex_of[hp];
        bool forward = positive(down, hp);
        const ElemSet& k = kernel_of_edge[forward ? hp : down.opposite[hp]];
        for (Elem x : k) {
            sigma[v] = forward ? grp.mul(sigma[parent], grp.inv(x)) : grp.mul(sigma[parent], x);
            walk(i + 1);
        }
    };
    walk(1);
    r.automorphism_index = count;
    return r;
}

GGraph level_loop_example(long n, long genus) {
    if (genus < 2) throw DomainError("level_genus", "a one-loop level structure needs genus at least 2");
    auto g = std::make_shared<const Group>(Group::abelian(std::vector<long>(static_cast<size_t>(2 * genus), n)));
    const auto& e = g->generators();
    LoopSpec spec;
    spec.g0 = g->generated(std::vector<Elem>(e.begin(), e.end() - 1));
    spec.holonomy = e[0];
    spec.g0_element = e.back();
    spec.genus = genus - 1;
    spec.opposite_characters = false;
    return build_loop(g, spec);
}

GGraph level_two_edge_example(long n, long genus1, long genus2) {
    if (genus1 < 1 || genus2 < 1) throw DomainError("level_genus", "both components need genus at least 1");
    long genus = genus1 + genus2 + 1;
    auto gp = std::make_shared<const Group>(Group::abelian(std::vector<long>(static_cast<size_t>(2 * genus), n)));
    const Group& g = *gp;
    const auto& e = g.generators();
    Elem node = e[static_cast<size_t>(2 * genus - 1)];
    Elem twist = e[static_cast<size_t>(2 * genus - 2)];
    std::vector<Elem> g1(e.begin(), e.begin() + 2 * genus1), g2(e.begin() + 2 * genus1, e.begin() + 2 * (genus1 + genus2));
    g1.push_back(node);
    g2.push_back(node);
    std::vector<QuotientVertex> vertices{{g.generated(g1), genus1, {}}, {g.generated(g2), genus2, {}}};
    std::vector<QuotientEdge> edges{{0, 1, node, 0}, {0, 1, g.inv(node), twist}};
    return build_from_quotient(gp, vertices, edges);
}

std::string BoundaryComponent::label() const {
    std::ostringstream s;
    if (shape == BoundaryShape::loop)
        s << "delta_irr[g=" << g1 << ",n0=" << n1 << "]";
    else
        s << "delta[" << g1 << "," << g2 << "," << join(part1) << "|" << join(part2) << ",n=" << n1 << "," << n2 << "]";
    if (node.ns())
        s << "(" << node.a << "," << node.b << ")";
    else
        s << "R";
    return s.str();
}

namespace {
auto component_key(const BoundaryComponent& c) {
    return std::tie(c.shape, c.g1, c.g2, c.part1, c.part2, c.n1, c.n2, c.node.e, c.node.nu1, c.node.nu2, c.node.a, c.node.b);
}
}  // namespace

bool BoundaryComponent::operator<(const BoundaryComponent& o) const { return component_key(*this) < component_key(o); }
bool BoundaryComponent::operator==(const BoundaryComponent& o) const { return component_key(*this) == component_key(o); }

BoundaryComponent canonical_component(BoundaryComponent c) {
    if (c.shape != BoundaryShape::segment) return c;
    if (std::tie(c.g2, c.part2, c.n2) < std::tie(c.g1, c.part1, c.n1)) {
        std::swap(c.g1, c.g2);
        std::swap(c.part1, c.part2);
        std::swap(c.n1, c.n2);
        std::swap(c.node.nu1, c.node.nu2);
        std::swap(c.node.a, c.node.b);
    }
    return c;
}

std::vector<BoundaryComponent> boundary_components(long n, long base_genus, const std::vector<CyclicBranch>& branches,
                                                   BoundaryShape shape) {
    if (n < 1) throw DomainError("cyclic_order", "n must be positive");
    if (base_genus < 0) throw DomainError("base_genus", "negative base genus");
    if (branches.size() >= 8 * sizeof(unsigned long) - 1) throw DomainError("branch_count", "too many branch points");
    std::vector<long> p;
    long total = 0;
    for (const CyclicBranch& b : branches) {
        if (b.e < 2 || n % b.e != 0 || gcd_l(b.nu, b.e) != 1)
            throw DomainError("branch_data", "each branch needs e | n, e > 1 and nu a unit mod e");
        p.push_back(mod_l((n / b.e) * b.nu, n));
        total += p.back();
    }
    if (mod_l(total, n) != 0) throw DomainError("datum_sum", "branch holonomies must sum to 0 mod n");
    size_t r = branches.size();
    std::vector<BoundaryComponent> out;
    auto node_from = [&](long x) {
        BoundaryNode node;
        x = mod_l(x, n);
        node.e = n / gcd_l(n, x);
        if (node.e > 1) {
            node.nu1 = x / (n / node.e);
            node.nu2 = node.e - node.nu1;
            node.a = x;
            node.b = n - x;
        }
        return node;
    };

    if (shape != BoundaryShape::loop) {
        for (unsigned long mask = 0; mask < (1ul << r); ++mask) {
            std::vector<size_t> part[2];
            long sum[2] = {0, 0}, gcd_p[2] = {n, n};
            for (size_t i = 0; i < r; ++i) {
                int side = (mask >> i) & 1ul ? 0 : 1;
                part[side].push_back(i);
                sum[side] += p[i];
                gcd_p[side] = gcd_l(gcd_p[side], p[i]);
            }
            long x1 = mod_l(-sum[0], n);
            for (long g1 = 0; g1 <= base_genus; ++g1) {
                long gs[2] = {g1, base_genus - g1};
                bool stable = true;
                for (int s = 0; s < 2; ++s)
                    if (2 * gs[s] - 2 + static_cast<long>(part[s].size()) + 1 <= 0) stable = false;
                if (!stable) continue;
                std::vector<long> orders[2];
                for (int s = 0; s < 2; ++s) {
                    if (gs[s] == 0) {
                        orders[s].push_back(n / gcd_l(n, gcd_p[s]));
                        continue;
                    }
                    for (long ni : divisors(n))
                        if (gcd_p[s] % (n / ni) == 0) orders[s].push_back(ni);
                }
                for (long n1 : orders[0])
                    for (long n2 : orders[1]) {
                        if (lcm_l(n1, n2) != n) continue;
                        BoundaryComponent c;
                        c.shape = BoundaryShape::segment;
                        c.g1 = gs[0];
                        c.g2 = gs[1];
                        c.part1 = part[0];
                        c.part2 = part[1];
                        c.n1 = n1;
                        c.n2 = n2;
                        c.node = node_from(x1);
                        out.push_back(canonical_component(std::move(c)));
                    }
            }
        }
    }

    if (shape != BoundaryShape::segment && base_genus >= 1) {
        long gcd_all = n;
        for (long x : p) gcd_all = gcd_l(gcd_all, x);
        long rest = base_genus - 1;
        if (2 * base_genus - 2 + static_cast<long>(r) > 0) {
            std::vector<size_t> all(r);
            std::iota(all.begin(), all.end(), 0);
            for (long n0 : divisors(n)) {
                if (gcd_all % (n / n0) != 0) continue;
                for (long e : divisors(n0))
                    for (long nu1 = (e == 1 ? 0 : 1); nu1 <= (e == 1 ? 0 : e / 2); ++nu1) {
                        if (e > 1 && gcd_l(nu1, e) != 1) continue;
                        long hol = (n / e) * nu1;
                        if (rest == 0 && gcd_l(gcd_all, hol) != n / n0) continue;
                        BoundaryComponent c;
                        c.shape = BoundaryShape::loop;
                        c.g1 = rest;
                        c.part1 = all;
                        c.n1 = n0;
                        c.node.e = e;
                        if (e > 1) {
                            c.node.nu1 = nu1;
                            c.node.nu2 = e - nu1;
                            c.node.a = hol;
                            c.node.b = (n / e) * (e - nu1);
                        }
                        out.push_back(std::move(c));
                    }
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<RamificationTerm> discriminant_ramification(const std::vector<BoundaryComponent>& components) {
    std::vector<RamificationTerm> out;
    for (const BoundaryComponent& c : components)
        if (c.node.ns()) out.push_back({c.label(), c.node.e - 1});
    return out;
}

}  // namespace hurwitz
