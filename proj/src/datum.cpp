#include "hurwitz/datum.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace hurwitz {

Elem holonomy_element(const Group& g, Elem generator, long k) {
    long e = g.element_order(generator);
    if (e == 1) return 0;
    if (gcd_l(k, e) != 1)
        throw DomainError("primitive_character",
                          "exponent " + std::to_string(k) + " is not a unit mod " + std::to_string(e));
    return g.pow(generator, inverse_mod(mod_l(k, e), e));
}

namespace {

HolonomyPair pair_of(const Group& g, Elem t) {
    HolonomyPair p;
    if (t == 0) {
        p.subgroup = {0};
        return p;
    }
    p.subgroup = g.generated({t});
    p.order = g.element_order(t);
    p.generator = g.cyclic_subgroups()[g.cyclic_subgroup_index(p.subgroup)].generator;
    Elem x = 0;
    for (long nu = 0; nu < p.order; ++nu) {
        if (x == t) {
            p.k = inverse_mod(nu, p.order);
            break;
        }
        x = g.mul(x, p.generator);
    }
    return p;
}

}  // namespace

HolonomyPair holonomy_pair(const Group& g, Elem s) {
    const auto& members = g.classes()[g.class_of(s)].members;
    HolonomyPair best = pair_of(g, members.front());
    for (size_t i = 1; i < members.size(); ++i) {
        HolonomyPair p = pair_of(g, members[i]);
        if (std::tie(p.subgroup, p.k) < std::tie(best.subgroup, best.k)) best = std::move(p);
    }
    return best;
}

ElemSet holonomy_stabilizer(const Group& g, Elem s) { return g.centralizer(g.generated({s})); }

void HurwitzDatum::add(Elem s, long mult) {
    if (mult < 0) throw DomainError("multiplicity", "negative multiplicity");
    if (mult == 0) return;
    classes[canonical_holonomy(*group, s)] += mult;
}

long HurwitzDatum::degree() const {
    long b = 0;
    for (const auto& [s, m] : classes) b += m;
    return b;
}

std::vector<Elem> HurwitzDatum::entries() const {
    std::vector<Elem> out;
    for (const auto& [s, m] : classes) out.insert(out.end(), m, s);
    return out;
}

HurwitzDatum induce(const HurwitzDatum& xi, const Embedding& j, GroupPtr g) {
    HurwitzDatum out(std::move(g));
    for (const auto& [s, m] : xi.classes) out.add(j.to_parent[s], m);
    return out;
}

HurwitzDatum restrict_datum(const HurwitzDatum& xi, const Embedding& j) {
    const Group& g = *xi.group;
    HurwitzDatum out(j.sub);
    ElemSet jset(j.to_parent.begin(), j.to_parent.end());
    std::sort(jset.begin(), jset.end());
    for (const auto& [s, m] : xi.classes) {
        ElemSet h = g.generated({s});
        long e = g.element_order(s);
        std::vector<char> seen(g.order(), 0);
        for (Elem x = 0; x < g.order(); ++x) {
            if (seen[x]) continue;
            for (Elem a : jset)
                for (Elem b : h) seen[g.mul(g.mul(a, x), b)] = 1;
            Elem t = g.conj(x, s);
            long c = static_cast<long>(g.intersection(jset, g.generated({t})).size());
            Elem u = g.pow(t, e / c);
            out.add(j.sub->index_of(g.element(u)), m);
        }
    }
    return out;
}

HurwitzDatum corestrict(const HurwitzDatum& xi, const Projection& p, bool drop_trivial) {
    HurwitzDatum out(p.quotient);
    for (const auto& [s, m] : xi.classes) {
        Elem t = p.image[s];
        if (t == 0 && drop_trivial) continue;
        out.add(t, m);
    }
    return out;
}

HurwitzDatum apply_automorphism(const HurwitzDatum& xi, const Automorphism& theta) {
    HurwitzDatum out(xi.group);
    for (const auto& [s, m] : xi.classes) out.add(theta.image[s], m);
    return out;
}

GenusData genus_from_datum(long base_genus, const HurwitzDatum& xi) {
    if (base_genus < 0) throw DomainError("base_genus", "base genus must be nonnegative");
    const long n = static_cast<long>(xi.group->order());
    Int branch = 0;
    for (const auto& [s, m] : xi.classes) {
        long e = xi.group->element_order(s);
        branch += Int(m) * (n - n / e);
    }
    Int euler = Int(n) * (2 * base_genus - 2) + branch;
    if (euler % 2 != 0) throw DomainError("integral_genus", "2g - 2 = " + euler.get_str() + " is odd");
    Int genus = euler / 2 + 1;
    if (genus < 0) throw DomainError("nonnegative_genus", "genus " + genus.get_str() + " is negative");
    return {genus, branch, 3 * base_genus - 3 + xi.degree()};
}

std::vector<std::vector<Elem>> enumerate_data(const Group& g, long b, const EnumerateOptions& opts) {
    if (!g.is_abelian()) throw DomainError("abelian_group", "enumeration requires an abelian group");
    if (b < 0) throw DomainError("degree", "negative degree");
    const Elem n = static_cast<Elem>(g.order());
    std::vector<std::vector<Elem>> found;
    std::vector<Elem> cur;
    auto accept = [&](Elem last) {
        cur.push_back(last);
        if (g.generated(cur).size() == n) found.push_back(cur);
        cur.pop_back();
    };
    std::function<void(Elem, Elem)> rec = [&](Elem lo, Elem prod) {
        if (static_cast<long>(cur.size()) + 1 == b) {
            Elem last = g.inv(prod);
            if (last != 0 && (opts.labeled || last >= lo)) accept(last);
            return;
        }
        for (Elem x = opts.labeled ? 1 : lo; x < n; ++x) {
            cur.push_back(x);
            rec(x, g.mul(prod, x));
            cur.pop_back();
        }
    };
    if (b == 0) {
        if (n == 1) found.push_back({});
    } else {
        rec(1, 0);
    }

    if (opts.modulo_out) {
        std::vector<Automorphism> auts = automorphisms(g);
        std::vector<std::vector<Elem>> reps;
        for (const auto& t : found) {
            bool least = true;
            for (const auto& a : auts) {
                std::vector<Elem> u(t.size());
                for (size_t i = 0; i < t.size(); ++i) u[i] = a.image[t[i]];
                if (!opts.labeled) std::sort(u.begin(), u.end());
                if (u < t) {
                    least = false;
                    break;
                }
            }
            if (least) reps.push_back(t);
        }
        found = std::move(reps);
    }
    std::sort(found.begin(), found.end());
    return found;
}

MonodromyType make_monodromy_type(GroupPtr g, ElemSet h, HurwitzDatum xi) {
    if (!g->is_subgroup(h)) throw DomainError("subgroup", "H is not a subgroup");
    ElemSet core = h;
    for (Elem x = 0; x < g->order(); ++x) core = g->intersection(core, g->conjugate_set(x, h));
    if (core.size() != 1) throw DomainError("core_free", "the core of H in G is nontrivial");
    return {std::move(g), std::move(h), std::move(xi)};
}

MonodromyAutomorphisms monodromy_automorphisms(const MonodromyType& m) {
    const Group& g = *m.group;
    MonodromyAutomorphisms out;
    for (auto& a : automorphisms(g)) {
        ElemSet img;
        for (Elem x : m.subgroup) img.push_back(a.image[x]);
        std::sort(img.begin(), img.end());
        if (img != m.subgroup) continue;
        if (!(apply_automorphism(m.datum, a) == m.datum)) continue;
        out.aut.push_back(std::move(a));
    }
    if (out.aut.size() % m.subgroup.size() != 0)
        throw DomainError("inner_embedding", "|H| does not divide |Aut(m)|");
    out.delta_order = out.aut.size() / m.subgroup.size();
    return out;
}

std::vector<long> local_indices(const Group& g, const ElemSet& h, Elem s) {
    ElemSet i = g.generated({s});
    std::vector<char> seen(g.order(), 0);
    std::vector<long> out;
    for (Elem x = 0; x < g.order(); ++x) {
        if (seen[x]) continue;
        for (Elem a : h)
            for (Elem b : i) seen[g.mul(g.mul(a, x), b)] = 1;
        size_t stab = g.intersection(g.conjugate_set(g.inv(x), h), i).size();
        out.push_back(static_cast<long>(i.size() / stab));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Int closure_count(const std::vector<std::vector<long>>& d) {
    Int n = 1;
    for (const auto& node : d) {
        long l = 1;
        Int prod = 1;
        for (long x : node) {
            l = lcm_l(l, x);
            prod *= x;
        }
        n *= prod / l;
    }
    return n;
}

Int closure_count_direct(const std::vector<std::vector<long>>& d) {
    Int total = 1;
    for (const auto& node : d) {
        long di = 1;
        size_t states = 1;
        for (long x : node) {
            di = lcm_l(di, x);
            states *= static_cast<size_t>(x);
        }
        // Mixed-radix encoding of exponent tuples; the generator eps adds d_i/d_ij in slot j.
        std::vector<char> seen(states, 0);
        long orbits = 0;
        for (size_t start = 0; start < states; ++start) {
            if (seen[start]) continue;
            ++orbits;
            size_t cur = start;
            while (!seen[cur]) {
                seen[cur] = 1;
                size_t rest = cur, next = 0, radix = 1;
                for (long x : node) {
                    long digit = static_cast<long>(rest % x);
                    rest /= x;
                    next += radix * static_cast<size_t>(mod_l(digit + di / x, x));
                    radix *= static_cast<size_t>(x);
                }
                cur = next;
            }
        }
        total *= orbits;
    }
    return total;
}

InducedRamification induced_ramification(long base_genus, const HurwitzDatum& xi, const ElemSet& h) {
    const Group& g = *xi.group;
    if (!g.is_subgroup(h)) throw DomainError("subgroup", "H is not a subgroup");
    std::vector<int> coset = g.left_coset_index(h);
    const long deg = static_cast<long>(g.order() / h.size());
    std::vector<Elem> rep(deg);
    for (Elem x = static_cast<Elem>(g.order()); x-- > 0;) rep[coset[x]] = x;
    InducedRamification out{deg, {}, 0};
    Int euler = Int(deg) * (2 * base_genus - 2);
    for (Elem s : xi.entries()) {
        std::vector<long> lengths;
        std::vector<char> seen(deg, 0);
        for (long c = 0; c < deg; ++c) {
            if (seen[c]) continue;
            long len = 0;
            for (long x = c; !seen[x]; x = coset[g.mul(s, rep[x])]) {
                seen[x] = 1;
                ++len;
            }
            lengths.push_back(len);
            euler += len - 1;
        }
        std::sort(lengths.begin(), lengths.end());
        out.cycle_types.push_back(std::move(lengths));
    }
    if (euler % 2 != 0) throw DomainError("integral_genus", "2g - 2 = " + euler.get_str() + " is odd");
    out.genus = euler / 2 + 1;
    return out;
}

}  // namespace hurwitz
