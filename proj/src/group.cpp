#include "hurwitz/group.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <regex>

#include "hurwitz/arith.hpp"

namespace hurwitz {

void Group::build(std::vector<Perm> generators, const Bounds& bounds, size_t degree) {
    bounds_ = bounds;
    size_t n = degree;
    for (const auto& p : generators) n = std::max(n, p.degree());
    if (n == 0) n = 1;
    if (n > bounds.max_points)
        throw DomainError("max_points", "degree " + std::to_string(n) + " exceeds bound " +
                                            std::to_string(bounds.max_points));
    degree_ = n;
    for (auto& p : generators) p = p.extended(n);

    std::unordered_map<Perm, Elem, PermHash> seen;
    std::vector<Perm> found{Perm::identity(n)};
    seen.emplace(found[0], 0);
    for (size_t head = 0; head < found.size(); ++head) {
        for (const auto& g : generators) {
            Perm q = found[head] * g;
            if (seen.count(q)) continue;
            if (found.size() >= bounds.max_order)
                throw DomainError("max_order", "group order exceeds bound " + std::to_string(bounds.max_order));
            seen.emplace(q, static_cast<Elem>(found.size()));
            found.push_back(std::move(q));
        }
    }
    std::sort(found.begin(), found.end());
    elems_ = std::move(found);
    index_.reserve(elems_.size());
    for (size_t i = 0; i < elems_.size(); ++i) index_.emplace(elems_[i], static_cast<Elem>(i));
    for (const auto& g : generators) gens_.push_back(index_.at(g));

    const size_t ord = elems_.size();
    inv_.resize(ord);
    order_.resize(ord);
    for (size_t i = 0; i < ord; ++i) {
        inv_[i] = index_.at(elems_[i].inverse());
        order_[i] = elems_[i].order();
        exponent_ = lcm_l(exponent_, order_[i]);
    }
    if (ord <= bounds.table_limit) {
        table_.resize(ord * ord);
        for (size_t a = 0; a < ord; ++a)
            for (size_t b = 0; b < ord; ++b) table_[a * ord + b] = index_.at(elems_[a] * elems_[b]);
    }

    class_of_.assign(ord, -1);
    for (size_t x = 0; x < ord; ++x) {
        if (class_of_[x] >= 0) continue;
        int c = static_cast<int>(classes_.size());
        ConjugacyClass cls;
        std::deque<Elem> queue{static_cast<Elem>(x)};
        class_of_[x] = c;
        while (!queue.empty()) {
            Elem y = queue.front();
            queue.pop_front();
            cls.members.push_back(y);
            for (Elem g : gens_) {
                Elem z = conj(g, y);
                if (class_of_[z] < 0) {
                    class_of_[z] = c;
                    queue.push_back(z);
                }
            }
        }
        std::sort(cls.members.begin(), cls.members.end());
        cls.representative = cls.members.front();
        classes_.push_back(std::move(cls));
    }

    std::map<ElemSet, Elem> cyc;
    for (size_t x = 0; x < ord; ++x) {
        ElemSet m;
        Elem y = 0;
        do {
            m.push_back(y);
            y = mul(y, static_cast<Elem>(x));
        } while (y != 0);
        std::sort(m.begin(), m.end());
        cyc.emplace(std::move(m), static_cast<Elem>(x));  // first x seen is the least generator
    }
    for (auto& [m, gen] : cyc) cyclic_.push_back(CyclicSubgroup{gen, static_cast<long>(m.size()), m});
    std::sort(cyclic_.begin(), cyclic_.end(), [](const CyclicSubgroup& a, const CyclicSubgroup& b) {
        return a.order != b.order ? a.order < b.order : a.members < b.members;
    });
    for (size_t i = 0; i < cyclic_.size(); ++i) cyclic_by_least_generator_[cyclic_[i].generator] = static_cast<int>(i);
}

Group Group::generate(const std::vector<Perm>& generators, const Bounds& bounds, size_t degree) {
    Group g;
    g.build(generators, bounds, degree);
    return g;
}

Group Group::cyclic(long n, const Bounds& bounds) {
    if (n < 1) throw DomainError("group_family", "cyclic order must be positive");
    std::vector<uint16_t> img(n);
    for (long i = 0; i < n; ++i) img[i] = static_cast<uint16_t>((i + 1) % n);
    Group g = generate({Perm(img)}, bounds, n);
    g.name_ = "C" + std::to_string(n);
    return g;
}

Group Group::dihedral(long n, const Bounds& bounds) {
    if (n < 1) throw DomainError("group_family", "dihedral parameter must be positive");
    Group g;
    if (n == 1) {
        g = cyclic(2, bounds);
    } else if (n == 2) {
        g = abelian({2, 2}, bounds);
    } else {
        std::vector<uint16_t> rot(n), refl(n);
        for (long i = 0; i < n; ++i) {
            rot[i] = static_cast<uint16_t>((i + 1) % n);
            refl[i] = static_cast<uint16_t>(mod_l(-i, n));
        }
        g = generate({Perm(rot), Perm(refl)}, bounds, n);
    }
    g.name_ = "D" + std::to_string(n);
    return g;
}

Group Group::symmetric(long n, const Bounds& bounds) {
    if (n < 1) throw DomainError("group_family", "symmetric degree must be positive");
    std::vector<Perm> gens;
    if (n >= 2) {
        gens.push_back(parse_cycles("(1 2)", n));
        std::vector<uint16_t> img(n);
        for (long i = 0; i < n; ++i) img[i] = static_cast<uint16_t>((i + 1) % n);
        gens.push_back(Perm(img));
    }
    Group g = generate(gens, bounds, n);
    g.name_ = "S" + std::to_string(n);
    return g;
}

Group Group::alternating(long n, const Bounds& bounds) {
    if (n < 1) throw DomainError("group_family", "alternating degree must be positive");
    std::vector<Perm> gens;
    for (long k = 3; k <= n; ++k)
        gens.push_back(parse_cycles("(1 2 " + std::to_string(k) + ")", n));
    Group g = generate(gens, bounds, n);
    g.name_ = "A" + std::to_string(n);
    return g;
}

Group Group::abelian(const std::vector<long>& invariants, const Bounds& bounds) {
    std::vector<Perm> gens;
    long total = 0;
    for (long m : invariants)
        if (m < 1) throw DomainError("group_family", "abelian invariants must be positive");
    for (long m : invariants) total += m;
    long offset = 0;
    for (long m : invariants) {
        std::vector<uint16_t> img(std::max<long>(total, 1));
        for (long i = 0; i < static_cast<long>(img.size()); ++i) img[i] = static_cast<uint16_t>(i);
        for (long i = 0; i < m; ++i) img[offset + i] = static_cast<uint16_t>(offset + (i + 1) % m);
        gens.push_back(Perm(img));
        offset += m;
    }
    Group g = generate(gens, bounds, std::max<long>(total, 1));
    std::string name = "Ab[";
    for (size_t i = 0; i < invariants.size(); ++i) name += (i ? "," : "") + std::to_string(invariants[i]);
    g.name_ = name + "]";
    return g;
}

Group Group::named(const std::string& name, const Bounds& bounds) {
    static const std::regex family(R"(^\s*([SACD])\s*(\d+)\s*$)");
    static const std::regex ab(R"(^\s*Ab\s*\[\s*([\d,\s]*)\]\s*$)");
    std::smatch m;
    if (std::regex_match(name, m, family)) {
        long n = std::stol(m[2]);
        switch (m[1].str()[0]) {
            case 'S': return symmetric(n, bounds);
            case 'A': return alternating(n, bounds);
            case 'C': return cyclic(n, bounds);
            default: return dihedral(n, bounds);
        }
    }
    if (std::regex_match(name, m, ab)) {
        std::vector<long> inv;
        std::string body = m[1];
        std::string cur;
        for (char c : body + ",") {
            if (c == ',') {
                if (!cur.empty()) inv.push_back(std::stol(cur));
                cur.clear();
            } else if (!std::isspace(static_cast<unsigned char>(c))) {
                cur += c;
            }
        }
        return abelian(inv, bounds);
    }
    throw DomainError("group_name", "unknown group family '" + name + "'");
}

bool Group::contains(const Perm& p) const { return index_.count(p.extended(degree_)) > 0; }

Elem Group::index_of(const Perm& p) const {
    if (p.degree() > degree_) throw DomainError("element_of_group", p.cycles() + " moves points outside the group");
    auto it = index_.find(p.extended(degree_));
    if (it == index_.end()) throw DomainError("element_of_group", p.cycles() + " is not in the group");
    return it->second;
}

Elem Group::parse_element(const std::string& cycles) const {
    Perm p = parse_cycles(cycles);
    if (p.degree() > degree_) throw DomainError("element_of_group", cycles + " moves points outside the group");
    return index_of(p);
}

Elem Group::mul(Elem a, Elem b) const {
    if (!table_.empty()) return table_[static_cast<size_t>(a) * elems_.size() + b];
    return index_.at(elems_[a] * elems_[b]);
}

Elem Group::pow(Elem a, long k) const {
    long o = order_[a];
    k = mod_l(k, o);
    Elem r = 0, base = a;
    while (k > 0) {
        if (k & 1) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}

bool Group::is_abelian() const {
    for (Elem a : gens_)
        for (Elem b : gens_)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

ElemSet Group::generated(const std::vector<Elem>& gens) const {
    std::vector<char> in(order(), 0);
    ElemSet out{0};
    in[0] = 1;
    for (size_t head = 0; head < out.size(); ++head) {
        for (Elem g : gens) {
            Elem y = mul(out[head], g);
            if (!in[y]) {
                in[y] = 1;
                out.push_back(y);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool Group::is_subgroup(const ElemSet& h) const {
    if (h.empty() || h.front() != 0) return false;
    if (!std::is_sorted(h.begin(), h.end())) return false;
    for (Elem a : h)
        for (Elem b : h)
            if (!std::binary_search(h.begin(), h.end(), mul(a, b))) return false;
    return true;
}

bool Group::is_normal(const ElemSet& h) const {
    for (Elem g : gens_)
        for (Elem x : h)
            if (!std::binary_search(h.begin(), h.end(), conj(g, x))) return false;
    return true;
}

ElemSet Group::normal_closure(const std::vector<Elem>& gens) const {
    std::vector<Elem> all;
    for (Elem x : gens)
        for (Elem x2 : classes_[class_of_[x]].members) all.push_back(x2);
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return generated(all);
}

ElemSet Group::normalizer(const ElemSet& h) const {
    ElemSet out;
    for (Elem g = 0; g < order(); ++g)
        if (conjugate_set(g, h) == h) out.push_back(g);
    return out;
}

ElemSet Group::centralizer(const ElemSet& s) const {
    ElemSet out;
    for (Elem g = 0; g < order(); ++g) {
        bool ok = true;
        for (Elem x : s)
            if (mul(g, x) != mul(x, g)) {
                ok = false;
                break;
            }
        if (ok) out.push_back(g);
    }
    return out;
}

ElemSet Group::conjugate_set(Elem g, const ElemSet& s) const {
    ElemSet out;
    out.reserve(s.size());
    for (Elem x : s) out.push_back(conj(g, x));
    std::sort(out.begin(), out.end());
    return out;
}

ElemSet Group::intersection(const ElemSet& a, const ElemSet& b) const {
    ElemSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool Group::subset(const ElemSet& a, const ElemSet& b) const {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

ElemSet Group::derived_subgroup() const {
    std::vector<Elem> comms;
    for (Elem a : gens_)
        for (Elem b : gens_) comms.push_back(commutator(a, b));
    return normal_closure(comms);
}

std::vector<ElemSet> Group::left_cosets(const ElemSet& h) const {
    std::vector<int> idx = left_coset_index(h);
    int count = 0;
    for (int i : idx) count = std::max(count, i + 1);
    std::vector<ElemSet> out(count);
    for (Elem g = 0; g < order(); ++g) out[idx[g]].push_back(g);
    return out;
}

std::vector<int> Group::left_coset_index(const ElemSet& h) const {
    std::vector<int> idx(order(), -1);
    int next = 0;
    for (Elem g = 0; g < order(); ++g) {
        if (idx[g] >= 0) continue;
        for (Elem x : h) idx[mul(g, x)] = next;
        ++next;
    }
    return idx;
}

std::vector<Elem> Group::small_generating_set() const {
    std::vector<Elem> gens;
    ElemSet cur{0};
    while (cur.size() < order()) {
        Elem best = 0;
        size_t best_size = 0;
        for (Elem g = 0; g < order(); ++g) {
            if (std::binary_search(cur.begin(), cur.end(), g)) continue;
            std::vector<Elem> trial = gens;
            trial.push_back(g);
            size_t s = generated(trial).size();
            if (s > best_size) {
                best_size = s;
                best = g;
            }
            if (s == order()) break;
        }
        gens.push_back(best);
        cur = generated(gens);
    }
    return gens;
}

int Group::cyclic_subgroup_index(const ElemSet& members) const {
    long o = static_cast<long>(members.size());
    for (Elem x : members) {
        if (order_[x] == o) {
            auto it = cyclic_by_least_generator_.find(x);
            if (it != cyclic_by_least_generator_.end() && cyclic_[it->second].members == members) return it->second;
            return -1;
        }
    }
    return -1;
}

int lattice_mobius(const Group& g, const CyclicSubgroup& h, const CyclicSubgroup& k) {
    if (!g.subset(h.members, k.members)) return 0;
    return mobius(k.order / h.order);
}

std::vector<Automorphism> automorphisms(const Group& g) {
    if (g.order() > g.bounds().max_aut_order)
        throw DomainError("max_aut_order", "automorphism enumeration limited to order " +
                                               std::to_string(g.bounds().max_aut_order));
    const size_t n = g.order();
    std::vector<Elem> gens = g.small_generating_set();
    // Word spanning tree: each element reached as parent * generator.
    std::vector<Elem> parent(n, 0);
    std::vector<int> via(n, -1);
    std::vector<Elem> bfs{0};
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    for (size_t head = 0; head < bfs.size(); ++head)
        for (size_t k = 0; k < gens.size(); ++k) {
            Elem y = g.mul(bfs[head], gens[k]);
            if (!seen[y]) {
                seen[y] = 1;
                parent[y] = bfs[head];
                via[y] = static_cast<int>(k);
                bfs.push_back(y);
            }
        }

    std::vector<std::vector<Elem>> candidates(gens.size());
    for (size_t k = 0; k < gens.size(); ++k)
        for (Elem x = 0; x < n; ++x)
            if (g.element_order(x) == g.element_order(gens[k]) &&
                g.classes()[g.class_of(x)].members.size() == g.classes()[g.class_of(gens[k])].members.size())
                candidates[k].push_back(x);

    std::vector<std::vector<Elem>> inner_maps;
    for (Elem c = 0; c < n; ++c) {
        std::vector<Elem> m(n);
        for (Elem x = 0; x < n; ++x) m[x] = g.conj(c, x);
        inner_maps.push_back(std::move(m));
    }
    std::sort(inner_maps.begin(), inner_maps.end());
    inner_maps.erase(std::unique(inner_maps.begin(), inner_maps.end()), inner_maps.end());

    std::vector<Automorphism> out;
    std::vector<Elem> choice(gens.size());
    std::vector<Elem> image(n);
    std::vector<char> hit(n);
    auto try_extend = [&]() -> bool {
        image[0] = 0;
        for (size_t i = 1; i < bfs.size(); ++i) {
            Elem y = bfs[i];
            image[y] = g.mul(image[parent[y]], choice[via[y]]);
        }
        std::fill(hit.begin(), hit.end(), 0);
        for (Elem x = 0; x < n; ++x) {
            if (hit[image[x]]) return false;
            hit[image[x]] = 1;
        }
        for (Elem x = 0; x < n; ++x)
            for (size_t k = 0; k < gens.size(); ++k)
                if (image[g.mul(x, gens[k])] != g.mul(image[x], choice[k])) return false;
        return true;
    };
    std::function<void(size_t)> rec = [&](size_t k) {
        if (k == gens.size()) {
            if (try_extend()) {
                Automorphism a{image, std::binary_search(inner_maps.begin(), inner_maps.end(), image)};
                out.push_back(std::move(a));
            }
            return;
        }
        for (Elem x : candidates[k]) {
            choice[k] = x;
            rec(k + 1);
        }
    };
    rec(0);
    std::sort(out.begin(), out.end(), [](const Automorphism& a, const Automorphism& b) { return a.image < b.image; });
    return out;
}

Embedding subgroup_group(const Group& g, const ElemSet& h) {
    if (!g.is_subgroup(h)) throw DomainError("subgroup", "element set is not a subgroup");
    std::vector<Elem> gens;
    ElemSet cur{0};
    for (Elem x : h) {
        if (std::binary_search(cur.begin(), cur.end(), x)) continue;
        gens.push_back(x);
        cur = g.generated(gens);
    }
    std::vector<Perm> perms;
    for (Elem x : gens) perms.push_back(g.element(x));
    Embedding e;
    e.sub = std::make_shared<const Group>(Group::generate(perms, g.bounds(), g.degree()));
    for (const Perm& p : e.sub->elements()) e.to_parent.push_back(g.index_of(p));
    return e;
}

Projection quotient_group(const Group& g, const ElemSet& k) {
    if (!g.is_subgroup(k) || !g.is_normal(k)) throw DomainError("normal_subgroup", "quotient needs a normal subgroup");
    std::vector<int> coset = g.left_coset_index(k);
    size_t index = g.order() / k.size();
    std::vector<Elem> rep(index);
    for (Elem x = static_cast<Elem>(g.order()); x-- > 0;) rep[coset[x]] = x;
    auto action = [&](Elem x) {
        Perm p;
        p.img.resize(index);
        for (size_t c = 0; c < index; ++c) p.img[c] = static_cast<uint16_t>(coset[g.mul(x, rep[c])]);
        return p;
    };
    Bounds b = g.bounds();
    b.max_points = std::max(b.max_points, index);
    std::vector<Perm> perms;
    for (Elem x : g.generators()) perms.push_back(action(x));
    Projection pr;
    pr.quotient = std::make_shared<const Group>(Group::generate(perms, b, index));
    pr.image.resize(g.order());
    for (Elem x = 0; x < g.order(); ++x) pr.image[x] = pr.quotient->index_of(action(x));
    return pr;
}

}  // namespace hurwitz
