#include "hurwitz/nielsen.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace hurwitz {

namespace {

struct TupleHash {
    size_t operator()(const Tuple& t) const noexcept {
        size_t h = 1469598103934665603ull;
        for (Elem x : t) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return h;
    }
};

Elem relation_product(const Group& g, long base_genus, const Tuple& t) {
    Elem p = 0;
    for (long j = 0; j < base_genus; ++j) p = g.mul(p, g.commutator(t[j], t[base_genus + j]));
    for (size_t i = 2 * base_genus; i < t.size(); ++i) p = g.mul(p, t[i]);
    return p;
}

std::vector<int> class_multiset(const Group& g, long base_genus, const Tuple& t) {
    std::vector<int> c;
    for (size_t i = 2 * base_genus; i < t.size(); ++i) c.push_back(g.class_of(t[i]));
    std::sort(c.begin(), c.end());
    return c;
}

// Handle twists (a, b) -> (a, ba), (ab, b) and their inverses; they fix [a, b].
Tuple handle_move(const Group& g, long base_genus, const Tuple& t, long j, int kind) {
    Tuple u = t;
    Elem& a = u[j];
    Elem& b = u[base_genus + j];
    switch (kind) {
        case 0: b = g.mul(b, a); break;
        case 1: b = g.mul(b, g.inv(a)); break;
        case 2: a = g.mul(a, b); break;
        default: a = g.mul(a, g.inv(b)); break;
    }
    return u;
}

template <class F>
void run_parallel(unsigned jobs, F&& body) {
    if (jobs <= 1) {
        body(0u);
        return;
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(jobs);
    for (unsigned t = 0; t < jobs; ++t)
        threads.emplace_back([&, t] {
            try {
                body(t);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    for (auto& th : threads) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

Tuple canonical_tuple(const Group& g, const Tuple& t, bool reversed_order) {
    const Elem top = static_cast<Elem>(g.order() - 1);
    auto key = [&](Elem x) { return reversed_order ? top - x : x; };
    Tuple best = t;
    Tuple cur(t.size());
    for (Elem x = 1; x < g.order(); ++x) {
        bool smaller = false, decided = false;
        for (size_t i = 0; i < t.size(); ++i) {
            cur[i] = g.conj(x, t[i]);
            if (!decided && cur[i] != best[i]) {
                decided = true;
                smaller = key(cur[i]) < key(best[i]);
                if (!smaller) break;
            }
        }
        if (smaller) best = cur;
    }
    return best;
}

std::vector<Tuple> enumerate_nielsen(long base_genus, const HurwitzDatum& xi, const NielsenOptions& opts) {
    const Group& g = *xi.group;
    if (base_genus < 0) throw DomainError("base_genus", "base genus must be nonnegative");
    const std::vector<Elem> entries = xi.entries();
    const size_t b = entries.size();
    const size_t len = 2 * base_genus + b;
    if (len == 0) return g.order() == 1 ? std::vector<Tuple>{Tuple{}} : std::vector<Tuple>{};

    // Visit order: a_1, b_1, a_2, b_2, ..., sigma_1, ..., sigma_b; the last sigma is forced.
    std::vector<size_t> slot;
    for (long j = 0; j < base_genus; ++j) {
        slot.push_back(j);
        slot.push_back(base_genus + j);
    }
    for (size_t i = 0; i < b; ++i) slot.push_back(2 * base_genus + i);
    std::vector<const ElemSet*> choices(len, nullptr);
    ElemSet all(g.order());
    for (Elem x = 0; x < g.order(); ++x) all[x] = x;
    for (size_t i = 0; i < len; ++i)
        choices[i] = i < 2 * static_cast<size_t>(base_genus) ? &all : &g.classes()[g.class_of(entries[i - 2 * base_genus])].members;
    // A canonical tuple starts with the key-least member of its class.
    auto first_ok = [&](Elem x) {
        const auto& m = g.classes()[g.class_of(x)].members;
        return x == (opts.reversed_order ? m.back() : m.front());
    };
    const bool forced_last = b > 0;
    const size_t free = forced_last ? len - 1 : len;

    const unsigned jobs = std::max(1u, opts.jobs);
    std::vector<std::vector<Tuple>> found(jobs);
    std::atomic<size_t> nodes{0};
    run_parallel(jobs, [&](unsigned tid) {
        Tuple t(len, 0);
        size_t branch = 0;
        std::function<void(size_t, Elem)> rec = [&](size_t depth, Elem prod) {
            if (++nodes > opts.max_nodes)
                throw DomainError("search_budget", "enumeration exceeded " + std::to_string(opts.max_nodes) + " nodes");
            if (depth == free) {
                if (forced_last) {
                    Elem last = g.inv(prod);
                    size_t pos = slot[len - 1];
                    if (g.class_of(last) != g.class_of(entries[b - 1])) return;
                    if (len == 1 && !first_ok(last)) return;
                    t[pos] = last;
                } else if (prod != 0) {
                    return;
                }
                if (g.generated(t).size() != g.order()) return;
                if (canonical_tuple(g, t, opts.reversed_order) == t) found[tid].push_back(t);
                return;
            }
            size_t pos = slot[depth];
            for (Elem x : *choices[pos]) {
                if (depth == 0 && !first_ok(x)) continue;
                if (depth == 1 || (depth == 0 && free == 1)) {
                    if (branch++ % jobs != tid) continue;
                }
                t[pos] = x;
                Elem next = prod;
                if (pos >= 2 * static_cast<size_t>(base_genus))
                    next = g.mul(prod, x);
                else if (pos >= static_cast<size_t>(base_genus))
                    next = g.mul(prod, g.commutator(t[pos - base_genus], x));
                rec(depth + 1, next);
            }
        };
        if (free == 0) {
            if (tid == 0) rec(0, 0);
        } else {
            rec(0, 0);
        }
    });
    std::vector<Tuple> out;
    for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
    std::sort(out.begin(), out.end());
    return out;
}

Tuple braid_move(const Group& g, long base_genus, const Tuple& t, size_t i, bool inverse) {
    size_t p = 2 * base_genus + i;
    if (p + 1 >= t.size()) throw DomainError("braid_index", "braid generator index out of range");
    Tuple u = t;
    if (!inverse) {
        u[p] = g.conj(t[p], t[p + 1]);
        u[p + 1] = t[p];
    } else {
        u[p] = t[p + 1];
        u[p + 1] = g.conj(g.inv(t[p + 1]), t[p]);
    }
    return u;
}

NielsenResult nielsen_orbits(long base_genus, const HurwitzDatum& xi, const NielsenOptions& opts) {
    const Group& g = *xi.group;
    if (base_genus > 0 && !opts.extended_mcg)
        throw DomainError("mcg_generators",
                          "orbits for base genus >= 1 are unsupported beyond conjugation + braid-on-sigma; "
                          "set the extended generator flag (experimental)");
    NielsenResult res;
    res.experimental = base_genus > 0;
    res.tuples = enumerate_nielsen(base_genus, xi, opts);
    res.hurwitz_number = res.tuples.size();
    res.weighted_count = 0;
    for (const auto& t : res.tuples) {
        long fix = 0;
        for (Elem x = 0; x < g.order(); ++x) {
            bool same = true;
            for (Elem y : t)
                if (g.conj(x, y) != y) {
                    same = false;
                    break;
                }
            fix += same;
        }
        res.weighted_count += make_rat(1, fix);
    }

    std::unordered_map<Tuple, size_t, TupleHash> index;
    for (size_t i = 0; i < res.tuples.size(); ++i) index.emplace(res.tuples[i], i);
    res.orbit_of.assign(res.tuples.size(), SIZE_MAX);

    const size_t b = xi.degree();
    const unsigned jobs = std::max(1u, opts.jobs);
    auto neighbours = [&](const Tuple& t) {
        std::vector<Tuple> out;
        for (size_t i = 0; i + 1 < b; ++i)
            for (bool inv : {false, true}) out.push_back(braid_move(g, base_genus, t, i, inv));
        if (opts.extended_mcg)
            for (long j = 0; j < base_genus; ++j)
                for (int kind = 0; kind < 4; ++kind) out.push_back(handle_move(g, base_genus, t, j, kind));
        for (auto& u : out) {
            if (opts.verify_moves) {
                if (relation_product(g, base_genus, u) != 0 || g.generated(u) != g.generated(t) ||
                    class_multiset(g, base_genus, u) != class_multiset(g, base_genus, t))
                    throw DomainError("move_invariants", "a move broke the relation, generation or classes");
            }
            u = canonical_tuple(g, u, opts.reversed_order);
        }
        return out;
    };

    std::unordered_set<Tuple, TupleHash> visited;
    for (size_t start = 0; start < res.tuples.size(); ++start) {
        if (res.orbit_of[start] != SIZE_MAX) continue;
        const size_t orbit = res.orbit_sizes.size();
        res.orbit_sizes.push_back(0);
        std::vector<Tuple> frontier{res.tuples[start]};
        visited.insert(res.tuples[start]);
        while (!frontier.empty()) {
            for (const auto& t : frontier) {
                auto it = index.find(t);
                if (it != index.end()) {
                    res.orbit_of[it->second] = orbit;
                    ++res.orbit_sizes[orbit];
                }
            }
            std::vector<std::vector<Tuple>> produced(frontier.size());
            run_parallel(std::min<size_t>(jobs, frontier.size()), [&](unsigned tid) {
                for (size_t k = tid; k < frontier.size(); k += std::min<size_t>(jobs, frontier.size()))
                    produced[k] = neighbours(frontier[k]);
            });
            std::vector<Tuple> next;
            for (auto& list : produced)
                for (auto& u : list)
                    if (visited.insert(u).second) {
                        if (visited.size() > opts.max_states)
                            throw DomainError("state_budget",
                                              "orbit closure exceeded " + std::to_string(opts.max_states) + " states");
                        next.push_back(std::move(u));
                    }
            frontier = std::move(next);
        }
    }
    res.nielsen_number = res.orbit_sizes.size();
    return res;
}

}  // namespace hurwitz
