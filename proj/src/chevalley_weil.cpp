#include "hurwitz/chevalley_weil.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hurwitz {

namespace {

Int require_integer(const Rat& x, const char* what) {
    if (x.get_den() != 1) throw DomainError("integral_multiplicity", std::string(what) + " is " + rat_to_string(x));
    return x.get_num();
}

}  // namespace

std::vector<Int> cw_euler_characteristics(long base_genus, const HurwitzDatum& xi, long m, const CharacterTable& t) {
    if (m < 1) throw DomainError("twist", "twist degree must be at least 1");
    const Group& g = *xi.group;
    const long n = static_cast<long>(g.order());
    Int genus = genus_from_datum(base_genus, xi).genus;
    std::vector<Int> out;
    for (size_t v = 0; v < t.size(); ++v) {
        const long d = t.degrees[v];
        Rat deg = Rat(Int(d * m) * (2 * genus - 2)) / n;
        for (const auto& [s, b] : xi.classes) {
            long e = g.element_order(s);
            Rat local = 0;
            for (long alpha = 0; alpha < e; ++alpha) {
                long mult = t.eigen_multiplicity(g, v, s, alpha);
                if (mult) local += mult * frac(make_rat(alpha - m, e));
            }
            deg -= b * local;
        }
        out.push_back(require_integer(deg + d * (1 - base_genus), "chi(E_v)"));
    }
    return out;
}

std::vector<Int> cw_multiplicities(long base_genus, const HurwitzDatum& xi, long m, const CharacterTable& t) {
    if (m >= 2 && genus_from_datum(base_genus, xi).genus < 2)
        throw DomainError("genus_at_least_2", "twists m >= 2 need genus at least 2");
    std::vector<Int> out = cw_euler_characteristics(base_genus, xi, m, t);
    if (m == 1) out[0] += 1;
    for (const Int& x : out)
        if (x < 0) throw DomainError("integral_multiplicity", "negative multiplicity " + x.get_str());
    return out;
}

std::vector<Int> cw_cyclic(long n, long base_genus, const std::vector<CyclicBranch>& branches, long m) {
    if (m < 1) throw DomainError("twist", "twist degree must be at least 1");
    std::vector<Int> out;
    const long r = static_cast<long>(branches.size());
    for (long l = 0; l < n; ++l) {
        Rat x = Rat((2 * m - 1) * (base_genus - 1) + m * r);
        for (const auto& br : branches) x -= frac(make_rat(l * br.nu - m, br.e)) + make_rat(m, br.e);
        if (m == 1 && l == 0) x += 1;
        out.push_back(require_integer(x, "cyclic multiplicity"));
    }
    return out;
}

std::vector<CyclicBranch> cyclic_branches(const HurwitzDatum& xi, Elem sigma) {
    const Group& g = *xi.group;
    const long n = static_cast<long>(g.order());
    if (g.element_order(sigma) != n) throw DomainError("cyclic_group", "sigma does not generate the group");
    std::vector<CyclicBranch> out;
    for (Elem s : xi.entries()) {
        long a = 0;
        for (Elem x = 0; x != s; x = g.mul(x, sigma)) ++a;
        long e = g.element_order(s);
        out.push_back({e, e == 1 ? 0 : mod_l(a / (n / e), e)});
    }
    return out;
}

std::vector<Int> hodge_ranks(long base_genus, const HurwitzDatum& xi, const CharacterTable& t) {
    return cw_multiplicities(base_genus, xi, 1, t);
}

namespace {

// Affine expression over the unknown fixed-point counts: coefficients then constant.
using Affine = std::vector<Rat>;

Affine constant(size_t nvar, const Rat& c) {
    Affine a(nvar + 1, Rat(0));
    a[nvar] = c;
    return a;
}

void axpy(Affine& y, const Rat& k, const Affine& x) {
    for (size_t i = 0; i < y.size(); ++i) y[i] += k * x[i];
}

// Solves rows (coefficients | rhs) exactly; throws unless the solution is unique.
std::vector<Rat> solve_exact(std::vector<std::vector<Rat>> rows, size_t nvar, const std::string& where) {
    size_t rank = 0;
    for (size_t col = 0; col < nvar; ++col) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        Rat inv = 1 / rows[rank][col];
        for (auto& x : rows[rank]) x *= inv;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            Rat k = rows[r][col];
            for (size_t c = col; c <= nvar; ++c) rows[r][c] -= k * rows[rank][c];
        }
        ++rank;
    }
    for (size_t r = rank; r < rows.size(); ++r)
        if (rows[r][nvar] != 0) throw DomainError("oracle_consistency", "inconsistent fixed-point equations at " + where);
    if (rank < nvar) throw DomainError("inversion_rank", "fixed-point equations underdetermined at " + where);
    std::vector<Rat> x(nvar);
    for (size_t r = 0; r < nvar; ++r) x[r] = rows[r][nvar];
    return x;
}

}  // namespace

InversionResult invert_cw(const CwOracle& oracle, GroupPtr gp, const CharacterTable& t) {
    const Group& g = *gp;
    InversionResult res;
    std::map<std::pair<long, size_t>, Int> cache;
    auto ask = [&](long m, size_t v) -> Int {
        auto key = std::make_pair(m, v);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        Int x = oracle(m, v);
        res.queries.push_back(key);
        cache.emplace(key, x);
        return x;
    };

    Int genus = 0;
    for (size_t v = 0; v < t.size(); ++v) genus += t.degrees[v] * ask(1, v);
    res.genus = genus;
    res.base_genus = ask(1, 0).get_si();
    res.datum = HurwitzDatum(gp);
    const auto& cyc = g.cyclic_subgroups();
    if (genus < 2) {
        if (g.order() == 1) return res;
        throw DomainError("genus_at_least_2", "inversion needs genus at least 2");
    }

    // fixed[K][s]: points fixed by K whose distinguished element in K is s.
    std::vector<std::map<Elem, Int>> fixed(cyc.size());
    for (size_t ki = 0; ki < cyc.size(); ++ki) {
        const CyclicSubgroup& K = cyc[ki];
        const long k = K.order;
        if (k == 1) continue;
        const Elem gen = K.generator;
        const std::string where = "subgroup of order " + std::to_string(k) + " generated by " + g.element(gen).cycles();
        auto mu = [&](long l, long m) {
            Int s = 0;
            for (size_t v = 0; v < t.size(); ++v) {
                long mult = t.eigen_multiplicity(g, v, gen, l);
                if (mult) s += mult * ask(m, v);
            }
            return s;
        };
        const Int gq = mu(0, 1);
        const Int r = mu(0, 2) - 3 * gq + 3;
        // Orbit counts by stabilizer order from the invariant parts of omega^{d+1}.
        std::vector<Int> N(k + 1, 0);
        Int known = 0;
        for (long d = 2; d <= k; ++d) {
            Int T = mu(0, d + 1);
            Int rhs = Int(2 * d + 1) * (gq - 1) + d * (r - known);
            for (long c = 2; c < d; ++c) rhs += N[c] * (d + 1 - (d + c) / c);
            N[d] = rhs - T;
            if (N[d] < 0 || (k % d != 0 && N[d] != 0))
                throw DomainError("oracle_consistency", "orbit count N_" + std::to_string(d) + " = " + N[d].get_str() +
                                                            " at " + where);
            known += N[d];
        }
        if (known != r) throw DomainError("oracle_consistency", "orbit counts do not sum to r at " + where);

        // count[l][a]: orbits with l nu = a (mod e), read from consecutive twists m = a, a + 1 (mod k).
        Rat inv_e_sum = 0;
        for (long d = 2; d <= k; ++d) inv_e_sum += Rat(N[d]) / d;
        auto A = [&](long l, long m) -> Rat { return Rat(Int(m) * (2 * genus - 2)) / k + 1 - Rat(gq) - Rat(mu(l, m)); };
        std::vector<std::vector<Rat>> count(k, std::vector<Rat>(k));
        for (long l = 0; l < k; ++l)
            for (long m = 2; m < k + 2; ++m) count[l][m % k] = inv_e_sum - (A(l, m) - A(l, m + 1));

        // Unknowns: fixed points of K keyed by the generators of K.
        std::vector<Elem> gens;
        std::map<Elem, long> power_of;
        Elem x = 0;
        for (long j = 0; j < k; ++j, x = g.mul(x, gen)) power_of[x] = j;
        for (long j = 1; j < k; ++j)
            if (gcd_l(j, k) == 1) gens.push_back(g.pow(gen, j));
        const size_t nvar = gens.size();

        std::vector<long> divs;
        for (long e : divisors(k))
            if (e > 1) divs.push_back(e);
        std::sort(divs.rbegin(), divs.rend());
        // exact[e][y]: points whose stabilizer in K is exactly K_e, keyed by distinguished element y.
        std::map<long, std::map<Elem, Affine>> exact;
        for (size_t i = 0; i < nvar; ++i) {
            Affine a = constant(nvar, 0);
            a[i] = 1;
            exact[k][gens[i]] = a;
        }
        for (long e : divs) {
            if (e == k) continue;
            Elem ge = g.pow(gen, k / e);
            int sub = g.cyclic_subgroup_index(g.generated({ge}));
            for (long j = 1; j < e; ++j) {
                if (gcd_l(j, e) != 1) continue;
                Elem y = g.pow(ge, j);
                auto it = fixed[sub].find(y);
                Affine a = constant(nvar, it == fixed[sub].end() ? Rat(0) : Rat(it->second));
                for (const auto& [e2, m2] : exact) {
                    if (e2 == e || e2 % e != 0) continue;
                    for (const auto& [z, az] : m2)
                        if (g.pow(z, e2 / e) == y) axpy(a, -1, az);
                }
                exact[e][y] = a;
            }
        }

        std::vector<std::vector<Rat>> rows;
        auto push = [&](const Affine& lhs, const Rat& rhs) {
            std::vector<Rat> row(lhs.begin(), lhs.end());
            row[nvar] = rhs - lhs[nvar];
            rows.push_back(std::move(row));
        };
        for (long l = 0; l < k; ++l)
            for (long a = 0; a < k; ++a) {
                Affine lhs = constant(nvar, 0);
                for (const auto& [e, m2] : exact)
                    for (const auto& [y, ay] : m2) {
                        long j = power_of.at(y);
                        if (mod_l(l * (j / (k / e)) - a, e) == 0) axpy(lhs, make_rat(e, k), ay);
                    }
                push(lhs, count[l][a]);
            }
        for (const auto& [e, m2] : exact) {
            Affine lhs = constant(nvar, 0);
            for (const auto& [y, ay] : m2) axpy(lhs, make_rat(e, k), ay);
            push(lhs, Rat(N[e]));
        }
        std::vector<Rat> sol = solve_exact(std::move(rows), nvar, where);
        for (size_t i = 0; i < nvar; ++i) {
            if (sol[i].get_den() != 1 || sol[i] < 0)
                throw DomainError("oracle_consistency", "fixed-point count " + rat_to_string(sol[i]) + " at " + where);
            fixed[ki][gens[i]] = sol[i].get_num();
        }
    }

    // Points with stabilizer exactly H, then classes via normalizer orbits.
    std::vector<std::map<Elem, Int>> exact(cyc.size());
    std::set<Elem> seen;
    for (size_t hi = cyc.size(); hi-- > 0;) {
        const CyclicSubgroup& H = cyc[hi];
        if (H.order == 1) continue;
        exact[hi] = fixed[hi];
        for (size_t ki = hi + 1; ki < cyc.size(); ++ki) {
            const CyclicSubgroup& K = cyc[ki];
            if (K.order <= H.order || K.order % H.order != 0 || !g.subset(H.members, K.members)) continue;
            for (const auto& [z, c] : exact[ki]) {
                Elem y = g.pow(z, K.order / H.order);
                exact[hi][y] -= c;
            }
        }
        ElemSet norm = g.normalizer(H.members);
        const long index = static_cast<long>(norm.size()) / H.order;
        std::map<Elem, bool> done;
        for (const auto& [s, c] : exact[hi]) {
            if (c < 0)
                throw DomainError("oracle_consistency", "negative point count for " + g.element(s).cycles());
            if (done[s]) continue;
            Int total = 0;
            for (Elem x : norm) {
                Elem y = g.conj(x, s);
                if (!done[y]) {
                    done[y] = true;
                    total += exact[hi][y];
                }
            }
            if (total % index != 0)
                throw DomainError("oracle_consistency", "class multiplicity not integral for " + g.element(s).cycles());
            Int b = total / index;
            if (b > 0 && seen.insert(canonical_holonomy(g, s)).second) res.datum.add(s, b.get_si());
        }
    }
    if (genus_from_datum(res.base_genus, res.datum).genus != genus)
        throw DomainError("oracle_consistency", "recovered datum does not reproduce the genus");
    return res;
}

}  // namespace hurwitz
