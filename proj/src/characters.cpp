#include "hurwitz/characters.hpp"

#include <algorithm>
#include <cstdint>

namespace hurwitz {

namespace {

using u64 = uint64_t;

struct ModP {
    u64 p;
    u64 mul(u64 a, u64 b) const { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }
    u64 add(u64 a, u64 b) const { return (a + b) % p; }
    u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
    u64 pow(u64 a, u64 e) const {
        u64 r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const { return pow(a, p - 2); }
    u64 of(long x) const { return static_cast<u64>(mod_l(x, static_cast<long>(p))); }
};

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

u64 primitive_root(u64 p) {
    std::vector<u64> factors;
    u64 n = p - 1;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            factors.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) factors.push_back(n);
    ModP F{p};
    for (u64 g = 2;; ++g) {
        bool ok = true;
        for (u64 q : factors)
            if (F.pow(g, (p - 1) / q) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
}

using Mat = std::vector<std::vector<u64>>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<size_t> rref(Mat& rows, const ModP& F) {
    std::vector<size_t> pivots;
    size_t r = 0;
    size_t cols = rows.empty() ? 0 : rows[0].size();
    for (size_t c = 0; c < cols && r < rows.size(); ++c) {
        size_t sel = r;
        while (sel < rows.size() && rows[sel][c] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        u64 iv = F.inv(rows[r][c]);
        for (auto& x : rows[r]) x = F.mul(x, iv);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            u64 f = rows[i][c];
            for (size_t j = 0; j < cols; ++j) rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

// Basis of {y : A y = 0} for a square matrix A.
Mat nullspace(Mat a, const ModP& F) {
    size_t n = a.size();
    std::vector<size_t> piv = rref(a, F);
    std::vector<bool> is_piv(n, false);
    for (size_t c : piv) is_piv[c] = true;
    Mat out;
    for (size_t free = 0; free < n; ++free) {
        if (is_piv[free]) continue;
        std::vector<u64> y(n, 0);
        y[free] = 1;
        for (size_t r = 0; r < piv.size(); ++r) y[piv[r]] = F.sub(0, a[r][free]);
        out.push_back(y);
    }
    return out;
}

std::vector<u64> char_poly(const Mat& b, const ModP& F) {
    // Faddeev-LeVerrier; coefficients low degree first, monic.
    size_t d = b.size();
    std::vector<u64> c(d + 1, 0);
    c[d] = 1;
    Mat m(d, std::vector<u64>(d, 0));
    for (size_t k = 1; k <= d; ++k) {
        Mat next(d, std::vector<u64>(d, 0));
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) {
                u64 s = 0;
                for (size_t t = 0; t < d; ++t) s = F.add(s, F.mul(b[i][t], m[t][j]));
                next[i][j] = s;
            }
        for (size_t i = 0; i < d; ++i) next[i][i] = F.add(next[i][i], c[d - k + 1]);
        m = next;
        u64 tr = 0;
        for (size_t i = 0; i < d; ++i)
            for (size_t t = 0; t < d; ++t) tr = F.add(tr, F.mul(b[i][t], m[t][i]));
        c[d - k] = F.sub(0, F.mul(tr, F.inv(k % F.p)));
    }
    return c;
}

}  // namespace

long CharacterTable::eigen_multiplicity(const Group& g, size_t v, Elem s, long alpha) const {
    int c = g.class_of(s);
    const auto& row = eigen[v][c];
    long o = static_cast<long>(row.size());
    return row[mod_l(alpha, o)];
}

CharacterTable character_table(const Group& g) {
    const auto& classes = g.classes();
    const size_t k = classes.size();
    const size_t n = g.order();
    const long e = g.exponent();

    u64 p = static_cast<u64>(e) * ((2 * n + 100) / e + 1) + 1;
    while (!is_prime(p)) p += e;
    ModP F{p};
    u64 z = F.pow(primitive_root(p), (p - 1) / e);

    std::vector<int> inverse_class(k);
    for (size_t c = 0; c < k; ++c) inverse_class[c] = g.class_of(g.inv(classes[c].representative));

    // a[i][j][l] = #{x in C_i : x^-1 z_l in C_j}
    std::vector<std::vector<std::vector<long>>> a(k, std::vector<std::vector<long>>(k, std::vector<long>(k, 0)));
    for (size_t l = 0; l < k; ++l) {
        Elem zl = classes[l].representative;
        for (Elem x = 0; x < n; ++x) a[g.class_of(x)][g.class_of(g.mul(g.inv(x), zl))][l]++;
    }

    struct Space {
        Mat basis;
        std::vector<size_t> pivots;
    };
    std::vector<Space> spaces;
    {
        Mat id(k, std::vector<u64>(k, 0));
        for (size_t i = 0; i < k; ++i) id[i][i] = 1;
        auto piv = rref(id, F);
        spaces.push_back({id, piv});
    }
    for (size_t i = 1; i < k; ++i) {
        std::vector<Space> next;
        for (auto& sp : spaces) {
            size_t d = sp.basis.size();
            if (d == 1) {
                next.push_back(sp);
                continue;
            }
            Mat b(d, std::vector<u64>(d, 0));
            for (size_t r = 0; r < d; ++r) {
                std::vector<u64> img(k, 0);
                for (size_t j = 0; j < k; ++j) {
                    u64 s = 0;
                    for (size_t l = 0; l < k; ++l)
                        if (a[i][j][l]) s = F.add(s, F.mul(F.of(a[i][j][l]), sp.basis[r][l]));
                    img[j] = s;
                }
                for (size_t s2 = 0; s2 < d; ++s2) b[s2][r] = img[sp.pivots[s2]];
            }
            std::vector<u64> cp = char_poly(b, F);
            std::vector<u64> roots;
            for (u64 lam = 0; lam < p; ++lam) {
                u64 v = 0;
                for (size_t t = cp.size(); t-- > 0;) v = F.add(F.mul(v, lam), cp[t]);
                if (v == 0) roots.push_back(lam);
            }
            if (roots.size() <= 1) {
                next.push_back(sp);
                continue;
            }
            size_t total = 0;
            for (u64 lam : roots) {
                Mat shifted = b;
                for (size_t t = 0; t < d; ++t) shifted[t][t] = F.sub(shifted[t][t], lam);
                Mat ys = nullspace(shifted, F);
                Mat vecs;
                for (const auto& y : ys) {
                    std::vector<u64> v(k, 0);
                    for (size_t r = 0; r < d; ++r)
                        if (y[r])
                            for (size_t l = 0; l < k; ++l) v[l] = F.add(v[l], F.mul(y[r], sp.basis[r][l]));
                    vecs.push_back(v);
                }
                auto piv = rref(vecs, F);
                total += vecs.size();
                next.push_back({vecs, piv});
            }
            if (total != d) throw DomainError("character_table", "class matrix not diagonalizable mod p");
        }
        spaces = std::move(next);
    }
    if (spaces.size() != k) throw DomainError("character_table", "class algebra did not split");

    // power classes and orders of class representatives
    std::vector<long> rep_order(k);
    for (size_t c = 0; c < k; ++c) rep_order[c] = g.element_order(classes[c].representative);

    struct Row {
        long degree;
        std::vector<std::vector<long>> eig;
    };
    std::vector<Row> rows;
    long degree_sq_sum = 0;
    for (auto& sp : spaces) {
        std::vector<u64> w = sp.basis[0];
        if (w[0] == 0) throw DomainError("character_table", "eigenvector vanishes at the identity class");
        u64 iv = F.inv(w[0]);
        for (auto& x : w) x = F.mul(x, iv);
        u64 s = 0;
        for (size_t l = 0; l < k; ++l)
            s = F.add(s, F.mul(F.mul(w[l], w[inverse_class[l]]), F.inv(F.of(static_cast<long>(classes[l].members.size())))));
        u64 d2 = F.mul(F.of(static_cast<long>(n)), F.inv(s));
        long degree = 0;
        for (long d = 1; d * d <= static_cast<long>(n); ++d)
            if (F.of(d * d) == d2) degree = d;
        if (degree == 0) throw DomainError("character_table", "could not recover a character degree");
        std::vector<u64> chi(k);
        for (size_t l = 0; l < k; ++l)
            chi[l] = F.mul(F.mul(w[l], F.of(degree)), F.inv(F.of(static_cast<long>(classes[l].members.size()))));
        Row row{degree, {}};
        for (size_t l = 0; l < k; ++l) {
            long o = rep_order[l];
            Elem x = classes[l].representative;
            std::vector<u64> powvals(o);
            for (long t = 0; t < o; ++t) powvals[t] = chi[g.class_of(g.pow(x, t))];
            u64 zo = F.pow(z, static_cast<u64>(e / o));
            u64 inv_o = F.inv(F.of(o));
            std::vector<long> mult(o);
            long total = 0;
            for (long r = 0; r < o; ++r) {
                u64 acc = 0;
                for (long t = 0; t < o; ++t)
                    acc = F.add(acc, F.mul(powvals[t], F.pow(zo, static_cast<u64>(mod_l(-r * t, o)))));
                acc = F.mul(acc, inv_o);
                if (acc > static_cast<u64>(degree)) throw DomainError("character_table", "eigenvalue multiplicity out of range");
                mult[r] = static_cast<long>(acc);
                total += mult[r];
            }
            if (total != degree) throw DomainError("character_table", "eigenvalue multiplicities do not sum to the degree");
            row.eig.push_back(std::move(mult));
        }
        degree_sq_sum += degree * degree;
        rows.push_back(std::move(row));
    }
    if (degree_sq_sum != static_cast<long>(n)) throw DomainError("character_table", "sum of squared degrees differs from |G|");

    auto is_trivial = [&](const Row& r) { return r.degree == 1 && std::all_of(r.eig.begin(), r.eig.end(), [](const std::vector<long>& m) { return m[0] == 1; }); };
    std::sort(rows.begin(), rows.end(), [&](const Row& x, const Row& y) {
        bool tx = is_trivial(x), ty = is_trivial(y);
        if (tx != ty) return tx;
        if (x.degree != y.degree) return x.degree < y.degree;
        return x.eig > y.eig;
    });

    CharacterTable t;
    t.modulus = e;
    for (auto& r : rows) {
        ClassFunction vals;
        for (size_t l = 0; l < k; ++l) {
            long o = rep_order[l];
            Cyclotomic v(e);
            for (long q = 0; q < o; ++q)
                if (r.eig[l][q]) v += Cyclotomic::root_power(e, q * (e / o)) * Rat(r.eig[l][q]);
            vals.push_back(v);
        }
        t.rows.push_back(std::move(vals));
        t.degrees.push_back(r.degree);
        t.eigen.push_back(std::move(r.eig));
    }
    return t;
}

Rat inner_product(const Group& g, const ClassFunction& a, const ClassFunction& b) {
    const auto& classes = g.classes();
    Cyclotomic acc(a.empty() ? 1 : a[0].modulus());
    for (size_t c = 0; c < classes.size(); ++c) {
        int ci = g.class_of(g.inv(classes[c].representative));
        acc += a[c] * b[ci] * Rat(static_cast<long>(classes[c].members.size()));
    }
    return acc.rational_value() / Rat(static_cast<long>(g.order()));
}

SubgroupFunction restrict_to(const Group& g, const ClassFunction& chi, const ElemSet& h) {
    SubgroupFunction out;
    for (Elem x : h) out.push_back(chi[g.class_of(x)]);
    return out;
}

ClassFunction induce_from(const Group& g, const SubgroupFunction& phi, const ElemSet& h) {
    if (!g.is_subgroup(h)) throw DomainError("subgroup", "induction needs a subgroup");
    long m = phi.empty() ? g.exponent() : phi[0].modulus();
    ClassFunction out;
    for (const auto& cls : g.classes()) {
        Elem y = cls.representative;
        Cyclotomic acc(m);
        for (Elem x = 0; x < g.order(); ++x) {
            Elem c = g.conj(x, y);
            auto it = std::lower_bound(h.begin(), h.end(), c);
            if (it != h.end() && *it == c) acc += phi[it - h.begin()];
        }
        out.push_back(acc * make_rat(1, static_cast<long>(h.size())));
    }
    return out;
}

Rat inner_product_on(const Group& g, const ElemSet& h, const SubgroupFunction& a, const SubgroupFunction& b) {
    Cyclotomic acc(a.empty() ? 1 : a[0].modulus());
    for (size_t i = 0; i < h.size(); ++i) {
        Elem xi = g.inv(h[i]);
        size_t j = std::lower_bound(h.begin(), h.end(), xi) - h.begin();
        acc += a[i] * b[j];
    }
    return acc.rational_value() / Rat(static_cast<long>(h.size()));
}

ClassFunction regular_character(const Group& g) {
    ClassFunction out;
    for (size_t c = 0; c < g.classes().size(); ++c)
        out.push_back(Cyclotomic(g.exponent(), c == 0 ? Rat(static_cast<long>(g.order())) : Rat(0)));
    return out;
}

}  // namespace hurwitz
