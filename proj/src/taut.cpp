#include "hurwitz/taut.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace hurwitz {

namespace {

using Poly = std::vector<Rat>;  // low degree first

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

long deg(const Poly& f) { return static_cast<long>(f.size()) - 1; }

Poly derivative(const Poly& f) {
    Poly d;
    for (size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
    trim(d);
    return d;
}

void divmod(Poly a, const Poly& b, Poly& q, Poly& r) {
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
    trim(a);
    while (deg(a) >= deg(b)) {
        size_t shift = a.size() - b.size();
        Rat c = a.back() / b.back();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        trim(a);
    }
    trim(q);
    r = a;
}

Poly quotient(const Poly& a, const Poly& b) {
    Poly q, r;
    divmod(a, b, q, r);
    return q;
}

Poly monic(Poly f) {
    Rat lead = f.back();
    for (Rat& c : f) c /= lead;
    return f;
}

Poly gcd(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? a : monic(a);
}

Poly subtract(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rat(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Rat pow_half(long k) {
    Rat r(1);
    for (long i = 0; i < k; ++i) r /= 2;
    return r;
}

void check_branches(long n, const std::vector<CyclicBranch>& branches) {
    if (n < 1) throw DomainError("cyclic_order", "n must be positive");
    long total = 0;
    for (const CyclicBranch& b : branches) {
        if (b.e < 2 || n % b.e != 0 || b.nu < 1 || b.nu >= b.e || gcd_l(b.nu, b.e) != 1)
            throw DomainError("branch_data", "each branch needs e | n, e > 1 and 1 <= nu < e a unit mod e");
        total += (n / b.e) * b.nu;
    }
    if (mod_l(total, n) != 0) throw DomainError("datum_sum", "sum m_j nu_j must be 0 mod n");
}

struct Symbol {
    std::string name;
    std::vector<long> args;
};

Symbol parse_symbol(const std::string& s) {
    Symbol out;
    size_t open = s.find('[');
    if (open == std::string::npos || s.back() != ']') {
        out.name = s;
        return out;
    }
    out.name = s.substr(0, open);
    std::string inner = s.substr(open + 1, s.size() - open - 2);
    std::stringstream in(inner);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            size_t used = 0;
            out.args.push_back(std::stol(item, &used));
            if (used != item.size()) throw DomainError("unknown_symbol", s);
        } catch (const std::logic_error&) {
            throw DomainError("unknown_symbol", s);
        }
    }
    return out;
}

std::string sym(const std::string& name, std::initializer_list<long> args) {
    std::string s = name + "[";
    bool first = true;
    for (long a : args) {
        if (!first) s += ",";
        s += std::to_string(a);
        first = false;
    }
    return s + "]";
}

bool is_boundary_symbol(const std::string& s) { return s.rfind("delta[", 0) == 0 || s.rfind("delta_irr[", 0) == 0; }

/// (b - 1) sum psi_alpha on a genus-0 base, pulled back from M_{0,b}: sum over components |I||J| e_pi delta_pi.
PicElement psi_sum_pullback(const PicContext& ctx) {
    if (ctx.base_genus != 0) throw DomainError("base_genus", "the psi pullback needs a rational base");
    PicElement out;
    for (const BoundaryComponent& c : ctx.boundary) {
        if (c.shape != BoundaryShape::segment) continue;
        out.add(c.label(), Rat(static_cast<long>(c.part1.size() * c.part2.size()) * c.node.e));
    }
    return out;
}

}  // namespace

bool BinaryForm::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rat& c) { return c == 0; });
}

std::vector<std::pair<long, long>> PartitionType::dual() const {
    std::vector<std::pair<long, long>> out;
    for (long p : parts) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1);
    }
    return out;
}

long PartitionType::weight() const { return std::accumulate(parts.begin(), parts.end(), 0L); }

std::string PartitionType::to_string() const {
    std::string s = "(";
    for (size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + std::to_string(parts[i]);
    return s + ")";
}

BinaryForm viete(const std::vector<std::pair<Rat, Rat>>& factors) {
    BinaryForm f;
    f.coeffs = {Rat(1)};
    for (const auto& [u, v] : factors) {
        if (u == 0 && v == 0) throw DomainError("zero_form", "linear factor (0,0)");
        std::vector<Rat> next(f.coeffs.size() + 1, Rat(0));
        for (size_t i = 0; i < f.coeffs.size(); ++i) {
            next[i] += f.coeffs[i] * u;
            next[i + 1] += f.coeffs[i] * v;
        }
        f.coeffs = std::move(next);
    }
    return f;
}

PartitionType classify(const BinaryForm& form) {
    if (form.coeffs.empty() || form.is_zero()) throw DomainError("zero_form", "the form vanishes identically");
    long n = form.degree();
    Poly f(form.coeffs.rbegin(), form.coeffs.rend());
    trim(f);
    PartitionType out;
    if (n - deg(f) > 0) out.parts.push_back(n - deg(f));
    if (deg(f) > 0) {
        Poly df = derivative(f);
        Poly c = gcd(f, df);
        Poly w = quotient(f, c);
        Poly y = quotient(df, c);
        Poly z = subtract(y, derivative(w));
        for (long i = 1; deg(w) > 0; ++i) {
            Poly g = gcd(w, z);
            for (long k = 0; k < deg(g); ++k) out.parts.push_back(i);
            w = quotient(w, g);
            y = quotient(z, g);
            z = subtract(y, derivative(w));
        }
    }
    std::sort(out.parts.begin(), out.parts.end());
    return out;
}

long stratum_dim(const PartitionType& mu) {
    long d = 1;
    for (const auto& [m, k] : mu.dual()) d += k;
    return d;
}

std::vector<long> stratum_bidegree(const PartitionType& mu) {
    std::vector<long> out;
    for (const auto& [m, k] : mu.dual()) out.push_back(m);
    return out;
}

bool incidence(const PartitionType& eta, const PartitionType& mu) {
    if (eta.weight() != mu.weight()) return false;
    std::vector<long> parts(mu.parts.rbegin(), mu.parts.rend());
    std::vector<long> room(eta.parts.begin(), eta.parts.end());
    std::function<bool(size_t)> place = [&](size_t i) {
        if (i == parts.size()) return std::all_of(room.begin(), room.end(), [](long r) { return r == 0; });
        for (size_t k = 0; k < room.size(); ++k) {
            if (room[k] < parts[i]) continue;
            bool repeat = false;
            for (size_t q = 0; q < k; ++q) repeat = repeat || room[q] == room[k];
            if (repeat) continue;
            room[k] -= parts[i];
            if (place(i + 1)) return true;
            room[k] += parts[i];
        }
        return false;
    };
    return place(0);
}

RootExponents root_exponents(long n, const std::vector<CyclicBranch>& branches, long i) {
    check_branches(n, branches);
    if (i < 0 || i > n) throw DomainError("twist_range", "need 0 <= i <= n");
    RootExponents out;
    long total = 0;
    Int sum = 0;
    for (const CyclicBranch& b : branches) {
        total += (n / b.e) * b.nu;
        out.offsets.push_back(Int(i * b.nu / b.e));
        sum += out.offsets.back();
    }
    out.degree_l = Int(-total / n);
    out.degree_li = out.degree_l * i + sum;
    return out;
}

void PicElement::add(const std::string& symbol, const Rat& c) {
    if (c == 0) return;
    Rat& slot = coeff[symbol];
    slot += c;
    if (slot == 0) coeff.erase(symbol);
}

Rat PicElement::get(const std::string& symbol) const {
    auto it = coeff.find(symbol);
    return it == coeff.end() ? Rat(0) : it->second;
}

PicElement PicElement::operator+(const PicElement& o) const {
    PicElement r = *this;
    for (const auto& [s, c] : o.coeff) r.add(s, c);
    return r;
}

PicElement PicElement::operator-(const PicElement& o) const { return *this + o * Rat(-1); }

PicElement PicElement::operator*(const Rat& c) const {
    PicElement r;
    for (const auto& [s, v] : coeff) r.add(s, v * c);
    return r;
}

std::string PicElement::to_string() const {
    if (coeff.empty()) return "0";
    std::string s;
    for (const auto& [sym_name, c] : coeff) {
        if (!s.empty()) s += " + ";
        s += rat_to_string(c) + "*" + sym_name;
    }
    return s;
}

PicContext make_context(long n, long base_genus, const std::vector<CyclicBranch>& branches) {
    check_branches(n, branches);
    PicContext ctx;
    ctx.n = n;
    ctx.base_genus = base_genus;
    ctx.branches = branches;
    ctx.boundary = boundary_components(n, base_genus, branches);
    return ctx;
}

PicElement pic_normalize(const PicElement& x, const PicContext& ctx, std::vector<std::string>* warnings) {
    long n = ctx.n;
    long b = static_cast<long>(ctx.branches.size());
    auto point = [&](long i, const std::string& s) -> const CyclicBranch& {
        if (i < 1 || i > b) throw DomainError("unknown_symbol", s + " names no branch point");
        return ctx.branches[static_cast<size_t>(i - 1)];
    };
    PicElement out;
    std::function<void(const std::string&, const Rat&)> put = [&](const std::string& s, const Rat& c) {
        if (c == 0) return;
        if (s == "lambda'" || s == "omega.omega" || is_boundary_symbol(s)) {
            out.add(s, c);
            return;
        }
        Symbol p = parse_symbol(s);
        if (p.name == "lambda" && p.args.empty()) {
            put("lambda'", c);
            for (long v = 1; v < n; ++v) put(sym("lambda", {v}), c);
        } else if (p.name == "lambda" && p.args.size() == 1 && p.args[0] >= 1 && p.args[0] < n) {
            out.add(s, c);
        } else if (p.name == "kappa'" && p.args.size() == 1 && p.args[0] >= 0) {
            out.add(s, c);
        } else if (p.name == "psi" && p.args.size() == 1) {
            point(p.args[0], s);
            out.add(s, c);
        } else if (p.name == "psi" && p.args.size() == 2 && p.args[1] >= 1) {
            const CyclicBranch& br = point(p.args[0], s);
            long j = p.args[1];
            if (j % br.e == 0 && warnings)
                warnings->push_back(s + " is torsion and vanishes over Q");
            put(sym("mu", {p.args[0]}), c * j);
            put(sym("psi", {p.args[0]}), -c * (j * br.nu / br.e));
        } else if (p.name == "mu" && p.args.size() == 1) {
            const CyclicBranch& br = point(p.args[0], s);
            put(sym("psi", {p.args[0]}), c * make_rat((n / br.e) * br.nu, n));
        } else if (p.name == "kappa" && p.args.size() == 1 && p.args[0] >= 0) {
            put(sym("kappa'", {p.args[0]}), c * n);
        } else if (p.name == "kappatilde" && p.args.size() == 1 && p.args[0] == 1) {
            put("omega.omega", c);
            for (const BoundaryComponent& comp : ctx.boundary) put(comp.label(), -c * (n / comp.node.e));
        } else {
            throw DomainError("unknown_symbol", s);
        }
    };
    for (const auto& [s, c] : x.coeff) put(s, c);
    return out;
}

PicElement lambda_relation(const PicContext& ctx, long j, bool with_boundary) {
    long n = ctx.n;
    if (j < 1 || j >= n || gcd_l(j, n) != 1) throw DomainError("unit_twist", "need 1 <= j < n with gcd(j, n) = 1");
    PicElement r;
    r.add("lambda'", Rat(2 * n));
    r.add(sym("lambda", {n - j}), Rat(-2 * n));
    for (size_t a = 0; a < ctx.branches.size(); ++a) {
        const CyclicBranch& br = ctx.branches[a];
        Rat x = make_rat(j * (n / br.e) * br.nu, n);
        Rat f = frac(x);
        long i = static_cast<long>(a) + 1;
        r.add(sym("mu", {i}), -f * (j * n));
        r.add(sym("psi", {i}), f * n * (Rat(floor_rat(x)) + 1));
    }
    if (with_boundary) {
        for (const BoundaryComponent& c : ctx.boundary) {
            if (!c.node.ns()) continue;
            long aj = mod_l(j * c.node.a, n);
            long m = n / c.node.e;
            r.add(c.label(), -make_rat(aj * (n - aj), m));
        }
    }
    return r;
}

namespace {

PicContext prime_context(long p, const std::vector<long>& nu) {
    if (!is_prime(p)) throw DomainError("prime_degree", "p must be prime");
    std::vector<CyclicBranch> br;
    for (long v : nu) br.push_back({p, v});
    return make_context(p, 0, br);
}

/// Replaces lambda[1..n-1] (all with the same coefficient) by lambda; lambda' = 0 over P^1.
PicElement collect_lambda(PicElement x, long n) {
    Rat c = x.get(sym("lambda", {1}));
    for (long v = 1; v < n; ++v) {
        if (x.get(sym("lambda", {v})) != c) throw DomainError("lambda_collect", "eigen-lambda coefficients differ");
        x.coeff.erase(sym("lambda", {v}));
    }
    x.coeff.erase("lambda'");
    x.add("lambda", c);
    return x;
}

}  // namespace

PicElement summed_relation(long p, const std::vector<long>& nu) {
    PicContext ctx = prime_context(p, nu);
    PicElement sum;
    for (long j = 1; j < p; ++j) sum = sum + lambda_relation(ctx, j);
    return collect_lambda(pic_normalize(sum * Rat(p), ctx), p);
}

PicElement summed_relation_expected(long p, const std::vector<long>& nu) {
    PicContext ctx = prime_context(p, nu);
    Rat s = make_rat(p * p - 1, 6);
    PicElement r;
    r.add("lambda", Rat(-2 * p * p));
    for (size_t i = 0; i < nu.size(); ++i) r.add(sym("psi", {static_cast<long>(i) + 1}), s * p);
    for (const BoundaryComponent& c : ctx.boundary)
        if (c.node.ns()) r.add(c.label(), -s * p * p);
    return r;
}

HyperellipticBoundaryRelation hyperelliptic_boundary_relation(long genus) {
    if (genus < 1) throw DomainError("genus_range", "need g >= 1");
    long b = 2 * genus + 2;
    std::vector<long> nu(static_cast<size_t>(b), 1);
    PicContext ctx = prime_context(2, nu);
    PicElement rel = summed_relation(2, nu) * Rat(2 * genus + 1);
    Rat c = rel.get(sym("psi", {1}));
    for (long i = 1; i <= b; ++i) {
        if (rel.get(sym("psi", {i})) != c) throw DomainError("psi_symmetry", "psi coefficients differ");
        rel.coeff.erase(sym("psi", {i}));
    }
    rel = rel + psi_sum_pullback(ctx) * (c / Rat(b - 1));

    HyperellipticBoundaryRelation out;
    out.genus = genus;
    out.lambda = -rel.get("lambda");
    out.relation = rel * Rat(-1);
    std::map<std::pair<bool, long>, BoundaryRelationRow> rows;
    for (const BoundaryComponent& comp : ctx.boundary) {
        long j = static_cast<long>(std::min(comp.part1.size(), comp.part2.size()));
        Rat coef = rel.get(comp.label());
        auto [it, fresh] = rows.try_emplace({comp.node.ns(), j});
        BoundaryRelationRow& row = it->second;
        if (fresh) {
            row.ns = comp.node.ns();
            row.j = j;
            row.index = row.ns ? (j - 1) / 2 : j / 2;
            row.coefficient = coef;
        } else if (row.coefficient != coef) {
            throw DomainError("boundary_symmetry", "components of one type have different coefficients");
        }
        ++row.components;
    }
    for (auto& [key, row] : rows) out.rows.push_back(row);
    std::stable_sort(out.rows.begin(), out.rows.end(),
                     [](const BoundaryRelationRow& x, const BoundaryRelationRow& y) { return !x.ns && y.ns; });
    return out;
}

std::pair<HyperellipticLocusRelation, HyperellipticLocusRelation> hyperelliptic_locus_relation(long genus) {
    HyperellipticBoundaryRelation ch = hyperelliptic_boundary_relation(genus);
    HyperellipticLocusRelation proof_end;
    proof_end.lambda = ch.lambda / 2;
    for (const BoundaryRelationRow& row : ch.rows) {
        Rat c = row.coefficient / 2;
        if (!row.ns && row.index == 1)
            proof_end.delta_r1 = c / 2;
        else if (!row.ns)
            proof_end.delta_r.emplace_back(row.index, c);
        else
            proof_end.delta_ns.emplace_back(row.index, c);
    }
    HyperellipticLocusRelation stated = proof_end;
    stated.lambda /= 2;
    stated.delta_r1 /= 2;
    for (auto& [k, c] : stated.delta_r) c /= 2;
    for (auto& [k, c] : stated.delta_ns) c /= 2;
    return {proof_end, stated};
}

namespace {

void check_exponents(long n, const std::vector<long>& alpha) {
    if (n < 3) throw DomainError("marked_points", "need n >= 3");
    if (static_cast<long>(alpha.size()) != n) throw DomainError("exponent_count", "one exponent per marked point");
    for (long a : alpha)
        if (a < 0) throw DomainError("exponent_count", "exponents must be nonnegative");
}

}  // namespace

Rat psi_integral(long n, const std::vector<long>& alpha) {
    check_exponents(n, alpha);
    if (std::accumulate(alpha.begin(), alpha.end(), 0L) != n - 3) return Rat(0);
    Int den = 1;
    for (long a : alpha) den *= factorial(a);
    Rat r(factorial(n - 3), den);
    r.canonicalize();
    return r;
}

Rat psi_integral_string(long n, const std::vector<long>& alpha) {
    check_exponents(n, alpha);
    if (std::accumulate(alpha.begin(), alpha.end(), 0L) != n - 3) return Rat(0);
    std::map<std::vector<long>, Rat> memo;
    std::function<Rat(std::vector<long>)> eval = [&](std::vector<long> a) -> Rat {
        std::sort(a.begin(), a.end());
        if (a.size() == 3) return Rat(a == std::vector<long>{0, 0, 0} ? 1 : 0);
        auto it = memo.find(a);
        if (it != memo.end()) return it->second;
        Rat r(0);
        if (a.front() == 0) {
            std::vector<long> rest(a.begin() + 1, a.end());
            for (size_t j = 0; j < rest.size(); ++j) {
                if (rest[j] == 0) continue;
                std::vector<long> next = rest;
                --next[j];
                r += eval(next);
            }
        }
        memo.emplace(a, r);
        return r;
    };
    return eval(alpha);
}

Int tau_recursive(long a, long n) {
    if (a < 0 || n < a + 3) throw DomainError("kappa_degree", "need 0 <= a <= n - 3");
    Int t = 1;
    for (long m = a + 3; m < n; ++m) t += binomial(m - 2, a);
    return t;
}

Int tau_closed(long a, long n) {
    if (a < 0 || n < a + 3) throw DomainError("kappa_degree", "need 0 <= a <= n - 3");
    return binomial(n - 2, a + 1);
}

Rat hyperelliptic_integral_closed(long genus, long a) {
    if (genus < 1 || a < 0 || a > 2 * genus - 1) throw DomainError("kappa_degree", "need g >= 1 and 0 <= a <= 2g - 1");
    Rat first(binomial(2 * genus, a + 1));
    Rat second = Rat(2 * genus + 1) * pow_half(a + 1) * Rat(binomial(2 * genus - 1, a));
    Rat r = pow_half(2 * genus - 1 - a) / Rat(factorial(2 * genus + 1)) * (first - second);
    return r;
}

Rat hyperelliptic_integral_pipeline(long genus, long a) {
    if (genus < 1 || a < 0 || a > 2 * genus - 1) throw DomainError("kappa_degree", "need g >= 1 and 0 <= a <= 2g - 1");
    long n = 2 * genus + 2;
    long k = 2 * genus - 1 - a;
    Rat delta_degree = make_rat(1, 2);
    // kappa_a = 2 delta^* kappa'_a and mu_i = delta^* psi_i / 2.
    Rat main = Rat(2) * pow_half(k) * delta_degree * Rat(tau_recursive(a, n));
    Rat correction(0);
    for (long alpha = 2; alpha <= n; ++alpha) {
        std::vector<long> e(static_cast<size_t>(n), 0);
        e[0] = k;
        e[static_cast<size_t>(alpha - 1)] = a;
        correction += pow_half(2 * genus - 1) * delta_degree * psi_integral_string(n, e);
    }
    return (main - correction) / Rat(factorial(2 * genus + 1));
}

Rat hyperelliptic_mu_integral(long genus) {
    if (genus < 1) throw DomainError("genus_range", "need g >= 1");
    long n = 2 * genus + 2;
    std::vector<long> e(static_cast<size_t>(n), 0);
    e[0] = 2 * genus - 1;
    return pow_half(2 * genus - 1) * make_rat(1, 2) * psi_integral_string(n, e) / Rat(factorial(2 * genus + 1));
}

Rat sinc_half_coefficient(long genus) {
    if (genus < 0) throw DomainError("genus_range", "need g >= 0");
    // sin(t/2) = sum (-1)^k (t/2)^(2k+1) / (2k+1)!; dividing by t/2 shifts t^(2g+1) to t^(2g) and doubles.
    long k = genus;
    Rat sin_coeff = pow_half(2 * k + 1) / Rat(factorial(2 * k + 1));
    if (k % 2) sin_coeff = -sin_coeff;
    return sin_coeff * 2;
}

Rat hodge_base(long p, const std::vector<long>& xi) {
    if (xi.size() != 3) throw DomainError("branch_count", "the base case has three branch points");
    long a = xi[0], b = xi[1], c = xi[2];
    if (a == b && b == c) {
        if (p != 3) throw DomainError("datum_sum", "three equal values need p = 3");
        return make_rat(1, 18);
    }
    if (a == b || b == c || a == c) return make_rat(1, 2 * p);
    return make_rat(1, p);
}

Rat hodge_recursion(long p, long genus, const std::vector<long>& xi, RecursionWeight w) {
    if (p == 2) throw DomainError("unreachable_base", "p = 2 has no three-point base case");
    if (!is_prime(p)) throw DomainError("prime_degree", "p must be prime");
    long total = 0;
    for (long v : xi) {
        if (v < 1 || v >= p) throw DomainError("branch_data", "branch values must lie in 1..p-1");
        total += v;
    }
    if (total % p != 0) throw DomainError("datum_sum", "branch values must sum to 0 mod p");
    if ((2 * genus - 2 + 2 * p) % (p - 1) != 0) throw DomainError("integral_b", "b = (2g - 2 + 2p)/(p - 1) is not integral");
    long b = (2 * genus - 2 + 2 * p) / (p - 1);
    if (b < 3) throw DomainError("unreachable_base", "need b >= 3");
    if (static_cast<long>(xi.size()) != b) throw DomainError("branch_count", "xi must have b entries");

    std::vector<long> key = xi;
    std::sort(key.begin(), key.end());
    if (b == 3) return hodge_base(p, key);

    using Key = std::tuple<long, long, std::vector<long>, int>;
    static std::mutex mutex;
    static std::map<Key, Rat> memo;
    Key k{p, genus, key, static_cast<int>(w)};
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = memo.find(k);
        if (it != memo.end()) return it->second;
    }

    Rat sum(0);
    for (unsigned long mask = 0; mask < (1ul << b); ++mask) {
        long b1 = __builtin_popcountl(mask);
        long b2 = b - b1;
        if (b1 < 2 || b2 < 2) continue;
        std::vector<long> xi1, xi2;
        long eta = 0;
        for (long i = 0; i < b; ++i) {
            if (mask >> i & 1) {
                xi1.push_back(key[static_cast<size_t>(i)]);
                eta += key[static_cast<size_t>(i)];
            } else {
                xi2.push_back(key[static_cast<size_t>(i)]);
            }
        }
        eta = mod_l(eta, p);
        if (eta == 0) continue;
        xi1.push_back(p - eta);
        xi2.push_back(eta);
        long g1 = (p - 1) * (b1 - 1) / 2;
        long g2 = (p - 1) * (b2 - 1) / 2;
        long weight = b1 * b2 - (w == RecursionWeight::published ? 2 : 1) * (b - 1);
        sum += Rat(weight) * Rat(binomial(b - 4, b1 - 2)) * hodge_recursion(p, g1, xi1, w) * hodge_recursion(p, g2, xi2, w);
    }
    Rat value = sum * Rat(p * p - 1) / Rat(24 * (b - 1));
    std::lock_guard<std::mutex> lock(mutex);
    memo.emplace(k, value);
    return value;
}

}  // namespace hurwitz
