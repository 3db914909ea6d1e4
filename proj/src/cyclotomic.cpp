#include "hurwitz/cyclotomic.hpp"

#include <map>
#include <mutex>

namespace hurwitz {

namespace {

using Poly = std::vector<Int>;

Poly poly_divide_exact(Poly num, const Poly& den) {
    // den is monic.
    Poly q(num.size() - den.size() + 1);
    for (size_t i = q.size(); i-- > 0;) {
        Int coef = num[i + den.size() - 1];
        q[i] = coef;
        for (size_t j = 0; j < den.size(); ++j) num[i + j] -= coef * den[j];
    }
    return q;
}

Poly cyclotomic_poly(long m) {
    Poly p(m + 1, 0);
    p[0] = -1;
    p[m] = 1;
    for (long d : divisors(m))
        if (d < m) p = poly_divide_exact(p, cyclotomic_poly(d));
    return p;
}

}  // namespace

std::shared_ptr<const CyclotomicField> CyclotomicField::get(long m) {
    static std::mutex mu;
    static std::map<long, std::shared_ptr<const CyclotomicField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    auto f = std::make_shared<CyclotomicField>();
    f->m = m;
    f->phi = euler_phi(m);
    f->minimal_poly = cyclotomic_poly(m);
    std::vector<Int> cur(f->phi, 0);
    cur[0] = 1;
    for (long k = 0; k < m; ++k) {
        f->power_table.push_back(cur);
        // multiply by z and reduce by the monic minimal polynomial
        Int top = cur[f->phi - 1];
        for (long i = f->phi - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        for (long i = 0; i < f->phi; ++i) cur[i] -= top * f->minimal_poly[i];
    }
    cache.emplace(m, f);
    return f;
}

Cyclotomic::Cyclotomic(long m) : field_(CyclotomicField::get(m)), c_(field_->phi, Rat(0)) {}

Cyclotomic::Cyclotomic(long m, const Rat& value) : Cyclotomic(m) { c_[0] = value; }

Cyclotomic Cyclotomic::root_power(long m, long k) {
    Cyclotomic z(m);
    z.add_power(mod_l(k, m), Rat(1));
    return z;
}

void Cyclotomic::add_power(long k, const Rat& coeff) {
    const auto& row = field_->power_table[mod_l(k, field_->m)];
    for (long i = 0; i < field_->phi; ++i)
        if (row[i] != 0) c_[i] += coeff * row[i];
}

Cyclotomic Cyclotomic::embed(long m2) const {
    const long m = field_->m;
    if (m2 % m != 0) throw DomainError("same_cyclotomic_field", "cannot embed Q(zeta_" + std::to_string(m) + ") in Q(zeta_" + std::to_string(m2) + ")");
    Cyclotomic r(m2);
    for (long i = 0; i < field_->phi; ++i)
        if (c_[i] != 0) r.add_power(i * (m2 / m), c_[i]);
    return r;
}

static void require_same(long a, long b) {
    if (a != b) throw DomainError("same_cyclotomic_field", "mixing Q(zeta_" + std::to_string(a) + ") and Q(zeta_" + std::to_string(b) + ")");
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    Cyclotomic r = *this;
    r += o;
    return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    require_same(modulus(), o.modulus());
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    require_same(modulus(), o.modulus());
    Cyclotomic r(modulus());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            if (o.c_[j] != 0) r.add_power(static_cast<long>(i + j), c_[i] * o.c_[j]);
    }
    return r;
}

Cyclotomic Cyclotomic::operator*(const Rat& s) const {
    Cyclotomic r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

Cyclotomic Cyclotomic::conj() const { return galois(-1); }

Cyclotomic Cyclotomic::galois(long a) const {
    if (gcd_l(mod_l(a, modulus()), modulus()) != 1 && modulus() > 1)
        throw DomainError("galois_unit", std::to_string(a) + " is not a unit mod " + std::to_string(modulus()));
    Cyclotomic r(modulus());
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) r.add_power(a * static_cast<long>(i), c_[i]);
    return r;
}

bool Cyclotomic::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat Cyclotomic::rational_value() const {
    if (!is_rational()) throw DomainError("rational_cyclotomic", to_string() + " is not rational");
    return c_[0];
}

std::string Cyclotomic::to_string() const {
    std::string out;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        std::string coeff = rat_to_string(c_[i]);
        if (!out.empty()) out += (c_[i] > 0 ? " + " : " - ");
        else if (c_[i] < 0) out += "-";
        Rat a = abs(c_[i]);
        if (i == 0) {
            out += rat_to_string(a);
        } else {
            if (a != 1) out += rat_to_string(a) + "*";
            out += "z" + std::to_string(modulus()) + (i == 1 ? "" : "^" + std::to_string(i));
        }
    }
    return out.empty() ? "0" : out;
}

}  // namespace hurwitz
