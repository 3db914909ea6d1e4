#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hurwitz/arith.hpp"

namespace hurwitz {

/// Q(z) with z a primitive m-th root of unity, power basis 1, z, ..., z^(phi(m)-1).
struct CyclotomicField {
    long m;
    long phi;
    std::vector<Int> minimal_poly;              // Phi_m, low degree first, monic
    std::vector<std::vector<Int>> power_table;  // reduced coordinates of z^k, 0 <= k < m

    static std::shared_ptr<const CyclotomicField> get(long m);
};

class Cyclotomic {
public:
    Cyclotomic() : Cyclotomic(1) {}
    explicit Cyclotomic(long m);
    Cyclotomic(long m, const Rat& value);
    /// z^k in Q(zeta_m).
    static Cyclotomic root_power(long m, long k);

    long modulus() const { return field_->m; }
    const std::vector<Rat>& coords() const { return c_; }

    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator-() const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic operator*(const Rat& r) const;
    Cyclotomic& operator+=(const Cyclotomic& o);
    /// Complex conjugate, z -> z^-1.
    Cyclotomic conj() const;
    /// Galois action z -> z^a, gcd(a, m) = 1.
    Cyclotomic galois(long a) const;
    /// The same number in Q(zeta_m2), m | m2, via zeta_m = zeta_m2^(m2/m).
    Cyclotomic embed(long m2) const;

    bool is_zero() const;
    bool is_rational() const;
    Rat rational_value() const;
    bool operator==(const Cyclotomic& o) const { return field_->m == o.field_->m && c_ == o.c_; }
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }
    bool operator<(const Cyclotomic& o) const { return c_ < o.c_; }
    std::string to_string() const;

private:
    void add_power(long k, const Rat& coeff);
    std::shared_ptr<const CyclotomicField> field_;
    std::vector<Rat> c_;
};

}  // namespace hurwitz
