#include "hurwitz/arith.hpp"

#include <numeric>

namespace hurwitz {

Rat make_rat(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Int floor_rat(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Rat frac(const Rat& x) { return x - Rat(floor_rat(x)); }

Rat frac_up(const Rat& x) { return Rat(1) - frac(-x); }

std::string rat_to_string(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw DomainError("rational_syntax", "cannot parse '" + s + "'");
    if (r.get_den() == 0) throw DomainError("rational_syntax", "zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

long gcd_l(long a, long b) { return std::gcd(a, b); }

long lcm_l(long a, long b) { return (a == 0 || b == 0) ? 0 : std::lcm(a, b); }

long mod_l(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

long inverse_mod(long a, long m) {
    if (m == 1) return 0;
    long t = 0, nt = 1, r = m, nr = mod_l(a, m);
    while (nr != 0) {
        long q = r / nr;
        long tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw DomainError("invertible_mod", std::to_string(a) + " is not a unit mod " + std::to_string(m));
    return mod_l(t, m);
}

long euler_phi(long n) {
    long result = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

int mobius(long n) {
    int sign = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            sign = -sign;
        }
    }
    if (n > 1) sign = -sign;
    return sign;
}

std::vector<long> divisors(long n) {
    std::vector<long> out;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

Int binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Int factorial(long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

}  // namespace hurwitz
