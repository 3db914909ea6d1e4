#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hurwitz {

using Int = mpz_class;
using Rat = mpq_class;

/// Raised when an operation's precondition fails on valid-looking input.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string precondition, const std::string& what)
        : std::runtime_error(precondition + ": " + what), precondition_(std::move(precondition)) {}
    const std::string& precondition() const { return precondition_; }

private:
    std::string precondition_;
};

Rat make_rat(long num, long den = 1);
Int floor_rat(const Rat& x);
/// Fractional part <x> in [0,1).
Rat frac(const Rat& x);
/// <<x>> = 1 - <-x>, equal to 1 at integers.
Rat frac_up(const Rat& x);

/// "num/den", or just "num" when the value is an integer.
std::string rat_to_string(const Rat& x);
Rat rat_from_string(const std::string& s);

long gcd_l(long a, long b);
long lcm_l(long a, long b);
long mod_l(long a, long m);
long inverse_mod(long a, long m);
long euler_phi(long n);
int mobius(long n);
std::vector<long> divisors(long n);

Int binomial(long n, long k);
Int factorial(long n);

}  // namespace hurwitz
