#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ldg {

// Exact arithmetic backbone. All quotient/measure masses are held as
// exact rationals; integer coloring counts as arbitrary-precision ints.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline double to_double(const Rat& q) { return q.get_d(); }

// log of a positive big integer, accurate to ~1 ulp of the mantissa.
inline double log_int(const Int& z) {
    if (z <= 0) throw std::domain_error("log_int: nonpositive");
    signed long exp2;
    double m = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log(m) + static_cast<double>(exp2) * M_LN2;
}

inline double log_rat(const Rat& q) {
    if (q <= 0) throw std::domain_error("log_rat: nonpositive");
    return log_int(q.get_num()) - log_int(q.get_den());
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline Rat parse_rat(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    q.canonicalize();
    return q;
}

inline Int int_pow(unsigned long base, unsigned long exp) {
    Int z;
    mpz_ui_pow_ui(z.get_mpz_t(), base, exp);
    return z;
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int z;
    mpz_bin_uiui(z.get_mpz_t(), n, k);
    return z;
}

// n! / (c_0! c_1! ... c_{m-1}!) with sum(c) == n.
inline Int multinomial(const std::vector<long>& counts) {
    Int z = 1;
    unsigned long acc = 0;
    for (long c : counts) {
        if (c < 0) throw std::invalid_argument("multinomial: negative count");
        acc += static_cast<unsigned long>(c);
        z *= binomial(acc, static_cast<unsigned long>(c));
    }
    return z;
}

// Thrown when an exact operation would exceed its enumeration budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr unsigned long kDefaultEnumerationBudget = 100'000'000UL;

}  // namespace ldg
