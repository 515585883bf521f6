#ifndef ECRED_INT_UTILS_HPP
#define ECRED_INT_UTILS_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace ecred {

using Int = mpz_class;
using Rat = mpq_class;

/// One prime power in a factorization.
struct PrimePower {
    Int prime;
    unsigned exponent;
};

/// Exact factorization of a nonzero integer: sign * prod(prime^exponent),
/// primes strictly increasing, exponents >= 1. |n| = 1 gives an empty list.
struct Factorization {
    int sign = 1;
    std::vector<PrimePower> factors;

    Int value() const {
        Int v = sign;
        for (const auto& pp : factors) {
            Int q;
            mpz_pow_ui(q.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
            v *= q;
        }
        return v;
    }
};

/// Deterministic primality for the sizes we factor. Miller-Rabin with a base
/// set proven complete below 3.3e24; BPSW-style mpz_probab_prime_p beyond.
bool is_prime(const Int& n);

/// Largest e with p^e | n. Rejects n = 0.
unsigned valuation(const Int& n, const Int& p);

/// valuation plus the cofactor n / p^e.
unsigned valuation_remove(Int& n, const Int& p);

/// Trial division to 10^6, then Brent-Pollard rho with fixed deterministic
/// parameter schedule. Rejects n = 0.
Factorization factorize(const Int& n);

/// True iff no prime square divides n. Rejects n = 0.
bool is_squarefree(const Int& n);

/// rad(n): product of distinct primes dividing n (n != 0).
Int radical(const Int& n);

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int abs_int(const Int& n) {
    Int r;
    mpz_abs(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

/// Primes in [2, bound) by sieve.
std::vector<uint64_t> primes_below(uint64_t bound);

} // namespace ecred

#endif
