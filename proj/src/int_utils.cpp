#include "ecred/int_utils.hpp"

#include <algorithm>

namespace ecred {

namespace {

// Sieve for the trial-division stage, built once.
const std::vector<uint64_t>& small_primes() {
    static const std::vector<uint64_t> table = primes_below(1000000);
    return table;
}

bool miller_rabin(const Int& n, const Int& a) {
    if (mpz_divisible_p(n.get_mpz_t(), a.get_mpz_t()))
        return n == a;
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    Int x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1)
        return true;
    for (unsigned long i = 0; i + 1 < s; ++i) {
        x = x * x % n;
        if (x == n - 1)
            return true;
    }
    return false;
}

Int pollard_brent(const Int& n, unsigned long c0) {
    // Brent's cycle form of Pollard rho, x -> x^2 + c mod n. The parameter
    // schedule c = c0, c0+1, ... is fixed so runs are reproducible.
    for (unsigned long c = c0;; ++c) {
        Int x = 2, y = 2, d = 1, q = 1, ys = y;
        unsigned long r = 1;
        const unsigned long m = 128;
        while (d == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i)
                y = (y * y + c) % n;
            for (unsigned long k = 0; k < r && d == 1; k += m) {
                ys = y;
                unsigned long lim = std::min(m, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs_int(x - y) % n;
                }
                mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            r *= 2;
        }
        if (d == n) {
            // backtrack one step at a time
            do {
                ys = (ys * ys + c) % n;
                Int diff = abs_int(x - ys);
                mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (d == 1);
        }
        if (d != n)
            return d;
    }
}

void factor_into(Int n, std::vector<PrimePower>& out) {
    if (n == 1)
        return;
    if (is_prime(n)) {
        out.push_back({n, 1});
        return;
    }
    Int d = pollard_brent(n, 1);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

std::vector<uint64_t> primes_below(uint64_t bound) {
    std::vector<bool> comp(bound, false);
    std::vector<uint64_t> out;
    for (uint64_t i = 2; i < bound; ++i) {
        if (comp[i])
            continue;
        out.push_back(i);
        for (uint64_t j = i * i; j < bound; j += i)
            comp[j] = true;
    }
    return out;
}

bool is_prime(const Int& n) {
    if (n < 2)
        return false;
    static const unsigned long wit[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (unsigned long w : wit) {
        if (n == w)
            return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), w))
            return false;
    }
    // The 12 bases above are a complete test for n < 3.317e24
    // (Sorenson-Webster). Larger inputs fall back to GMP's BPSW+MR.
    static const Int det_bound("3317044064679887385961981");
    if (n < det_bound) {
        for (unsigned long w : wit)
            if (!miller_rabin(n, Int(w)))
                return false;
        return true;
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

unsigned valuation(const Int& n, const Int& p) {
    Int m = n;
    return valuation_remove(m, p);
}

unsigned valuation_remove(Int& n, const Int& p) {
    if (n == 0)
        throw std::domain_error("valuation: n must be nonzero");
    Int q;
    unsigned e = static_cast<unsigned>(
        mpz_remove(q.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
    n = q;
    return e;
}

Factorization factorize(const Int& n) {
    if (n == 0)
        throw std::domain_error("factorize: n must be nonzero");
    Factorization fac;
    fac.sign = mpz_sgn(n.get_mpz_t());
    Int m = abs_int(n);
    for (uint64_t p : small_primes()) {
        if (m == 1)
            break;
        if (Int(p) * p > m) {
            // remaining cofactor is prime
            fac.factors.push_back({m, 1});
            m = 1;
            break;
        }
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            Int q, pz(p);
            unsigned e = static_cast<unsigned>(
                mpz_remove(q.get_mpz_t(), m.get_mpz_t(), pz.get_mpz_t()));
            m = q;
            fac.factors.push_back({pz, e});
        }
    }
    if (m != 1) {
        std::vector<PrimePower> rest;
        factor_into(m, rest);
        std::sort(rest.begin(), rest.end(),
                  [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
        for (auto& pp : rest) {
            if (!fac.factors.empty() && fac.factors.back().prime == pp.prime)
                fac.factors.back().exponent += pp.exponent;
            else
                fac.factors.push_back(std::move(pp));
        }
    }
    return fac;
}

bool is_squarefree(const Int& n) {
    if (n == 0)
        throw std::domain_error("is_squarefree: n must be nonzero");
    for (const auto& pp : factorize(n).factors)
        if (pp.exponent >= 2)
            return false;
    return true;
}

Int radical(const Int& n) {
    Int r = 1;
    for (const auto& pp : factorize(n).factors)
        r *= pp.prime;
    return r;
}

} // namespace ecred
