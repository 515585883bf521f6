#ifndef ECRED_CHARSUM_HPP
#define ECRED_CHARSUM_HPP

#include <cstdint>
#include <vector>

#include "ecred/density.hpp"
#include "ecred/interval.hpp"
#include "ecred/kodaira.hpp"

namespace ecred {

/// Exact element of Z[zeta_N], N = p^k, stored on the power basis
/// zeta^0..zeta^{phi(N)-1} with single-step reduction through the
/// cyclotomic relation zeta^{phi(N)+r} = -sum_j zeta^{r + j p^{k-1}}.
class Cyclotomic {
  public:
    Cyclotomic(uint64_t p, unsigned k);

    static Cyclotomic root(uint64_t p, unsigned k, uint64_t j); // zeta^j
    static Cyclotomic integer(uint64_t p, unsigned k, const Int& m);

    void add_root(uint64_t j, const Int& coeff); // += coeff * zeta^j
    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic conj() const;
    bool is_zero() const;
    bool operator==(const Cyclotomic& o) const;

    /// Exact value when the element is rational (all non-constant
    /// coordinates zero); throws otherwise.
    Int rational_value() const;
    bool is_rational() const;

    /// |value|^2 as an interval at the embedding zeta = e(1/N).
    Interval abs2() const;

    uint64_t modulus() const { return N_; }

  private:
    uint64_t p_, N_;
    unsigned k_;
    size_t phi_;
    std::vector<Int> c_;
};

/// Character (a, b, c) mod N on monic cubics, chi(f) = e((a.a'+b.b'+c.c')/N).
struct CharacterTriple {
    uint64_t a, b, c;
    uint64_t N;
};

/// Indicator-like function on U(Z/NZ), values are small integers.
class ResidueFunction {
  public:
    ResidueFunction(uint64_t N) : N_(N), v_(N * N * N, 0) {}
    int32_t& at(uint64_t a, uint64_t b, uint64_t c) { return v_[(c * N_ + b) * N_ + a]; }
    int32_t at(uint64_t a, uint64_t b, uint64_t c) const { return v_[(c * N_ + b) * N_ + a]; }
    uint64_t modulus() const { return N_; }
    Int total() const;

  private:
    uint64_t N_;
    std::vector<int32_t> v_;
};

/// chi evaluated at one monic cubic residue: a root of unity.
Cyclotomic char_eval(const CharacterTriple& chi, uint64_t fa, uint64_t fb, uint64_t fc,
                     uint64_t p, unsigned k);

/// Direct Fourier sum phi-hat(chi) = sum_f phi(f) chi(f); N^3 at most 1e8.
Cyclotomic fourier_at(const ResidueFunction& phi, const CharacterTriple& chi, uint64_t p,
                      unsigned k);

/// N_p(T) and M_p(T) for T in {III, IV, I_{n>=2}}: the working modulus and
/// the translate count.
uint64_t charsum_modulus(const KodairaSymbol& T, uint64_t p, unsigned* k_out = nullptr);
uint64_t translate_modulus(const KodairaSymbol& T, uint64_t p);
unsigned exponent_kT(const KodairaSymbol& T); // |Phi0-hat| on support = p^{k_T}

/// Indicator of S_0(T) in U(Z/NZ).
ResidueFunction phi0_indicator(const KodairaSymbol& T, uint64_t p);
/// Phi_T = sum of the M translates of Phi_{0,T}.
ResidueFunction phi_T(const KodairaSymbol& T, uint64_t p);

/// Translation action on characters and the twist factor Psi_r.
CharacterTriple ga_action_char(uint64_t r, const CharacterTriple& chi);
Cyclotomic psi_r(uint64_t r, const CharacterTriple& chi, uint64_t p, unsigned k);
uint64_t delta2(const CharacterTriple& chi); // b^2 - a c mod N

/// Closed-form Fourier transform of Phi_{0,T} at chi: an integer multiple of
/// a single root of unity (or zero).
Cyclotomic phi0_hat(const KodairaSymbol& T, uint64_t p, const CharacterTriple& chi);
/// The same value as a plain integer (it always is one).
Int phi0_hat_value(const KodairaSymbol& T, uint64_t p, const CharacterTriple& chi);
/// Truth of "chi lies in the support of phi0_hat".
bool phi0_support(const KodairaSymbol& T, uint64_t p, const CharacterTriple& chi);

/// Number of r in [0, M) with r.chi in the support of phi0_hat.
uint64_t r_T_count(const KodairaSymbol& T, uint64_t p, const CharacterTriple& chi);

/// Phi_T-hat(chi) assembled from the transform law (exact).
Cyclotomic phi_T_hat(const KodairaSymbol& T, uint64_t p, const CharacterTriple& chi);

/// A splitting type: finitely many primes p >= 5 with symbols in
/// {III, IV, I_{n>=2}} and the derived invariants.
struct SplittingType {
    std::vector<std::pair<uint64_t, KodairaSymbol>> pairs;

    Int Q() const;       // prod p^{a_i}, a_i = 1 for III/IV, floor(n/2) for In
    Int m_III() const;
    Int m_IV() const;
    Int m_even() const;  // product over I_{2k}
    Int m_odd() const;   // product over I_{2k+1}
    Rat nu() const;      // product of table densities
};

/// Exact number of integer monic cubics with |a| <= Y^(1/6), |b| <= Y^(1/3),
/// |c| <= Y^(1/2) (inclusive integer-root bounds) and splitting type Sigma,
/// by box-counting over the congruence sublattice of Sigma.
Int count_splitting_type(const SplittingType& sigma, const Int& Y);

} // namespace ecred

#endif
