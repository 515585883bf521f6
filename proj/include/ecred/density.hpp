#ifndef ECRED_DENSITY_HPP
#define ECRED_DENSITY_HPP

#include <optional>
#include <string>

#include "ecred/residue_classify.hpp"

namespace ecred {

/// Result of one exact density computation over (Z/p^m)^3.
struct DensityReport {
    Int p;
    std::string target;     // "I2", "index k=3 (additive)", ...
    unsigned modulus_exp;   // m
    Int favorable;          // count of favorable triples mod p^m
    Int total;              // p^{3m}
    Rat density;            // favorable / total, lowest terms
    Rat expected;           // table value
    bool match;
    EnumerationStats stats;
};

/// Starting depth heuristics from the congruence rows; sufficiency is proved
/// at run time by the zero-undetermined contract of the enumeration.
unsigned suggested_modulus_exp(const KodairaSymbol& T);
unsigned suggested_modulus_exp_index(unsigned k_index);

/// Exact density of minimal monic cubics over Z_p with Kodaira symbol T,
/// by complete adaptive enumeration of the traceless plane mod p^m (the
/// x^2-coefficient direction is measure-free for this count). Errors if any
/// residue stays undetermined at depth m or the node budget is exceeded.
DensityReport count_symbol_density(uint64_t p, const KodairaSymbol& T, unsigned m,
                                   uint64_t node_budget = 1000000000ull);

/// Exact density of v_p(index) = k, optionally split by reduction type.
DensityReport count_index_density(uint64_t p, unsigned k, unsigned m,
                                  std::optional<ReductionType> type = std::nullopt,
                                  uint64_t node_budget = 1000000000ull);

/// Index-density table value (derived from the local-invariant table):
/// the density of minimal f over Z_p with v_p(ind) = k and the given
/// reduction type (nullopt = total column).
Rat index_density_table(const Int& p, unsigned k, std::optional<ReductionType> type);

/// Plane mass of the YES leaves: sum of p^{-2k}.
Rat leaf_mass(const std::vector<PlaneLeaf>& leaves, uint64_t p);

} // namespace ecred

#endif
