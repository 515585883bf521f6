#ifndef ECRED_RESIDUE_CLASSIFY_HPP
#define ECRED_RESIDUE_CLASSIFY_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "ecred/kodaira.hpp"

namespace ecred {

/// What can be said about the Kodaira symbol of *every* lift of a traceless
/// residue pair (A, B) mod p^k. Exact means all lifts share one symbol;
/// the partial kinds pin the class down to a family; Unknown means lifts
/// disagree in a way the listed kinds cannot express at this depth.
struct CappedClass {
    enum Kind {
        Exact,           // symbol determined
        MultAtLeast,     // I_n with n >= n_lo
        StarMultAtLeast, // I_n* with n >= n_lo
        AdditiveSmall,   // II, III or IV, row undetermined
        AdditiveOrLarge, // v(A) >= 1 and v(B) >= 1: anything additive, or non-minimal
        LargeUndet,      // large: starred symbol or non-minimal
        LargeBadUndet,   // large with p | Delta of the twist: starred != I0*, or non-minimal
        StarAdditive,    // IV*, III* or II*, row undetermined
        StarAdditiveOrNonMin, // IV*, III*, II* or non-minimal
        NonMinimal,      // p^4 | A and p^6 | B for every lift
        BadUndet,        // p | Delta for every lift, nothing else pinned
        Unknown
    } kind = Unknown;
    KodairaSymbol sym;
    unsigned n_lo = 0;
};

/// Truncation-aware translation classifier on the traceless plane:
/// (A, B) are residues mod p^k, p >= 5, k >= 1, p^k < 2^40.
CappedClass classify_residue(uint64_t A, uint64_t B, uint64_t p, unsigned k);

enum class TriState { Yes, No, Undetermined };

/// Decision targets over CappedClass.
struct SymbolTarget {
    KodairaSymbol T;
    TriState decide(const CappedClass& c) const;
};

/// v_p(index) = k_index, optionally restricted to one reduction type.
struct IndexTarget {
    unsigned k_index;
    bool restrict_type = false;
    ReductionType type = ReductionType::good;
    TriState decide(const CappedClass& c) const;
};

/// A leaf of the adaptive refinement of the (A, B) plane: the full residue
/// class (A0 + p^k Z) x (B0 + p^k Z) decides the target affirmatively.
struct PlaneLeaf {
    uint64_t A, B;
    unsigned k;
};

struct EnumerationStats {
    uint64_t nodes_visited = 0;
    uint64_t yes_leaves = 0;
    unsigned max_depth = 0;
};

struct BudgetExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UndeterminedResidueError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Adaptive complete enumeration of the plane mod p^max_depth: refines
/// residues digit by digit, emitting YES leaves and discarding NO ones.
/// Residues still undetermined at max_depth raise UndeterminedResidueError
/// (the caller's modulus exponent is too small); visiting more than
/// node_budget residues (in total across strips) raises BudgetExceededError.
/// With threads > 1 the depth-1 cells are partitioned round-robin into
/// strips processed concurrently; leaves merge in strip order, so the
/// result does not depend on the partitioning.
template <class Target>
std::vector<PlaneLeaf> enumerate_plane(uint64_t p, unsigned max_depth, const Target& target,
                                       EnumerationStats* stats = nullptr,
                                       uint64_t node_budget = 1000000000ull,
                                       unsigned threads = 1);

extern template std::vector<PlaneLeaf> enumerate_plane<SymbolTarget>(uint64_t, unsigned,
                                                                     const SymbolTarget&,
                                                                     EnumerationStats*, uint64_t,
                                                                     unsigned);
extern template std::vector<PlaneLeaf> enumerate_plane<IndexTarget>(uint64_t, unsigned,
                                                                    const IndexTarget&,
                                                                    EnumerationStats*, uint64_t,
                                                                    unsigned);

} // namespace ecred

#endif
