#ifndef ECRED_GOODRED_HPP
#define ECRED_GOODRED_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "ecred/int_utils.hpp"

namespace ecred {

/// One congruence row describing curves with good reduction at 2 or at 3:
/// the set of residue pairs (A, B) modulo (a_mod, b_mod), listed explicitly,
/// with the fixed 2- or 3-part of Delta(A,B) on that row.
struct GoodRedRow {
    uint64_t a_mod, b_mod;
    std::vector<std::pair<uint64_t, uint64_t>> pairs; // (A mod a_mod, B mod b_mod)
    unsigned delta_exp;                               // v_p(Delta(A,B)) on the row
    bool a_coprime = false; // row means "p does not divide A" (B free); pairs empty
};

/// Rows at p = 2: one (mod 2^4, 2^6) row and eight coupled (mod 2^7) rows,
/// every one with v2(Delta) = 8. Total density 2^-10 + 8 * 2^-13.
const std::vector<GoodRedRow>& good_red_rows_2();

/// Rows at p = 3: the 3 coprime-A row with v3(Delta) = 0 plus ten rows with
/// v3(Delta) = 12. Total density 2/3 + 2*3^-11 + 9*4*3^-13.
const std::vector<GoodRedRow>& good_red_rows_3();

/// Membership of an integer pair in some row (good reduction at that prime).
/// Returns the row's delta_exp, or nullopt.
std::optional<unsigned> good_red_match(const Int& A, const Int& B, int p);

inline bool has_good_reduction_23(const Int& A, const Int& B) {
    return good_red_match(A, B, 2) && good_red_match(A, B, 3);
}

} // namespace ecred

#endif
