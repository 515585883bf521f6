#ifndef ECRED_CLASSIFY_HPP
#define ECRED_CLASSIFY_HPP

#include <optional>
#include <vector>

#include "ecred/forms.hpp"
#include "ecred/kodaira.hpp"

namespace ecred {

/// Short Weierstrass curve y^2 = x^3 + A x + B.
struct WeierstrassCurve {
    Int A, B;
    Int disc() const { return -4 * A * A * A - 27 * B * B; } // Delta(A,B)
    Int height() const;                                      // max(4|A|^3, 27 B^2)
};

struct UnclassifiableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Remove all p^4 | A, p^6 | B reductions. Rejects Delta = 0.
WeierstrassCurve minimalize(const Int& A, const Int& B);

bool is_minimal(const WeierstrassCurve& E);
bool is_minimal_at(const WeierstrassCurve& E, const Int& p);

/// Kodaira symbol at p >= 5 from the valuation pattern of (A, B, Delta).
/// Requires E minimal at p and Delta != 0.
KodairaSymbol classify_by_valuations(const WeierstrassCurve& E, const Int& p);

struct TranslationResult {
    KodairaSymbol symbol;
    Int t; // witness shift: f(x + t) matches the symbol's congruence row
};

/// Kodaira symbol at p >= 5 by locating the translate whose coefficient
/// valuations match a congruence row. Independent route from
/// classify_by_valuations: the small rows are matched by an explicit search
/// for t (Hensel refinement toward the critical point in the multiplicative
/// case), and large inputs are reduced by the twist x^3+ax^2+bx+c ->
/// x^3+(a/p)x^2+(b/p^2)x+(c/p^3) and classified small.
TranslationResult classify_by_translation(const MonicCubic& f, const Int& p);

/// True iff the traceless model x^3 + Ax + B of f has v_p(A) < 2 or
/// v_p(B) < 3. Rejects non-minimal f.
bool is_small(const MonicCubic& f, const Int& p);

/// Quadratic twist by p on traceless models: multiply (A, B) by (p^2, p^3)
/// when small, divide when large. An involution on minimal classes.
WeierstrassCurve twist_by_p(const WeierstrassCurve& E, const Int& p);

/// Global invariants of a curve with good reduction at 2 and 3. Delta(E) is
/// the prime-to-6 part of Delta(A,B) with its sign; C, index, Q are positive
/// and D carries the sign of Delta(E).
struct GlobalInvariants {
    Int delta_E;    // signed
    Int conductor;  // prod p^{c_exp}
    Int index;      // delta/conductor magnitude
    Int q_inv;      // prod p^{q_exp}
    Int d_inv;      // signed, prod p^{d_exp} with sign of delta_E
    std::vector<LocalData> locals;
};

/// Requires E minimal with good reduction at 2 and 3 (congruence-table
/// membership is the caller's responsibility for the fast path; this checks
/// gcd(Delta_E, 6) = 1 after stripping and that stripping exponents are
/// admissible: v2 in {0,8,12}, v3 in {0,12}).
GlobalInvariants global_invariants(const WeierstrassCurve& E);

} // namespace ecred

#endif
