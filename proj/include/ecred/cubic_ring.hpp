#ifndef ECRED_CUBIC_RING_HPP
#define ECRED_CUBIC_RING_HPP

#include <array>
#include <vector>

#include "ecred/forms.hpp"

namespace ecred {

/// Invariants of the cubic ring R_f = Z[x]/f: Disc(R_f) = q_index^2 * disc_field.
struct CubicRingInvariants {
    Int disc_order;  // Disc R_f = disc(f)
    Int q_index;     // [O_f : R_f]
    Int disc_field;  // Disc K_f (signed)
    BinaryCubicForm maximal_form; // Delone-Faddeev form of O_f from saturation
};

/// Dedekind criterion for p-maximality of Z[x]/f, f monic cubic with
/// nonzero discriminant. With fbar = gbar * hbar (hbar = gcd(fbar, fbar'),
/// gbar the radical), lift to monic g, h and set T = (g h - f)/p; the ring is
/// p-maximal iff gcd(Tbar, gbar, hbar) = 1 in F_p[x].
bool is_p_maximal(const MonicCubic& f, const Int& p);

/// Index-p saturation of the cubic ring of a binary cubic form at p, by form
/// surgery: a multiple root of F mod p moved to [0:1] with p^2 | d admits the
/// index-p superring (pa, b, c/p, d/p^2); forms with content p drop to F/p,
/// an index-p^2 step. Returns v_p([O : R_F]) and the form of the p-maximal
/// overring reached.
struct SaturationStep {
    enum Kind {
        TranslateX,       // F(x + r y, y)
        DivideRootAffine, // (pa, b, c/p, d/p^2) after the root was moved to [0:1]
        DivideRootInf,    // (a/p^2, b/p, c, pd) at the root [1:0]
        DivideContent     // F/p
    } kind;
    Int r;              // TranslateX shift
    BinaryCubicForm pre; // form before this step
};
unsigned saturate_at(BinaryCubicForm& F, const Int& p,
                     std::vector<SaturationStep>* trace = nullptr);

/// Full Q/D invariants of a monic cubic by saturation at every prime whose
/// square divides the discriminant. Rejects disc = 0.
CubicRingInvariants q_and_d(const MonicCubic& f);

/// The Delone-Faddeev form of the maximal order reached by saturation.
BinaryCubicForm delone_faddeev_form(const MonicCubic& f);

/// Basis of a cubic ring inside K = Q[x]/f, rows = coordinates of the three
/// basis vectors (first is 1) over the power basis {1, x, x^2}.
struct RingBasis {
    MonicCubic f;                          // defining cubic of K
    std::array<std::array<Rat, 3>, 3> rows;

    /// Multiplication closure check: all pairwise products of basis vectors
    /// lie in the lattice.
    bool is_ring() const;
    /// Disc of the lattice under the trace form.
    Rat disc() const;
};

/// Power basis of Z[x]/f.
RingBasis ring_of(const MonicCubic& f);

/// Maximal order of K_f as a lattice: saturation with basis tracking.
/// Each surgery's basis update is verified by a ring-closure and
/// discriminant assertion. Requires disc(f) != 0 and f irreducible not
/// required (etale algebras allowed).
RingBasis maximal_order(const MonicCubic& f, Int* q_index = nullptr);

/// Brute-force oracle: does the lattice have an index-p superring
/// (checked over all p^2+p+1 candidate directions)? Intended for small p in
/// tests.
bool has_index_p_superring(const RingBasis& L, const Int& p, RingBasis* out = nullptr);

} // namespace ecred

#endif
