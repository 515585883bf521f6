#ifndef ECRED_QUARTIC_HPP
#define ECRED_QUARTIC_HPP

#include <array>

#include "ecred/forms.hpp"

namespace ecred {

/// Quartic with a marked integral zero [alpha : beta], gcd(alpha, beta) = 1.
struct RootedQuartic {
    BinaryQuarticForm g;
    Int alpha, beta;
};

/// 2x2 integer matrix with determinant +-1, acting on forms by
/// (gamma . g)(x, y) = g((x, y) gamma) / det^2 and on roots by
/// [alpha : beta] gamma^{-1}.
struct UnimodularMatrix {
    Int a, b, c, d; // rows (a b), (c d)
    Int det() const { return a * d - b * c; }
};

BinaryQuarticForm act_on_quartic(const UnimodularMatrix& m, const BinaryQuarticForm& g);
RootedQuartic pgl2_act(const UnimodularMatrix& m, const RootedQuartic& rq);

/// The cubic cofactor h = g / (beta x - alpha y); throws if the division is
/// not exact (the root is not a root) or g = 0.
BinaryCubicForm cubic_cofactor(const RootedQuartic& rq);

/// Q = h(alpha, beta) and D = disc(h); Delta(g) = Q^2 D.
struct RootedInvariants {
    Int Q, D;
};
RootedInvariants q_d_rooted(const RootedQuartic& rq);

/// The embedding of a minimal traceless cubic with index n = Q(f): find the
/// translate f(x+r) = x^3 + a x^2 + (b n) x + (c n^2) with 0 <= r < n, form
/// h = n x^3 + a x^2 y + b x y^2 + c y^3 and return (y h, [1:0]).
/// Throws when no admissible translate exists (inconsistent n).
RootedQuartic embed_sigma(const MonicCubic& f_traceless, const Int& n);

/// Basis of the lattice of integral quartics vanishing at coprime
/// [alpha : beta] (the t = 1 specialization).
std::array<BinaryQuarticForm, 4> lattice_basis(const Int& alpha, const Int& beta);

/// The quartic (beta x - alpha y)(a1 x^3 + a2 x^2 y + a3 x y^2 + a4 y^3)
/// together with its root.
RootedQuartic tuple_to_form(const Int& alpha, const Int& beta, const Int& a1, const Int& a2,
                            const Int& a3, const Int& a4);

/// T_{alpha,beta}(a1,a2,a3) = disc3(a1 b^3, a2 b^3, a3 b^3,
/// -(a1 a^3 + a2 a^2 b + a3 a b^2)); any common divisor of Q and D of the
/// corresponding rooted form divides it.
Int t_alpha_beta(const Int& alpha, const Int& beta, const Int& a1, const Int& a2, const Int& a3);

} // namespace ecred

#endif
