#include "ecred/classify.hpp"

#include <limits>

#include "ecred/goodred.hpp"

namespace ecred {

namespace {

constexpr unsigned kInf = std::numeric_limits<unsigned>::max();

unsigned val_or_inf(const Int& n, const Int& p) {
    return n == 0 ? kInf : valuation(n, p);
}

Int mod_pk(const Int& x, const Int& pk) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), pk.get_mpz_t());
    return r;
}

Int inv_mod(const Int& x, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::logic_error("inv_mod: not invertible");
    return r;
}

// valuations of the traceless model, computed denominator-free:
// v_p(A) = v_p(3b - a^2), v_p(B) = v_p(27c - 9ab + 2a^3) for p >= 5.
void traceless_valuations(const MonicCubic& f, const Int& p, unsigned& vA, unsigned& vB) {
    Int A3 = 3 * f.b - f.a * f.a;
    Int B27 = 27 * f.c - 9 * f.a * f.b + 2 * f.a * f.a * f.a;
    vA = val_or_inf(A3, p);
    vB = val_or_inf(B27, p);
}

// Repeated root of f mod p when p | disc(f): returns r with f(r) = f'(r) = 0
// mod p and whether it is a triple root. Uses the gcd structure rather than
// scanning residues.
struct RepeatedRoot {
    Int r;
    bool triple;
};

RepeatedRoot repeated_root_mod_p(const MonicCubic& f, const Int& p) {
    // Triple root iff f(x + r0) = x^3 mod p for r0 = -a/3.
    Int r0 = mod_pk(-f.a * inv_mod(Int(3), p), p);
    if (mod_pk(f.eval(r0), p) == 0 && mod_pk(f.deriv(r0), p) == 0 &&
        mod_pk(f.a + 3 * r0, p) == 0)
        return {r0, true};
    // Otherwise the double root is the common root of f and f', which is the
    // root of the linear Euclid remainder:
    // 27 f(x) = (3x + a)(3 f'(x)) + (18b - 6a^2) x + (27c - 3ab).
    Int c1 = mod_pk(18 * f.b - 6 * f.a * f.a, p);
    Int c0 = mod_pk(27 * f.c - 3 * f.a * f.b, p);
    // c1 = 0 would mean a triple root (handled above) or no repeated root
    // (contradicts p | disc).
    if (c1 == 0)
        throw UnclassifiableError("repeated_root_mod_p: degenerate remainder");
    Int r = mod_pk(-c0 * inv_mod(c1, p), p);
    if (mod_pk(f.eval(r), p) != 0 || mod_pk(f.deriv(r), p) != 0)
        throw UnclassifiableError("repeated_root_mod_p: no repeated root found");
    return {r, false};
}

// Small-case classification: f is p-minimal and small, n = v_p(disc f) >= 1.
TranslationResult classify_small(const MonicCubic& f, const Int& p, unsigned n) {
    RepeatedRoot rr = repeated_root_mod_p(f, p);
    if (rr.triple) {
        // additive rows II / III / IV, decided by the translate at the lifted
        // triple root (valuations are stable across lifts)
        MonicCubic g = f.translate(rr.r);
        unsigned va = val_or_inf(g.a, p);
        unsigned vb = val_or_inf(g.b, p);
        unsigned vc = val_or_inf(g.c, p);
        if (va >= 1 && vb >= 1 && vc == 1)
            return {KodairaSymbol::II(), rr.r};
        if (va >= 1 && vb == 1 && vc >= 2)
            return {KodairaSymbol::III(), rr.r};
        if (va >= 1 && vb >= 2 && vc == 2)
            return {KodairaSymbol::IV(), rr.r};
        throw UnclassifiableError("classify_small: no additive row matches");
    }
    // multiplicative row I_n: refine t to the critical point of f near the
    // double root (Newton on f'; f''(t) is a unit here), then check the row
    // p not dividing a', p^ceil(n/2) | b', p^n || c'.
    Int pK = pow_int(p, n + 2);
    Int t = rr.r;
    for (int it = 0; it < 64; ++it) {
        Int ft = mod_pk(f.deriv(t), pK);
        if (ft == 0)
            break;
        Int fpp = 6 * t + 2 * f.a; // f''
        t = mod_pk(t - ft * inv_mod(fpp, pK), pK);
    }
    MonicCubic g = f.translate(t);
    unsigned va = val_or_inf(g.a, p);
    unsigned vb = val_or_inf(g.b, p);
    unsigned vc = val_or_inf(g.c, p);
    if (va == 0 && vb >= (n + 1) / 2 && vc == n)
        return {KodairaSymbol::In(n), t};
    throw UnclassifiableError("classify_small: multiplicative row mismatch");
}

} // namespace

Int WeierstrassCurve::height() const {
    Int h1 = 4 * abs_int(A) * A * A;
    mpz_abs(h1.get_mpz_t(), h1.get_mpz_t());
    Int h2 = 27 * B * B;
    return h1 > h2 ? h1 : h2;
}

WeierstrassCurve minimalize(const Int& A, const Int& B) {
    if (-4 * A * A * A - 27 * B * B == 0)
        throw std::domain_error("minimalize: Delta(A,B) = 0");
    WeierstrassCurve E{A, B};
    Int g = A == 0 ? abs_int(B) : (B == 0 ? abs_int(A) : gcd(A, B));
    for (const auto& pp : factorize(g).factors) {
        const Int& p = pp.prime;
        Int p4 = pow_int(p, 4), p6 = pow_int(p, 6);
        while ((E.A == 0 || mpz_divisible_p(E.A.get_mpz_t(), p4.get_mpz_t())) &&
               (E.B == 0 || mpz_divisible_p(E.B.get_mpz_t(), p6.get_mpz_t()))) {
            E.A /= p4;
            E.B /= p6;
        }
    }
    return E;
}

bool is_minimal_at(const WeierstrassCurve& E, const Int& p) {
    Int p4 = pow_int(p, 4), p6 = pow_int(p, 6);
    bool a_div = E.A == 0 || mpz_divisible_p(E.A.get_mpz_t(), p4.get_mpz_t());
    bool b_div = E.B == 0 || mpz_divisible_p(E.B.get_mpz_t(), p6.get_mpz_t());
    return !(a_div && b_div);
}

bool is_minimal(const WeierstrassCurve& E) {
    Int g = E.A == 0 ? abs_int(E.B) : (E.B == 0 ? abs_int(E.A) : gcd(E.A, E.B));
    if (g == 0)
        return true;
    for (const auto& pp : factorize(g).factors)
        if (!is_minimal_at(E, pp.prime))
            return false;
    return true;
}

KodairaSymbol classify_by_valuations(const WeierstrassCurve& E, const Int& p) {
    if (p < 5)
        throw std::domain_error("classify_by_valuations: p >= 5 required");
    Int D = E.disc();
    if (D == 0)
        throw std::domain_error("classify_by_valuations: Delta = 0");
    unsigned vD = valuation(D, p);
    if (vD == 0)
        return KodairaSymbol::I0();
    unsigned vA = val_or_inf(E.A, p);
    unsigned vB = val_or_inf(E.B, p);
    if (vA >= 4 && vB >= 6)
        throw std::domain_error("classify_by_valuations: curve not minimal at p");
    if (vA == 0)
        return KodairaSymbol::In(vD);
    // additive: vA >= 1 forces vB >= 1 since vD > 0
    if (vB == 1)
        return KodairaSymbol::II();
    if (vA == 1)
        return KodairaSymbol::III();
    if (vB == 2)
        return KodairaSymbol::IV();
    if (vA == 2)
        return vD == 6 ? KodairaSymbol::I0star() : KodairaSymbol::Instar(vD - 6);
    if (vB == 3)
        return KodairaSymbol::I0star();
    if (vB == 4)
        return KodairaSymbol::IVstar();
    if (vA == 3)
        return KodairaSymbol::IIIstar();
    if (vB == 5)
        return KodairaSymbol::IIstar();
    throw UnclassifiableError("classify_by_valuations: no row matches");
}

TranslationResult classify_by_translation(const MonicCubic& f, const Int& p) {
    if (p < 5)
        throw std::domain_error("classify_by_translation: p >= 5 required");
    Int D = f.disc();
    if (D == 0)
        throw std::domain_error("classify_by_translation: Delta = 0");
    unsigned vD = valuation(D, p);
    if (vD == 0)
        return {KodairaSymbol::I0(), Int(0)};
    unsigned vA, vB;
    traceless_valuations(f, p, vA, vB);
    if (vA >= 4 && vB >= 6)
        throw std::domain_error("classify_by_translation: not minimal at p");
    if (vA < 2 || vB < 3)
        return classify_small(f, p, vD);
    // large: translate so the x^2 coefficient vanishes mod p^K, divide the
    // twist out, classify the small companion, and apply sigma
    Int pK = pow_int(p, vD + 2);
    Int t = mod_pk(-f.a * inv_mod(Int(3), pK), pK);
    MonicCubic g = f.translate(t);
    if (!mpz_divisible_p(g.a.get_mpz_t(), p.get_mpz_t()))
        throw std::logic_error("classify_by_translation: twist normalization failed");
    Int p2 = p * p, p3 = p2 * p;
    if (!mpz_divisible_p(g.b.get_mpz_t(), p2.get_mpz_t()) ||
        !mpz_divisible_p(g.c.get_mpz_t(), p3.get_mpz_t()))
        throw std::logic_error("classify_by_translation: large case divisibility failed");
    MonicCubic down{g.a / p, g.b / p2, g.c / p3};
    unsigned nd = vD - 6;
    TranslationResult sub =
        nd == 0 ? TranslationResult{KodairaSymbol::I0(), Int(0)} : classify_small(down, p, nd);
    return {sigma_twist(sub.symbol), t + p * sub.t};
}

bool is_small(const MonicCubic& f, const Int& p) {
    unsigned vA, vB;
    traceless_valuations(f, p, vA, vB);
    if (vA >= 4 && vB >= 6)
        throw std::domain_error("is_small: f not minimal at p");
    return vA < 2 || vB < 3;
}

WeierstrassCurve twist_by_p(const WeierstrassCurve& E, const Int& p) {
    unsigned vA = val_or_inf(E.A, p);
    unsigned vB = val_or_inf(E.B, p);
    if (vA >= 4 && vB >= 6)
        throw std::domain_error("twist_by_p: curve not minimal at p");
    Int p2 = p * p, p3 = p2 * p;
    if (vA < 2 || vB < 3)
        return {E.A * p2, E.B * p3};
    return {E.A / p2, E.B / p3};
}

GlobalInvariants global_invariants(const WeierstrassCurve& E) {
    Int D = E.disc();
    if (D == 0)
        throw std::domain_error("global_invariants: Delta = 0");
    if (!is_minimal(E))
        throw std::domain_error("global_invariants: curve not minimal");
    if (!has_good_reduction_23(E.A, E.B))
        throw std::domain_error("global_invariants: bad reduction at 2 or 3");
    GlobalInvariants g;
    Int rest = D;
    unsigned v2 = valuation_remove(rest, Int(2));
    unsigned v3 = valuation_remove(rest, Int(3));
    if (!(v2 == 8 && (v3 == 0 || v3 == 12)))
        throw std::logic_error("global_invariants: unexpected 2,3-part of Delta(A,B)");
    g.delta_E = rest;
    g.conductor = 1;
    g.index = 1;
    g.q_inv = 1;
    Int d_mag = 1;
    for (const auto& pp : factorize(rest).factors) {
        KodairaSymbol sym = classify_by_valuations(E, pp.prime);
        LocalData ld = local_data(sym, pp.prime);
        if (ld.delta_exp != pp.exponent)
            throw std::logic_error("global_invariants: delta exponent mismatch");
        g.locals.push_back(ld);
        g.conductor *= pow_int(pp.prime, ld.c_exp);
        g.index *= pow_int(pp.prime, ld.index_exp);
        g.q_inv *= pow_int(pp.prime, ld.q_exp);
        d_mag *= pow_int(pp.prime, ld.d_exp);
    }
    g.d_inv = mpz_sgn(rest.get_mpz_t()) < 0 ? -d_mag : d_mag;
    return g;
}

} // namespace ecred
