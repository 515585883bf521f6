#include "ecred/cubic_ring.hpp"

#include <stdexcept>

namespace ecred {

namespace {

Int mod_p(const Int& x, const Int& p) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
    return r;
}

Int inv_p(const Int& x, const Int& p) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()) == 0)
        throw std::logic_error("inv_p: not invertible");
    return r;
}

// dense polynomials over F_p, lowest degree first
using Poly = std::vector<Int>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

Poly poly_mod(const Poly& a, const Int& p) {
    Poly r = a;
    for (auto& c : r)
        c = mod_p(c, p);
    trim(r);
    return r;
}

// remainder of a by monic-ized b over F_p
Poly poly_rem(Poly a, Poly b, const Int& p) {
    trim(a);
    trim(b);
    if (b.empty())
        throw std::logic_error("poly_rem: division by zero");
    Int lead_inv = inv_p(b.back(), p);
    while (a.size() >= b.size()) {
        Int q = mod_p(a.back() * lead_inv, p);
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i)
            a[shift + i] = mod_p(a[shift + i] - q * b[i], p);
        trim(a);
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b, const Int& p) {
    a = poly_mod(a, p);
    b = poly_mod(b, p);
    while (!b.empty()) {
        Poly r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    // monic normalization
    if (!a.empty()) {
        Int inv = inv_p(a.back(), p);
        for (auto& c : a)
            c = mod_p(c * inv, p);
    }
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

// quotient over F_p assuming b | a mod p, b with unit leading coefficient
Poly poly_div_mod(Poly a, const Poly& b, const Int& p) {
    a = poly_mod(a, p);
    Poly q;
    if (a.size() < b.size())
        return q;
    Int lead_inv = inv_p(b.back(), p);
    q.assign(a.size() - b.size() + 1, Int(0));
    while (a.size() >= b.size() && !a.empty()) {
        Int c = mod_p(a.back() * lead_inv, p);
        size_t shift = a.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i)
            a[shift + i] = mod_p(a[shift + i] - c * b[i], p);
        trim(a);
    }
    if (!a.empty())
        throw std::logic_error("poly_div_mod: not divisible");
    return q;
}

} // namespace

namespace {

Poly poly_powmod(Poly base, Int e, const Poly& mod, const Int& p) {
    Poly r = {Int(1)};
    base = poly_rem(poly_mod(base, p), mod, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            r = poly_mod(poly_rem(poly_mul(r, base), mod, p), p);
        base = poly_mod(poly_rem(poly_mul(base, base), mod, p), p);
        e /= 2;
    }
    return r;
}

Int sqrt_mod_p(const Int& n, const Int& p) { // n a QR mod p, p odd
    Int a = mod_p(n, p);
    if (a == 0)
        return 0;
    if (mod_p(p, Int(4)) == 3) {
        Int r;
        Int e = (p + 1) / 4;
        mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return r;
    }
    // Tonelli-Shanks
    Int q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    Int z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1)
        ++z;
    Int m(static_cast<unsigned long>(s)), c, t, r;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    Int e2 = (q + 1) / 2;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e2.get_mpz_t(), p.get_mpz_t());
    while (t != 1) {
        Int tt = t;
        unsigned long i = 0;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        Int b = c;
        unsigned long gap = mpz_get_ui(m.get_mpz_t()) - i - 1;
        for (unsigned long j = 0; j < gap; ++j)
            b = b * b % p;
        m = static_cast<unsigned long>(i);
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

// distinct roots of a nonzero polynomial of degree <= 3 over F_p
std::vector<Int> poly_roots_mod_p(const Poly& fin, const Int& p) {
    Poly fbar = poly_mod(fin, p);
    std::vector<Int> roots;
    if (fbar.empty())
        throw std::logic_error("poly_roots_mod_p: zero polynomial");
    if (p < 50) {
        for (Int r = 0; r < p; ++r) {
            Int v = 0;
            for (size_t i = fbar.size(); i-- > 0;)
                v = mod_p(v * r + fbar[i], p);
            if (v == 0)
                roots.push_back(r);
        }
        return roots;
    }
    // product of distinct linear factors: gcd(x^p - x, fbar)
    Poly xp = poly_powmod({Int(0), Int(1)}, p, fbar, p);
    if (xp.size() < 2)
        xp.resize(2, Int(0));
    xp[1] = mod_p(xp[1] - 1, p);
    trim(xp);
    Poly R = poly_gcd(fbar, xp, p);
    std::vector<Poly> work = {R};
    while (!work.empty()) {
        Poly g = work.back();
        work.pop_back();
        trim(g);
        if (g.size() <= 1)
            continue;
        if (g.size() == 2) {
            roots.push_back(mod_p(-g[0] * inv_p(g[1], p), p));
            continue;
        }
        if (g.size() == 3) {
            // two distinct roots via the quadratic formula
            Int a = g[2], b = g[1], c = g[0];
            Int disc = mod_p(b * b - 4 * a * c, p);
            Int s = sqrt_mod_p(disc, p);
            Int i2a = inv_p(2 * a, p);
            roots.push_back(mod_p((-b + s) * i2a, p));
            roots.push_back(mod_p((-b - s) * i2a, p));
            continue;
        }
        // fully split cubic: deterministic Cantor-Zassenhaus sweep
        for (Int sft = 0;; ++sft) {
            Poly shifted = {sft, Int(1)};
            Poly t = poly_powmod(shifted, (p - 1) / 2, g, p);
            if (!t.empty())
                t[0] = mod_p(t[0] - 1, p);
            trim(t);
            Poly h = poly_gcd(g, t, p);
            if (h.size() > 1 && h.size() < g.size()) {
                work.push_back(h);
                work.push_back(poly_div_mod(g, h, p));
                break;
            }
        }
    }
    return roots;
}

} // namespace

bool is_p_maximal(const MonicCubic& f, const Int& p) {
    if (f.disc() == 0)
        throw std::domain_error("is_p_maximal: disc = 0");
    Poly F = {f.c, f.b, f.a, Int(1)};
    Poly Fbar = poly_mod(F, p);
    // radical of fbar: repeated factors of a cubic are linear, so divide out
    // root multiplicities explicitly (valid in every characteristic)
    std::vector<Int> roots = poly_roots_mod_p(Fbar, p);
    Poly rest = Fbar;
    Poly gbar = {Int(1)};
    bool repeated = false;
    for (const Int& r : roots) {
        Poly lin = {mod_p(-r, p), Int(1)};
        unsigned mult = 0;
        for (;;) {
            Poly rem = poly_rem(rest, lin, p);
            if (!rem.empty())
                break;
            rest = poly_div_mod(rest, lin, p);
            ++mult;
        }
        gbar = poly_mod(poly_mul(gbar, lin), p);
        if (mult > 1)
            repeated = true;
    }
    trim(rest);
    if (rest.size() > 1)
        gbar = poly_mod(poly_mul(gbar, rest), p); // irreducible cofactor, once
    if (!repeated && rest.size() <= 1)
        return true; // squarefree split
    if (!repeated && rest.size() > 1) {
        // inseparable irreducible cubic (char 3) has gbar = fbar; handled by
        // the general test below, as is the separable squarefree case
    }
    Poly hbar = poly_div_mod(Fbar, gbar, p);
    trim(hbar);
    if (hbar.size() <= 1)
        return true; // fbar squarefree (radical = fbar)
    // lift gbar, hbar with coefficients in [0, p) and form T = (G H - F)/p
    Poly GH = poly_mul(gbar, hbar);
    Poly T(std::max(GH.size(), F.size()), Int(0));
    for (size_t i = 0; i < GH.size(); ++i)
        T[i] += GH[i];
    for (size_t i = 0; i < F.size(); ++i)
        T[i] -= F[i];
    for (auto& c : T) {
        if (!mpz_divisible_p(c.get_mpz_t(), p.get_mpz_t()))
            throw std::logic_error("is_p_maximal: T not divisible by p");
        c /= p;
    }
    Poly U = poly_gcd(poly_gcd(poly_mod(T, p), gbar, p), hbar, p);
    return U.size() <= 1;
}

namespace {

// multiple root of Fbar over P^1(F_p); at most one exists for nonzero Fbar.
// Returns true with root (affine value r, or at_infinity) if found.
struct MultipleRoot {
    bool found = false;
    bool at_infinity = false;
    Int r;
};

MultipleRoot multiple_root(const BinaryCubicForm& F, const Int& p) {
    MultipleRoot out;
    Int a = mod_p(F.a, p), b = mod_p(F.b, p), c = mod_p(F.c, p), d = mod_p(F.d, p);
    if (a == 0 && b == 0) {
        // [1:0] root of multiplicity >= 2
        if (c == 0 && d == 0)
            throw std::logic_error("multiple_root: zero form mod p");
        out.found = true;
        out.at_infinity = true;
        return out;
    }
    if (p < 5) {
        // characteristic-free: scan affine points and read multiplicities by
        // exact division of F(x,1) by (x - r)
        for (Int r = 0; r < p; ++r) {
            Poly fb = poly_mod({d, c, b, a}, p);
            Poly lin = {mod_p(-r, p), Int(1)};
            unsigned mult = 0;
            while (!fb.empty() && poly_rem(fb, lin, p).empty()) {
                fb = poly_div_mod(fb, lin, p);
                ++mult;
            }
            if (mult >= 2) {
                out.found = true;
                out.r = r;
                return out;
            }
        }
        return out;
    }
    if (a != 0) {
        // monic-ize f(x) = F(x,1)/a and find the repeated affine root from
        // the linear Euclid remainder of (f, f') as in the classifier
        Int ia = inv_p(a, p);
        Int A = mod_p(b * ia, p), B = mod_p(c * ia, p), C = mod_p(d * ia, p);
        Int c1 = mod_p(18 * B - 6 * A * A, p);
        Int c0 = mod_p(27 * C - 3 * A * B, p);
        if (c1 != 0) {
            Int r = mod_p(-c0 * inv_p(c1, p), p);
            Int fr = mod_p(((r + A) * r + B) * r + C, p);
            Int dfr = mod_p((3 * r + 2 * A) * r + B, p);
            if (fr == 0 && dfr == 0) {
                out.found = true;
                out.r = r;
            }
            return out;
        }
        // triple affine root at -A/3
        Int r = mod_p(-A * inv_p(Int(3), p), p);
        Int fr = mod_p(((r + A) * r + B) * r + C, p);
        if (fr == 0) {
            out.found = true;
            out.r = r;
        }
        return out;
    }
    // a = 0, b != 0: [1:0] is a simple root; affine part is quadratic
    // b x^2 + c x + d: double root iff c^2 = 4 b d
    if (mod_p(c * c - 4 * b * d, p) == 0) {
        out.found = true;
        out.r = mod_p(-c * inv_p(2 * b, p), p);
    }
    return out;
}

BinaryCubicForm translate_x(const BinaryCubicForm& F, const Int& r) {
    // F(x + r y, y)
    Int a = F.a;
    Int b = 3 * F.a * r + F.b;
    Int c = 3 * F.a * r * r + 2 * F.b * r + F.c;
    Int d = F.eval(r, Int(1));
    return {a, b, c, d};
}

} // namespace

unsigned saturate_at(BinaryCubicForm& F, const Int& p, std::vector<SaturationStep>* trace) {
    unsigned e = 0;
    for (;;) {
        bool content_p = mpz_divisible_p(F.a.get_mpz_t(), p.get_mpz_t()) &&
                         mpz_divisible_p(F.b.get_mpz_t(), p.get_mpz_t()) &&
                         mpz_divisible_p(F.c.get_mpz_t(), p.get_mpz_t()) &&
                         mpz_divisible_p(F.d.get_mpz_t(), p.get_mpz_t());
        if (content_p) {
            if (trace)
                trace->push_back({SaturationStep::DivideContent, Int(0), F});
            F = {F.a / p, F.b / p, F.c / p, F.d / p};
            e += 2;
            continue;
        }
        MultipleRoot mr = multiple_root(F, p);
        if (!mr.found)
            return e;
        if (mr.at_infinity) {
            // root [1:0]: superring exists iff p^2 | a (p | b holds already)
            Int p2 = p * p;
            if (!mpz_divisible_p(F.a.get_mpz_t(), p2.get_mpz_t()))
                return e;
            if (trace)
                trace->push_back({SaturationStep::DivideRootInf, Int(0), F});
            F = {F.a / p2, F.b / p, F.c, F.d * p};
            e += 1;
            continue;
        }
        BinaryCubicForm G = mr.r == 0 ? F : translate_x(F, mr.r);
        // root now at [0:1]: p | d, p | c; superring iff p^2 | d
        Int p2 = p * p;
        if (!mpz_divisible_p(G.d.get_mpz_t(), p2.get_mpz_t()))
            return e;
        if (mr.r != 0 && trace)
            trace->push_back({SaturationStep::TranslateX, mr.r, F});
        if (trace)
            trace->push_back({SaturationStep::DivideRootAffine, Int(0), G});
        F = {G.a * p, G.b, G.c / p, G.d / p2};
        e += 1;
    }
}

CubicRingInvariants q_and_d(const MonicCubic& f) {
    Int disc = f.disc();
    if (disc == 0)
        throw std::domain_error("q_and_d: disc = 0");
    CubicRingInvariants out;
    out.disc_order = disc;
    out.q_index = 1;
    BinaryCubicForm F{Int(1), f.a, f.b, f.c};
    for (const auto& pp : factorize(disc).factors) {
        if (pp.exponent < 2)
            continue;
        unsigned e = saturate_at(F, pp.prime);
        out.q_index *= pow_int(pp.prime, e);
    }
    out.disc_field = F.disc();
    out.maximal_form = F;
    if (out.q_index * out.q_index * out.disc_field != disc)
        throw std::logic_error("q_and_d: disc bookkeeping failed");
    return out;
}

BinaryCubicForm delone_faddeev_form(const MonicCubic& f) { return q_and_d(f).maximal_form; }

// ---- ring lattices -------------------------------------------------------

namespace {

// multiply two elements of Q[x]/f given by coordinate vectors over {1,x,x^2}
std::array<Rat, 3> mul_mod_f(const std::array<Rat, 3>& u, const std::array<Rat, 3>& v,
                             const MonicCubic& f) {
    // x^3 = -a x^2 - b x - c, x^4 = -a x^3 - b x^2 - c x
    Rat c0 = u[0] * v[0];
    Rat c1 = u[0] * v[1] + u[1] * v[0];
    Rat c2 = u[0] * v[2] + u[1] * v[1] + u[2] * v[0];
    Rat c3 = u[1] * v[2] + u[2] * v[1];
    Rat c4 = u[2] * v[2];
    Rat a(f.a), b(f.b), c(f.c);
    // reduce x^4 then x^3
    c3 += -a * c4;
    c2 += -b * c4;
    c1 += -c * c4;
    c2 += -a * c3;
    c1 += -b * c3;
    c0 += -c * c3;
    return {c0, c1, c2};
}

// solve y * M = v for rational row y (M the 3x3 basis matrix, invertible)
std::array<Rat, 3> solve_coords(const std::array<std::array<Rat, 3>, 3>& M,
                                const std::array<Rat, 3>& v) {
    // Cramer on M^T y^T = v^T
    auto det3 = [](const std::array<std::array<Rat, 3>, 3>& A) -> Rat {
        return A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) -
               A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
               A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
    };
    Rat D = det3(M);
    if (D == 0)
        throw std::logic_error("solve_coords: singular basis");
    std::array<Rat, 3> y;
    for (int k = 0; k < 3; ++k) {
        auto Mk = M;
        Mk[k] = v;
        y[k] = det3(Mk) / D;
    }
    return y;
}

bool is_integer(const Rat& r) { return r.get_den() == 1; }

// trace of x^k in Q[x]/f via Newton power sums
Rat trace_power(const MonicCubic& f, int k) {
    // p0 = 3, p1 = -a, p2 = a^2 - 2b, p3 = -a^3 + 3ab - 3c, p4 = ...
    // use Newton's identity p_k = -a p_{k-1} - b p_{k-2} - c p_{k-3}
    std::vector<Rat> ps = {Rat(3), Rat(-f.a), Rat(f.a * f.a - 2 * f.b)};
    for (int i = 3; i <= k; ++i)
        ps.push_back(-Rat(f.a) * ps[i - 1] - Rat(f.b) * ps[i - 2] - Rat(f.c) * ps[i - 3]);
    return ps[k];
}

Rat trace_of(const std::array<Rat, 3>& u, const MonicCubic& f) {
    return u[0] * trace_power(f, 0) + u[1] * trace_power(f, 1) + u[2] * trace_power(f, 2);
}

} // namespace

bool RingBasis::is_ring() const {
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            auto prod = mul_mod_f(rows[i], rows[j], f);
            auto y = solve_coords(rows, prod);
            for (const auto& c : y)
                if (!is_integer(c))
                    return false;
        }
    return true;
}

Rat RingBasis::disc() const {
    std::array<std::array<Rat, 3>, 3> gram;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            gram[i][j] = trace_of(mul_mod_f(rows[i], rows[j], f), f);
    return gram[0][0] * (gram[1][1] * gram[2][2] - gram[1][2] * gram[2][1]) -
           gram[0][1] * (gram[1][0] * gram[2][2] - gram[1][2] * gram[2][0]) +
           gram[0][2] * (gram[1][0] * gram[2][1] - gram[1][1] * gram[2][0]);
}

RingBasis ring_of(const MonicCubic& f) {
    RingBasis L;
    L.f = f;
    // 1, omega = -x, theta = -x^2 - a x - b  (Delone-Faddeev normalized basis
    // of the form (1, a, b, c))
    L.rows[0] = {Rat(1), Rat(0), Rat(0)};
    L.rows[1] = {Rat(0), Rat(-1), Rat(0)};
    L.rows[2] = {Rat(-f.b), Rat(-f.a), Rat(-1)};
    return L;
}

RingBasis maximal_order(const MonicCubic& f, Int* q_index) {
    Int disc = f.disc();
    if (disc == 0)
        throw std::domain_error("maximal_order: disc = 0");
    RingBasis L = ring_of(f);
    BinaryCubicForm F{Int(1), f.a, f.b, f.c};
    Int q = 1;
    for (const auto& pp : factorize(disc).factors) {
        if (pp.exponent < 2)
            continue;
        const Int& p = pp.prime;
        std::vector<SaturationStep> steps;
        BinaryCubicForm Fp = F;
        unsigned e = saturate_at(Fp, p, &steps);
        q *= pow_int(p, e);
        // Replay the surgery on the normalized basis (1, omega, theta). The
        // updates keep the Delone-Faddeev normalization exact:
        //   translate by r:  omega += a r,  theta += r omega_old - b r - a r^2
        //   divide at [0:1]: theta /= p
        //   divide at [1:0]: omega /= p
        //   content step:    omega /= p, theta /= p
        for (const auto& st : steps) {
            switch (st.kind) {
            case SaturationStep::TranslateX: {
                Rat ar(st.pre.a * st.r);
                Rat shift(-st.pre.b * st.r - st.pre.a * st.r * st.r);
                for (int k = 0; k < 3; ++k)
                    L.rows[2][k] += Rat(st.r) * L.rows[1][k];
                L.rows[1][0] += ar;   // omega += a r (a scalar in K)
                L.rows[2][0] += shift;
                break;
            }
            case SaturationStep::DivideRootAffine:
                for (int k = 0; k < 3; ++k)
                    L.rows[2][k] /= Rat(p);
                break;
            case SaturationStep::DivideRootInf:
                for (int k = 0; k < 3; ++k)
                    L.rows[1][k] /= Rat(p);
                break;
            case SaturationStep::DivideContent:
                for (int k = 0; k < 3; ++k) {
                    L.rows[1][k] /= Rat(p);
                    L.rows[2][k] /= Rat(p);
                }
                break;
            }
        }
        F = Fp;
        if (!L.is_ring())
            throw std::logic_error("maximal_order: basis update broke ring closure");
    }
    if (L.disc() != Rat(F.disc()))
        throw std::logic_error("maximal_order: disc mismatch after saturation");
    if (q_index)
        *q_index = q;
    return L;
}

bool has_index_p_superring(const RingBasis& L, const Int& p, RingBasis* out) {
    // candidate directions v = c0*1 + c1*w1 + c2*w2 over P^2(F_p)
    std::vector<std::array<Int, 3>> dirs;
    for (Int c1 = 0; c1 < p; ++c1)
        for (Int c2 = 0; c2 < p; ++c2)
            dirs.push_back({Int(1), c1, c2});
    for (Int c2 = 0; c2 < p; ++c2)
        dirs.push_back({Int(0), Int(1), c2});
    dirs.push_back({Int(0), Int(0), Int(1)});
    for (const auto& d : dirs) {
        RingBasis cand = L;
        // new basis: keep two rows spanning a complement, add v/p. Use HNF-ish
        // replacement: append v/p to the generator set and reduce.
        std::array<Rat, 3> v = {Rat(0), Rat(0), Rat(0)};
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k)
                v[k] += Rat(d[i]) * L.rows[i][k];
        for (int k = 0; k < 3; ++k)
            v[k] /= Rat(p);
        // replace the generator with unit coefficient (the first nonzero of
        // d, which is 1 by construction); then new rows generate L + Z v
        int repl = d[0] != 0 ? 0 : (d[1] != 0 ? 1 : 2);
        cand.rows[repl] = v;
        if (cand.is_ring()) {
            if (out)
                *out = cand;
            return true;
        }
    }
    return false;
}

} // namespace ecred
