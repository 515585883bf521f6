#include "ecred/quartic.hpp"

#include <stdexcept>

namespace ecred {

BinaryQuarticForm act_on_quartic(const UnimodularMatrix& m, const BinaryQuarticForm& g) {
    Int det = m.det();
    if (det != 1 && det != -1)
        throw std::invalid_argument("act_on_quartic: matrix not unimodular");
    // (x, y) gamma = (a x + c y, b x + d y); expand g at that substitution
    // by evaluating on the five monomials
    const Int &A = m.a, &B = m.b, &C = m.c, &D = m.d;
    // coefficients of (Ax + Cy)^i (Bx + Dy)^(4-i) accumulated
    BinaryQuarticForm out{Int(0), Int(0), Int(0), Int(0), Int(0)};
    auto add_pow_product = [&](const Int& coeff, int i) {
        // (Ax + Cy)^i * (Bx + Dy)^{4-i}
        std::array<Int, 5> acc{Int(0), Int(0), Int(0), Int(0), Int(0)};
        std::array<Int, 5> first{Int(0), Int(0), Int(0), Int(0), Int(0)};
        // (Ax + Cy)^i
        std::array<Int, 5> tmp{Int(1), Int(0), Int(0), Int(0), Int(0)};
        for (int t = 0; t < i; ++t) {
            std::array<Int, 5> nx{Int(0), Int(0), Int(0), Int(0), Int(0)};
            for (int k = 0; k <= t; ++k) {
                nx[k] += tmp[k] * A;
                nx[k + 1] += tmp[k] * C;
            }
            tmp = nx;
        }
        first = tmp;
        // times (Bx + Dy)^{4-i}
        tmp = first;
        for (int t = 0; t < 4 - i; ++t) {
            std::array<Int, 5> nx{Int(0), Int(0), Int(0), Int(0), Int(0)};
            for (int k = 0; k < 5 - 1; ++k) {
                nx[k] += tmp[k] * B;
                nx[k + 1] += tmp[k] * D;
            }
            nx[4] += tmp[4] * B * 0; // degree bound; top term already handled
            tmp = nx;
        }
        acc = tmp;
        out.a += coeff * acc[0];
        out.b += coeff * acc[1];
        out.c += coeff * acc[2];
        out.d += coeff * acc[3];
        out.e += coeff * acc[4];
    };
    add_pow_product(g.a, 4);
    add_pow_product(g.b, 3);
    add_pow_product(g.c, 2);
    add_pow_product(g.d, 1);
    add_pow_product(g.e, 0);
    return out;
}

RootedQuartic pgl2_act(const UnimodularMatrix& m, const RootedQuartic& rq) {
    RootedQuartic out;
    out.g = act_on_quartic(m, rq.g);
    // [alpha : beta] gamma^{-1}, gamma^{-1} = (d -b; -c a) / det
    Int det = m.det();
    Int na = rq.alpha * m.d - rq.beta * m.c;
    Int nb = -rq.alpha * m.b + rq.beta * m.a;
    if (det == -1) {
        na = -na;
        nb = -nb;
    }
    out.alpha = na;
    out.beta = nb;
    if (!out.g.is_zero() && out.g.eval(out.alpha, out.beta) != 0)
        throw std::logic_error("pgl2_act: transformed root is not a root");
    return out;
}

BinaryCubicForm cubic_cofactor(const RootedQuartic& rq) {
    if (rq.g.is_zero())
        throw std::domain_error("cubic_cofactor: zero form");
    if (gcd(rq.alpha, rq.beta) != 1)
        throw std::domain_error("cubic_cofactor: root not primitive");
    if (rq.g.eval(rq.alpha, rq.beta) != 0)
        throw std::domain_error("cubic_cofactor: marked point is not a root");
    const Int &al = rq.alpha, &be = rq.beta;
    // g = (beta x - alpha y) h: forward-substitute from the x^4 end when
    // beta != 0, from the y^4 end otherwise
    Int h0, h1, h2, h3;
    if (be != 0) {
        auto dv = [&](const Int& num) {
            if (!mpz_divisible_p(num.get_mpz_t(), be.get_mpz_t()))
                throw std::logic_error("cubic_cofactor: division not exact");
            return num / be;
        };
        h0 = dv(rq.g.a);
        h1 = dv(rq.g.b + al * h0);
        h2 = dv(rq.g.c + al * h1);
        h3 = dv(rq.g.d + al * h2);
        if (-al * h3 != rq.g.e)
            throw std::logic_error("cubic_cofactor: remainder nonzero");
    } else {
        // root [1:0] (alpha = +-1): divisor is -alpha y
        Int mal = -al;
        auto dv = [&](const Int& num) {
            if (!mpz_divisible_p(num.get_mpz_t(), mal.get_mpz_t()))
                throw std::logic_error("cubic_cofactor: division not exact");
            return num / mal;
        };
        if (rq.g.a != 0)
            throw std::logic_error("cubic_cofactor: [1:0] is not a root");
        h0 = dv(rq.g.b);
        h1 = dv(rq.g.c);
        h2 = dv(rq.g.d);
        h3 = dv(rq.g.e);
    }
    return {h0, h1, h2, h3};
}

RootedInvariants q_d_rooted(const RootedQuartic& rq) {
    BinaryCubicForm h = cubic_cofactor(rq);
    RootedInvariants inv;
    inv.Q = h.eval(rq.alpha, rq.beta);
    inv.D = h.disc();
    if (rq.g.disc() != inv.Q * inv.Q * inv.D)
        throw std::logic_error("q_d_rooted: Delta != Q^2 D");
    return inv;
}

RootedQuartic embed_sigma(const MonicCubic& f, const Int& n) {
    if (f.a != 0)
        throw std::invalid_argument("embed_sigma: traceless input required");
    if (n <= 0)
        throw std::invalid_argument("embed_sigma: index must be positive");
    const Int &A = f.b, &B = f.c;
    Int n2 = n * n;
    for (Int r = 0; r < n; ++r) {
        Int bcoef = A + 3 * r * r;
        Int ccoef = (r * r + A) * r + B; // f(r)
        if (!mpz_divisible_p(bcoef.get_mpz_t(), n.get_mpz_t()))
            continue;
        if (!mpz_divisible_p(ccoef.get_mpz_t(), n2.get_mpz_t()))
            continue;
        // h = n x^3 + 3r x^2 y + (bcoef/n) x y^2 + (ccoef/n^2) y^3
        RootedQuartic rq;
        rq.g = BinaryQuarticForm{Int(0), n, 3 * r, bcoef / n, ccoef / n2};
        rq.alpha = 1;
        rq.beta = 0;
        return rq;
    }
    throw std::domain_error("embed_sigma: no admissible translate below n");
}

std::array<BinaryQuarticForm, 4> lattice_basis(const Int& alpha, const Int& beta) {
    if (gcd(alpha, beta) != 1)
        throw std::invalid_argument("lattice_basis: root not primitive");
    return {BinaryQuarticForm{beta, -alpha, Int(0), Int(0), Int(0)},
            BinaryQuarticForm{Int(0), beta, -alpha, Int(0), Int(0)},
            BinaryQuarticForm{Int(0), Int(0), beta, -alpha, Int(0)},
            BinaryQuarticForm{Int(0), Int(0), Int(0), beta, -alpha}};
}

RootedQuartic tuple_to_form(const Int& alpha, const Int& beta, const Int& a1, const Int& a2,
                            const Int& a3, const Int& a4) {
    auto w = lattice_basis(alpha, beta);
    RootedQuartic rq;
    rq.alpha = alpha;
    rq.beta = beta;
    rq.g.a = a1 * w[0].a;
    rq.g.b = a1 * w[0].b + a2 * w[1].b;
    rq.g.c = a2 * w[1].c + a3 * w[2].c;
    rq.g.d = a3 * w[2].d + a4 * w[3].d;
    rq.g.e = a4 * w[3].e;
    return rq;
}

Int t_alpha_beta(const Int& alpha, const Int& beta, const Int& a1, const Int& a2, const Int& a3) {
    Int b3 = beta * beta * beta;
    Int last = -(a1 * alpha * alpha * alpha + a2 * alpha * alpha * beta + a3 * alpha * beta * beta);
    return BinaryCubicForm{a1 * b3, a2 * b3, a3 * b3, last}.disc();
}

} // namespace ecred
