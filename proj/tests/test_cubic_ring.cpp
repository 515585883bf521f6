#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ecred/classify.hpp"
#include "ecred/cubic_ring.hpp"

using namespace ecred;

TEST_CASE("discriminants") {
    CHECK(MonicCubic{Int(0), Int(1), Int(1)}.disc() == -31);
    CHECK(MonicCubic{Int(0), Int(-1), Int(0)}.disc() == 4);
    CHECK(MonicCubic{Int(0), Int(0), Int(0)}.disc() == 0);
    CHECK(BinaryCubicForm{Int(1), Int(0), Int(0), Int(-1)}.disc() == -27);
    CHECK(BinaryCubicForm{Int(1), Int(0), Int(1), Int(1)}.disc() == -31);
    CHECK(BinaryCubicForm{Int(0), Int(0), Int(0), Int(1)}.disc() == 0);
    // monic specialization: disc of (1,a,b,c) equals disc of x^3+ax^2+bx+c
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> d(-50, 50);
    for (int i = 0; i < 500; ++i) {
        MonicCubic f{d(rng), d(rng), d(rng)};
        BinaryCubicForm F{Int(1), f.a, f.b, f.c};
        CHECK(F.disc() == f.disc());
    }
}

TEST_CASE("traceless normalization") {
    // (x+1)^3: t = -1, f0 = x^3
    MonicCubic f{Int(3), Int(3), Int(1)};
    TracelessCubic t = traceless_normalize(f);
    CHECK(t.t == -1);
    CHECK(t.A == 0);
    CHECK(t.B == 0);
    // a = 6: t = -2, integral
    MonicCubic g{Int(6), Int(5), Int(7)};
    TracelessCubic tg = traceless_normalize(g);
    CHECK(tg.t == -2);
    MonicCubic shifted = g.translate(Int(-2));
    CHECK(tg.A == shifted.b);
    CHECK(tg.B == shifted.c);
    CHECK(shifted.a == 0);
    // already traceless
    MonicCubic h{Int(0), Int(4), Int(9)};
    TracelessCubic th = traceless_normalize(h);
    CHECK(th.t == 0);
    CHECK(th.A == 4);
    CHECK(th.B == 9);
    // non-integral shift carried exactly: disc is invariant
    MonicCubic k{Int(1), Int(2), Int(3)};
    TracelessCubic tk = traceless_normalize(k);
    Rat disc = Rat(-4) * tk.A * tk.A * tk.A - Rat(27) * tk.B * tk.B;
    CHECK(disc == Rat(k.disc()));
}

TEST_CASE("Dedekind criterion") {
    CHECK(is_p_maximal({Int(0), Int(1), Int(1)}, Int(31)));
    // symbol IV at 5: traceless (25, 25) has Q_5 = 5
    CHECK(!is_p_maximal({Int(0), Int(25), Int(25)}, Int(5)));
    // x^3 - p^2 x + p^3 u: large, Q_5 = p^3
    CHECK(!is_p_maximal({Int(0), Int(-25), Int(250)}, Int(5)));
    // translation invariance
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> d(-200, 200), sh(-20, 20);
    for (long pv : {2L, 3L, 5L, 7L}) {
        Int p(pv);
        for (int i = 0; i < 2500; ++i) {
            MonicCubic f{d(rng), d(rng), d(rng)};
            if (f.disc() == 0)
                continue;
            bool a = is_p_maximal(f, p);
            bool b = is_p_maximal(f.translate(Int(sh(rng))), p);
            CHECK(a == b);
        }
    }
}

TEST_CASE("q_and_d on pinned examples") {
    CubicRingInvariants inv = q_and_d({Int(0), Int(1), Int(1)});
    CHECK(inv.q_index == 1);
    CHECK(inv.disc_field == -31);

    // traceless (25, 25) at 5: symbol IV, v5(Q) = 1, v5(D) = 2
    inv = q_and_d({Int(0), Int(25), Int(25)});
    CHECK(valuation(inv.q_index, Int(5)) == 1);
    CHECK(valuation(inv.disc_field, Int(5)) == 2);

    // I4 at p: v_p(Q) = 2, v_p(D) = 0. Build one: traceless with v5(disc)=4,
    // A a unit. (x^2 + 5^4)(x - 1) shifted traceless keeps the symbol.
    // Use A = -1 + small: search a small example instead.
    bool found = false;
    for (long A = -40; A <= 40 && !found; ++A) {
        for (long B = -40; B <= 40 && !found; ++B) {
            WeierstrassCurve E{Int(A), Int(B)};
            if (E.disc() == 0)
                continue;
            if (valuation(E.disc(), Int(5)) == 4 && mpz_fdiv_ui(Int(A).get_mpz_t(), 5) != 0) {
                found = true;
                CubicRingInvariants v = q_and_d({Int(0), Int(A), Int(B)});
                CHECK(valuation(v.q_index, Int(5)) == 2);
                CHECK(valuation(v.disc_field, Int(5)) == 0);
            }
        }
    }
    CHECK(found);
}

TEST_CASE("q_and_d disc relation on random cubics") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> d(-300, 300);
    for (int i = 0; i < 3000; ++i) {
        MonicCubic f{d(rng), d(rng), d(rng)};
        if (f.disc() == 0)
            continue;
        CubicRingInvariants inv = q_and_d(f);
        CHECK(inv.disc_order == f.disc());
        CHECK(inv.q_index * inv.q_index * inv.disc_field == f.disc());
        CHECK(inv.maximal_form.disc() == inv.disc_field);
        // the reached form is maximal at every prime that mattered
        for (const auto& pp : factorize(inv.q_index).factors) {
            BinaryCubicForm F = inv.maximal_form;
            CHECK(saturate_at(F, pp.prime) == 0);
        }
    }
}

TEST_CASE("Delone-Faddeev form of the index-n multiplicative pattern") {
    // f(x) = x^3 + a x^2 + b n x + c n^2 with the right divisibilities has
    // index n and maximal form (n, a, b, c)
    struct Case {
        long n, a, b, c;
    } cases[] = {{5, 1, 2, 1}, {7, 3, 1, 2}, {25, 1, 1, 1}, {35, 2, 3, 1}};
    for (const auto& cs : cases) {
        Int n(cs.n);
        MonicCubic f{Int(cs.a), Int(cs.b) * n, Int(cs.c) * n * n};
        if (f.disc() == 0)
            continue;
        BinaryCubicForm expect{n, Int(cs.a), Int(cs.b), Int(cs.c)};
        if (expect.disc() == 0 || !is_squarefree(expect.disc()))
            continue; // want the reached form maximal everywhere
        CubicRingInvariants inv = q_and_d(f);
        CHECK(inv.q_index == n);
        CHECK(inv.maximal_form == expect);
    }
}

TEST_CASE("saturation agrees with the Kodaira table on curve cubics") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<long> unit(-2000, 2000);
    std::uniform_int_distribution<int> va(0, 4), vb(0, 6), pick(0, 2);
    const std::array<Int, 3> ps = {Int(5), Int(7), Int(11)};
    int done = 0;
    while (done < 1500) {
        Int p = ps[pick(rng)];
        Int A = Int(unit(rng)) * pow_int(p, va(rng));
        Int B = Int(unit(rng)) * pow_int(p, vb(rng));
        WeierstrassCurve E{A, B};
        if (E.disc() == 0 || !is_minimal_at(E, p))
            continue;
        ++done;
        KodairaSymbol sym = classify_by_valuations(E, p);
        LocalData ld = local_data(sym, p);
        BinaryCubicForm F{Int(1), Int(0), A, B};
        unsigned e = saturate_at(F, p);
        CHECK(e == ld.q_exp);
        CHECK(valuation(F.disc(), p) == ld.d_exp);
        CHECK(is_p_maximal({Int(0), A, B}, p) == (ld.q_exp == 0));
    }
}

TEST_CASE("brute-force superring oracle agrees at small p") {
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<long> d(-40, 40);
    for (long pv : {2L, 3L, 5L}) {
        Int p(pv);
        int done = 0;
        while (done < 120) {
            MonicCubic f{d(rng), d(rng), d(rng)};
            if (f.disc() == 0)
                continue;
            ++done;
            RingBasis L = ring_of(f);
            CHECK(L.is_ring());
            CHECK(L.disc() == Rat(f.disc()));
            bool brute = has_index_p_superring(L, p);
            BinaryCubicForm F{Int(1), f.a, f.b, f.c};
            bool surgery_first_step = false;
            {
                BinaryCubicForm G = F;
                surgery_first_step = saturate_at(G, p) > 0;
            }
            // an index-p superring exists iff saturation makes progress,
            // except when the first available step is the content (index-p^2)
            // move; only Z + pO' rings lack index-p steps, and those never
            // arise as Z[x]/f. So the two must agree here.
            CHECK(brute == surgery_first_step);
        }
    }
}

TEST_CASE("maximal_order basis is a ring with the field discriminant") {
    std::mt19937_64 rng(67);
    std::uniform_int_distribution<long> d(-60, 60);
    int done = 0;
    while (done < 400) {
        MonicCubic f{d(rng), d(rng), d(rng)};
        if (f.disc() == 0)
            continue;
        ++done;
        Int q;
        RingBasis O = maximal_order(f, &q);
        CubicRingInvariants inv = q_and_d(f);
        CHECK(q == inv.q_index);
        CHECK(O.is_ring());
        CHECK(O.disc() == Rat(inv.disc_field));
    }
    // the deep chain x^3 - p^2 x + p^3 u with no index-p path in the middle
    Int q;
    RingBasis O = maximal_order({Int(0), Int(-25), Int(250)}, &q);
    CHECK(q == 125);
    CHECK(O.is_ring());
}
