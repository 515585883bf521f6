#include "ecred/goodred.hpp"

#include <optional>

namespace ecred {

const std::vector<GoodRedRow>& good_red_rows_2() {
    static const std::vector<GoodRedRow> rows = [] {
        std::vector<GoodRedRow> r;
        // A = 0 mod 16, B = 16 mod 64
        GoodRedRow r0{16, 64, {{0, 16}}, 8};
        r.push_back(r0);
        // (A, B) = (a0 + d*64, b0 + d*64) mod 128, d in {0,1}
        const uint64_t ab[8][2] = {{5, 22},  {13, 14}, {21, 38}, {29, 94},
                                   {37, 54}, {45, 46}, {53, 70}, {61, 126}};
        for (auto& row : ab) {
            GoodRedRow g{128, 128, {}, 8};
            for (uint64_t d = 0; d <= 1; ++d)
                g.pairs.push_back({row[0] + d * 64, row[1] + d * 64});
            r.push_back(g);
        }
        return r;
    }();
    return rows;
}

const std::vector<GoodRedRow>& good_red_rows_3() {
    static const std::vector<GoodRedRow> rows = [] {
        std::vector<GoodRedRow> r;
        GoodRedRow coprime{3, 1, {}, 0};
        coprime.a_coprime = true;
        r.push_back(coprime);
        // 3^4 || A, 3^6 | B
        {
            GoodRedRow g{729 * 3, 729, {}, 12}; // A mod 3^7 in {3^4 u}, B = 0 mod 3^6
            for (uint64_t u = 1; u < 27; ++u)
                if (u % 3 != 0)
                    g.pairs.push_back({81 * u, 0});
            r.push_back(g);
        }
        // A = a0*27 mod 3^6, B in {±b1, ±b2}*27 mod 3^7
        const uint64_t tbl[9][3] = {{2, 20, 34},  {5, 11, 16},  {8, 2, 29},
                                    {11, 7, 20},  {14, 16, 38}, {17, 2, 25},
                                    {20, 7, 34},  {23, 11, 38}, {26, 25, 29}};
        const uint64_t m6 = 729, m7 = 2187;
        for (auto& row : tbl) {
            GoodRedRow g{m6, m7, {}, 12};
            uint64_t a0 = (row[0] * 27) % m6;
            for (int i = 1; i <= 2; ++i) {
                uint64_t b = (row[i] * 27) % m7;
                g.pairs.push_back({a0, b});
                g.pairs.push_back({a0, (m7 - b) % m7});
            }
            r.push_back(g);
        }
        return r;
    }();
    return rows;
}

std::optional<unsigned> good_red_match(const Int& A, const Int& B, int p) {
    const auto& rows = (p == 2) ? good_red_rows_2() : good_red_rows_3();
    for (const auto& row : rows) {
        if (row.a_coprime) {
            if (mpz_fdiv_ui(A.get_mpz_t(), p) != 0)
                return row.delta_exp;
            continue;
        }
        uint64_t ar = mpz_fdiv_ui(A.get_mpz_t(), row.a_mod);
        uint64_t br = mpz_fdiv_ui(B.get_mpz_t(), row.b_mod);
        for (const auto& pr : row.pairs)
            if (pr.first == ar && pr.second == br)
                return row.delta_exp;
    }
    return std::nullopt;
}

} // namespace ecred
