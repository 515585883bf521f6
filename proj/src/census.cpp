#include "ecred/census.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

namespace ecred {

void j_invariant(const Int& A, const Int& B, Int& num, Int& den) {
    Int D = 4 * A * A * A + 27 * B * B;
    if (D == 0)
        throw std::domain_error("j_invariant: Delta = 0");
    num = 6912 * A * A * A;
    den = D;
    Int g = gcd(num, den);
    if (g != 0) {
        num /= g;
        den /= g;
    }
    if (den < 0) {
        den = -den;
        num = -num;
    }
}

bool j_cutoff_pass(const Int& A, const Int& B, const Int& delta_E_abs) {
    // |j| < log|Delta_E|  <=>  |6912 A^3| < |Delta(A,B)| log|Delta_E|
    if (delta_E_abs <= 1)
        return false;
    Int lhs = abs_int(6912 * A * A * A);
    Int dab = abs_int(-4 * A * A * A - 27 * B * B);
    double lg = std::log(mpz_get_d(delta_E_abs.get_mpz_t()));
    double l = mpz_get_d(lhs.get_mpz_t());
    double r = mpz_get_d(dab.get_mpz_t()) * lg;
    if (l < 0.999 * r)
        return true;
    if (l > 1.001 * r)
        return false;
    Interval L{lhs};
    Interval R = Interval(dab) * Interval(delta_E_abs).log();
    if (L.certainly_less(R))
        return true;
    if (R.certainly_less(L))
        return false;
    throw std::logic_error("j_cutoff_pass: enclosure straddles the cutoff");
}

void family_filters(CurveRecord& rec, const mpq_class& kappa) {
    rec.in_sf = rec.in_E && is_squarefree(rec.index);
    // |Delta_E| < C^kappa with kappa = a/b: |Delta|^b < C^a
    Int a = kappa.get_num(), b = kappa.get_den();
    Int lhs, rhs;
    mpz_pow_ui(lhs.get_mpz_t(), abs_int(rec.delta_E).get_mpz_t(), mpz_get_ui(b.get_mpz_t()));
    mpz_pow_ui(rhs.get_mpz_t(), rec.conductor.get_mpz_t(), mpz_get_ui(a.get_mpz_t()));
    rec.in_kappa = rec.in_E && lhs < rhs;
}

namespace {

struct ClassPair {
    Int ma, ra, mb, rb; // A = ra (mod ma), B = rb (mod mb)
    unsigned v2, v3;    // fixed 2-,3-valuations of Delta(A,B) on the class
};

std::vector<ClassPair> census_classes(bool full_tables) {
    std::vector<ClassPair> out;
    if (!full_tables) {
        // 16 | A with 3 not dividing A: A mod 48 in {16, 32}; B = 16 mod 64
        for (long rA : {16L, 32L})
            out.push_back({Int(48), Int(rA), Int(64), Int(16), 8, 0});
        return out;
    }
    for (const GoodRedRow& r2 : good_red_rows_2()) {
        for (const GoodRedRow& r3 : good_red_rows_3()) {
            std::vector<std::pair<Int, Int>> p2, p3;
            Int ma2(static_cast<unsigned long>(r2.a_mod)),
                mb2(static_cast<unsigned long>(r2.b_mod));
            for (const auto& pr : r2.pairs)
                p2.push_back({Int(static_cast<unsigned long>(pr.first)),
                              Int(static_cast<unsigned long>(pr.second))});
            Int ma3, mb3;
            if (r3.a_coprime) {
                ma3 = 3;
                mb3 = 1;
                p3.push_back({Int(1), Int(0)});
                p3.push_back({Int(2), Int(0)});
            } else {
                ma3 = Int(static_cast<unsigned long>(r3.a_mod));
                mb3 = Int(static_cast<unsigned long>(r3.b_mod));
                for (const auto& pr : r3.pairs)
                    p3.push_back({Int(static_cast<unsigned long>(pr.first)),
                                  Int(static_cast<unsigned long>(pr.second))});
            }
            auto crt = [](const Int& r1, const Int& m1, const Int& r2c, const Int& m2) {
                Int g, u, v;
                mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), m1.get_mpz_t(),
                           m2.get_mpz_t());
                Int m = m1 * m2;
                Int r = (r1 * v % m * m2 + r2c * u % m * m1) % m;
                if (r < 0)
                    r += m;
                return r;
            };
            for (const auto& a2 : p2)
                for (const auto& a3 : p3) {
                    ClassPair c;
                    c.ma = ma2 * ma3;
                    c.mb = mb2 * mb3;
                    c.ra = crt(a2.first, ma2, a3.first, ma3);
                    c.rb = crt(a2.second, mb2, a3.second, mb3);
                    c.v2 = r2.delta_exp;
                    c.v3 = r3.delta_exp;
                    out.push_back(c);
                }
        }
    }
    return out;
}

Int isqrt_floor(const Int& n) {
    if (n < 0)
        return -1;
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

Int isqrt_ceil(const Int& n) { // least r >= 0 with r^2 >= n
    if (n <= 0)
        return 0;
    Int r = isqrt_floor(n);
    if (r * r < n)
        r += 1;
    return r;
}

bool build_record(const Int& A, const Int& B, unsigned v2_expect, unsigned v3_expect,
                  CurveRecord& rec) {
    Int dab = -4 * A * A * A - 27 * B * B;
    if (dab == 0)
        return false;
    WeierstrassCurve E{A, B};
    if (!is_minimal(E))
        return false;
    Int rest = dab;
    unsigned v2 = valuation_remove(rest, Int(2));
    unsigned v3 = valuation_remove(rest, Int(3));
    if (v2 != v2_expect || v3 != v3_expect)
        throw std::logic_error("census: Delta 2,3-part differs from its class row");
    rec.A = A;
    rec.B = B;
    rec.delta_AB = dab;
    rec.delta_E = rest;
    j_invariant(A, B, rec.j_num, rec.j_den);
    if (!j_cutoff_pass(A, B, abs_int(rest)))
        return false;
    rec.in_E = true;
    rec.conductor = 1;
    rec.index = 1;
    rec.q_inv = 1;
    Int dmag = 1;
    rec.locals.clear();
    for (const auto& pp : factorize(rest).factors) {
        KodairaSymbol sym = classify_by_valuations(E, pp.prime);
        LocalData ld = local_data(sym, pp.prime);
        if (ld.delta_exp != pp.exponent)
            throw std::logic_error("census: local delta exponent mismatch");
        rec.locals.push_back(ld);
        rec.conductor *= pow_int(pp.prime, ld.c_exp);
        rec.index *= pow_int(pp.prime, ld.index_exp);
        rec.q_inv *= pow_int(pp.prime, ld.q_exp);
        dmag *= pow_int(pp.prime, ld.d_exp);
    }
    rec.d_inv = mpz_sgn(rest.get_mpz_t()) < 0 ? -dmag : dmag;
    return true;
}

bool collection_allows(const CurveRecord& rec, const ReductionCollection& sigma) {
    for (const auto& [p, allowed] : sigma) {
        ReductionType t = ReductionType::good;
        for (const auto& ld : rec.locals)
            if (ld.p == p)
                t = ld.reduction;
        if (!allowed.count(t))
            return false;
    }
    return true;
}

uint64_t enumerate_strip(const Int& delta_cap, bool full_tables, unsigned strip,
                         unsigned nstrips, const std::function<void(const CurveRecord&)>& sink,
                         uint64_t* enumerated) {
    uint64_t pre = 0, post = 0;
    for (const ClassPair& cls : census_classes(full_tables)) {
        Int cap = delta_cap * pow_int(Int(2), cls.v2) * pow_int(Int(3), cls.v3);
        double lc = std::log(std::max(3.0, mpz_get_d(cap.get_mpz_t())));
        Int alim;
        mpz_root(alim.get_mpz_t(), Int(cap * Int(static_cast<long>(lc + 4)) / 6912 + 1).get_mpz_t(),
                 3);
        alim += 1;
        // A = ra + k ma over |A| <= alim, k striped for the thread
        Int kmin = (-alim - cls.ra) / cls.ma - 1;
        Int kmax = (alim - cls.ra) / cls.ma + 1;
        for (Int k = kmin; k <= kmax; ++k) {
            if (mpz_fdiv_ui(Int(k - kmin).get_mpz_t(), nstrips) != strip)
                continue;
            Int A = cls.ra + k * cls.ma;
            if (A < -alim || A > alim)
                continue;
            Int S = 4 * A * A * A;
            // -cap < S + 27 B^2 < cap
            Int upper = cap - S; // 27 B^2 < upper
            if (upper <= 0)
                continue;
            Int bhi = isqrt_floor((upper - 1) / 27);
            Int blo = isqrt_ceil((-cap - S) / 27 + 1); // 27 B^2 > -cap - S
            if (-cap - S < 0)
                blo = 0;
            auto walk = [&](const Int& lo, const Int& hi) {
                if (lo > hi)
                    return;
                Int rem = (cls.rb - lo) % cls.mb;
                if (rem < 0)
                    rem += cls.mb;
                for (Int B = lo + rem; B <= hi; B += cls.mb) {
                    CurveRecord rec;
                    Int dab = -4 * A * A * A - 27 * B * B;
                    if (dab == 0 || abs_int(dab) >= cap)
                        continue;
                    WeierstrassCurve E{A, B};
                    if (!is_minimal(E))
                        continue;
                    ++pre;
                    if (build_record(A, B, cls.v2, cls.v3, rec)) {
                        ++post;
                        sink(rec);
                    }
                }
            };
            if (blo == 0) {
                walk(-bhi, bhi);
            } else {
                walk(blo, bhi);
                walk(-bhi, -blo);
            }
        }
    }
    if (enumerated)
        *enumerated = pre;
    return post;
}

} // namespace

uint64_t enumerate_family_E(const Int& delta_cap, bool full_tables,
                            const std::function<void(const CurveRecord&)>& sink,
                            uint64_t* enumerated) {
    if (delta_cap > Int("100000000000"))
        throw BudgetExceededError("enumerate_family_E: discriminant cap above budget");
    return enumerate_strip(delta_cap, full_tables, 0, 1, sink, enumerated);
}

CensusReport run_census(const CensusOptions& opts) {
    CensusReport rep;
    rep.delta_cap = opts.index_cap * opts.x_max;
    if (rep.delta_cap > Int("100000000000"))
        throw BudgetExceededError("run_census: discriminant cap above budget");
    for (Int x = opts.x_max; x >= 16; x /= 2)
        rep.grid.push_back(x);
    std::reverse(rep.grid.begin(), rep.grid.end());

    struct Acc {
        std::vector<Int> cE, cSf, cKp, tails;
        uint64_t records = 0, violations = 0, pre = 0, post = 0;
    };
    unsigned nt = std::max(1u, opts.threads);
    std::vector<Acc> accs(nt);
    for (auto& a : accs) {
        a.cE.assign(rep.grid.size(), Int(0));
        a.cSf.assign(rep.grid.size(), Int(0));
        a.cKp.assign(rep.grid.size(), Int(0));
        a.tails.assign(opts.tail_rows, Int(0));
    }
    auto work = [&](unsigned strip) {
        Acc& acc = accs[strip];
        auto sink = [&](const CurveRecord& r0) {
            CurveRecord rec = r0;
            family_filters(rec, opts.kappa);
            if (!collection_allows(rec, opts.sigma))
                return;
            ++acc.records;
            Int g6 = gcd(abs_int(rec.delta_E), Int(6));
            bool ok = g6 == 1;
            ok = ok && rec.delta_E == rec.q_inv * rec.q_inv * rec.d_inv;
            ok = ok && abs_int(rec.delta_E) == rec.conductor * rec.index;
            if (rec.in_sf)
                ok = ok && abs_int(rec.d_inv) * abs_int(rec.delta_E) ==
                               rec.conductor * rec.conductor;
            if (!ok)
                ++acc.violations;
            for (size_t i = 0; i < rep.grid.size(); ++i) {
                if (rec.conductor < rep.grid[i]) {
                    acc.cE[i] += 1;
                    if (rec.in_sf)
                        acc.cSf[i] += 1;
                    if (rec.in_kappa)
                        acc.cKp[i] += 1;
                }
            }
            if (rec.conductor < opts.x_max) {
                Int M(1);
                for (unsigned row = 0; row < opts.tail_rows; ++row, M *= 2)
                    if (abs_int(rec.delta_E) > M * rec.conductor)
                        acc.tails[row] += 1;
            }
        };
        acc.post = enumerate_strip(rep.delta_cap, opts.full_tables, strip, nt, sink, &acc.pre);
    };
    if (nt == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nt; ++t)
            pool.emplace_back(work, t);
        for (auto& th : pool)
            th.join();
    }
    // deterministic merge in strip order
    std::vector<Int> cE(rep.grid.size(), Int(0)), cSf(rep.grid.size(), Int(0)),
        cKp(rep.grid.size(), Int(0));
    std::vector<Int> tails(opts.tail_rows, Int(0));
    for (const Acc& a : accs) {
        for (size_t i = 0; i < rep.grid.size(); ++i) {
            cE[i] += a.cE[i];
            cSf[i] += a.cSf[i];
            cKp[i] += a.cKp[i];
        }
        for (unsigned r = 0; r < opts.tail_rows; ++r)
            tails[r] += a.tails[r];
        rep.enumerated += a.pre;
        rep.in_family += a.post;
        rep.invariant_violations += a.violations;
    }
    rep.counts["E"] = cE;
    rep.counts["E_sf"] = cSf;
    rep.counts["E_kappa"] = cKp;
    Int M(1);
    for (unsigned row = 0; row < opts.tail_rows; ++row, M *= 2)
        rep.tails.push_back({M, tails[row]});
    return rep;
}

std::string census_report_json(const CensusReport& rep, const CensusOptions& opts) {
    std::ostringstream os;
    os << "{\n  \"grid\": [";
    for (size_t i = 0; i < rep.grid.size(); ++i)
        os << (i ? ", " : "") << rep.grid[i];
    os << "],\n  \"families\": {";
    bool first = true;
    for (const auto& [name, counts] : rep.counts) {
        os << (first ? "" : ",") << "\n    \"" << name << "\": {\"counts\": [";
        for (size_t i = 0; i < counts.size(); ++i)
            os << (i ? ", " : "") << counts[i];
        os << "], \"ratios\": [";
        for (size_t i = 0; i < counts.size(); ++i) {
            double x = mpz_get_d(rep.grid[i].get_mpz_t());
            os << (i ? ", " : "") << mpz_get_d(counts[i].get_mpz_t()) / std::pow(x, 5.0 / 6.0);
        }
        os << "]}";
        first = false;
    }
    os << "\n  },\n  \"constants\": {";
    const char* names[] = {"sf+", "sf-", "kappa+", "kappa-", "generic"};
    for (int i = 0; i < 5; ++i) {
        EulerConstant c = euler_constant(names[i]);
        os << (i ? ", " : "") << "\"" << names[i]
           << "\": " << 0.5 * (c.value.lo_d() + c.value.hi_d());
    }
    os << "},\n  \"tails\": [";
    for (size_t i = 0; i < rep.tails.size(); ++i)
        os << (i ? ", " : "") << "[" << rep.tails[i].first << ", " << rep.tails[i].second << "]";
    os << "],\n  \"delta_cap\": " << rep.delta_cap << ",\n  \"enumerated\": " << rep.enumerated
       << ",\n  \"records\": " << rep.in_family
       << ",\n  \"invariant_violations\": " << rep.invariant_violations << ",\n  \"kappa\": \""
       << opts.kappa.get_str() << "\",\n  \"full_tables\": "
       << (opts.full_tables ? "true" : "false") << "\n}\n";
    return os.str();
}

std::string census_report_csv(const CensusReport& rep) {
    std::ostringstream os;
    os << "X,family,count,ratio\n";
    for (const auto& [name, counts] : rep.counts)
        for (size_t i = 0; i < counts.size(); ++i) {
            double x = mpz_get_d(rep.grid[i].get_mpz_t());
            os << rep.grid[i] << "," << name << "," << counts[i] << ","
               << mpz_get_d(counts[i].get_mpz_t()) / std::pow(x, 5.0 / 6.0) << "\n";
        }
    return os.str();
}

} // namespace ecred
