#include "ecred/residue_classify.hpp"

#include <stdexcept>

#include <thread>
namespace ecred {

namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 addmod(u64 a, u64 b, u64 m) { return (a + b) % m; }

u64 submod(u64 a, u64 b, u64 m) { return (a + m - b) % m; }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// inverse of a unit mod p^k (p odd prime)
u64 invmod_pk(u64 a, u64 pk, u64 p) {
    // Euler: a^(phi-1), phi = p^k - p^(k-1)
    u64 phi = pk - pk / p;
    return powmod(a % pk, phi - 1, pk);
}

// capped valuation of a residue r mod p^k: (v, exact). v = k, exact = false
// means "every lift has valuation >= k".
struct CV {
    unsigned v;
    bool exact;
};

CV capped_val(u64 r, u64 p, unsigned k) {
    if (r == 0)
        return {k, false};
    unsigned v = 0;
    while (r % p == 0) {
        r /= p;
        ++v;
    }
    return {v, true};
}

bool known_ge(const CV& c, unsigned bound) { return c.v >= bound; }
bool known_eq(const CV& c, unsigned bound) { return c.exact && c.v == bound; }

// f(x) = x^3 + A x + B mod pk
u64 eval_f(u64 x, u64 A, u64 B, u64 pk) {
    u64 x2 = mulmod(x, x, pk);
    u64 x3 = mulmod(x2, x, pk);
    return addmod(addmod(x3, mulmod(A, x, pk), pk), B, pk);
}

u64 eval_fp(u64 x, u64 A, u64 pk) { // f' = 3x^2 + A
    return addmod(mulmod(3 % pk, mulmod(x, x, pk), pk), A, pk);
}

// Multiplicative row: refine t toward the critical point of f near the double
// root (Newton on f', f'' a unit there), then read the row valuations.
CappedClass classify_mult(u64 A, u64 B, u64 p, unsigned k, u64 pk, const CV& vD) {
    if (!vD.exact)
        return {CappedClass::MultAtLeast, {}, k};
    unsigned n = vD.v;
    // double root mod p: common root of f and f' (p is small here)
    u64 r = p;
    for (u64 x = 0; x < p; ++x)
        if (eval_f(x, A % p, B % p, p) == 0 && eval_fp(x, A % p, p) == 0) {
            r = x;
            break;
        }
    if (r == p)
        return {CappedClass::BadUndet, {}, 0};
    u64 t = r;
    for (int it = 0; it < 64; ++it) {
        u64 ft = eval_fp(t, A, pk);
        if (ft == 0)
            break;
        u64 fpp = mulmod(6 % pk, t, pk); // f'' = 6x
        t = submod(t, mulmod(ft, invmod_pk(fpp, pk, p), pk), pk);
    }
    CV va = capped_val(mulmod(3 % pk, t, pk), p, k); // a' = 3t
    CV vb = capped_val(eval_fp(t, A, pk), p, k);
    CV vc = capped_val(eval_f(t, A, B, pk), p, k);
    if (known_eq(va, 0) && known_ge(vb, (n + 1) / 2) && known_eq(vc, n))
        return {CappedClass::Exact, KodairaSymbol::In(n), 0};
    return {CappedClass::MultAtLeast, {}, n}; // row pending; n is a sound lower bound
}

CappedClass classify_rec(u64 A, u64 B, u64 p, unsigned k, bool twisted) {
    u64 pk = 1;
    for (unsigned i = 0; i < k; ++i)
        pk *= p;
    // Delta = -4A^3 - 27B^2 mod p^k
    u64 A3 = mulmod(mulmod(A, A, pk), A, pk);
    u64 B2 = mulmod(B, B, pk);
    u64 D = submod(0, addmod(mulmod(4 % pk, A3, pk), mulmod(27 % pk, B2, pk), pk), pk);
    CV vD = capped_val(D, p, k);
    if (known_eq(vD, 0))
        return {CappedClass::Exact, KodairaSymbol::I0(), 0};
    CV va = capped_val(A, p, k);
    CV vb = capped_val(B, p, k);
    if (known_eq(va, 0))
        return classify_mult(A, B, p, k, pk, vD);
    // va >= 1 from here; additive or large or unknown
    bool small_known = (va.exact && va.v < 2) || (vb.exact && vb.v < 3);
    bool large_known = known_ge(va, 2) && known_ge(vb, 3);
    if (small_known) {
        // triple root at t = 0; rows II / III / IV
        if (!known_ge(vb, 1))
            return {CappedClass::BadUndet, {}, 0}; // vb = 0 would force vD = 0
        if (known_eq(vb, 1))
            return {CappedClass::Exact, KodairaSymbol::II(), 0};
        if (known_eq(va, 1) && known_ge(vb, 2))
            return {CappedClass::Exact, KodairaSymbol::III(), 0};
        if (known_ge(va, 2) && known_eq(vb, 2))
            return {CappedClass::Exact, KodairaSymbol::IV(), 0};
        if (known_ge(vb, 2))
            return {CappedClass::AdditiveSmall, {}, 0};
        return {CappedClass::AdditiveOrLarge, {}, 0};
    }
    if (large_known) {
        if (twisted)
            return {CappedClass::NonMinimal, {}, 0};
        if (known_ge(va, 4) && known_ge(vb, 6))
            return {CappedClass::NonMinimal, {}, 0};
        if (k < 4)
            return {CappedClass::LargeUndet, {}, 0};
        u64 p2 = p * p, p3 = p2 * p;
        u64 pk3 = pk / p3;
        CappedClass sub = classify_rec((A / p2) % pk3, (B / p3) % pk3, p, k - 3, true);
        switch (sub.kind) {
        case CappedClass::Exact:
            return {CappedClass::Exact, sigma_twist(sub.sym), 0};
        case CappedClass::MultAtLeast:
            return {CappedClass::StarMultAtLeast, {}, sub.n_lo};
        case CappedClass::NonMinimal:
            // twist large or deeper: v(A) >= 4 and v(B) >= 6 upstairs
            return {CappedClass::NonMinimal, {}, 0};
        case CappedClass::AdditiveSmall:
            return {CappedClass::StarAdditive, {}, 0};
        case CappedClass::AdditiveOrLarge:
            return {CappedClass::StarAdditiveOrNonMin, {}, 0};
        case CappedClass::BadUndet:
            return {CappedClass::LargeBadUndet, {}, 0};
        case CappedClass::StarMultAtLeast:
        case CappedClass::LargeUndet:
        case CappedClass::LargeBadUndet:
        case CappedClass::StarAdditive:
        case CappedClass::StarAdditiveOrNonMin:
        case CappedClass::Unknown:
            return {CappedClass::LargeUndet, {}, 0};
        }
    }
    return {CappedClass::AdditiveOrLarge, {}, 0};
}

} // namespace

CappedClass classify_residue(u64 A, u64 B, u64 p, unsigned k) {
    return classify_rec(A, B, p, k, false);
}

TriState SymbolTarget::decide(const CappedClass& c) const {
    switch (c.kind) {
    case CappedClass::Exact:
        return c.sym == T ? TriState::Yes : TriState::No;
    case CappedClass::MultAtLeast:
        if (T.tag != KodairaTag::In)
            return TriState::No;
        return T.n < c.n_lo ? TriState::No : TriState::Undetermined;
    case CappedClass::StarMultAtLeast:
        if (T.tag != KodairaTag::Instar)
            return TriState::No;
        return T.n < c.n_lo ? TriState::No : TriState::Undetermined;
    case CappedClass::AdditiveSmall: {
        bool cand = T.tag == KodairaTag::II || T.tag == KodairaTag::III ||
                    T.tag == KodairaTag::IV;
        return cand ? TriState::Undetermined : TriState::No;
    }
    case CappedClass::LargeUndet: {
        bool starred = T.tag == KodairaTag::I0star || T.tag == KodairaTag::Instar ||
                       T.tag == KodairaTag::IVstar || T.tag == KodairaTag::IIIstar ||
                       T.tag == KodairaTag::IIstar;
        return starred ? TriState::Undetermined : TriState::No;
    }
    case CappedClass::LargeBadUndet: {
        bool cand = T.tag == KodairaTag::Instar || T.tag == KodairaTag::IVstar ||
                    T.tag == KodairaTag::IIIstar || T.tag == KodairaTag::IIstar;
        return cand ? TriState::Undetermined : TriState::No;
    }
    case CappedClass::StarAdditive:
    case CappedClass::StarAdditiveOrNonMin: {
        bool cand = T.tag == KodairaTag::IVstar || T.tag == KodairaTag::IIIstar ||
                    T.tag == KodairaTag::IIstar;
        return cand ? TriState::Undetermined : TriState::No;
    }
    case CappedClass::AdditiveOrLarge:
        return (T.tag == KodairaTag::I0 || T.tag == KodairaTag::In) ? TriState::No
                                                                    : TriState::Undetermined;
    case CappedClass::NonMinimal:
        return TriState::No;
    case CappedClass::BadUndet:
        return T.tag == KodairaTag::I0 ? TriState::No : TriState::Undetermined;
    case CappedClass::Unknown:
        return TriState::Undetermined;
    }
    return TriState::Undetermined;
}

TriState IndexTarget::decide(const CappedClass& c) const {
    auto type_ok = [&](ReductionType t) { return !restrict_type || t == type; };
    switch (c.kind) {
    case CappedClass::Exact: {
        LocalData ld = local_data(c.sym, Int(5)); // exponents don't depend on p
        bool yes = ld.index_exp == k_index && type_ok(ld.reduction);
        return yes ? TriState::Yes : TriState::No;
    }
    case CappedClass::MultAtLeast:
        if (!type_ok(ReductionType::multiplicative))
            return TriState::No;
        // index = n - 1 >= n_lo - 1
        return k_index + 1 < c.n_lo ? TriState::No : TriState::Undetermined;
    case CappedClass::StarMultAtLeast:
        if (!type_ok(ReductionType::additive))
            return TriState::No;
        // index = n + 4 >= n_lo + 4
        return k_index < c.n_lo + 4 ? TriState::No : TriState::Undetermined;
    case CappedClass::AdditiveSmall:
        if (!type_ok(ReductionType::additive))
            return TriState::No;
        return k_index <= 2 ? TriState::Undetermined : TriState::No; // II/III/IV: 0,1,2
    case CappedClass::LargeUndet:
        if (!type_ok(ReductionType::additive))
            return TriState::No;
        return k_index >= 4 ? TriState::Undetermined : TriState::No; // starred: >= 4
    case CappedClass::LargeBadUndet:
        if (!type_ok(ReductionType::additive))
            return TriState::No;
        return k_index >= 5 ? TriState::Undetermined : TriState::No; // I0* excluded
    case CappedClass::StarAdditive:
    case CappedClass::StarAdditiveOrNonMin:
        if (!type_ok(ReductionType::additive))
            return TriState::No;
        return (k_index >= 6 && k_index <= 8) ? TriState::Undetermined : TriState::No;
    case CappedClass::AdditiveOrLarge:
        if (!type_ok(ReductionType::additive))
            return TriState::No;
        return k_index == 3 ? TriState::No : TriState::Undetermined;
    case CappedClass::NonMinimal:
        return TriState::No;
    case CappedClass::BadUndet:
        // bad reduction for every lift; good is excluded, the rest is open
        return restrict_type && type == ReductionType::good ? TriState::No
                                                            : TriState::Undetermined;
    case CappedClass::Unknown:
        return TriState::Undetermined;
    }
    return TriState::Undetermined;
}

namespace {

struct PlaneNode {
    u64 A, B;
    unsigned k;
};

template <class Target>
void enumerate_cells(u64 p, unsigned max_depth, const Target& target,
                     std::vector<PlaneNode> stack, u64 node_budget,
                     std::vector<PlaneLeaf>& leaves, EnumerationStats& st) {
    while (!stack.empty()) {
        PlaneNode nd = stack.back();
        stack.pop_back();
        if (++st.nodes_visited > node_budget)
            throw BudgetExceededError("enumerate_plane: node budget exceeded");
        st.max_depth = std::max(st.max_depth, nd.k);
        CappedClass c = classify_residue(nd.A, nd.B, p, nd.k);
        switch (target.decide(c)) {
        case TriState::Yes:
            ++st.yes_leaves;
            leaves.push_back({nd.A, nd.B, nd.k});
            break;
        case TriState::No:
            break;
        case TriState::Undetermined: {
            if (nd.k == max_depth)
                throw UndeterminedResidueError(
                    "enumerate_plane: residue undetermined at requested depth");
            u64 pk = 1;
            for (unsigned i = 0; i < nd.k; ++i)
                pk *= p;
            for (u64 i = 0; i < p; ++i)
                for (u64 j = 0; j < p; ++j)
                    stack.push_back({nd.A + i * pk, nd.B + j * pk, nd.k + 1});
            break;
        }
        }
    }
}

} // namespace

template <class Target>
std::vector<PlaneLeaf> enumerate_plane(u64 p, unsigned max_depth, const Target& target,
                                       EnumerationStats* stats, u64 node_budget,
                                       unsigned threads) {
    unsigned nt = std::max(1u, threads);
    std::vector<std::vector<PlaneNode>> strips(nt);
    u64 cell = 0;
    for (u64 a = 0; a < p; ++a)
        for (u64 b = 0; b < p; ++b)
            strips[cell++ % nt].push_back({a, b, 1});
    std::vector<std::vector<PlaneLeaf>> leaves(nt);
    std::vector<EnumerationStats> sts(nt);
    std::vector<std::exception_ptr> errs(nt);
    auto work = [&](unsigned s) {
        try {
            enumerate_cells(p, max_depth, target, strips[s], node_budget / nt + 1, leaves[s],
                            sts[s]);
        } catch (...) {
            errs[s] = std::current_exception();
        }
    };
    if (nt == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned s = 0; s < nt; ++s)
            pool.emplace_back(work, s);
        for (auto& th : pool)
            th.join();
    }
    for (auto& e : errs)
        if (e)
            std::rethrow_exception(e);
    std::vector<PlaneLeaf> all;
    EnumerationStats st;
    for (unsigned s = 0; s < nt; ++s) {
        all.insert(all.end(), leaves[s].begin(), leaves[s].end());
        st.nodes_visited += sts[s].nodes_visited;
        st.yes_leaves += sts[s].yes_leaves;
        st.max_depth = std::max(st.max_depth, sts[s].max_depth);
    }
    if (stats)
        *stats = st;
    return all;
}

template std::vector<PlaneLeaf> enumerate_plane<SymbolTarget>(u64, unsigned, const SymbolTarget&,
                                                              EnumerationStats*, u64, unsigned);
template std::vector<PlaneLeaf> enumerate_plane<IndexTarget>(u64, unsigned, const IndexTarget&,
                                                             EnumerationStats*, u64, unsigned);

} // namespace ecred
