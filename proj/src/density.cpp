#include "ecred/density.hpp"

namespace ecred {

unsigned suggested_modulus_exp(const KodairaSymbol& T) {
    switch (T.tag) {
    case KodairaTag::I0: return 2;
    case KodairaTag::In: return T.n + 1;
    case KodairaTag::II:
    case KodairaTag::III:
    case KodairaTag::IV: return 3;
    case KodairaTag::I0star: return 4;
    case KodairaTag::Instar: return T.n + 4;
    case KodairaTag::IVstar:
    case KodairaTag::IIIstar:
    case KodairaTag::IIstar: return 6;
    }
    return 6;
}

unsigned suggested_modulus_exp_index(unsigned k) { return k + 2 < 4 ? 4 : k + 2; }

Rat leaf_mass(const std::vector<PlaneLeaf>& leaves, uint64_t p) {
    Rat mass(0);
    for (const auto& lf : leaves) {
        Rat m(1, pow_int(Int(static_cast<unsigned long>(p)), 2 * lf.k));
        m.canonicalize();
        mass += m;
    }
    return mass;
}

namespace {

DensityReport assemble(uint64_t p, const std::string& target, unsigned m,
                       const std::vector<PlaneLeaf>& leaves, const Rat& expected,
                       const EnumerationStats& st) {
    DensityReport r;
    r.p = static_cast<unsigned long>(p);
    r.target = target;
    r.modulus_exp = m;
    r.total = pow_int(r.p, 3 * m);
    // a leaf at depth k covers p^{m} * p^{2(m-k)} triples mod p^m
    r.favorable = 0;
    for (const auto& lf : leaves)
        r.favorable += pow_int(r.p, 3 * m - 2 * lf.k);
    r.density = Rat(r.favorable, r.total);
    r.density.canonicalize();
    r.expected = expected;
    r.match = r.density == expected;
    r.stats = st;
    return r;
}

} // namespace

DensityReport count_symbol_density(uint64_t p, const KodairaSymbol& T, unsigned m,
                                   uint64_t node_budget) {
    SymbolTarget target{T};
    EnumerationStats st;
    auto leaves = enumerate_plane(p, m, target, &st, node_budget);
    return assemble(p, T.str(), m, leaves, symbol_density(T, Int(static_cast<unsigned long>(p))),
                    st);
}

DensityReport count_index_density(uint64_t p, unsigned k, unsigned m,
                                  std::optional<ReductionType> type, uint64_t node_budget) {
    IndexTarget target{k};
    std::string name = "index k=" + std::to_string(k);
    if (type) {
        target.restrict_type = true;
        target.type = *type;
        name += std::string(" (") + reduction_name(*type) + ")";
    }
    EnumerationStats st;
    auto leaves = enumerate_plane(p, m, target, &st, node_budget);
    return assemble(p, name, m, leaves,
                    index_density_table(Int(static_cast<unsigned long>(p)), k, type), st);
}

Rat index_density_table(const Int& p, unsigned k, std::optional<ReductionType> type) {
    // Regrouping of the local-invariant table by index exponent:
    //   good: I0 at k=0
    //   multiplicative: I_{k+1}
    //   additive: II,III,IV at k=0,1,2; I0* at 4; I_{k-4}* at k>=5; IV*,III*,II* at 6,7,8
    Int pm1 = p - 1;
    auto frac = [&](const Int& num, unsigned e) {
        Rat r(num, pow_int(p, e));
        r.canonicalize();
        return r;
    };
    Rat good = (k == 0) ? frac(pm1, 1) : Rat(0);
    Rat mult = frac(pm1 * pm1, k + 3); // density of I_{k+1}
    Rat add(0);
    switch (k) {
    case 0: add = frac(pm1, 3); break;          // II
    case 1: add = frac(pm1, 4); break;          // III
    case 2: add = frac(pm1, 5); break;          // IV
    case 3: add = Rat(0); break;
    case 4: add = frac(pm1, 6); break;          // I0*
    default: {
        add = frac(pm1 * pm1, k + 3);           // I_{k-4}*
        if (k == 6) add += frac(pm1, 8);        // IV*
        if (k == 7) add += frac(pm1, 9);        // III*
        if (k == 8) add += frac(pm1, 10);       // II*
        break;
    }
    }
    if (!type)
        return good + mult + add;
    switch (*type) {
    case ReductionType::good: return good;
    case ReductionType::multiplicative: return mult;
    case ReductionType::additive: return add;
    }
    return Rat(0);
}

} // namespace ecred
