#include "ecred/kodaira.hpp"

#include <stdexcept>

namespace ecred {

std::string KodairaSymbol::str() const {
    switch (tag) {
    case KodairaTag::I0: return "I0";
    case KodairaTag::In: return "I" + std::to_string(n);
    case KodairaTag::II: return "II";
    case KodairaTag::III: return "III";
    case KodairaTag::IV: return "IV";
    case KodairaTag::I0star: return "I0*";
    case KodairaTag::Instar: return "I" + std::to_string(n) + "*";
    case KodairaTag::IVstar: return "IV*";
    case KodairaTag::IIIstar: return "III*";
    case KodairaTag::IIstar: return "II*";
    }
    return "?";
}

KodairaSymbol KodairaSymbol::parse(const std::string& s) {
    if (s == "II") return II();
    if (s == "III") return III();
    if (s == "IV") return IV();
    if (s == "II*") return IIstar();
    if (s == "III*") return IIIstar();
    if (s == "IV*") return IVstar();
    if (s.size() >= 2 && s[0] == 'I' && (std::isdigit(s[1]) != 0)) {
        bool star = s.back() == '*';
        std::string num = s.substr(1, s.size() - 1 - (star ? 1 : 0));
        unsigned long n = std::stoul(num);
        if (star)
            return n == 0 ? I0star() : Instar(static_cast<unsigned>(n));
        return n == 0 ? I0() : In(static_cast<unsigned>(n));
    }
    throw std::invalid_argument("unrecognized Kodaira symbol: " + s);
}

LocalData local_data(const KodairaSymbol& sym, const Int& p) {
    LocalData d;
    d.p = p;
    d.symbol = sym;
    switch (sym.tag) {
    case KodairaTag::I0:
        d.c_exp = 0; d.delta_exp = 0; d.q_exp = 0; d.d_exp = 0;
        d.reduction = ReductionType::good;
        break;
    case KodairaTag::In:
        d.c_exp = 1; d.delta_exp = sym.n; d.q_exp = sym.n / 2; d.d_exp = sym.n % 2;
        d.reduction = ReductionType::multiplicative;
        break;
    case KodairaTag::II:
        d.c_exp = 2; d.delta_exp = 2; d.q_exp = 0; d.d_exp = 2;
        d.reduction = ReductionType::additive;
        break;
    case KodairaTag::III:
        d.c_exp = 2; d.delta_exp = 3; d.q_exp = 1; d.d_exp = 1;
        d.reduction = ReductionType::additive;
        break;
    case KodairaTag::IV:
        d.c_exp = 2; d.delta_exp = 4; d.q_exp = 1; d.d_exp = 2;
        d.reduction = ReductionType::additive;
        break;
    case KodairaTag::I0star:
        d.c_exp = 2; d.delta_exp = 6; d.q_exp = 3; d.d_exp = 0;
        d.reduction = ReductionType::additive;
        break;
    case KodairaTag::Instar:
        d.c_exp = 2; d.delta_exp = sym.n + 6; d.q_exp = sym.n / 2 + 3; d.d_exp = sym.n % 2;
        d.reduction = ReductionType::additive;
        break;
    case KodairaTag::IVstar:
        d.c_exp = 2; d.delta_exp = 8; d.q_exp = 3; d.d_exp = 2;
        d.reduction = ReductionType::additive;
        break;
    case KodairaTag::IIIstar:
        d.c_exp = 2; d.delta_exp = 9; d.q_exp = 4; d.d_exp = 1;
        d.reduction = ReductionType::additive;
        break;
    case KodairaTag::IIstar:
        d.c_exp = 2; d.delta_exp = 10; d.q_exp = 4; d.d_exp = 2;
        d.reduction = ReductionType::additive;
        break;
    }
    d.index_exp = d.delta_exp - d.c_exp;
    return d;
}

KodairaSymbol sigma_twist(const KodairaSymbol& sym) {
    switch (sym.tag) {
    case KodairaTag::I0: return KodairaSymbol::I0star();
    case KodairaTag::In: return KodairaSymbol::Instar(sym.n);
    case KodairaTag::II: return KodairaSymbol::IVstar();
    case KodairaTag::III: return KodairaSymbol::IIIstar();
    case KodairaTag::IV: return KodairaSymbol::IIstar();
    case KodairaTag::I0star: return KodairaSymbol::I0();
    case KodairaTag::Instar: return KodairaSymbol::In(sym.n);
    case KodairaTag::IVstar: return KodairaSymbol::II();
    case KodairaTag::IIIstar: return KodairaSymbol::III();
    case KodairaTag::IIstar: return KodairaSymbol::IV();
    }
    throw std::logic_error("sigma_twist: bad tag");
}

Rat symbol_density(const KodairaSymbol& sym, const Int& p) {
    Int pm1 = p - 1;
    auto den = [&](unsigned e) { return pow_int(p, e); };
    switch (sym.tag) {
    case KodairaTag::I0: return Rat(pm1, p);
    case KodairaTag::In: return Rat(pm1 * pm1, den(sym.n + 2));
    case KodairaTag::II: return Rat(pm1, den(3));
    case KodairaTag::III: return Rat(pm1, den(4));
    case KodairaTag::IV: return Rat(pm1, den(5));
    case KodairaTag::I0star: return Rat(pm1, den(6));
    case KodairaTag::Instar: return Rat(pm1 * pm1, den(sym.n + 7));
    case KodairaTag::IVstar: return Rat(pm1, den(8));
    case KodairaTag::IIIstar: return Rat(pm1, den(9));
    case KodairaTag::IIstar: return Rat(pm1, den(10));
    }
    throw std::logic_error("symbol_density: bad tag");
}

const char* reduction_name(ReductionType t) {
    switch (t) {
    case ReductionType::good: return "good";
    case ReductionType::multiplicative: return "multiplicative";
    case ReductionType::additive: return "additive";
    }
    return "?";
}

} // namespace ecred
