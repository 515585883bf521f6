#ifndef ECRED_KODAIRA_HPP
#define ECRED_KODAIRA_HPP

#include <string>

#include "ecred/int_utils.hpp"

namespace ecred {

/// Reduction classification at a prime p >= 5. In and Instar carry n >= 1.
enum class KodairaTag { I0, In, II, III, IV, I0star, Instar, IVstar, IIIstar, IIstar };

struct KodairaSymbol {
    KodairaTag tag = KodairaTag::I0;
    unsigned n = 0; // used by In / Instar only, n >= 1 there

    static KodairaSymbol I0() { return {KodairaTag::I0, 0}; }
    static KodairaSymbol In(unsigned n) { return {KodairaTag::In, n}; }
    static KodairaSymbol II() { return {KodairaTag::II, 0}; }
    static KodairaSymbol III() { return {KodairaTag::III, 0}; }
    static KodairaSymbol IV() { return {KodairaTag::IV, 0}; }
    static KodairaSymbol I0star() { return {KodairaTag::I0star, 0}; }
    static KodairaSymbol Instar(unsigned n) { return {KodairaTag::Instar, n}; }
    static KodairaSymbol IVstar() { return {KodairaTag::IVstar, 0}; }
    static KodairaSymbol IIIstar() { return {KodairaTag::IIIstar, 0}; }
    static KodairaSymbol IIstar() { return {KodairaTag::IIstar, 0}; }

    bool operator==(const KodairaSymbol& o) const = default;

    std::string str() const;
    /// Parse "I0", "I3", "II", "I2*", "IV*", ...
    static KodairaSymbol parse(const std::string& s);
};

enum class ReductionType { good, multiplicative, additive };

/// Per-prime invariants: exponents of p in C_p, Delta_p, Q_p, D_p and the
/// index exponent. delta_exp = 2*q_exp + d_exp always holds.
struct LocalData {
    Int p;
    KodairaSymbol symbol;
    unsigned c_exp = 0;
    unsigned delta_exp = 0;
    unsigned q_exp = 0;
    unsigned d_exp = 0;
    ReductionType reduction = ReductionType::good;
    unsigned index_exp = 0; // delta_exp - c_exp
};

/// Exponent row of the local-invariant table for a symbol.
LocalData local_data(const KodairaSymbol& sym, const Int& p);

/// Quadratic-twist-by-p pairing on symbols: In <-> In*, II <-> IV*,
/// III <-> III*, IV <-> II*, I0 <-> I0*.
KodairaSymbol sigma_twist(const KodairaSymbol& sym);

/// Density of p-minimal monic cubics over Z_p with this symbol, as an exact
/// rational in p.
Rat symbol_density(const KodairaSymbol& sym, const Int& p);

const char* reduction_name(ReductionType t);

} // namespace ecred

#endif
