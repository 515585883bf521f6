#ifndef ECRED_FORMS_HPP
#define ECRED_FORMS_HPP

#include <string>

#include "ecred/int_utils.hpp"

namespace ecred {

/// Monic cubic x^3 + a x^2 + b x + c over Z.
struct MonicCubic {
    Int a, b, c;

    Int disc() const; // 18abc - 4a^3c + a^2b^2 - 4b^3 - 27c^2

    /// f(x + t) for integer t; stays monic integral.
    MonicCubic translate(const Int& t) const;

    Int eval(const Int& x) const { return ((x + a) * x + b) * x + c; }
    Int deriv(const Int& x) const { return (3 * x + 2 * a) * x + b; }

    std::string str() const;
};

/// Traceless companion of a monic cubic: x^3 + A x + B with A, B rational
/// (denominators divide 3 and 27; they vanish when 3 | a). The shift t = -a/3
/// is carried exactly.
struct TracelessCubic {
    Rat t; // f(x + t) = x^3 + A x + B
    Rat A, B;
};

/// Exact traceless normalization. For 3 | a the result is integral.
TracelessCubic traceless_normalize(const MonicCubic& f);

/// Binary cubic a x^3 + b x^2 y + c x y^2 + d y^3 over Z.
struct BinaryCubicForm {
    Int a, b, c, d;

    /// b^2 c^2 - 4 a c^3 - 4 b^3 d - 27 a^2 d^2 + 18 a b c d
    Int disc() const;
    Int eval(const Int& x, const Int& y) const;
    bool operator==(const BinaryCubicForm& o) const = default;
    std::string str() const;
};

/// Binary quartic a x^4 + b x^3 y + c x^2 y^2 + d x y^3 + e y^4 over Z.
struct BinaryQuarticForm {
    Int a, b, c, d, e;

    Int invariant_I() const; // 12ae - 3bd + c^2
    Int invariant_J() const; // 72ace + 9bcd - 27ad^2 - 27eb^2 - 2c^3
    /// (4 I^3 - J^2) / 27, asserted integral.
    Int disc() const;
    Int eval(const Int& x, const Int& y) const;
    bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0 && e == 0; }
    bool operator==(const BinaryQuarticForm& o) const = default;
    std::string str() const;
};

} // namespace ecred

#endif
