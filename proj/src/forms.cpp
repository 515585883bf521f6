#include "ecred/forms.hpp"

#include <sstream>
#include <stdexcept>

namespace ecred {

Int MonicCubic::disc() const {
    return 18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c;
}

MonicCubic MonicCubic::translate(const Int& t) const {
    // f(x+t) = x^3 + (a+3t) x^2 + (b + 2ta + 3t^2) x + f(t)
    return {a + 3 * t, b + 2 * t * a + 3 * t * t, eval(t)};
}

std::string MonicCubic::str() const {
    std::ostringstream os;
    os << "x^3 + " << a << "*x^2 + " << b << "*x + " << c;
    return os.str();
}

TracelessCubic traceless_normalize(const MonicCubic& f) {
    TracelessCubic r;
    r.t = Rat(-f.a, 3);
    r.t.canonicalize();
    r.A = Rat(3 * f.b - f.a * f.a, 3);
    r.A.canonicalize();
    r.B = Rat(2 * f.a * f.a * f.a - 9 * f.a * f.b + 27 * f.c, 27);
    r.B.canonicalize();
    return r;
}

Int BinaryCubicForm::disc() const {
    return b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d +
           18 * a * b * c * d;
}

Int BinaryCubicForm::eval(const Int& x, const Int& y) const {
    return ((a * x + b * y) * x + c * y * y) * x + d * y * y * y;
}

std::string BinaryCubicForm::str() const {
    std::ostringstream os;
    os << "(" << a << "," << b << "," << c << "," << d << ")";
    return os.str();
}

Int BinaryQuarticForm::invariant_I() const { return 12 * a * e - 3 * b * d + c * c; }

Int BinaryQuarticForm::invariant_J() const {
    return 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * e * b * b - 2 * c * c * c;
}

Int BinaryQuarticForm::disc() const {
    Int I = invariant_I(), J = invariant_J();
    Int num = 4 * I * I * I - J * J;
    Int q, r;
    mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), 27);
    if (r != 0)
        throw std::logic_error("quartic disc: 27 does not divide 4I^3 - J^2");
    return q;
}

Int BinaryQuarticForm::eval(const Int& x, const Int& y) const {
    Int y2 = y * y;
    return (((a * x + b * y) * x + c * y2) * x + d * y2 * y) * x + e * y2 * y2;
}

std::string BinaryQuarticForm::str() const {
    std::ostringstream os;
    os << "(" << a << "," << b << "," << c << "," << d << "," << e << ")";
    return os.str();
}

} // namespace ecred
