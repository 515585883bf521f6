#include "ecred/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace ecred {

namespace {
mpfr_prec_t g_prec = 192;
}

void Interval::set_default_precision(mpfr_prec_t bits) { g_prec = bits; }
mpfr_prec_t Interval::default_precision() { return g_prec; }

void Interval::init() {
    mpfr_init2(lo_, g_prec);
    mpfr_init2(hi_, g_prec);
}

Interval::Interval() {
    init();
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(long v) {
    init();
    mpfr_set_si(lo_, v, MPFR_RNDD);
    mpfr_set_si(hi_, v, MPFR_RNDU);
}

Interval::Interval(const mpz_class& v) {
    init();
    mpfr_set_z(lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi_, v.get_mpz_t(), MPFR_RNDU);
}

Interval::Interval(const mpq_class& v) {
    init();
    mpfr_set_q(lo_, v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, v.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& o) {
    init();
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept {
    init();
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(const Interval& o) {
    if (this != &o) {
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
    if (this != &o) {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval Interval::pi() {
    Interval r;
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::from_endpoints(const mpq_class& lo, const mpq_class& hi) {
    if (lo > hi)
        throw std::invalid_argument("from_endpoints: lo > hi");
    Interval r;
    mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::gamma(const mpq_class& x) {
    if (x <= 0)
        throw std::domain_error("gamma: positive arguments only");
    // Gamma decreases on (0, x0) and increases on (x0, inf), x0 ~ 1.4616.
    // We refuse point intervals straddling x0; rational inputs of interest
    // (1/6, 1/2, 2/3, ...) are far from it.
    Interval p(x);
    if (x > mpq_class(14, 10) && x < mpq_class(15, 10))
        throw std::domain_error("gamma: argument too close to the minimum");
    Interval r;
    mpfr_t a, b;
    mpfr_init2(a, g_prec);
    mpfr_init2(b, g_prec);
    mpfr_gamma(a, p.lo_, MPFR_RNDD);
    mpfr_gamma(b, p.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, a, b, MPFR_RNDD);
    mpfr_gamma(a, p.lo_, MPFR_RNDU);
    mpfr_gamma(b, p.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, a, b, MPFR_RNDU);
    mpfr_clear(a);
    mpfr_clear(b);
    return r;
}

Interval Interval::zeta(const mpq_class& s) {
    if (s <= 1)
        throw std::domain_error("zeta: s > 1 required");
    Interval p(s);
    Interval r;
    // zeta is decreasing on (1, inf)
    mpfr_zeta(r.lo_, p.hi_, MPFR_RNDD);
    mpfr_zeta(r.hi_, p.lo_, MPFR_RNDU);
    return r;
}

Interval Interval::operator+(const Interval& o) const {
    Interval r;
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::operator-(const Interval& o) const {
    Interval r;
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

Interval Interval::operator-() const {
    Interval r;
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Interval Interval::operator*(const Interval& o) const {
    Interval r;
    mpfr_t t;
    mpfr_init2(t, g_prec);
    // lo: min of the four products rounded down
    mpfr_mul(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_mul(t, lo_, o.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, hi_, o.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, hi_, o.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    // hi: max rounded up
    mpfr_mul(r.hi_, lo_, o.lo_, MPFR_RNDU);
    mpfr_mul(t, lo_, o.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, hi_, o.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, hi_, o.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

Interval Interval::recip() const {
    if (mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0)
        throw std::domain_error("recip: interval contains zero");
    Interval r;
    mpfr_ui_div(r.lo_, 1, hi_, MPFR_RNDD);
    mpfr_ui_div(r.hi_, 1, lo_, MPFR_RNDU);
    return r;
}

Interval Interval::operator/(const Interval& o) const { return *this * o.recip(); }

Interval Interval::sqrt() const {
    if (mpfr_sgn(lo_) < 0)
        throw std::domain_error("sqrt: negative interval");
    Interval r;
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::log() const {
    if (mpfr_sgn(lo_) <= 0)
        throw std::domain_error("log: nonpositive interval");
    Interval r;
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::exp() const {
    Interval r;
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::pow(const mpq_class& e) const {
    if (e == 0)
        return Interval(1);
    if (mpfr_sgn(lo_) <= 0)
        throw std::domain_error("pow: base must be positive");
    // integral exponents keep exactness of directed rounding
    if (e.get_den() == 1 && mpfr_fits_slong_p(lo_, MPFR_RNDD)) {
        long k = mpz_get_si(e.get_num().get_mpz_t());
        Interval r;
        if (k > 0) {
            mpfr_pow_si(r.lo_, lo_, k, MPFR_RNDD);
            mpfr_pow_si(r.hi_, hi_, k, MPFR_RNDU);
        } else {
            mpfr_pow_si(r.lo_, hi_, k, MPFR_RNDD);
            mpfr_pow_si(r.hi_, lo_, k, MPFR_RNDU);
        }
        return r;
    }
    return (log() * Interval(e)).exp();
}

bool Interval::contains(const mpq_class& v) const {
    return mpfr_cmp_q(lo_, v.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, v.get_mpq_t()) >= 0;
}

bool Interval::contains(const Interval& o) const {
    return mpfr_cmp(lo_, o.lo_) <= 0 && mpfr_cmp(hi_, o.hi_) >= 0;
}

bool Interval::certainly_less(const Interval& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }

bool Interval::certainly_positive() const { return mpfr_sgn(lo_) > 0; }

double Interval::width() const {
    mpfr_t w;
    mpfr_init2(w, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

static mpq_class to_q(const mpfr_t& x) {
    mpq_t q;
    mpq_init(q);
    mpfr_get_q(q, x);
    mpq_class r(q);
    mpq_clear(q);
    return r;
}

mpq_class Interval::lo_q() const { return to_q(lo_); }
mpq_class Interval::hi_q() const { return to_q(hi_); }

std::string Interval::str(int digits) const {
    char* a = nullptr;
    char* b = nullptr;
    mpfr_asprintf(&a, "%.*Rg", digits, lo_);
    mpfr_asprintf(&b, "%.*Rg", digits, hi_);
    std::string s = std::string("[") + a + ", " + b + "]";
    mpfr_free_str(a);
    mpfr_free_str(b);
    return s;
}

} // namespace ecred
