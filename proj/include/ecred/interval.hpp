#ifndef ECRED_INTERVAL_HPP
#define ECRED_INTERVAL_HPP

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace ecred {

/// Closed interval [lo, hi] of mpfr reals with outward rounding, so the true
/// value of every expression is contained in the computed interval. Both
/// endpoints carry the working precision; default is 192 bits, settable via
/// set_default_precision before constructing values.
class Interval {
  public:
    Interval();
    explicit Interval(long v);
    explicit Interval(const mpz_class& v);
    explicit Interval(const mpq_class& v);
    Interval(const Interval& o);
    Interval(Interval&& o) noexcept;
    Interval& operator=(const Interval& o);
    Interval& operator=(Interval&& o) noexcept;
    ~Interval();

    static void set_default_precision(mpfr_prec_t bits);
    static mpfr_prec_t default_precision();

    static Interval pi();
    /// Interval with the given rational endpoints (lo <= hi).
    static Interval from_endpoints(const mpq_class& lo, const mpq_class& hi);
    /// Gamma(x) for a positive rational point. The point interval must not
    /// straddle the local minimum of Gamma near 1.4616.
    static Interval gamma(const mpq_class& x);
    /// Riemann zeta at a rational s > 1 (monotone decreasing there).
    static Interval zeta(const mpq_class& s);

    Interval operator+(const Interval& o) const;
    Interval operator-(const Interval& o) const;
    Interval operator*(const Interval& o) const;
    Interval operator/(const Interval& o) const;
    Interval operator-() const;

    Interval sqrt() const;      // requires lo >= 0
    Interval log() const;       // requires lo > 0
    Interval exp() const;
    Interval pow(const mpq_class& e) const; // requires lo > 0
    Interval recip() const;

    bool contains(const mpq_class& v) const;
    bool contains(const Interval& o) const;
    /// Strict comparison certain from the enclosure.
    bool certainly_less(const Interval& o) const;
    bool certainly_positive() const;

    double width() const;
    double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    mpq_class lo_q() const;
    mpq_class hi_q() const;

    std::string str(int digits = 20) const;

    const mpfr_t& lo() const { return lo_; }
    const mpfr_t& hi() const { return hi_; }

  private:
    mpfr_t lo_, hi_;
    void init();
};

} // namespace ecred

#endif
