#include "ecred/euler.hpp"

#include <stdexcept>

#include "ecred/int_utils.hpp"

namespace ecred {

namespace {

constexpr unsigned kSeriesOrder = 130; // exact log expansion order K1

using Series = std::vector<Rat>; // q-power coefficients, length kSeriesOrder+1

Series series_zero() { return Series(kSeriesOrder + 1, Rat(0)); }

// truncated product
Series series_mul(const Series& a, const Series& b) {
    Series r = series_zero();
    for (unsigned i = 0; i <= kSeriesOrder; ++i) {
        if (a[i] == 0)
            continue;
        for (unsigned j = 0; i + j <= kSeriesOrder; ++j)
            if (b[j] != 0)
                r[i + j] += a[i] * b[j];
    }
    return r;
}

// log(f) for a series with f[0] = 1, via log' = f'/f (solves recursively)
Series series_log(const Series& f) {
    if (f[0] != 1)
        throw std::logic_error("series_log: constant term must be 1");
    // l' f = f'  =>  sum_{j} (j lj) f_{k-j} = k f_k
    Series l = series_zero();
    for (unsigned k = 1; k <= kSeriesOrder; ++k) {
        Rat acc = Rat(k) * f[k];
        for (unsigned j = 1; j < k; ++j)
            acc -= Rat(j) * l[j] * f[k - j];
        l[k] = acc / Rat(k);
    }
    return l;
}

Series poly_to_series(const std::vector<Rat>& poly) {
    Series s = series_zero();
    for (size_t i = 0; i < poly.size() && i <= kSeriesOrder; ++i)
        s[i] = poly[i];
    return s;
}

// interval evaluation of a polynomial at the interval point x
Interval eval_poly(const std::vector<Rat>& poly, const Interval& x) {
    Interval acc{Rat(0)};
    for (size_t i = poly.size(); i-- > 0;)
        acc = acc * x + Interval(poly[i]);
    return acc;
}

// sum_{n >= n0} n^{-s} <= n0^{-s} + n0^{1-s}/(s-1) for s > 1
Interval zeta_tail_over_integers(const mpq_class& s, uint64_t n0) {
    Interval N0{Int(static_cast<unsigned long>(n0))};
    Interval first = N0.pow(mpq_class(-s));
    Interval second = N0.pow(mpq_class(1 - s)) / Interval(mpq_class(s - 1));
    return first + second;
}

// majorant discarded-mass bound for |sum_{k > K1} (log factor)_k q0^k| of a
// single factor (1 - u)^{+-1}, u = 1 - poly; see the tail assembly below
Interval factor_majorant_tail(const std::vector<Rat>& poly, const Interval& q0) {
    // u-hat = sum |coefficients of (1 - poly)| q^j, nonnegative coefficients
    std::vector<Rat> uhat(poly.size(), Rat(0));
    for (size_t j = 1; j < poly.size(); ++j)
        uhat[j] = abs(poly[j]);
    // degree of the lowest term of u-hat
    size_t dmin = 1;
    while (dmin < uhat.size() && uhat[dmin] == 0)
        ++dmin;
    if (dmin >= uhat.size())
        return Interval{Rat(0)}; // factor is exactly 1
    unsigned M1 = kSeriesOrder / static_cast<unsigned>(dmin) + 1;
    Interval uq = eval_poly(uhat, q0);
    if (!(uq.hi_d() < 1.0))
        throw std::logic_error("factor_majorant_tail: majorant not contracting");
    // exact truncated powers of u-hat (series arithmetic), discarded mass per m
    Series upow = poly_to_series(uhat);
    Series cur = series_zero();
    cur[0] = 1;
    Interval total{Rat(0)};
    Interval upow_q{Rat(1)};
    for (unsigned m = 1; m <= M1; ++m) {
        cur = series_mul(cur, upow);
        upow_q = upow_q * uq;
        // discarded mass of u-hat^m beyond kSeriesOrder = u(q0)^m - trunc(q0),
        // with the truncated series evaluated in intervals
        Interval tv{Rat(0)};
        for (size_t i = cur.size(); i-- > 0;)
            tv = tv * q0 + Interval(cur[i]);
        Interval discarded = upow_q - tv;
        // clamp below at 0 (roundoff may dip negative)
        if (discarded.lo_d() < 0)
            discarded = Interval::from_endpoints(mpq_class(0),
                                                 discarded.hi_q() > 0 ? discarded.hi_q()
                                                                      : mpq_class(0));
        total = total + discarded / Interval(Rat(m));
    }
    // geometric remainder for m > M1
    Interval rem = upow_q * uq / (Interval(Rat(1)) - uq) / Interval(Rat(M1 + 1));
    return total + rem;
}

} // namespace

Interval euler_product(const EulerFactorSpec& spec, uint64_t prime_cutoff, unsigned accel_order,
                       Interval* tail_out) {
    if (accel_order > kSeriesOrder - 10)
        throw std::invalid_argument("euler_product: acceleration order too large");
    // exact log series of F
    Series logF = series_zero();
    for (const auto& poly : spec.numer) {
        Series l = series_log(poly_to_series(poly));
        for (unsigned k = 0; k <= kSeriesOrder; ++k)
            logF[k] += l[k];
    }
    for (const auto& poly : spec.denom) {
        Series l = series_log(poly_to_series(poly));
        for (unsigned k = 0; k <= kSeriesOrder; ++k)
            logF[k] -= l[k];
    }
    for (unsigned k = 1; k <= 6; ++k)
        if (logF[k] != 0)
            throw std::logic_error("euler_product: factor is not 1 + O(q^7)");
    // corrections: gamma_k so that log F + sum gamma_k log(1 - q^k) = O(q^{accel+1})
    std::vector<Rat> gamma(accel_order + 1, Rat(0));
    Series resid = logF;
    for (unsigned k = 7; k <= accel_order; ++k) {
        if (resid[k] == 0)
            continue;
        gamma[k] = resid[k];
        // residual += gamma_k log(1 - q^k) = gamma_k * (-sum_m q^{km}/m)
        for (unsigned m = 1; k * m <= kSeriesOrder; ++m)
            resid[k * m] -= gamma[k] / Rat(m);
    }
    for (unsigned k = 0; k <= accel_order; ++k)
        if (resid[k] != 0)
            throw std::logic_error("euler_product: acceleration bookkeeping failed");

    // zeta part: prod_k zeta_{>=5}(k/6)^{gamma_k}
    Interval zeta_part{Rat(1)};
    for (unsigned k = 7; k <= accel_order; ++k) {
        if (gamma[k] == 0)
            continue;
        mpq_class s(k, 6);
        s.canonicalize();
        Interval z = Interval::zeta(s);
        Interval f2 = Interval(Rat(1)) - Interval(Int(2)).pow(mpq_class(-s));
        Interval f3 = Interval(Rat(1)) - Interval(Int(3)).pow(mpq_class(-s));
        Interval z5 = z * f2 * f3;
        // z5^{gamma_k} via exp/log
        zeta_part = zeta_part * (z5.log() * Interval(gamma[k])).exp();
    }

    // finite part over primes 5 <= p < prime_cutoff of
    // H(p) = F(p) prod_k (1 - q^k)^{gamma_k}
    Interval finite{Rat(1)};
    for (uint64_t p : primes_below(prime_cutoff)) {
        if (p < 5)
            continue;
        Interval q = Interval(Int(static_cast<unsigned long>(p))).pow(mpq_class(-1, 6));
        Interval F{Rat(1)};
        for (const auto& poly : spec.numer)
            F = F * eval_poly(poly, q);
        for (const auto& poly : spec.denom)
            F = F / eval_poly(poly, q);
        Interval H = F;
        for (unsigned k = 7; k <= accel_order; ++k) {
            if (gamma[k] == 0)
                continue;
            Interval base = Interval(Rat(1)) - q.pow(mpq_class(k));
            H = H * (base.log() * Interval(gamma[k])).exp();
        }
        finite = finite * H;
    }

    // tail: sum_{n >= cutoff} |log H(n)| bounded termwise from the residual
    // series plus the majorant bound for the discarded orders
    Interval q0 = Interval(Int(static_cast<unsigned long>(prime_cutoff))).pow(mpq_class(-1, 6));
    Interval tau{Rat(0)};
    for (unsigned k = accel_order + 1; k <= kSeriesOrder; ++k) {
        if (resid[k] == 0)
            continue;
        mpq_class s(k, 6);
        s.canonicalize();
        tau = tau + Interval(mpq_class(abs(resid[k]))) * zeta_tail_over_integers(s, prime_cutoff);
    }
    // discarded orders past kSeriesOrder, per factor, scaled by the integer
    // tail of n^{-(K1+1)/6}
    Interval beyond{Rat(0)};
    for (const auto& poly : spec.numer)
        beyond = beyond + factor_majorant_tail(poly, q0);
    for (const auto& poly : spec.denom)
        beyond = beyond + factor_majorant_tail(poly, q0);
    for (unsigned k = 7; k <= accel_order; ++k) {
        if (gamma[k] == 0)
            continue;
        std::vector<Rat> corr(k + 1, Rat(0));
        corr[0] = 1;
        corr[k] = -1;
        beyond = beyond + Interval(mpq_class(abs(gamma[k]))) * factor_majorant_tail(corr, q0);
    }
    // |rho(n)| <= beyond * (q_n / q0)^{K1+1}; summed over n >= cutoff
    {
        mpq_class s(kSeriesOrder + 1, 6);
        s.canonicalize();
        Interval scale =
            Interval(Int(static_cast<unsigned long>(prime_cutoff))).pow(mpq_class(s)) *
            zeta_tail_over_integers(s, prime_cutoff);
        tau = tau + beyond * scale;
    }
    Interval tail = Interval::from_endpoints((-tau).lo_q(), tau.hi_q()).exp();
    if (tail_out)
        *tail_out = tail;
    return finite * zeta_part * tail;
}

EulerFactorSpec sf_factor_spec() {
    // (1 - q^6)(1 + q^6 + q^7): the density-side assembly of
    // 1 + p^{-7/6} - p^{-2} - p^{-13/6}
    EulerFactorSpec s;
    std::vector<Rat> a(7, Rat(0)), b(8, Rat(0));
    a[0] = 1;
    a[6] = -1;
    b[0] = 1;
    b[6] = 1;
    b[7] = 1;
    s.numer = {a, b};
    return s;
}

EulerFactorSpec kappa_factor_spec() {
    // (1-q^6) * (1 - q + q^6 + q^10 + q^12 - 2 q^15 + q^17 - q^18) / (1 - q)
    EulerFactorSpec s;
    std::vector<Rat> a(7, Rat(0));
    a[0] = 1;
    a[6] = -1;
    std::vector<Rat> inner(19, Rat(0));
    inner[0] = 1;
    inner[1] = -1;
    inner[6] = 1;
    inner[10] = 1;
    inner[12] = 1;
    inner[15] = -2;
    inner[17] = 1;
    inner[18] = -1;
    std::vector<Rat> d(2, Rat(0));
    d[0] = 1;
    d[1] = -1;
    s.numer = {a, inner};
    s.denom = {d};
    return s;
}

EulerFactorSpec generic_factor_spec() {
    EulerFactorSpec s;
    std::vector<Rat> a(61, Rat(0));
    a[0] = 1;
    a[60] = -1;
    s.numer = {a};
    return s;
}

Interval census_prefactor() {
    Interval g12 = Interval::gamma(mpq_class(1, 2));
    Interval g16 = Interval::gamma(mpq_class(1, 6));
    Interval g23 = Interval::gamma(mpq_class(2, 3));
    Interval s3 = Interval(Int(3)).sqrt();
    return g12 * g16 / g23 / (Interval(Int(60)) * s3);
}

Interval archimedean_volume(int sign) {
    // c_inf^+(1) = 2 / (4^{1/3} 27^{1/2}) * (1/5) * B(1/2, 1/6),
    // c_inf^-(1) = sqrt(3) c_inf^+(1)
    Interval beta = Interval::gamma(mpq_class(1, 2)) * Interval::gamma(mpq_class(1, 6)) /
                    Interval::gamma(mpq_class(2, 3));
    Interval c = Interval(Int(2)) /
                 (Interval(Int(4)).pow(mpq_class(1, 3)) * Interval(Int(27)).sqrt()) /
                 Interval(Int(5)) * beta;
    if (sign < 0)
        c = c * Interval(Int(3)).sqrt();
    return c;
}

EulerConstant euler_constant(const std::string& name, uint64_t prime_cutoff) {
    EulerConstant out;
    out.name = name;
    if (name == "generic") {
        out.prefactor = Interval(Rat(1));
        out.product_partial = euler_product(generic_factor_spec(), prime_cutoff, 60,
                                            &out.tail_bound);
        // split: product_partial already includes the tail factor; report the
        // enclosed value directly
        out.value = out.prefactor * out.product_partial;
        return out;
    }
    bool plus = name == "sf+" || name == "kappa+";
    bool sf = name == "sf+" || name == "sf-";
    if (!plus && !(name == "sf-" || name == "kappa-"))
        throw std::invalid_argument("euler_constant: unknown name " + name);
    out.prefactor = census_prefactor();
    if (!plus)
        out.prefactor = out.prefactor * Interval(Int(3)).sqrt();
    out.product_partial =
        euler_product(sf ? sf_factor_spec() : kappa_factor_spec(), prime_cutoff, 60,
                      &out.tail_bound);
    out.value = out.prefactor * out.product_partial;
    return out;
}

} // namespace ecred
