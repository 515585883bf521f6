#ifndef ECRED_EULER_HPP
#define ECRED_EULER_HPP

#include <string>
#include <vector>

#include "ecred/int_utils.hpp"
#include "ecred/interval.hpp"

namespace ecred {

/// A certified Euler-product constant: value = prefactor * product where
/// product encloses prod_{p >= 5} F(p), assembled from a finite part, a
/// zeta-correction part and an exponential tail bound.
struct EulerConstant {
    std::string name;
    Interval prefactor;
    Interval product_partial; // finite part times zeta corrections
    Interval tail_bound;      // enclosure of exp(+-tau)
    Interval value;           // prefactor * product_partial * tail_bound
};

/// Per-prime factor as a rational function of q = p^{-1/6}: products of
/// polynomial factors with constant term 1 over the same.
struct EulerFactorSpec {
    // each factor is a dense coefficient list in q, constant term first
    std::vector<std::vector<Rat>> numer;
    std::vector<std::vector<Rat>> denom;
};

/// Certified enclosure of prod_{p >= 5} F(p). The factor must be
/// 1 + O(q^7) (checked); zeta corrections are applied through q-order
/// `accel_order` and the tail beyond prime_cutoff is bounded by an
/// integral comparison of the residual log series.
Interval euler_product(const EulerFactorSpec& spec, uint64_t prime_cutoff = 2000,
                       unsigned accel_order = 60, Interval* tail_out = nullptr);

/// Named constants: "generic" (the product of 1 - p^-10 alone),
/// "sf+", "sf-", "kappa+", "kappa-" (the conductor-census slope constants,
/// per-discriminant-sign).
EulerConstant euler_constant(const std::string& name, uint64_t prime_cutoff = 2000);

/// Archimedean constants: c_inf^+(1) and c_inf^-(1) = sqrt(3) c_inf^+(1).
Interval archimedean_volume(int sign);

/// The shared prefactor Gamma(1/2) Gamma(1/6) / Gamma(2/3) / (60 sqrt(3)).
Interval census_prefactor();

/// Euler factor specs used by the named constants (exposed for tests).
EulerFactorSpec sf_factor_spec();
EulerFactorSpec kappa_factor_spec();
EulerFactorSpec generic_factor_spec();

} // namespace ecred

#endif
