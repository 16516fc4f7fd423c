#ifndef MUCERT_IWASAWA_HPP
#define MUCERT_IWASAWA_HPP

#include <string>
#include <string_view>
#include <vector>

#include "mucert/numbers.hpp"

namespace mucert {

/// Working precision for one-variable Iwasawa-algebra arithmetic:
/// coefficients are tracked mod p^p_prec, series mod T^t_prec.
struct PrecisionProfile {
    u64 p = 3;
    unsigned p_prec = 12;
    unsigned t_prec = 24;
    u64 modulus = 0; // p^p_prec, cached

    static PrecisionProfile make(u64 p, unsigned p_prec = 12, unsigned t_prec = 24);
    bool operator==(const PrecisionProfile& o) const {
        return p == o.p && p_prec == o.p_prec && t_prec == o.t_prec;
    }
};

/// Element of O[[T]] mod (p^N, T^M). Immutable after construction.
class TruncatedPowerSeries {
  public:
    TruncatedPowerSeries(PrecisionProfile profile, std::vector<i64> coeffs);

    static TruncatedPowerSeries zero(const PrecisionProfile& profile);
    static TruncatedPowerSeries one(const PrecisionProfile& profile);
    /// c * T^degree
    static TruncatedPowerSeries monomial(const PrecisionProfile& profile, i64 c, unsigned degree);
    /// Text form "c0 + c1*T + c2*T^2 + ...". Terms of degree >= t_prec
    /// reduce to zero (the carrier is a quotient ring).
    static TruncatedPowerSeries parse(const PrecisionProfile& profile, std::string_view text);

    const PrecisionProfile& profile() const { return profile_; }
    u64 coeff(unsigned j) const { return coeffs_[j]; }
    const std::vector<u64>& coeffs() const { return coeffs_; }
    bool is_zero() const;
    /// Largest j with nonzero coefficient, or -1 for the zero series.
    int degree() const;
    std::string to_string() const;

    bool operator==(const TruncatedPowerSeries& o) const;

  private:
    PrecisionProfile profile_;
    std::vector<u64> coeffs_; // size t_prec, entries in [0, p^p_prec)
};

TruncatedPowerSeries series_add(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b);
TruncatedPowerSeries series_sub(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b);
/// Cauchy product truncated to (p^N, T^M).
TruncatedPowerSeries series_mul(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b);
TruncatedPowerSeries series_scalar_mul(const TruncatedPowerSeries& a, i64 c);

/// f = p^mu * unit * distinguished, with the distinguished factor monic of
/// degree lambda and all its lower coefficients divisible by p, and the
/// unit invertible. Coefficients of unit and distinguished are certified
/// mod p^residual_p_prec = p^(p_prec - mu) only; the product p^mu*u*P
/// reproduces f exactly mod (p^p_prec, T^t_prec).
struct WeierstrassFactorization {
    unsigned mu = 0;
    unsigned lambda = 0;
    TruncatedPowerSeries distinguished;
    TruncatedPowerSeries unit;
    unsigned residual_p_prec = 0;
};

WeierstrassFactorization weierstrass_prepare(const TruncatedPowerSeries& f);

/// A finitely generated torsion module presented as the cokernel of a
/// square matrix over the Iwasawa algebra.
struct LambdaPresentation {
    PrecisionProfile profile;
    std::vector<std::vector<TruncatedPowerSeries>> matrix;
};

LambdaPresentation make_presentation(PrecisionProfile profile,
                                     std::vector<std::vector<TruncatedPowerSeries>> matrix);

struct StructureInvariants {
    unsigned mu = 0;
    unsigned lambda = 0;
    unsigned residual_p_prec = 0;
};

/// Determinant by cofactor expansion; no division, so non-unit pivots are
/// harmless. Presentations are desk-scale (dimension capped at 8).
TruncatedPowerSeries presentation_determinant(const LambdaPresentation& pres);

/// mu and lambda of the cokernel, read off the prepared determinant
/// (the characteristic ideal of a torsion cokernel is generated by det).
StructureInvariants module_invariants(const LambdaPresentation& pres);

} // namespace mucert

#endif
