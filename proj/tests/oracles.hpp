// Test-side oracles, independent of the implementation paths they check:
// trial division, brute-force symbol evaluation, full (x,y) point loops,
// the chord-tangent group law, schoolbook series products, permutation
// determinants.
#ifndef MUCERT_TESTS_ORACLES_HPP
#define MUCERT_TESTS_ORACLES_HPP

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "mucert/elliptic.hpp"
#include "mucert/iwasawa.hpp"
#include "mucert/numbers.hpp"

namespace oracles {

using mucert::i128;
using mucert::i64;
using mucert::u64;

inline bool trial_division_is_prime(u64 n) {
    if (n < 2)
        return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

inline u64 coprime_count_phi(u64 n) {
    u64 c = 0;
    for (u64 k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1)
            ++c;
    return c;
}

// Legendre symbol by Euler's criterion, for odd prime p
inline int legendre_euler(i64 a, u64 p) {
    i64 r = a % static_cast<i64>(p);
    if (r < 0)
        r += static_cast<i64>(p);
    if (r == 0)
        return 0;
    u64 e = mucert::powmod(static_cast<u64>(r), (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

// Kronecker symbol straight from the defining factorization
inline int definition_kronecker(i64 a, i64 n) {
    if (n == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    int k = 1;
    if (n < 0) {
        n = -n;
        if (a < 0)
            k = -k;
    }
    while (n % 2 == 0) {
        n /= 2;
        if (a % 2 == 0)
            return 0;
        i64 m = ((a % 8) + 8) % 8;
        k *= (m == 1 || m == 7) ? 1 : -1;
    }
    for (u64 p = 3; n > 1; p += 2) {
        while (n % static_cast<i64>(p) == 0) {
            n /= static_cast<i64>(p);
            int l = legendre_euler(a, p);
            if (l == 0)
                return 0;
            k *= l;
        }
    }
    return k;
}

// Exhaustive point count on a general Weierstrass equation mod ell.
// Returns {#smooth points including infinity, #singular points}.
inline std::pair<u64, u64> naive_point_count(const std::array<i64, 5>& a, u64 ell) {
    auto red = [&](i64 v) {
        i64 r = v % static_cast<i64>(ell);
        return static_cast<u64>(r < 0 ? r + static_cast<i64>(ell) : r);
    };
    u64 a1 = red(a[0]), a2 = red(a[1]), a3 = red(a[2]), a4 = red(a[3]), a6 = red(a[4]);
    u64 smooth = 0, singular = 0;
    for (u64 x = 0; x < ell; ++x) {
        u64 rhs = ((x + a2) % ell * x % ell + a4) % ell * x % ell;
        rhs = (rhs + a6) % ell;
        for (u64 y = 0; y < ell; ++y) {
            u64 lhs = (y * y + a1 * x % ell * y + a3 * y) % ell;
            if (lhs != rhs % ell)
                continue;
            u64 fy = (2 * y + a1 * x + a3) % ell;
            // f = y^2 + a1 x y + a3 y - x^3 - a2 x^2 - a4 x - a6
            u64 dxpoly = ((3 * x % ell) * x % ell + (2 * a2 % ell) * x % ell + a4) % ell;
            u64 fx = (a1 * y % ell + ell - dxpoly) % ell;
            if (fx == 0 && fy == 0)
                ++singular;
            else
                ++smooth;
        }
    }
    return {smooth + 1, singular};
}

// chord-tangent group law on the general Weierstrass model over F_ell
struct EcPoint {
    bool infinity = true;
    u64 x = 0, y = 0;
};

struct EcGroup {
    u64 ell;
    u64 a1, a2, a3, a4, a6;

    EcGroup(const std::array<i64, 5>& a, u64 ell_) : ell(ell_) {
        auto red = [&](i64 v) {
            i64 r = v % static_cast<i64>(ell);
            return static_cast<u64>(r < 0 ? r + static_cast<i64>(ell) : r);
        };
        a1 = red(a[0]);
        a2 = red(a[1]);
        a3 = red(a[2]);
        a4 = red(a[3]);
        a6 = red(a[4]);
    }

    u64 inv(u64 v) const { return mucert::powmod(v, ell - 2, ell); }

    bool on_curve(const EcPoint& p) const {
        if (p.infinity)
            return true;
        u64 lhs = (p.y * p.y % ell + a1 * p.x % ell * p.y % ell + a3 * p.y) % ell;
        u64 rhs =
            (((p.x + a2) % ell * p.x % ell + a4) % ell * p.x % ell + a6) % ell;
        return lhs == rhs;
    }

    EcPoint neg(const EcPoint& p) const {
        if (p.infinity)
            return p;
        u64 ny = (2 * ell + ell * ell - (p.y + a1 * p.x % ell + a3) % ell) % ell;
        return {false, p.x, ny};
    }

    EcPoint add(const EcPoint& p, const EcPoint& q) const {
        if (p.infinity)
            return q;
        if (q.infinity)
            return p;
        EcPoint nq = neg(q);
        if (p.x == nq.x && p.y == nq.y)
            return {};
        u64 lam, nu;
        if (p.x != q.x) {
            u64 d = inv((q.x + ell - p.x) % ell);
            lam = (q.y + ell - p.y) % ell * d % ell;
            nu = ((p.y * q.x % ell + ell * ell - q.y * p.x % ell) % ell) * d % ell;
        } else {
            // p == q (p != -q already handled)
            u64 den = (2 * p.y + a1 * p.x + a3) % ell;
            u64 d = inv(den);
            u64 numer = ((3 * p.x % ell) * p.x % ell + (2 * a2 % ell) * p.x % ell + a4 +
                         (ell - a1 * p.y % ell)) %
                        ell;
            lam = numer * d % ell;
            u64 nnum = ((ell * ell - p.x * p.x % ell * p.x % ell) % ell + a4 * p.x % ell +
                        2 * a6 % ell + (ell - a3 * p.y % ell)) %
                       ell;
            nu = nnum * d % ell;
        }
        u64 x3 = ((lam * lam % ell + a1 * lam % ell) % ell + 3 * ell -
                  (a2 + p.x + q.x) % ell) %
                 ell;
        u64 y3 = (2 * ell * ell - ((lam + a1) % ell * x3 % ell + nu + a3) % ell) % ell;
        return {false, x3, y3 % ell};
    }

    EcPoint mul(EcPoint p, u64 k) const {
        EcPoint acc;
        while (k) {
            if (k & 1)
                acc = add(acc, p);
            p = add(p, p);
            k >>= 1;
        }
        return acc;
    }
};

// schoolbook truncated product over Z, reduced afterwards
inline mucert::TruncatedPowerSeries schoolbook_mul(const mucert::TruncatedPowerSeries& a,
                                                   const mucert::TruncatedPowerSeries& b) {
    const auto& prof = a.profile();
    std::vector<i64> acc(prof.t_prec, 0);
    for (unsigned j = 0; j < prof.t_prec; ++j)
        for (unsigned k = 0; j + k < prof.t_prec; ++k) {
            i128 term = static_cast<i128>(a.coeff(j)) * b.coeff(k);
            acc[j + k] = static_cast<i64>((acc[j + k] + term) % static_cast<i64>(prof.modulus));
        }
    return mucert::TruncatedPowerSeries(prof, std::move(acc));
}

// determinant by explicit permutation expansion (Leibniz), n <= 4
inline mucert::TruncatedPowerSeries
leibniz_det(const std::vector<std::vector<mucert::TruncatedPowerSeries>>& m,
            const mucert::PrecisionProfile& prof) {
    size_t n = m.size();
    std::vector<unsigned> perm(n);
    for (size_t i = 0; i < n; ++i)
        perm[i] = static_cast<unsigned>(i);
    auto acc = mucert::TruncatedPowerSeries::zero(prof);
    do {
        int sign = 1;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j])
                    sign = -sign;
        auto term = mucert::TruncatedPowerSeries::one(prof);
        for (size_t i = 0; i < n; ++i)
            term = mucert::series_mul(term, m[i][perm[i]]);
        acc = sign > 0 ? mucert::series_add(acc, term) : mucert::series_sub(acc, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

} // namespace oracles

#endif
