#include "mucert/iwasawa.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "mucert/errors.hpp"

namespace mucert {

PrecisionProfile PrecisionProfile::make(u64 p, unsigned p_prec, unsigned t_prec) {
    if (p < 3 || !is_prime(p))
        throw input_error("precision profile: p must be an odd prime");
    if (p_prec < 1)
        throw input_error("precision profile: p_prec must be >= 1");
    if (t_prec < 1)
        throw input_error("precision profile: t_prec must be >= 1");
    PrecisionProfile prof;
    prof.p = p;
    prof.p_prec = p_prec;
    prof.t_prec = t_prec;
    prof.modulus = 1;
    for (unsigned i = 0; i < p_prec; ++i) {
        if (prof.modulus > (u64(1) << 62) / p)
            throw budget_error("precision profile: p^p_prec exceeds the 64-bit carrier");
        prof.modulus *= p;
    }
    return prof;
}

namespace {

u64 reduce_coeff(i64 c, u64 modulus) {
    i64 m = static_cast<i64>(modulus);
    i64 r = c % m;
    if (r < 0)
        r += m;
    return static_cast<u64>(r);
}

void require_same_profile(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b) {
    if (!(a.profile() == b.profile()))
        throw input_error("precision profile mismatch");
}

} // namespace

TruncatedPowerSeries::TruncatedPowerSeries(PrecisionProfile profile, std::vector<i64> coeffs)
    : profile_(profile) {
    if (profile_.modulus == 0)
        profile_ = PrecisionProfile::make(profile.p, profile.p_prec, profile.t_prec);
    coeffs_.assign(profile_.t_prec, 0);
    if (coeffs.size() > profile_.t_prec)
        coeffs.resize(profile_.t_prec);
    for (size_t j = 0; j < coeffs.size(); ++j)
        coeffs_[j] = reduce_coeff(coeffs[j], profile_.modulus);
}

TruncatedPowerSeries TruncatedPowerSeries::zero(const PrecisionProfile& profile) {
    return TruncatedPowerSeries(profile, {});
}

TruncatedPowerSeries TruncatedPowerSeries::one(const PrecisionProfile& profile) {
    return TruncatedPowerSeries(profile, {1});
}

TruncatedPowerSeries TruncatedPowerSeries::monomial(const PrecisionProfile& profile, i64 c,
                                                    unsigned degree) {
    std::vector<i64> v(degree + 1, 0);
    v[degree] = c;
    return TruncatedPowerSeries(profile, std::move(v));
}

bool TruncatedPowerSeries::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](u64 c) { return c == 0; });
}

int TruncatedPowerSeries::degree() const {
    for (int j = static_cast<int>(coeffs_.size()) - 1; j >= 0; --j)
        if (coeffs_[j] != 0)
            return j;
    return -1;
}

bool TruncatedPowerSeries::operator==(const TruncatedPowerSeries& o) const {
    return profile_ == o.profile_ && coeffs_ == o.coeffs_;
}

std::string TruncatedPowerSeries::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (unsigned j = 0; j < coeffs_.size(); ++j) {
        if (coeffs_[j] == 0)
            continue;
        if (!first)
            out << " + ";
        first = false;
        if (j == 0)
            out << coeffs_[j];
        else if (coeffs_[j] == 1)
            out << "T" << (j > 1 ? "^" + std::to_string(j) : "");
        else
            out << coeffs_[j] << "*T" << (j > 1 ? "^" + std::to_string(j) : "");
    }
    if (first)
        out << "0";
    return out.str();
}

TruncatedPowerSeries TruncatedPowerSeries::parse(const PrecisionProfile& profile,
                                                 std::string_view text) {
    std::vector<i64> coeffs;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
    };
    auto parse_uint = [&]() -> u64 {
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
            throw input_error("series literal: expected a number at offset " + std::to_string(i));
        u64 v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            if (v > (u64(1) << 62) / 10)
                throw input_error("series literal: coefficient too large");
            v = v * 10 + (text[i] - '0');
            ++i;
        }
        return v;
    };
    skip_ws();
    if (i == text.size())
        throw input_error("series literal: empty");
    bool expect_term = true;
    bool first_term = true;
    int sign = 1;
    while (i < text.size()) {
        skip_ws();
        if (i == text.size())
            break;
        if (!expect_term) {
            if (text[i] == '+')
                sign = 1;
            else if (text[i] == '-')
                sign = -1;
            else
                throw input_error("series literal: expected '+' or '-' at offset " +
                                  std::to_string(i));
            ++i;
            expect_term = true;
            continue;
        }
        // optional leading sign, first term only
        if (first_term && text[i] == '-') {
            sign = -sign;
            ++i;
            skip_ws();
        } else if (first_term && text[i] == '+') {
            ++i;
            skip_ws();
        }
        i64 coeff = 1;
        bool saw_number = false;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            coeff = static_cast<i64>(parse_uint());
            saw_number = true;
            skip_ws();
        }
        unsigned degree = 0;
        bool saw_t = false;
        if (i < text.size() && (text[i] == '*' || text[i] == 'T')) {
            if (text[i] == '*') {
                if (!saw_number)
                    throw input_error("series literal: stray '*'");
                ++i;
                skip_ws();
            }
            if (i >= text.size() || text[i] != 'T')
                throw input_error("series literal: expected 'T' at offset " + std::to_string(i));
            ++i;
            saw_t = true;
            degree = 1;
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip_ws();
                degree = static_cast<unsigned>(parse_uint());
            }
        }
        if (!saw_number && !saw_t)
            throw input_error("series literal: expected a term at offset " + std::to_string(i));
        if (degree < profile.t_prec) {
            if (coeffs.size() <= degree)
                coeffs.resize(degree + 1, 0);
            coeffs[degree] += sign * coeff;
        }
        sign = 1;
        expect_term = false;
        first_term = false;
        skip_ws();
    }
    if (expect_term)
        throw input_error("series literal: trailing operator");
    return TruncatedPowerSeries(profile, std::move(coeffs));
}

TruncatedPowerSeries series_add(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b) {
    require_same_profile(a, b);
    const auto& prof = a.profile();
    std::vector<i64> out(prof.t_prec);
    for (unsigned j = 0; j < prof.t_prec; ++j)
        out[j] = static_cast<i64>((a.coeff(j) + b.coeff(j)) % prof.modulus);
    return TruncatedPowerSeries(prof, std::move(out));
}

TruncatedPowerSeries series_sub(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b) {
    require_same_profile(a, b);
    const auto& prof = a.profile();
    std::vector<i64> out(prof.t_prec);
    for (unsigned j = 0; j < prof.t_prec; ++j)
        out[j] = static_cast<i64>((a.coeff(j) + prof.modulus - b.coeff(j)) % prof.modulus);
    return TruncatedPowerSeries(prof, std::move(out));
}

TruncatedPowerSeries series_mul(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b) {
    require_same_profile(a, b);
    const auto& prof = a.profile();
    std::vector<u64> acc(prof.t_prec, 0);
    for (unsigned j = 0; j < prof.t_prec; ++j) {
        if (a.coeff(j) == 0)
            continue;
        for (unsigned k = 0; j + k < prof.t_prec; ++k) {
            if (b.coeff(k) == 0)
                continue;
            acc[j + k] = (acc[j + k] + mulmod(a.coeff(j), b.coeff(k), prof.modulus)) % prof.modulus;
        }
    }
    std::vector<i64> out(acc.begin(), acc.end());
    return TruncatedPowerSeries(prof, std::move(out));
}

TruncatedPowerSeries series_scalar_mul(const TruncatedPowerSeries& a, i64 c) {
    const auto& prof = a.profile();
    i64 r = c % static_cast<i64>(prof.modulus);
    if (r < 0)
        r += static_cast<i64>(prof.modulus);
    u64 cr = static_cast<u64>(r);
    std::vector<i64> out(prof.t_prec);
    for (unsigned j = 0; j < prof.t_prec; ++j)
        out[j] = static_cast<i64>(mulmod(a.coeff(j), cr, prof.modulus));
    return TruncatedPowerSeries(prof, std::move(out));
}

namespace {

unsigned p_valuation(u64 c, u64 p, unsigned cap) {
    if (c == 0)
        return cap;
    unsigned v = 0;
    while (v < cap && c % p == 0) {
        c /= p;
        ++v;
    }
    return v;
}

// F_p[T]/(T^M) arithmetic on raw vectors, used by the Hensel iteration.
std::vector<u64> fp_mul(const std::vector<u64>& a, const std::vector<u64>& b, u64 p) {
    std::vector<u64> out(a.size(), 0);
    for (size_t j = 0; j < a.size(); ++j) {
        if (a[j] == 0)
            continue;
        for (size_t k = 0; j + k < a.size(); ++k)
            out[j + k] = (out[j + k] + a[j] * b[k]) % p;
    }
    return out;
}

std::vector<u64> fp_inverse(const std::vector<u64>& a, u64 p) {
    // triangular solve: a * inv = 1 in F_p[T]/(T^M); a[0] != 0
    std::vector<u64> inv(a.size(), 0);
    u64 lead_inv = powmod(a[0], p - 2, p);
    inv[0] = lead_inv;
    for (size_t j = 1; j < a.size(); ++j) {
        u64 conv = 0;
        for (size_t k = 1; k <= j; ++k)
            conv = (conv + a[k] * inv[j - k]) % p;
        inv[j] = mulmod(p - conv, lead_inv, p) % p;
    }
    return inv;
}

} // namespace

WeierstrassFactorization weierstrass_prepare(const TruncatedPowerSeries& f) {
    const auto& prof = f.profile();
    const u64 p = prof.p;
    const unsigned N = prof.p_prec;
    const unsigned M = prof.t_prec;

    unsigned mu = N;
    for (unsigned j = 0; j < M; ++j)
        mu = std::min(mu, p_valuation(f.coeff(j), p, N));
    if (mu >= N)
        throw precision_error("weierstrass_prepare: series indeterminate at this precision");

    // g = f / p^mu, certified mod p^(N - mu)
    const unsigned Nr = N - mu;
    u64 m = 1;
    for (unsigned i = 0; i < Nr; ++i)
        m *= p;
    u64 pmu = 1;
    for (unsigned i = 0; i < mu; ++i)
        pmu *= p;
    std::vector<u64> g(M);
    for (unsigned j = 0; j < M; ++j)
        g[j] = (f.coeff(j) / pmu) % m;

    int lambda = -1;
    for (unsigned j = 0; j < M; ++j)
        if (g[j] % p != 0) {
            lambda = static_cast<int>(j);
            break;
        }
    if (lambda < 0)
        throw precision_error("weierstrass_prepare: t_prec too small (no unit coefficient)");
    const unsigned lam = static_cast<unsigned>(lambda);

    // Hensel iteration in (Z/p^Nr)[T]/(T^M): g = unit * P with P = T^lam + (mult of p).
    std::vector<u64> vbar(M, 0); // g shifted down by lam, mod p
    for (unsigned j = lam; j < M; ++j)
        vbar[j - lam] = g[j] % p;
    std::vector<u64> vinv = fp_inverse(vbar, p);

    std::vector<u64> P(M, 0), U(M, 0);
    P[lam] = 1;
    for (unsigned j = lam; j < M; ++j)
        U[j - lam] = g[j]; // full-precision lift; error vanishes mod p by construction

    u64 pk = p;
    for (unsigned k = 1; k < Nr; ++k) {
        // e = g - U*P mod (p^Nr, T^M); divisible by p^k
        std::vector<u64> e(M, 0);
        for (unsigned j = 0; j < M; ++j) {
            u64 conv = 0;
            for (unsigned t = 0; t <= j; ++t)
                conv = (conv + mulmod(U[t], P[j - t], m)) % m;
            e[j] = (g[j] + m - conv) % m;
        }
        std::vector<u64> h(M, 0);
        for (unsigned j = 0; j < M; ++j)
            h[j] = (e[j] / pk) % p;
        std::vector<u64> w = fp_mul(h, vinv, p); // w = A + T^lam * B
        std::vector<u64> A(M, 0), B(M, 0);
        for (unsigned j = 0; j < lam; ++j)
            A[j] = w[j];
        for (unsigned j = lam; j < M; ++j)
            B[j - lam] = w[j];
        std::vector<u64> dU = fp_mul(vbar, B, p);
        for (unsigned j = 0; j < M; ++j) {
            P[j] = (P[j] + mulmod(pk, A[j], m)) % m;
            U[j] = (U[j] + mulmod(pk, dU[j], m)) % m;
        }
        pk *= p;
    }

    std::vector<i64> Pv(M, 0), Uv(M, 0);
    for (unsigned j = 0; j < M; ++j) {
        Pv[j] = static_cast<i64>(P[j]);
        Uv[j] = static_cast<i64>(U[j]);
    }
    WeierstrassFactorization out{
        mu, lam, TruncatedPowerSeries(prof, std::move(Pv)), TruncatedPowerSeries(prof, std::move(Uv)),
        Nr};
    return out;
}

LambdaPresentation make_presentation(PrecisionProfile profile,
                                     std::vector<std::vector<TruncatedPowerSeries>> matrix) {
    size_t n = matrix.size();
    if (n == 0)
        throw input_error("presentation matrix is empty");
    if (n > 8)
        throw budget_error("presentation matrices are capped at 8x8");
    for (const auto& row : matrix) {
        if (row.size() != n)
            throw input_error("presentation matrix must be square");
        for (const auto& entry : row)
            if (!(entry.profile() == profile))
                throw input_error("presentation entry precision profile mismatch");
    }
    return LambdaPresentation{profile, std::move(matrix)};
}

namespace {

TruncatedPowerSeries det_rec(const LambdaPresentation& pres, std::vector<unsigned>& cols,
                             unsigned row) {
    const auto& prof = pres.profile;
    if (cols.size() == 1)
        return pres.matrix[row][cols[0]];
    TruncatedPowerSeries acc = TruncatedPowerSeries::zero(prof);
    for (size_t i = 0; i < cols.size(); ++i) {
        const auto& pivot = pres.matrix[row][cols[i]];
        if (pivot.is_zero())
            continue;
        std::vector<unsigned> sub;
        sub.reserve(cols.size() - 1);
        for (size_t t = 0; t < cols.size(); ++t)
            if (t != i)
                sub.push_back(cols[t]);
        TruncatedPowerSeries minor = det_rec(pres, sub, row + 1);
        TruncatedPowerSeries term = series_mul(pivot, minor);
        acc = (i % 2 == 0) ? series_add(acc, term) : series_sub(acc, term);
    }
    return acc;
}

} // namespace

TruncatedPowerSeries presentation_determinant(const LambdaPresentation& pres) {
    std::vector<unsigned> cols(pres.matrix.size());
    for (size_t i = 0; i < cols.size(); ++i)
        cols[i] = static_cast<unsigned>(i);
    return det_rec(pres, cols, 0);
}

StructureInvariants module_invariants(const LambdaPresentation& pres) {
    TruncatedPowerSeries det = presentation_determinant(pres);
    if (det.is_zero())
        throw precision_error("module_invariants: not provably torsion at this precision");
    WeierstrassFactorization w = weierstrass_prepare(det);
    return StructureInvariants{w.mu, w.lambda, w.residual_p_prec};
}

} // namespace mucert
