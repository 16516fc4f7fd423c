#include "mucert/elliptic.hpp"

#include <algorithm>

#include "mucert/errors.hpp"

namespace mucert {

namespace {

constexpr u64 kReductionBudget = 2'000'000;
constexpr i64 kCoeffBound = 100'000'000; // keeps the i128 discriminant formula exact

} // namespace

std::array<i128, 4> CurveRecord::b_invariants() const {
    i128 a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a6 = a[4];
    i128 b2 = a1 * a1 + 4 * a2;
    i128 b4 = 2 * a4 + a1 * a3;
    i128 b6 = a3 * a3 + 4 * a6;
    i128 b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    return {b2, b4, b6, b8};
}

i128 CurveRecord::discriminant() const {
    auto [b2, b4, b6, b8] = b_invariants();
    // magnitude guard: every term must stay well inside the i128 range
    auto mag = [](i128 v) { return static_cast<long double>(v < 0 ? -v : v); };
    long double worst = std::max({mag(b2) * mag(b2) * mag(b8), 8.0L * mag(b4) * mag(b4) * mag(b4),
                                  27.0L * mag(b6) * mag(b6), 9.0L * mag(b2) * mag(b4) * mag(b6)});
    if (worst > 1e37L)
        throw input_error("curve coefficients too large for an exact discriminant");
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

CurveRecord make_curve(std::string label, std::array<i64, 5> a, u64 conductor, unsigned rank,
                       u64 sha_order, u64 tamagawa_product, std::set<u64> isogeny_degrees,
                       bool minimal) {
    for (i64 ai : a)
        if (ai > kCoeffBound || ai < -kCoeffBound)
            throw input_error("curve coefficients exceed the desk-scale bound 1e8");
    if (!minimal)
        throw input_error("curve record must declare a minimal model (\"minimal\": true)");
    if (conductor == 0)
        throw input_error("curve conductor must be positive");
    if (sha_order == 0 || tamagawa_product == 0)
        throw input_error("sha_order and tamagawa_product must be positive");
    for (u64 d : isogeny_degrees)
        if (!is_prime(d))
            throw input_error("isogeny_degrees must be primes");

    CurveRecord c;
    c.label = std::move(label);
    c.a = a;
    c.conductor = conductor;
    c.rank = rank;
    c.sha_order = sha_order;
    c.tamagawa_product = tamagawa_product;
    c.isogeny_degrees = std::move(isogeny_degrees);
    c.minimal = minimal;

    i128 disc = c.discriminant();
    if (disc == 0)
        throw input_error("curve is singular (discriminant 0)");
    for (auto& [p, e] : factorize(conductor)) {
        (void)e;
        c.bad_primes.push_back(p);
        if (disc % static_cast<i128>(p) != 0)
            throw input_error("conductor prime " + std::to_string(p) +
                              " does not divide the discriminant");
    }
    // minimal model sanity: the discriminant has no prime support outside N
    i128 d = disc < 0 ? -disc : disc;
    for (u64 p : c.bad_primes)
        while (d % static_cast<i128>(p) == 0)
            d /= static_cast<i128>(p);
    if (d != 1) {
        // some prime divides disc but not N; with a minimal model that is
        // a data inconsistency
        throw input_error("discriminant has prime support outside the conductor; "
                          "record is not a minimal model or the conductor is wrong");
    }
    return c;
}

std::string to_string(ReductionType t) {
    switch (t) {
    case ReductionType::Good:
        return "good";
    case ReductionType::SplitMultiplicative:
        return "split-multiplicative";
    case ReductionType::NonsplitMultiplicative:
        return "nonsplit-multiplicative";
    case ReductionType::Additive:
        return "additive";
    }
    return "?";
}

namespace {

struct ModularCubic {
    // y^2 = g(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 over F_ell (odd ell)
    u64 ell;
    u64 c3, c2, c1, c0;

    u64 eval(u64 x) const { return (((c3 * x + c2) % ell * x + c1) % ell * x + c0) % ell; }
    u64 deriv(u64 x) const {
        u64 d2 = (3 * c3) % ell;
        u64 d1 = (2 * c2) % ell;
        return ((d2 * x + d1) % ell * x + c1) % ell;
    }
};

ModularCubic completed_square(const CurveRecord& curve, u64 ell) {
    auto [b2, b4, b6, b8] = curve.b_invariants();
    (void)b8;
    auto red = [&](i128 v) {
        i128 r = v % static_cast<i128>(ell);
        if (r < 0)
            r += static_cast<i128>(ell);
        return static_cast<u64>(r);
    };
    return ModularCubic{ell, 4 % ell, red(b2), red(2 * b4), red(b6)};
}

// quadratic character table: chi[t] in {-1, 0, +1}
std::vector<signed char> square_table(u64 ell) {
    std::vector<signed char> chi(ell, -1);
    chi[0] = 0;
    for (u64 t = 1; t < ell; ++t)
        chi[(t * t) % ell] = 1;
    return chi;
}

} // namespace

ReducedCurve reduce_fiber_at_two(const CurveRecord& curve) {
    // four affine pairs; smooth-part order 1/2/3 pins the fiber type
    u64 a1 = curve.a[0] & 1, a2 = curve.a[1] & 1, a3 = curve.a[2] & 1, a4 = curve.a[3] & 1,
        a6 = curve.a[4] & 1;
    u64 smooth = 0, singular = 0;
    for (u64 x = 0; x < 2; ++x)
        for (u64 y = 0; y < 2; ++y) {
            u64 f = (y * y + a1 * x * y + a3 * y + x * x * x + a2 * x * x + a4 * x + a6) & 1;
            if (f)
                continue;
            u64 fx = (a1 * y + 3 * x * x + 2 * a2 * x + a4) & 1;
            u64 fy = (2 * y + a1 * x + a3) & 1;
            if (fx == 0 && fy == 0)
                ++singular;
            else
                ++smooth;
        }
    u64 order = smooth + 1;
    bool bad = std::find(curve.bad_primes.begin(), curve.bad_primes.end(), 2ull) !=
               curve.bad_primes.end();
    if (!bad) {
        if (singular != 0)
            throw input_error("singular fiber at 2 but 2 does not divide the conductor");
        return ReducedCurve{2, ReductionType::Good, order};
    }
    if (singular != 1)
        throw input_error("fiber at 2 inconsistent with bad reduction");
    switch (order) {
    case 1:
        return ReducedCurve{2, ReductionType::SplitMultiplicative, 1};
    case 2:
        return ReducedCurve{2, ReductionType::Additive, 2};
    case 3:
        return ReducedCurve{2, ReductionType::NonsplitMultiplicative, 3};
    }
    throw input_error("fiber at 2 inconsistent with a Weierstrass cubic");
}

ReducedCurve reduce_curve(const CurveRecord& curve, u64 ell) {
    if (ell == 2)
        throw input_error("reduction at ell = 2 is unsupported");
    if (ell > kReductionBudget)
        throw budget_error("reduction prime exceeds the enumeration budget 2e6");
    if (!is_prime(ell))
        throw input_error("reduction modulus must be prime");

    bool bad = std::find(curve.bad_primes.begin(), curve.bad_primes.end(), ell) !=
               curve.bad_primes.end();
    ModularCubic g = completed_square(curve, ell);

    if (!bad) {
        std::vector<signed char> chi = square_table(ell);
        i64 sum = 0;
        for (u64 x = 0; x < ell; ++x)
            sum += chi[g.eval(x)];
        u64 order = static_cast<u64>(static_cast<i64>(ell) + 1 + sum);
        return ReducedCurve{ell, ReductionType::Good, order};
    }

    // singular fiber: locate the double root of g, then look at the
    // tangent directions
    std::optional<u64> x0;
    for (u64 x = 0; x < ell; ++x)
        if (g.eval(x) == 0 && g.deriv(x) == 0) {
            x0 = x;
            break;
        }
    if (!x0)
        throw input_error("no singular point mod " + std::to_string(ell) +
                          "; conductor data inconsistent with the model");

    // divide g by (x - x0) twice; quotient is 4x - 4e' with e' the third root
    auto divide_once = [&](std::array<u64, 4> c) {
        // synthetic division by (x - x0): c3 x^3 + c2 x^2 + c1 x + c0
        std::array<u64, 4> q{};
        q[3] = 0;
        u64 acc = c[3];
        q[2] = acc;
        acc = (acc * *x0 + c[2]) % ell;
        q[1] = acc;
        acc = (acc * *x0 + c[1]) % ell;
        q[0] = acc;
        return q; // remainder (acc*x0 + c0) is known to vanish
    };
    std::array<u64, 4> q1 = divide_once({g.c0, g.c1, g.c2, g.c3});
    std::array<u64, 4> q2 = divide_once({q1[0], q1[1], q1[2], 0});
    // remaining linear factor q2[1]*x + q2[0] has the third root
    u64 lin = q2[1];
    u64 cst = q2[0];
    // third root e' solves lin * e' + cst = 0
    u64 lin_inv = powmod(lin, ell - 2, ell);
    u64 e_third = mulmod((ell - cst) % ell, lin_inv, ell);

    if (e_third == *x0)
        return ReducedCurve{ell, ReductionType::Additive, ell};

    u64 diff = (*x0 + ell - e_third) % ell;
    int chi = kronecker(static_cast<i64>(diff), static_cast<i64>(ell));
    if (chi == 1)
        return ReducedCurve{ell, ReductionType::SplitMultiplicative, ell - 1};
    return ReducedCurve{ell, ReductionType::NonsplitMultiplicative, ell + 1};
}

i64 trace_of_frobenius(const CurveRecord& curve, u64 ell) {
    ReducedCurve r = reduce_curve(curve, ell);
    if (r.type != ReductionType::Good)
        throw input_error("trace_of_frobenius requires good reduction at " + std::to_string(ell));
    return static_cast<i64>(ell) + 1 - static_cast<i64>(r.group_order);
}

std::vector<u64> supersingular_scan(const CurveRecord& curve, u64 bound) {
    if (bound > kReductionBudget)
        throw budget_error("supersingular scan bound exceeds 2e6");
    std::vector<u64> out;
    if (bound < 5)
        return out;
    PrimeSieve sieve(bound);
    for (u64 ell : sieve.primes()) {
        if (ell < 5)
            continue;
        if (std::find(curve.bad_primes.begin(), curve.bad_primes.end(), ell) !=
            curve.bad_primes.end())
            continue;
        if (trace_of_frobenius(curve, ell) == 0)
            out.push_back(ell);
    }
    return out;
}

IrreducibilityCertificate certify_irreducible(const CurveRecord& curve, u64 p, u64 search_bound) {
    if (p < 3 || !is_prime(p))
        throw input_error("certify_irreducible: p must be an odd prime");
    IrreducibilityCertificate cert;
    if (curve.isogeny_degrees.count(p)) {
        cert.reason = "rational " + std::to_string(p) + "-isogeny recorded";
        return cert;
    }
    if (search_bound > kReductionBudget)
        throw budget_error("irreducibility search bound exceeds 2e6");
    for (u64 ell = 3; ell <= search_bound; ++ell) {
        if (!is_prime(ell) || ell == p)
            continue;
        if (std::find(curve.bad_primes.begin(), curve.bad_primes.end(), ell) !=
            curve.bad_primes.end())
            continue;
        i64 a = trace_of_frobenius(curve, ell);
        // disc of x^2 - a x + ell mod p
        i64 disc = a * a - 4 * static_cast<i64>(ell);
        if (kronecker(disc, static_cast<i64>(p)) == -1) {
            i64 am = a % static_cast<i64>(p);
            if (am < 0)
                am += static_cast<i64>(p);
            cert.status = IrreducibilityCertificate::Status::Certified;
            cert.witness_prime = ell;
            cert.witness_poly = {static_cast<u64>(am), ell % p};
            cert.reason = "x^2 - a_" + std::to_string(ell) + "*x + " + std::to_string(ell) +
                          " irreducible mod " + std::to_string(p);
            return cert;
        }
    }
    cert.reason = "no Frobenius witness below " + std::to_string(search_bound);
    return cert;
}

} // namespace mucert
