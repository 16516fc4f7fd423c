#include "mucert/numbers.hpp"

#include <algorithm>
#include <numeric>

#include "mucert/errors.hpp"

namespace mucert {

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1)
        return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1)
            r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

PrimeSieve::PrimeSieve(u64 bound) : bound_(bound) {
    if (bound > 100'000'000)
        throw budget_error("sieve bound exceeds 1e8");
    flags_.assign(bound + 1, true);
    flags_[0] = false;
    if (bound >= 1)
        flags_[1] = false;
    for (u64 p = 2; p * p <= bound; ++p)
        if (flags_[p])
            for (u64 q = p * p; q <= bound; q += p)
                flags_[q] = false;
    for (u64 p = 2; p <= bound; ++p)
        if (flags_[p])
            primes_.push_back(p);
}

bool PrimeSieve::is_prime(u64 n) const {
    if (n > bound_)
        throw input_error("sieve query beyond bound");
    return flags_[n];
}

namespace {

bool mr_composite_witness(u64 n, u64 a, u64 d, int s) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1)
        return false;
    for (int r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1)
            return false;
    }
    return true;
}

} // namespace

bool is_prime(u64 n) {
    if (n < 2)
        return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p)
            return true;
        if (n % p == 0)
            return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Sinclair/Jaeschke witness set: complete for n < 3.3e24, hence for 64 bits.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (mr_composite_witness(n, a, d, s))
            return false;
    return true;
}

namespace {

// (a|2) for odd a, indexed by a mod 8.
constexpr int kron_tab2[8] = {0, 1, 0, -1, 0, -1, 0, 1};

} // namespace

int kronecker(i64 a, i64 n) {
    if (a == 0 && n == 0)
        throw input_error("kronecker(0, 0) is undefined");
    if (n == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0)
        return 0;
    int k = 1;
    // strip the even part of n, accounting for (a|2)
    int v = 0;
    while ((n & 1) == 0) {
        n /= 2;
        ++v;
    }
    if (v & 1)
        k = kron_tab2[((a % 8) + 8) % 8];
    if (n < 0) {
        n = -n;
        if (a < 0)
            k = -k;
    }
    // invariant here: n odd, n > 0
    a %= n;
    if (a < 0)
        a += n;
    while (a != 0) {
        v = 0;
        while ((a & 1) == 0) {
            a /= 2;
            ++v;
        }
        if (v & 1)
            k *= kron_tab2[n % 8];
        // reciprocity, both odd and positive
        if ((a % 4 == 3) && (n % 4 == 3))
            k = -k;
        i64 t = a;
        a = n % t;
        n = t;
    }
    return n == 1 ? k : 0;
}

std::optional<u64> sqrt_mod(u64 a, u64 ell) {
    if (ell == 2 || !is_prime(ell))
        throw input_error("sqrt_mod modulus must be an odd prime");
    a %= ell;
    if (a == 0)
        return 0;
    if (powmod(a, (ell - 1) / 2, ell) != 1)
        return std::nullopt;
    u64 r;
    if (ell % 4 == 3) {
        r = powmod(a, (ell + 1) / 4, ell);
    } else {
        // Tonelli-Shanks
        u64 q = ell - 1;
        int s = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++s;
        }
        u64 z = 2;
        while (powmod(z, (ell - 1) / 2, ell) != ell - 1)
            ++z;
        u64 m = s;
        u64 c = powmod(z, q, ell);
        u64 t = powmod(a, q, ell);
        r = powmod(a, (q + 1) / 2, ell);
        while (t != 1) {
            u64 i = 0;
            u64 t2 = t;
            while (t2 != 1) {
                t2 = mulmod(t2, t2, ell);
                ++i;
            }
            // b = c^(2^(m-i-1)); i < m is a loop invariant for prime ell
            u64 b = c;
            for (u64 j = 0; j + i + 1 < m; ++j)
                b = mulmod(b, b, ell);
            m = i;
            c = mulmod(b, b, ell);
            t = mulmod(t, c, ell);
            r = mulmod(r, b, ell);
        }
    }
    return std::min(r, ell - r);
}

namespace {

u64 pollard_rho(u64 n) {
    if (n % 2 == 0)
        return 2;
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n)
            return d;
    }
}

void factor_into(u64 n, std::vector<std::pair<u64, unsigned>>& out) {
    if (n == 1)
        return;
    if (is_prime(n)) {
        out.emplace_back(n, 1);
        return;
    }
    u64 d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
    if (n == 0)
        throw input_error("factorize(0)");
    std::vector<std::pair<u64, unsigned>> raw;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e)
            raw.emplace_back(p, e);
    }
    factor_into(n, raw);
    std::sort(raw.begin(), raw.end());
    // merge duplicates coming out of the recursive split
    std::vector<std::pair<u64, unsigned>> out;
    for (auto& [p, e] : raw) {
        if (!out.empty() && out.back().first == p)
            out.back().second += e;
        else
            out.emplace_back(p, e);
    }
    return out;
}

u64 euler_phi(u64 n) {
    if (n == 0)
        throw input_error("euler_phi(0)");
    u64 phi = 1;
    for (auto& [p, e] : factorize(n)) {
        phi *= p - 1;
        for (unsigned i = 1; i < e; ++i)
            phi *= p;
    }
    return phi;
}

u64 order_mod(u64 a, u64 p) {
    a %= p;
    if (a == 0)
        throw input_error("order_mod: argument divisible by modulus");
    u64 ord = p - 1;
    for (auto& [q, e] : factorize(p - 1)) {
        (void)e;
        while (ord % q == 0 && powmod(a, ord / q, p) == 1)
            ord /= q;
    }
    return ord;
}

} // namespace mucert
