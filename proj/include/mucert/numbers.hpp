#ifndef MUCERT_NUMBERS_HPP
#define MUCERT_NUMBERS_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace mucert {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);

/// Eratosthenes table, shared read-only by the scan engines.
class PrimeSieve {
  public:
    explicit PrimeSieve(u64 bound);

    u64 bound() const { return bound_; }
    bool is_prime(u64 n) const;
    const std::vector<u64>& primes() const { return primes_; }

  private:
    u64 bound_;
    std::vector<bool> flags_;
    std::vector<u64> primes_;
};

/// Deterministic Miller-Rabin, correct on the whole 64-bit range
/// (fixed witness set, no randomness: certificates must be replayable).
bool is_prime(u64 n);

/// Kronecker symbol (a|n), the completely multiplicative extension of the
/// Legendre symbol to all integer pairs. Returns -1, 0 or +1; 0 only when
/// the arguments share a factor.
int kronecker(i64 a, i64 n);

/// Square root of a mod odd prime ell (Tonelli-Shanks). Returns the
/// canonical root min(r, ell - r); nullopt when a is a nonresidue.
std::optional<u64> sqrt_mod(u64 a, u64 ell);

/// Euler's totient, via factorization.
u64 euler_phi(u64 n);

/// Prime factorization of n >= 1 as (prime, exponent) pairs, ascending.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

/// Multiplicative order of a modulo the odd prime p (a not divisible by p).
u64 order_mod(u64 a, u64 p);

} // namespace mucert

#endif
