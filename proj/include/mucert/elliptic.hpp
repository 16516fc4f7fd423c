#ifndef MUCERT_ELLIPTIC_HPP
#define MUCERT_ELLIPTIC_HPP

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mucert/numbers.hpp"

namespace mucert {

/// Elliptic curve over Q, in a (declared) minimal Weierstrass model, with
/// the arithmetic facts that only a database can supply attached as
/// ingested fields. Ingested facts are never recomputed here; certificate
/// emitters stamp everything that depends on them as oracle-assumed.
struct CurveRecord {
    std::string label;
    std::array<i64, 5> a{}; // a1, a2, a3, a4, a6
    u64 conductor = 0;
    unsigned rank = 0;            // ingested
    u64 sha_order = 1;            // ingested, 1 if trivial
    u64 tamagawa_product = 1;     // ingested
    std::set<u64> isogeny_degrees; // ingested set of primes, possibly empty
    bool minimal = false;          // ingestion flag, must be true
    std::vector<u64> bad_primes;   // derived: primes dividing the conductor

    i128 discriminant() const;
    std::array<i128, 4> b_invariants() const; // b2, b4, b6, b8
};

/// Validates the record: nonzero discriminant, minimal flag, conductor
/// support equal to discriminant support.
CurveRecord make_curve(std::string label, std::array<i64, 5> a, u64 conductor, unsigned rank,
                       u64 sha_order, u64 tamagawa_product, std::set<u64> isogeny_degrees,
                       bool minimal);

enum class ReductionType { Good, SplitMultiplicative, NonsplitMultiplicative, Additive };

std::string to_string(ReductionType t);

struct ReducedCurve {
    u64 ell = 0;
    ReductionType type = ReductionType::Good;
    /// #E(F_ell) for good reduction; order of the smooth-part group
    /// (ell-1 split, ell+1 nonsplit, ell additive) otherwise.
    u64 group_order = 0;
};

/// Reduce mod an odd prime ell <= 2e6. Good reduction counts points by the
/// quadratic-character sum over x (the curve is completed-square
/// transformed first); bad reduction classifies the singular fiber by the
/// tangent directions at the node.
ReducedCurve reduce_curve(const CurveRecord& curve, u64 ell);

/// The fiber at 2 by direct enumeration of the four affine pairs; the
/// smooth-part order 1/2/3 already pins the fiber type. Used by the
/// certificate emitters so curves of even conductor get complete local
/// rows; reduce_curve itself keeps its odd-ell contract.
ReducedCurve reduce_fiber_at_two(const CurveRecord& curve);

/// a_ell = ell + 1 - #E(F_ell); requires good reduction.
i64 trace_of_frobenius(const CurveRecord& curve, u64 ell);

/// All good primes 5 <= ell <= bound with a_ell = 0, ascending.
std::vector<u64> supersingular_scan(const CurveRecord& curve, u64 bound);

/// One-sided irreducibility certificate for the mod-p representation: a
/// Frobenius characteristic polynomial x^2 - a_ell*x + ell that is
/// irreducible mod p rules out an invariant line. A failed search proves
/// nothing, so the negative branch is "inconclusive", never "reducible".
struct IrreducibilityCertificate {
    enum class Status { Certified, Inconclusive };
    Status status = Status::Inconclusive;
    std::optional<u64> witness_prime;
    /// (a_ell mod p, ell mod p) at the witness
    std::optional<std::pair<u64, u64>> witness_poly;
    std::string reason;
};

IrreducibilityCertificate certify_irreducible(const CurveRecord& curve, u64 p, u64 search_bound);

} // namespace mucert

#endif
