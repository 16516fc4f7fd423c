#ifndef MUCERT_CRITERIA_HPP
#define MUCERT_CRITERIA_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mucert/elliptic.hpp"
#include "mucert/numbers.hpp"
#include "mucert/quadforms.hpp"

namespace mucert {

/// Hecke newform with ingested eigenvalue table. Rational-coefficient forms
/// store one integer per prime; higher-degree forms store coordinate
/// vectors in a declared basis.
struct NewformRecord {
    std::string label;
    u64 level = 0;           // N
    unsigned weight = 0;     // k
    u64 neben_conductor = 1; // M, conductor of the nebentypus
    unsigned hecke_field_degree = 1;
    std::map<u64, std::vector<i64>> eigenvalues; // prime -> a_ell coordinates
    u64 sturm_bound = 0;                         // declared coverage
    std::set<u64> reducible_primes;              // ingested: p with reducible mod-p rep
};

NewformRecord make_newform(std::string label, u64 level, unsigned weight, u64 neben_conductor,
                           unsigned hecke_field_degree,
                           std::map<u64, std::vector<i64>> eigenvalues, u64 sturm_bound,
                           std::set<u64> reducible_primes = {});

enum class ConditionStatus { Pass, Fail, OracleAssumed, Inconclusive };
std::string to_string(ConditionStatus s);

struct ConditionEntry {
    std::string name;
    ConditionStatus status = ConditionStatus::Inconclusive;
    std::string evidence;
};

enum class Verdict { CertifiedMuZero, Inconclusive };
std::string to_string(Verdict v);

/// Structured verdict: one row per checked condition, with the convention
/// notes that qualify the reading. A verdict of certified-mu-zero is only
/// emitted when every condition passed or was ingested from a declared
/// oracle; any oracle-assumed row marks the whole certificate conditional.
struct Certificate {
    std::string subject;
    std::string theorem;
    std::vector<ConditionEntry> conditions;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::string> interpretation_notes;

    bool conditional() const;
    /// Soundness invariant: certified-mu-zero implies no condition failed
    /// or was left inconclusive.
    bool sound() const;
};

/// mu = 0 criterion for the p-primary fine Selmer group of an elliptic
/// curve over Q at a good odd prime p:
///   (1) the mod-p representation is irreducible (Frobenius witness),
///   (2) the class-field Hom-vanishing condition, established through the
///       rank-zero sufficient route: rank 0, p prime to Sha, Tamagawa and
///       the smooth fiber orders at bad primes (ingested facts are stamped
///       oracle-assumed),
///   (3) E(F_v)[p] = 0 at every finite place of bad reduction and at p.
/// Archimedean places are vacuous for odd p and noted as such.
Certificate certify_elliptic_mu_zero(const CurveRecord& curve, u64 p, u64 irr_search_bound = 1000);

/// Obstruction-prime bound for a newform of weight k > 2 and squarefree
/// level: primes up to k+1, prime divisors of N*phi(N)*prod_{l | N/M}(l+1),
/// and congruence-prime candidates against the sibling list.
struct ObstructionReport {
    std::string label;
    u64 level = 0;
    unsigned weight = 0;
    std::set<u64> small_weight_component;
    std::set<u64> divisor_component;
    std::set<u64> congruence_component;
    std::set<u64> bound_set; // union of the three
    u64 sturm_bound = 0;
    std::vector<std::string> annotations;
    std::string outside_statement;
};

ObstructionReport weston_bound(const NewformRecord& form,
                               const std::vector<NewformRecord>& siblings, u64 sturm_override = 0);

/// Candidate congruence primes between two non-conjugate rational newforms:
/// prime divisors of the gcd of eigenvalue differences at good primes up to
/// the Sturm bound. An UPPER candidate set: eliminating a prime is rigorous,
/// promoting one to a proven congruence needs the recorded convention.
struct CongruenceCandidates {
    std::set<u64> primes;
    u64 sturm_bound = 0;
    std::string convention;
};

CongruenceCandidates congruence_primes(const NewformRecord& f, const NewformRecord& g,
                                       u64 sturm_bound);

/// h1 = h0 + h2 + dim_minus: the global Euler characteristic over Q,
/// rearranged for the dimension of H^1.
unsigned euler_h1_dimension(unsigned h0, unsigned h2, unsigned dim_minus);

enum class AdjointParity { Odd, Even };
/// Unobstructed adjoint presets: odd (1, 0, 2) -> 3, even (1, 0, 0) -> 1;
/// the deformation ring is then a power series ring in that many variables.
unsigned euler_h1_preset(AdjointParity parity);

enum class S3Kind { Odd, Even };
/// Scan for primes p = 27 + 4a^3 (odd kind) or p = 4a^6 - 27 (even kind,
/// a >= 2); each hit pins an S3 splitting field ramified only at p whose
/// standard 2-dimensional representation is unobstructed.
std::vector<std::pair<i64, u64>> s3_family_scan(S3Kind kind, i64 a_min, i64 a_max);

/// Residually dihedral setting: induced character from the imaginary
/// quadratic field Q(sqrt(-D)) twisted by the mod-p cyclotomic character,
/// with the auxiliary ramification set S_extra and the ingested class-field
/// oracle flags.
struct DihedralScenario {
    QuadField field;
    u64 n = 0; // degree of the unramified cyclic subextension over K
    u64 p = 0;
    std::vector<u64> s_extra;
    std::map<std::string, bool> oracle_flags;
    ClassGroupTable table;
};

/// Oracle flag key: the class-field identity L1 = L*K1, which forces
/// L_{1,S} = L*K_{1,S} for every S.
inline constexpr const char* kDihedralOracleFlag = "L1_equals_L_K1";

DihedralScenario make_dihedral_scenario(u64 D, u64 p, u64 n, std::vector<u64> s_extra = {},
                                        std::map<std::string, bool> oracle_flags = {});

struct DihedralMembership {
    u64 ell = 0;
    u64 residue_mod_p = 0;
    PrimeSplitting::Kind splitting = PrimeSplitting::Kind::Inert;
    std::optional<bool> totally_split_in_subfield; // split primes only
    bool in_s1 = false;
    bool in_s2 = false;
    bool in_s() const { return in_s1 || in_s2; }
};

/// Membership of an admissible prime in the auxiliary sets
///   S1 = { ell = 1 mod p, split in K, not totally split in L' }
///   S2 = { ell = -1 mod p, not inert in K }.
DihedralMembership dihedral_prime_class(const DihedralScenario& sc, u64 ell);

struct DensityRow {
    u64 prime = 0;
    u64 residue_mod_p = 0;
    PrimeSplitting::Kind splitting = PrimeSplitting::Kind::Inert;
    bool in_s1 = false;
    bool in_s2 = false;
};

struct DensityReport {
    u64 bound = 0;
    u64 sample_size = 0;
    u64 split_count = 0;
    u64 s1_count = 0;
    u64 s2_count = 0;
    bool defined = false; // false when the sample is empty
    double fraction = 0.0;
    std::vector<DensityRow> rows; // per-prime rows, kept when requested
};

/// Empirical density of S = S1 u S2 among admissible primes up to bound.
DensityReport dihedral_density_experiment(const DihedralScenario& sc, u64 bound,
                                          bool collect_rows = false, unsigned threads = 1);

/// mu = 0 criterion for every characteristic-zero lift of the induced
/// dihedral representation: per-prime order comparisons over S, plus the
/// ingested class-field identity.
Certificate certify_dihedral_mu_zero(const DihedralScenario& sc);

} // namespace mucert

#endif
