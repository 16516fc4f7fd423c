#ifndef MUCERT_QUADFORMS_HPP
#define MUCERT_QUADFORMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "mucert/numbers.hpp"

namespace mucert {

/// Imaginary quadratic field Q(sqrt(-D)), D > 0 squarefree; disc is the
/// fundamental discriminant (-D or -4D).
struct QuadField {
    u64 D = 0;
    i64 disc = 0;
};

/// Rejects non-squarefree D: the class-field correspondence used downstream
/// needs the maximal order.
QuadField make_quad_field(u64 D);

/// Reduced primitive positive-definite binary quadratic form ax^2+bxy+cy^2.
struct QuadFormClass {
    i64 a = 0, b = 0, c = 0;

    i64 disc() const { return b * b - 4 * a * c; }
    bool operator==(const QuadFormClass& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const QuadFormClass& o) const {
        if (a != o.a)
            return a < o.a;
        if (b != o.b)
            return b < o.b;
        return c < o.c;
    }
    std::string to_string() const;
};

/// Gauss reduction of a positive-definite form.
QuadFormClass reduce_form(i64 a, i64 b, i64 c);

QuadFormClass principal_form(i64 disc);

/// All reduced forms of the field's discriminant, principal form first,
/// plus the class number and a generator when the group is cyclic.
struct ClassGroupTable {
    QuadField field;
    std::vector<QuadFormClass> classes;
    u64 h = 0;
    std::optional<QuadFormClass> cyclic_generator;
};

ClassGroupTable enumerate_reduced_forms(const QuadField& field);
/// Raw-discriminant variant (disc < 0, disc = 0 or 1 mod 4).
ClassGroupTable enumerate_reduced_forms_disc(i64 disc);

/// Gauss composition (united-forms route) followed by reduction.
QuadFormClass compose(const QuadFormClass& f, const QuadFormClass& g);
QuadFormClass inverse(const QuadFormClass& f);
QuadFormClass power(const QuadFormClass& f, u64 k);
/// Order of the class under composition.
u64 class_order(const QuadFormClass& f);

struct PrimeSplitting {
    enum class Kind { Split, Inert, Ramified };
    Kind kind = Kind::Inert;
    std::optional<QuadFormClass> cls; // present for Split and Ramified
};

std::string to_string(PrimeSplitting::Kind k);

/// Splitting of an odd prime in the field; for split (and ramified) ell the
/// class of a prime ideal above it, built from the canonical square root of
/// disc mod 4*ell.
PrimeSplitting prime_class(const QuadField& field, u64 ell);

/// True iff a split prime ell is totally split in the degree-n unramified
/// cyclic subextension of the Hilbert class field, i.e. its Frobenius class
/// dies in the order-n quotient of the (cyclic) class group.
bool split_completely_in_subfield(const QuadField& field, const ClassGroupTable& table, u64 n,
                                  u64 ell);

/// Order of the Frobenius class of a split prime in the order-n quotient.
u64 frobenius_order_in_subfield(const QuadField& field, const ClassGroupTable& table, u64 n,
                                u64 ell);

} // namespace mucert

#endif
