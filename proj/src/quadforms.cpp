#include "mucert/quadforms.hpp"

#include <algorithm>
#include <numeric>

#include "mucert/errors.hpp"

namespace mucert {

namespace {

constexpr i64 kDiscBudget = 100'000'000;

bool is_squarefree(u64 n) {
    for (auto& [p, e] : factorize(n))
        if (e > 1)
            return false;
    return true;
}

} // namespace

QuadField make_quad_field(u64 D) {
    if (D == 0)
        throw input_error("quadratic field: D must be positive");
    if (!is_squarefree(D))
        throw input_error("quadratic field: D must be squarefree (maximal order required)");
    QuadField f;
    f.D = D;
    f.disc = (D % 4 == 3) ? -static_cast<i64>(D) : -4 * static_cast<i64>(D);
    if (-f.disc > kDiscBudget)
        throw budget_error("quadratic field: |disc| exceeds 1e8");
    return f;
}

std::string QuadFormClass::to_string() const {
    return "(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ")";
}

QuadFormClass reduce_form(i64 a, i64 b, i64 c) {
    if (a <= 0 || b * b - 4 * a * c >= 0)
        throw input_error("reduce_form: form must be positive definite");
    while (true) {
        // normalize: -a < b <= a
        if (b > a || b <= -a) {
            // b' = b - 2ka with k = round(b / 2a)
            i64 twoa = 2 * a;
            i64 k = (b >= 0) ? (b + a) / twoa : -((a - b) / twoa);
            // careful floor/round handling: want -a < b - 2ka <= a
            i64 bb = b - 2 * k * a;
            while (bb > a) {
                bb -= twoa;
                ++k;
            }
            while (bb <= -a) {
                bb += twoa;
                --k;
            }
            c = c - k * b + k * k * a;
            b = bb;
        }
        if (a > c) {
            std::swap(a, c);
            b = -b;
            continue;
        }
        break;
    }
    if ((a == c || a == -b) && b < 0)
        b = -b;
    return QuadFormClass{a, b, c};
}

QuadFormClass principal_form(i64 disc) {
    i64 r = ((disc % 2) + 2) % 2; // 0 for even disc, 1 for odd
    return QuadFormClass{1, r, (r - disc) / 4};
}

ClassGroupTable enumerate_reduced_forms_disc(i64 disc) {
    if (disc >= 0 || (((disc % 4) + 4) % 4 != 0 && ((disc % 4) + 4) % 4 != 1))
        throw input_error("discriminant must be negative and 0 or 1 mod 4");
    if (-disc > kDiscBudget)
        throw budget_error("|disc| exceeds the enumeration budget 1e8");
    ClassGroupTable table;
    table.field = QuadField{static_cast<u64>(disc % 4 == 0 ? (-disc) / 4 : -disc), disc};
    std::vector<QuadFormClass> found;
    for (i64 a = 1; 3 * a * a <= -disc; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            if (((b - disc) % 2) != 0)
                continue; // b and disc must share parity
            i64 num = b * b - disc;
            if (num % (4 * a) != 0)
                continue;
            i64 c = num / (4 * a);
            if (c < a)
                continue;
            if ((a == c || a == -b) && b < 0)
                continue; // only the b >= 0 representative
            if (std::gcd(std::gcd(a, b), c) != 1)
                continue; // imprimitive (only possible for non-fundamental disc)
            found.push_back(QuadFormClass{a, b, c});
        }
    }
    std::sort(found.begin(), found.end());
    QuadFormClass id = principal_form(disc);
    table.classes.push_back(id);
    for (auto& f : found)
        if (!(f == id))
            table.classes.push_back(f);
    table.h = table.classes.size();
    // generator search is quadratic in h; skip it beyond desk scale
    if (table.h <= 5000) {
        for (const auto& f : table.classes) {
            if (class_order(f) == table.h) {
                table.cyclic_generator = f;
                break;
            }
        }
    }
    return table;
}

ClassGroupTable enumerate_reduced_forms(const QuadField& field) {
    ClassGroupTable t = enumerate_reduced_forms_disc(field.disc);
    t.field = field;
    return t;
}

namespace {

// extended gcd: returns g >= 0, writes x, y with a*x + b*y = g
i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
    if (b == 0) {
        x = (a >= 0) ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    i64 x1, y1;
    i64 g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

i64 mod_nonneg(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

} // namespace

QuadFormClass compose(const QuadFormClass& f, const QuadFormClass& g) {
    if (f.disc() != g.disc())
        throw input_error("compose: discriminant mismatch");
    const i64 D = f.disc();
    // Dirichlet composition, two Euclidean steps
    i64 a1 = f.a, b1 = f.b;
    i64 a2 = g.a, b2 = g.b, c2 = g.c;
    if (a1 > a2) {
        std::swap(a1, a2);
        std::swap(b1, b2);
        c2 = f.c;
    }
    i64 s = (b1 + b2) / 2;
    i64 n = b2 - s; // (b2 - b1)/2
    i64 u, v, d;
    d = ext_gcd(a2, a1, u, v); // u*a2 + v*a1 = d
    i64 y1 = u;
    i64 x2, y2, d1;
    if (s % d == 0) {
        x2 = 0;
        y2 = -1;
        d1 = d;
    } else {
        d1 = ext_gcd(s, d, u, v); // u*s + v*d = d1
        x2 = u;
        y2 = -v;
    }
    i64 v1 = a1 / d1;
    i64 v2 = a2 / d1;
    i64 r = mod_nonneg(y1 * y2 % v1 * (n % v1) % v1 - x2 % v1 * (c2 % v1) % v1, v1);
    i64 a3 = v1 * v2;
    i64 b3 = b2 + 2 * v2 * r;
    i128 c3 = (static_cast<i128>(b3) * b3 - D) / (4 * static_cast<i128>(a3));
    return reduce_form(a3, b3, static_cast<i64>(c3));
}

QuadFormClass inverse(const QuadFormClass& f) { return reduce_form(f.a, -f.b, f.c); }

QuadFormClass power(const QuadFormClass& f, u64 k) {
    QuadFormClass acc = principal_form(f.disc());
    QuadFormClass base = f;
    while (k) {
        if (k & 1)
            acc = compose(acc, base);
        base = compose(base, base);
        k >>= 1;
    }
    return acc;
}

u64 class_order(const QuadFormClass& f) {
    QuadFormClass id = principal_form(f.disc());
    QuadFormClass acc = f;
    u64 n = 1;
    while (!(acc == id)) {
        acc = compose(acc, f);
        ++n;
        if (n > 1'000'000)
            throw budget_error("class_order: order exceeds 1e6");
    }
    return n;
}

std::string to_string(PrimeSplitting::Kind k) {
    switch (k) {
    case PrimeSplitting::Kind::Split:
        return "split";
    case PrimeSplitting::Kind::Inert:
        return "inert";
    case PrimeSplitting::Kind::Ramified:
        return "ramified";
    }
    return "?";
}

PrimeSplitting prime_class(const QuadField& field, u64 ell) {
    if (ell == 2 || !is_prime(ell))
        throw input_error("prime_class: ell must be an odd prime");
    int symbol = kronecker(field.disc, static_cast<i64>(ell));
    PrimeSplitting out;
    if (symbol == -1) {
        out.kind = PrimeSplitting::Kind::Inert;
        return out;
    }
    out.kind = (symbol == 0) ? PrimeSplitting::Kind::Ramified : PrimeSplitting::Kind::Split;
    i64 dm = field.disc % static_cast<i64>(ell);
    if (dm < 0)
        dm += static_cast<i64>(ell);
    auto root = sqrt_mod(static_cast<u64>(dm), ell);
    // symbol >= 0 guarantees a root exists
    u64 r = *root;
    // lift to b with b^2 = disc mod 4*ell: pick the residue matching disc's parity
    u64 b = (static_cast<i64>(r % 2) == (((field.disc % 2) + 2) % 2)) ? r : ell - r;
    i128 num = static_cast<i128>(b) * b - field.disc;
    i64 c = static_cast<i64>(num / (4 * static_cast<i128>(ell)));
    out.cls = reduce_form(static_cast<i64>(ell), static_cast<i64>(b), c);
    return out;
}

u64 frobenius_order_in_subfield(const QuadField& field, const ClassGroupTable& table, u64 n,
                                u64 ell) {
    if (!table.cyclic_generator)
        throw input_error("class group is not cyclic; subfield splitting unsupported");
    if (n == 0 || table.h % n != 0)
        throw input_error("n must divide the class number");
    PrimeSplitting s = prime_class(field, ell);
    if (s.kind != PrimeSplitting::Kind::Split)
        throw input_error("subfield splitting is defined for split primes only");
    // order of the image in the order-n quotient = order of cls^(h/n)
    QuadFormClass projected = power(*s.cls, table.h / n);
    return class_order(projected);
}

bool split_completely_in_subfield(const QuadField& field, const ClassGroupTable& table, u64 n,
                                  u64 ell) {
    return frobenius_order_in_subfield(field, table, n, ell) == 1;
}

} // namespace mucert
