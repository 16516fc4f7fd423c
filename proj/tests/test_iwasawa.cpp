#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "mucert/errors.hpp"
#include "mucert/iwasawa.hpp"
#include "oracles.hpp"

using namespace mucert;

namespace {

const PrecisionProfile kDefault = PrecisionProfile::make(3, 12, 24);

TruncatedPowerSeries random_series(const PrecisionProfile& prof, std::mt19937_64& rng,
                                   bool force_unit) {
    std::vector<i64> c(prof.t_prec);
    for (auto& v : c)
        v = static_cast<i64>(rng() % prof.modulus);
    if (force_unit) {
        unsigned j = rng() % prof.t_prec;
        c[j] = static_cast<i64>(rng() % (prof.modulus - 1)) | 1;
        while (c[j] % static_cast<i64>(prof.p) == 0)
            ++c[j];
    }
    return TruncatedPowerSeries(prof, std::move(c));
}

TruncatedPowerSeries random_distinguished(const PrecisionProfile& prof, std::mt19937_64& rng,
                                          unsigned lambda) {
    std::vector<i64> c(prof.t_prec, 0);
    for (unsigned j = 0; j < lambda; ++j)
        c[j] = static_cast<i64>(prof.p) * static_cast<i64>(rng() % (prof.modulus / prof.p));
    c[lambda] = 1;
    return TruncatedPowerSeries(prof, std::move(c));
}

u64 p_power(const PrecisionProfile& prof, unsigned e) {
    u64 v = 1;
    for (unsigned i = 0; i < e; ++i)
        v *= prof.p;
    return v;
}

} // namespace

TEST_CASE("profile validation") {
    CHECK_THROWS_AS(PrecisionProfile::make(2, 4, 4), input_error);
    CHECK_THROWS_AS(PrecisionProfile::make(9, 4, 4), input_error);
    CHECK_THROWS_AS(PrecisionProfile::make(3, 0, 4), input_error);
    CHECK_THROWS_AS(PrecisionProfile::make(3, 4, 0), input_error);
    CHECK_THROWS_AS(PrecisionProfile::make(1000003, 12, 4), budget_error);
    CHECK(PrecisionProfile::make(3, 12, 24).modulus == 531441);
}

TEST_CASE("series literals parse and print") {
    auto s = TruncatedPowerSeries::parse(kDefault, "1 + 2*T + T^3");
    CHECK(s.coeff(0) == 1);
    CHECK(s.coeff(1) == 2);
    CHECK(s.coeff(2) == 0);
    CHECK(s.coeff(3) == 1);
    CHECK(TruncatedPowerSeries::parse(kDefault, "-1").coeff(0) == kDefault.modulus - 1);
    CHECK(TruncatedPowerSeries::parse(kDefault, "T - T").is_zero());
    CHECK(TruncatedPowerSeries::parse(kDefault, "  3*T^2  ").coeff(2) == 3);
    // degree >= t_prec reduces away in the quotient
    CHECK(TruncatedPowerSeries::parse(kDefault, "T^24 + 5").coeff(0) == 5);
    CHECK_THROWS_AS(TruncatedPowerSeries::parse(kDefault, ""), input_error);
    CHECK_THROWS_AS(TruncatedPowerSeries::parse(kDefault, "1 + + 2"), input_error);
    CHECK_THROWS_AS(TruncatedPowerSeries::parse(kDefault, "2*"), input_error);
    CHECK_THROWS_AS(TruncatedPowerSeries::parse(kDefault, "x + 1"), input_error);
    auto round = TruncatedPowerSeries::parse(kDefault, s.to_string());
    CHECK(round == s);
}

TEST_CASE("series_mul: stated examples") {
    auto one_plus = TruncatedPowerSeries::parse(kDefault, "1 + T");
    auto one_minus = TruncatedPowerSeries::parse(kDefault, "1 - T");
    auto prod = series_mul(one_plus, one_minus);
    CHECK(prod == TruncatedPowerSeries::parse(kDefault, "1 - T^2"));

    auto a = TruncatedPowerSeries::parse(kDefault, "7 + 5*T + 11*T^4");
    CHECK(series_mul(a, TruncatedPowerSeries::one(kDefault)) == a);

    auto prof = PrecisionProfile::make(3, 4, 8);
    auto lhs = TruncatedPowerSeries::parse(prof, "2 + T");
    auto rhs = TruncatedPowerSeries::parse(prof, "T^2 + 3");
    CHECK(series_mul(lhs, rhs) == TruncatedPowerSeries::parse(prof, "6 + 3*T + 2*T^2 + T^3"));
}

TEST_CASE("series_mul error on profile mismatch") {
    auto other = PrecisionProfile::make(3, 11, 24);
    CHECK_THROWS_AS(series_mul(TruncatedPowerSeries::one(kDefault),
                               TruncatedPowerSeries::one(other)),
                    input_error);
}

TEST_CASE("series_mul agrees with the schoolbook oracle") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 300; ++i) {
        auto a = random_series(kDefault, rng, false);
        auto b = random_series(kDefault, rng, false);
        REQUIRE(series_mul(a, b) == oracles::schoolbook_mul(a, b));
    }
}

TEST_CASE("ring axioms at a fixed profile") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        auto a = random_series(kDefault, rng, false);
        auto b = random_series(kDefault, rng, false);
        auto c = random_series(kDefault, rng, false);
        CHECK(series_mul(a, b) == series_mul(b, a));
        CHECK(series_mul(series_mul(a, b), c) == series_mul(a, series_mul(b, c)));
        CHECK(series_mul(a, series_add(b, c)) ==
              series_add(series_mul(a, b), series_mul(a, c)));
    }
}

TEST_CASE("weierstrass_prepare: stated examples") {
    SUBCASE("explicit p factor: 3*(1+T)") {
        auto f = TruncatedPowerSeries::parse(kDefault, "3 + 3*T");
        auto w = weierstrass_prepare(f);
        CHECK(w.mu == 1);
        CHECK(w.lambda == 0);
        CHECK(w.distinguished == TruncatedPowerSeries::one(kDefault));
        CHECK(w.unit.coeff(0) == 1);
        CHECK(w.unit.coeff(1) == 1);
        CHECK(w.residual_p_prec == 11);
    }
    SUBCASE("already distinguished: T + p") {
        auto f = TruncatedPowerSeries::parse(kDefault, "3 + T");
        auto w = weierstrass_prepare(f);
        CHECK(w.mu == 0);
        CHECK(w.lambda == 1);
        CHECK(w.distinguished == f);
        CHECK(w.unit == TruncatedPowerSeries::one(kDefault));
    }
    SUBCASE("(2+T)(T^2+3)") {
        auto f = series_mul(TruncatedPowerSeries::parse(kDefault, "2 + T"),
                            TruncatedPowerSeries::parse(kDefault, "T^2 + 3"));
        auto w = weierstrass_prepare(f);
        CHECK(w.mu == 0);
        CHECK(w.lambda == 2);
        CHECK(w.distinguished.coeff(2) == 1);
        CHECK(w.distinguished.coeff(0) % 3 == 0);
        CHECK(w.distinguished.coeff(1) % 3 == 0);
        CHECK(series_mul(w.unit, w.distinguished) == f);
    }
}

TEST_CASE("weierstrass_prepare error paths") {
    CHECK_THROWS_AS(weierstrass_prepare(TruncatedPowerSeries::zero(kDefault)), precision_error);
    // p^N * anything is zero at this precision
    auto tiny = PrecisionProfile::make(3, 2, 6);
    auto f = TruncatedPowerSeries::parse(tiny, "9 + 9*T^2");
    CHECK_THROWS_AS(weierstrass_prepare(f), precision_error);
}

TEST_CASE("reconstruction: p^mu * u * P == f on random series") {
    std::mt19937_64 rng(31337);
    for (int i = 0; i < 1000; ++i) {
        unsigned m = rng() % 4;
        auto g = random_series(kDefault, rng, true);
        auto f = series_scalar_mul(g, static_cast<i64>(p_power(kDefault, m)));
        auto w = weierstrass_prepare(f);
        REQUIRE(w.mu == m);
        auto recon = series_scalar_mul(series_mul(w.unit, w.distinguished),
                                       static_cast<i64>(p_power(kDefault, w.mu)));
        REQUIRE(recon == f);
        REQUIRE(w.residual_p_prec == kDefault.p_prec - m);
        // distinguished part is a monic polynomial with p-divisible lower coefficients
        REQUIRE(w.distinguished.coeff(w.lambda) == 1);
        for (unsigned j = 0; j < w.lambda; ++j)
            REQUIRE(w.distinguished.coeff(j) % kDefault.p == 0);
        for (unsigned j = w.lambda + 1; j < kDefault.t_prec; ++j)
            REQUIRE(w.distinguished.coeff(j) == 0);
        REQUIRE(w.unit.coeff(0) % kDefault.p != 0);
    }
}

TEST_CASE("preparation is idempotent on distinguished polynomials") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 200; ++i) {
        unsigned lambda = rng() % (kDefault.t_prec - 1);
        auto P = random_distinguished(kDefault, rng, lambda);
        auto w = weierstrass_prepare(P);
        CHECK(w.mu == 0);
        CHECK(w.lambda == lambda);
        CHECK(w.unit == TruncatedPowerSeries::one(kDefault));
        CHECK(w.distinguished == P);
    }
}

TEST_CASE("module_invariants: stated examples") {
    SUBCASE("diagonal(p^2, T^3 + pT + p) at p=5") {
        auto prof = PrecisionProfile::make(5, 10, 16);
        auto z = TruncatedPowerSeries::zero(prof);
        auto pres = make_presentation(
            prof, {{TruncatedPowerSeries::parse(prof, "25"), z},
                   {z, TruncatedPowerSeries::parse(prof, "T^3 + 5*T + 5")}});
        auto inv = module_invariants(pres);
        CHECK(inv.mu == 2);
        CHECK(inv.lambda == 3);
    }
    SUBCASE("unit entry: zero module") {
        auto pres = make_presentation(kDefault, {{TruncatedPowerSeries::one(kDefault)}});
        auto inv = module_invariants(pres);
        CHECK(inv.mu == 0);
        CHECK(inv.lambda == 0);
    }
    SUBCASE("triangular [[p, T], [0, T^2 + p]]") {
        // det = p*(T^2 + p); the expansion oracle puts its first unit
        // coefficient at index 2 after dividing out p
        auto z = TruncatedPowerSeries::zero(kDefault);
        auto pres = make_presentation(
            kDefault, {{TruncatedPowerSeries::parse(kDefault, "3"),
                        TruncatedPowerSeries::parse(kDefault, "T")},
                       {z, TruncatedPowerSeries::parse(kDefault, "T^2 + 3")}});
        auto inv = module_invariants(pres);
        CHECK(inv.mu == 1);
        CHECK(inv.lambda == 2);
    }
    SUBCASE("triangular [[p, T], [0, T^3 + p]]") {
        auto z = TruncatedPowerSeries::zero(kDefault);
        auto pres = make_presentation(
            kDefault, {{TruncatedPowerSeries::parse(kDefault, "3"),
                        TruncatedPowerSeries::parse(kDefault, "T")},
                       {z, TruncatedPowerSeries::parse(kDefault, "T^3 + 3")}});
        auto inv = module_invariants(pres);
        CHECK(inv.mu == 1);
        CHECK(inv.lambda == 3);
    }
}

TEST_CASE("module_invariants error paths") {
    auto z = TruncatedPowerSeries::zero(kDefault);
    auto pres = make_presentation(kDefault, {{z}});
    CHECK_THROWS_AS(module_invariants(pres), precision_error);
    CHECK_THROWS_AS(make_presentation(kDefault, {}), input_error);
    CHECK_THROWS_AS(make_presentation(kDefault, {{z, z}}), input_error);
}

TEST_CASE("determinant agrees with the Leibniz oracle") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 50; ++i) {
        size_t n = 2 + rng() % 3;
        std::vector<std::vector<TruncatedPowerSeries>> m;
        for (size_t r = 0; r < n; ++r) {
            std::vector<TruncatedPowerSeries> row;
            for (size_t c = 0; c < n; ++c)
                row.push_back(random_series(kDefault, rng, false));
            m.push_back(row);
        }
        auto pres = make_presentation(kDefault, m);
        REQUIRE(presentation_determinant(pres) == oracles::leibniz_det(m, kDefault));
    }
}

TEST_CASE("invariants are additive on block-diagonal presentations") {
    std::mt19937_64 rng(123);
    for (int i = 0; i < 100; ++i) {
        unsigned m1 = rng() % 3, m2 = rng() % 3;
        auto g1 = random_series(kDefault, rng, true);
        auto g2 = random_series(kDefault, rng, true);
        auto f1 = series_scalar_mul(g1, static_cast<i64>(p_power(kDefault, m1)));
        auto f2 = series_scalar_mul(g2, static_cast<i64>(p_power(kDefault, m2)));
        auto z = TruncatedPowerSeries::zero(kDefault);
        auto a = module_invariants(make_presentation(kDefault, {{f1}}));
        auto b = module_invariants(make_presentation(kDefault, {{f2}}));
        if (a.mu + b.mu >= kDefault.p_prec)
            continue; // block product would be indeterminate
        if (a.lambda + b.lambda >= kDefault.t_prec)
            continue;
        auto both = module_invariants(make_presentation(kDefault, {{f1, z}, {z, f2}}));
        CHECK(both.mu == a.mu + b.mu);
        CHECK(both.lambda == a.lambda + b.lambda);
    }
}

TEST_CASE("scaling the matrix by p shifts mu by the dimension") {
    std::mt19937_64 rng(321);
    for (int i = 0; i < 50; ++i) {
        size_t n = 1 + rng() % 3;
        std::vector<std::vector<TruncatedPowerSeries>> m, mp;
        for (size_t r = 0; r < n; ++r) {
            std::vector<TruncatedPowerSeries> row, rowp;
            for (size_t c = 0; c < n; ++c) {
                auto s = random_series(kDefault, rng, r == c);
                row.push_back(s);
                rowp.push_back(series_scalar_mul(s, static_cast<i64>(kDefault.p)));
            }
            m.push_back(row);
            mp.push_back(rowp);
        }
        StructureInvariants base;
        try {
            base = module_invariants(make_presentation(kDefault, m));
        } catch (const precision_error&) {
            continue; // random matrix happened to have vanishing determinant
        }
        if (base.mu + n >= kDefault.p_prec)
            continue;
        auto scaled = module_invariants(make_presentation(kDefault, mp));
        CHECK(scaled.mu == base.mu + n);
        CHECK(scaled.lambda == base.lambda);
    }
}
