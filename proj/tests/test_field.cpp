#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "euclid/field.hpp"
#include "oracles.hpp"

using namespace euclid;

TEST_CASE("make_field conventions")
{
    FieldDesc g = make_field(-1);
    CHECK(g.disc() == -4);
    CHECK(g.trace_omega() == 0);   // omega = sqrt(-1)
    CHECK(g.imaginary());

    FieldDesc f10 = make_field(10);
    CHECK(f10.disc() == 40);
    CHECK(f10.trace_omega() == 0);
    CHECK(f10.real());

    FieldDesc f15 = make_field(-15);
    CHECK(f15.disc() == -15);
    CHECK(f15.trace_omega() == 1);   // omega = (1+sqrt(-15))/2
}

TEST_CASE("make_field rejects degenerate d")
{
    CHECK_THROWS_AS(make_field(0), std::invalid_argument);
    CHECK_THROWS_AS(make_field(1), std::invalid_argument);
    CHECK_THROWS_WITH_AS(make_field(12), doctest::Contains("square factor 4"),
                         std::invalid_argument);
    CHECK_THROWS_AS(make_field(-18), std::invalid_argument);
    CHECK_THROWS_AS(make_field(50), std::invalid_argument);
}

TEST_CASE("norm fixtures")
{
    FieldDesc f2 = make_field(2);
    CHECK(f2.norm_z(Elem(3, 1)) == 7);   // (3+sqrt2)(3-sqrt2)
    CHECK(f2.norm_z(Elem(1, 0)) == 1);

    FieldDesc f15 = make_field(-15);
    CHECK(f15.norm_z(f15.omega()) == 4);   // (1+15)/4
}

TEST_CASE("norm multiplicativity on random pairs")
{
    oracle::Rng rng(12345);
    for (long d : {2, 10, -15, -1, 13}) {
        FieldDesc F = make_field(d);
        for (int i = 0; i < 200; ++i) {
            Elem x(rng.range(-50, 50), rng.range(-50, 50));
            Elem y(rng.range(-50, 50), rng.range(-50, 50));
            CHECK(F.norm_z(F.mul(x, y)) == F.norm_z(x) * F.norm_z(y));
        }
    }
}

TEST_CASE("conjugation is an involutive ring automorphism")
{
    oracle::Rng rng(777);
    for (long d : {10, -15, 5, -2}) {
        FieldDesc F = make_field(d);
        for (int i = 0; i < 100; ++i) {
            Elem x(rng.range(-40, 40), rng.range(-40, 40),
                   rng.range(1, 5));
            Elem y(rng.range(-40, 40), rng.range(-40, 40),
                   rng.range(1, 5));
            CHECK(F.conj(F.conj(x)) == x);
            CHECK(F.conj(F.add(x, y)) == F.add(F.conj(x), F.conj(y)));
            CHECK(F.conj(F.mul(x, y)) == F.mul(F.conj(x), F.conj(y)));
        }
    }
}

TEST_CASE("fundamental unit fixtures")
{
    CHECK(fundamental_unit(make_field(2)) == Elem(1, 1));    // 1+sqrt2
    CHECK(fundamental_unit(make_field(10)) == Elem(3, 1));   // 3+sqrt10
    CHECK(fundamental_unit(make_field(5)) == Elem(0, 1));    // (1+sqrt5)/2
    CHECK_THROWS_AS(fundamental_unit(make_field(-1)), std::domain_error);
}

TEST_CASE("fundamental unit matches the brute-force Pell oracle")
{
    for (long d : {2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23,
                   29, 33, 37, 41, 53, 61, 73, 89, 94, 97}) {
        CAPTURE(d);
        FieldDesc F = make_field(d);
        Elem eps = fundamental_unit(F);
        Elem expect = oracle::pell_unit_bruteforce(F);
        CHECK(eps == expect);
        CHECK(abs(F.norm_z(eps)) == 1);
        CHECK(F.embedding_cmp(eps, F.one()) > 0);   // eps > 1
    }
}

TEST_CASE("torsion units")
{
    CHECK(torsion_units(make_field(-1)).size() == 4);
    CHECK(torsion_units(make_field(-3)).size() == 6);
    CHECK(torsion_units(make_field(10)).size() == 2);
    CHECK(torsion_units(make_field(-15)).size() == 2);
    for (long d : {-1, -3, -7, 10}) {
        FieldDesc F = make_field(d);
        for (auto const & u : torsion_units(F))
            CHECK(abs(F.norm_z(u)) == 1);
    }
}

TEST_CASE("unit group shape")
{
    UnitGroup g10 = unit_group(make_field(10));
    CHECK(g10.torsion_order == 2);
    REQUIRE(g10.fundamental.has_value());
    CHECK(*g10.fundamental == Elem(3, 1));

    UnitGroup gm1 = unit_group(make_field(-1));
    CHECK(gm1.torsion_order == 4);
    CHECK(!gm1.fundamental.has_value());
}

TEST_CASE("unit_decompose round trip")
{
    FieldDesc F = make_field(10);
    Elem eps = fundamental_unit(F);
    Elem u = F.mul(F.neg(F.one()), F.pow(eps, 3));
    auto jk = unit_decompose(F, u);
    REQUIRE(jk.has_value());
    CHECK(jk->first == 1);
    CHECK(jk->second == 3);
    CHECK(!unit_decompose(F, Elem(2, 0)).has_value());

    FieldDesc G = make_field(-3);
    auto tor = torsion_units(G);
    for (size_t j = 0; j < tor.size(); ++j) {
        auto r = unit_decompose(G, tor[j]);
        REQUIRE(r.has_value());
        CHECK(r->first == static_cast<long>(j));
    }
}

TEST_CASE("embedding comparisons are exact")
{
    FieldDesc F = make_field(2);
    CHECK(F.embedding_sign(Elem(1, 1)) > 0);     // 1+sqrt2
    CHECK(F.embedding_sign(Elem(1, -1)) < 0);    // 1-sqrt2
    CHECK(F.embedding_sign(Elem(3, -2)) > 0);    // 3-2sqrt2 ~ 0.17
    CHECK(F.embedding_sign(Elem(-3, 2)) < 0);
    CHECK(F.embedding_cmp(Elem(0, 1), Elem(1, 0)) > 0);   // sqrt2 > 1
}

TEST_CASE("argument ordering in imaginary fields")
{
    FieldDesc F = make_field(-1);
    Elem one(1, 0), i(0, 1), mone(-1, 0), mi(0, -1);
    CHECK(F.arg_cmp(one, i) < 0);
    CHECK(F.arg_cmp(i, mone) < 0);
    CHECK(F.arg_cmp(mone, mi) < 0);
    CHECK(F.arg_cmp(Elem(1, 1), i) < 0);
    CHECK(F.arg_cmp(one, one) == 0);
}
