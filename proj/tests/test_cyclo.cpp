#include <doctest.h>

#include <localconst/cyclo.hpp>
#include <localconst/errors.hpp>

#include <random>

using namespace lc;

namespace {
ScaledCyclotomic sc(const Cyclotomic& v) { return ScaledCyclotomic(v); }
}  // namespace

TEST_CASE("root of unity products") {
    auto z8 = Cyclotomic::zeta(8);
    CHECK(z8 * z8 == Cyclotomic::zeta(4));  // zeta_8^2 = i
    auto i = Cyclotomic::zeta(4);
    auto one_plus_i = Cyclotomic(Rat(1)) + i;
    auto one_minus_i = Cyclotomic(Rat(1)) - i;
    CHECK(one_plus_i * one_minus_i == Cyclotomic(Rat(2)));
}

TEST_CASE("formal sqrt squares to the base") {
    ScaledCyclotomic r5(5, 1, Cyclotomic(Rat(1)));
    auto sq = r5 * r5;
    CHECK(sq.half_exponent() == 0);
    CHECK(sq.value() == Cyclotomic(Rat(5)));
    CHECK(sq.base_q() == 0);  // no radical left in normal form
}

TEST_CASE("conjugation") {
    auto i = sc(Cyclotomic::zeta(4));
    CHECK(i.conj() == -i);
    CHECK(sc(Cyclotomic(Rat(2))).conj() == sc(Cyclotomic(Rat(2))));
    ScaledCyclotomic i_sqrt3(3, 1, Cyclotomic::zeta(4));
    CHECK(i_sqrt3.conj() == -i_sqrt3);
    CHECK(i_sqrt3.conj().conj() == i_sqrt3);  // involution
}

TEST_CASE("as_root_of_unity basics") {
    auto mi = sc(Cyclotomic::zeta(4, 3));
    auto r = mi.as_root_of_unity();
    REQUIRE(r.has_value());
    CHECK(r->first == 3);
    CHECK(r->second == 4);

    ScaledCyclotomic r5(5, 1, Cyclotomic(Rat(1)));
    CHECK_FALSE(r5.as_root_of_unity().has_value());

    auto z83 = sc(Cyclotomic::zeta(8, 3)).as_root_of_unity();
    REQUIRE(z83.has_value());
    CHECK(*z83 == std::pair<long, long>(3, 8));

    CHECK_FALSE(sc(Cyclotomic(Rat(1, 2))).as_root_of_unity().has_value());
    CHECK_FALSE(sc(Cyclotomic(Rat(2))).as_root_of_unity().has_value());
}

TEST_CASE("as_root_of_unity exhaustive N <= 60") {
    for (long n = 1; n <= 60; ++n) {
        for (long k = 0; k < n; ++k) {
            auto r = Cyclotomic::zeta(n, k).as_root_of_unity();
            REQUIRE(r.has_value());
            long g = std::gcd(k, n);
            if (k == 0) {
                CHECK(*r == std::pair<long, long>(0, 1));
            } else {
                CHECK(*r == std::pair<long, long>(k / g, n / g));
            }
        }
    }
}

TEST_CASE("embedding round trip on random values") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<long> ord(1, 48);
    std::uniform_int_distribution<long> coef(-4, 4);
    for (int iter = 0; iter < 100; ++iter) {
        long n = ord(rng);
        long m = ord(rng);
        std::vector<Rat> raw(n);
        for (auto& c : raw) c = Rat(coef(rng), 1 + std::abs(coef(rng)));
        auto z = Cyclotomic::from_coeffs(n, raw);
        auto emb = z.embedded(n * m);
        CHECK(emb == z);  // equality embeds both sides into Q(zeta_lcm)
    }
}

TEST_CASE("arithmetic across orders and division") {
    auto z3 = Cyclotomic::zeta(3);
    auto z4 = Cyclotomic::zeta(4);
    auto prod = z3 * z4;
    CHECK(prod == Cyclotomic::zeta(12, 7));
    CHECK(prod / z4 == z3);
    CHECK((z3 + z4) - z4 == z3);
    auto x = Cyclotomic(Rat(2)) + z3;  // nontrivial inverse path
    CHECK(x * x.inv() == Cyclotomic(Rat(1)));
    CHECK_THROWS_AS((void)Cyclotomic().inv(), Error);
}

TEST_CASE("scaled arithmetic guards") {
    ScaledCyclotomic r5(5, 1, Cyclotomic(Rat(1)));
    ScaledCyclotomic r3(3, 1, Cyclotomic(Rat(1)));
    CHECK_THROWS_AS((void)(r5 * r3), Error);
    CHECK_THROWS_AS((void)(r5 + sc(Cyclotomic(Rat(1)))), Error);
    CHECK((r5 / r5) == sc(Cyclotomic(Rat(1))));
    // scalar multiplication with a pure cyclotomic is always allowed
    CHECK((r5 * sc(Cyclotomic(Rat(2)))).value() == Cyclotomic(Rat(2)));
}

TEST_CASE("same_value sees through the formal radical") {
    // (1+i)/2 * sqrt(2) = zeta_8
    auto v = (Cyclotomic(Rat(1)) + Cyclotomic::zeta(4)) * Cyclotomic(Rat(1, 2));
    ScaledCyclotomic lhs(2, 1, v);
    auto rhs = sc(Cyclotomic::zeta(8));
    CHECK(lhs != rhs);  // structural forms differ
    CHECK(lhs.same_value(rhs));
    auto r = lhs.as_root_of_unity();
    REQUIRE(r.has_value());
    CHECK(*r == std::pair<long, long>(1, 8));
    // sqrt(9) = 3
    ScaledCyclotomic r9(9, 1, Cyclotomic(Rat(1)));
    CHECK(r9.same_value(sc(Cyclotomic(Rat(3)))));
}

TEST_CASE("serialization round trips bit-exactly") {
    std::vector<ScaledCyclotomic> values = {
        sc(Cyclotomic(Rat(0))),
        sc(Cyclotomic(Rat(-7, 3))),
        sc(Cyclotomic::zeta(12, 5) + Cyclotomic(Rat(1, 2))),
        ScaledCyclotomic(5, 1, Cyclotomic(Rat(1))),
        ScaledCyclotomic(3, 1, Cyclotomic::zeta(4)),
        ScaledCyclotomic(2, 3, Cyclotomic::zeta(8, 3)),
    };
    for (const auto& z : values) {
        auto s = z.to_string();
        auto back = ScaledCyclotomic::parse(s);
        CHECK(back == z);
        CHECK(back.to_string() == s);
    }
}

TEST_CASE("pretty forms used by report tables") {
    CHECK(pretty(sc(Cyclotomic::zeta(4))) == "i");
    CHECK(pretty(sc(-Cyclotomic(Rat(1)))) == "-1");
    CHECK(pretty(ScaledCyclotomic(3, 1, Cyclotomic::zeta(4))) == "i*sqrt(3)");
    CHECK(pretty(ScaledCyclotomic(5, 1, Cyclotomic(Rat(1)))) == "sqrt(5)");
}

TEST_CASE("sqrt_prime_cyclotomic squares to p") {
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L}) {
        auto s = sqrt_prime_cyclotomic(p);
        CHECK(s * s == Cyclotomic(Rat(p)));
    }
}
