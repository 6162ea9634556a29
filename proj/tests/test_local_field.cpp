#include <doctest.h>

#include <localconst/errors.hpp>
#include <localconst/local_field.hpp>

#include <random>

using namespace lc;

TEST_CASE("field descriptors and tame consistency") {
    auto q3 = LocalFieldDesc::qp(3);
    CHECK(q3.descriptor() == "Local(3, 1, 1, 0)");
    CHECK(LocalFieldDesc::parse("Local(3, 1, 1, 0)") == q3);
    CHECK_THROWS_AS((void)LocalFieldDesc::make(3, 2, 1, 0), Error);  // tame needs d = e-1
    auto ram = LocalFieldDesc::make(3, 2, 1, 1);
    CHECK(ram.q() == 3);
    auto wild = LocalFieldDesc::make(2, 2, 1, 2);  // wild: d unconstrained by the tame rule
    CHECK(wild.q() == 2);
}

TEST_CASE("composed psi conductor") {
    CHECK(composed_psi_conductor(1, 0, 3) == 3);
    CHECK(composed_psi_conductor(2, 1, 0) == 1);
    CHECK(composed_psi_conductor(1, 0, 0) == 0);
}

TEST_CASE("square class group order") {
    CHECK(square_class_order(LocalFieldDesc::qp(3)) == 4);
    CHECK(square_class_order(LocalFieldDesc::qp(2)) == 8);
    // F/Q_2 of degree n has order 2^{2+n}
    CHECK(square_class_order(LocalFieldDesc::make(2, 2, 1, 2)) == 16);
    CHECK(square_class_order(LocalFieldDesc::make(2, 1, 2, 0)) == 16);
    CHECK(square_class_order(LocalFieldDesc::make(2, 2, 2, 2)) == 64);
}

TEST_CASE("additive characters over Q_p") {
    auto psi = LocalAdditiveChar::canonical_qp(2);
    CHECK(psi.n == 0);
    CHECK(psi.eval_qp(Rat(1, 4)) == Cyclotomic::zeta(4));       // e^{2 pi i/4}
    CHECK(psi.eval_qp(Rat(3, 4)) == Cyclotomic::zeta(4, 3));
    CHECK(psi.eval_qp(Rat(5)) == Cyclotomic(Rat(1)));
    CHECK(psi.eval_qp(Rat(3, 5)) == Cyclotomic(Rat(1)));        // 3/5 is a 2-adic integer

    // n(b psi) = nu(b) + n(psi) over Q_2, Q_3, Q_5 for random b
    std::mt19937 rng(17);
    std::uniform_int_distribution<long> num(1, 400), den(1, 400), sign(0, 1);
    for (long p : {2L, 3L, 5L}) {
        auto base = LocalAdditiveChar::canonical_qp(p);
        for (int i = 0; i < 50; ++i) {
            Rat b(num(rng) * (sign(rng) ? 1 : -1), den(rng));
            CHECK(base.shifted(b).n == val_p(b, p) + base.n);
        }
    }
}

TEST_CASE("unit quotient representatives") {
    CHECK(unit_quotient_reps(LocalFieldDesc::qp(2), 3) == std::vector<long>{1, 3, 5, 7});
    CHECK(unit_quotient_reps(LocalFieldDesc::qp(5), 1) == std::vector<long>{1, 2, 3, 4});
    CHECK(unit_quotient_reps(LocalFieldDesc::qp(3), 2) == std::vector<long>{1, 2, 4, 5, 7, 8});
    CHECK_THROWS_AS((void)unit_quotient_reps(LocalFieldDesc::make(3, 2, 1, 1), 2), Error);
    CHECK(unit_quotient_reps(LocalFieldDesc::make(3, 2, 1, 1), 1).size() == 2);
}

TEST_CASE("unit character conductors are exact") {
    for (long p : {2L, 3L, 5L}) {
        for (long amax : {1L, 2L, 3L, 4L}) {
            long m = 1;
            for (long i = 0; i < amax; ++i) m *= p;
            for (const auto& chi : enumerate_qp_unit_chars(p, amax)) {
                // conductor a: trivial on 1 + p^a Z, nontrivial on 1 + p^{a-1} Z
                auto trivial_on_level = [&](long lvl) {
                    long step = 1;
                    for (long i = 0; i < lvl; ++i) step *= p;
                    for (long u = 1; u < m; ++u)
                        if (u % p != 0 && (u - 1) % step == 0)
                            if (chi.unit_exponent(u) != 0) return false;
                    return true;
                };
                REQUIRE(trivial_on_level(chi.a));
                if (chi.a > 0) REQUIRE_FALSE(trivial_on_level(chi.a - 1));
                // multiplicativity on the representative set
                long big = chi.unit_value_modulus();
                for (long u = 1; u < m; ++u) {
                    if (u % p == 0) continue;
                    for (long v : {1L, 1 + p, m - 1}) {
                        if (v % p == 0) continue;
                        REQUIRE(chi.unit_exponent(mod_l(u * v, m)) ==
                                mod_l(chi.unit_exponent(u) + chi.unit_exponent(v), big));
                    }
                }
            }
        }
    }
}

TEST_CASE("character products recompute conductors") {
    auto chars3 = enumerate_qp_unit_chars(3, 3);
    for (const auto& a : chars3)
        for (const auto& b : chars3) {
            auto prod = a.times(b);
            // evaluate both sides on a few units mod 27
            for (long u : {2L, 4L, 10L, 26L})
                CHECK(prod.eval_unit(u) == a.eval_unit(u) * b.eval_unit(u));
        }
}

TEST_CASE("q2 quadratic catalogue") {
    auto cat = q2_quadratic_catalogue();
    std::vector<long> expect_d = {5, -1, -5, 2, 10, -2, -10};
    std::vector<long> expect_a = {0, 2, 2, 3, 3, 3, 3};
    for (size_t i = 0; i < 7; ++i) {
        CHECK(cat[i].d == expect_d[i]);
        CHECK(cat[i].conductor == expect_a[i]);
        CHECK(cat[i].chi.a == expect_a[i]);
    }
    // unramified entry for sqrt(5)
    CHECK(cat[0].chi.is_unramified());
    CHECK(cat[0].chi.value_on_pi == Cyclotomic(Rat(-1)));
    // chi_2(3) = -1 since 3 is not a norm from Q_2(sqrt(-1))
    CHECK(cat[1].chi.eval_unit(3) == Cyclotomic(Rat(-1)));
    // chi_4(7) = 1 since 7 is a norm from Q_2(sqrt(2))
    CHECK(cat[3].chi.eval_unit(7) == Cyclotomic(Rat(1)));

    // product relations chi_3 = chi_1 chi_2, chi_5 = chi_1 chi_4,
    // chi_6 = chi_2 chi_4, chi_7 = chi_1 chi_2 chi_4
    auto same_char = [&](const LocalMultChar& x, const LocalMultChar& y) {
        if (!(x.value_on_pi == y.value_on_pi)) return false;
        for (long u : {1L, 3L, 5L, 7L})
            if (!(x.eval_unit(u) == y.eval_unit(u))) return false;
        return true;
    };
    CHECK(same_char(cat[2].chi, cat[0].chi.times(cat[1].chi)));
    CHECK(same_char(cat[4].chi, cat[0].chi.times(cat[3].chi)));
    CHECK(same_char(cat[5].chi, cat[1].chi.times(cat[3].chi)));
    CHECK(same_char(cat[6].chi, cat[0].chi.times(cat[1].chi.times(cat[3].chi))));

    // twist-conductor rule on the catalogue's 8-element group: the conductor
    // of chi_i chi_j matches the catalogue conductor of the product character
    std::vector<LocalMultChar> all = {LocalMultChar::trivial(LocalFieldDesc::qp(2))};
    for (const auto& r : cat) all.push_back(r.chi);
    for (const auto& x : all)
        for (const auto& y : all) {
            auto prod = x.times(y);
            bool matched = false;
            for (const auto& z : all)
                if (same_char(prod, z)) {
                    CHECK(prod.a == z.a);
                    matched = true;
                }
            CHECK(matched);
        }
}

TEST_CASE("catalogue fault injection hook") {
    q2_catalogue_inject_fault(true);
    auto cat = q2_quadratic_catalogue();
    q2_catalogue_inject_fault(false);
    CHECK(cat[3].chi.value_on_pi == Cyclotomic(Rat(-1)));  // corrupted
    auto clean = q2_quadratic_catalogue();
    CHECK(clean[3].chi.value_on_pi == Cyclotomic(Rat(1)));
}

TEST_CASE("descriptor round trip pieces") {
    auto cat = q2_quadratic_catalogue();
    CHECK(cat[1].chi.descriptor() == "locchi(a=2; pi->zeta_1^0; unit->qp[7:1/2,5:0/2])");
}
