#include <doctest.h>

#include <localconst/errors.hpp>
#include <localconst/finite_field.hpp>

using namespace lc;

TEST_CASE("field construction invariants") {
    for (auto [p, s] : {std::pair<long, long>{5, 1}, {3, 2}, {2, 4}, {7, 2}, {3, 3}}) {
        const FqField& f = FqField::get(p, s);
        CHECK(f.element_order(f.generator()) == f.q() - 1);
        // trace and norm agree with Frobenius-orbit sums/products
        for (long x = 0; x < f.q(); ++x) {
            long tr = 0, nrm = x == 0 ? 0 : 1, y = x;
            for (long i = 0; i < s; ++i) {
                tr = f.add(tr, y);
                if (x != 0) nrm = f.mul(nrm, y);
                y = f.frobenius(y);
            }
            CHECK(f.trace(x) == tr);
            CHECK(tr < p);  // lands in the prime field
            if (x != 0) {
                CHECK(f.norm(x) == nrm);
                CHECK(nrm < p);
            }
        }
    }
}

TEST_CASE("additive character values") {
    const FqField& f5 = FqField::get(5, 1);
    CHECK(psi_q(f5, 0) == Cyclotomic(Rat(1)));
    CHECK(psi_q(f5, 2) == Cyclotomic::zeta(5, 2));

    const FqField& f9 = FqField::get(3, 2);
    long kernel = 0;
    for (long x = 0; x < 9; ++x)
        if (f9.trace(x) == 0) ++kernel;
    CHECK(kernel == 3);
    for (long x = 0; x < 9; ++x)
        if (f9.trace(x) == 0) CHECK(psi_q(f9, x) == Cyclotomic(Rat(1)));
}

TEST_CASE("gauss sum examples") {
    const FqField& f5 = FqField::get(5, 1);
    CHECK(gauss_sum(FFMultChar::trivial(f5)) == ScaledCyclotomic(Rat(-1)));
    // quadratic over F_5: sqrt(5)
    CHECK(gauss_sum(FFMultChar::quadratic(f5)).same_value(ScaledCyclotomic(5, 1, Cyclotomic(Rat(1)))));
    // quadratic over F_3: i sqrt(3)
    const FqField& f3 = FqField::get(3, 1);
    CHECK(gauss_sum(FFMultChar::quadratic(f3)).same_value(ScaledCyclotomic(3, 1, Cyclotomic::zeta(4))));
}

TEST_CASE("quadratic closed form examples") {
    CHECK(quadratic_gauss_closed_form(5, 1) == ScaledCyclotomic(5, 1, Cyclotomic(Rat(1))));
    CHECK(quadratic_gauss_closed_form(3, 2).same_value(ScaledCyclotomic(Rat(3))));
    CHECK(quadratic_gauss_closed_form(7, 1) == ScaledCyclotomic(7, 1, Cyclotomic::zeta(4)));
    CHECK_THROWS_AS((void)quadratic_gauss_closed_form(2, 1), Error);
}

TEST_CASE("quadratic gauss sums match the closed form up to q = 200") {
    for (long p = 3; p <= 199; p += 2) {
        if (!is_prime_l(p)) continue;
        for (long s = 1, q = p; q <= 200; ++s, q *= p) {
            const FqField& f = FqField::get(p, s);
            CHECK(gauss_sum(FFMultChar::quadratic(f)).same_value(quadratic_gauss_closed_form(p, s)));
        }
    }
}

TEST_CASE("modulus of |G| for nontrivial characters") {
    for (long q : {3L, 5L, 7L, 9L, 11L, 13L, 25L, 27L, 49L}) {
        auto pp = as_prime_power(q);
        const FqField& f = FqField::get(pp.p, pp.s);
        for (long k = 1; k < q - 1; ++k) {
            FFMultChar chi{&f, k};
            for (long b : {1L, 2L}) {
                auto g = gauss_sum(chi, b);
                CHECK((g * g.conj()) == ScaledCyclotomic(Rat(q)));
            }
        }
        // trivial character, nontrivial psi: sum is -1
        CHECK(gauss_sum(FFMultChar::trivial(f)) == ScaledCyclotomic(Rat(-1)));
    }
}

TEST_CASE("davenport-hasse examples") {
    const FqField& f3 = FqField::get(3, 1);
    auto rep = lift_and_check_davenport_hasse(FFMultChar::quadratic(f3), 2);
    CHECK(rep.equal);
    CHECK(rep.lhs.same_value(ScaledCyclotomic(Rat(3))));  // -(i sqrt 3)^2 = 3

    const FqField& f5 = FqField::get(5, 1);
    CHECK(lift_and_check_davenport_hasse(FFMultChar::quadratic(f5), 3).equal);

    const FqField& f7 = FqField::get(7, 1);
    FFMultChar chi3{&f7, 2};  // order 3
    CHECK(chi3.order() == 3);
    CHECK(lift_and_check_davenport_hasse(chi3, 2).equal);
}

TEST_CASE("davenport-hasse over a modest grid") {
    for (long q = 2; q <= 20; ++q) {
        auto pp = as_prime_power(q);
        if (!pp) continue;
        const FqField& f = FqField::get(pp.p, pp.s);
        for (long s = 2;; ++s) {
            double size = 1;
            for (long i = 0; i < s; ++i) size *= static_cast<double>(q);
            if (size > 300) break;
            for (long k = 0; k < q - 1; ++k)
                CHECK(lift_and_check_davenport_hasse({&f, k}, s).equal);
        }
    }
}

TEST_CASE("descriptors") {
    const FqField& f9 = FqField::get(3, 2);
    CHECK(f9.descriptor() == "Fq(3^2; modulus=[2,1,1])");
    CHECK(FFMultChar::quadratic(f9).descriptor() == "chi(4 mod 8)");
}
