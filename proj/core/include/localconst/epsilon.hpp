#pragma once

#include <localconst/local_field.hpp>

#include <optional>
#include <string>

namespace lc {

enum class Convention { W, BH, D };

struct EpsilonResult {
    ScaledCyclotomic value;
    long q = 0;  // residue field size of the base field
    long a = 0;  // conductor of chi
    long n = 0;  // conductor of psi
    std::string c_desc;
    Convention conv = Convention::W;
    Rat s{1, 2};  // Bushnell-Henniart parameter when conv == BH
};

// W(chi, psi, c) with c = c_unit * pi^{a(chi)+n(psi)} by the modified sum
// formula; for unramified chi this is chi(c).
EpsilonResult epsilon_sum(const LocalMultChar& chi, const LocalAdditiveChar& psi,
                          std::optional<long> c_unit = std::nullopt);

struct CheckReport {
    ScaledCyclotomic lhs, rhs;
    bool equal = false;
    std::string what;
};

// W(chi, b psi, c') = chi(b) W(chi, psi, c)
CheckReport check_additive_shift(const LocalMultChar& chi, const LocalAdditiveChar& psi, const Rat& b);

// W(chi, psi) W(chi^{-1}, psi) = chi(-1), and |W| = 1 for finite-order chi
CheckReport check_functional_equation(const LocalMultChar& chi, const LocalAdditiveChar& psi);

// W(chi1 chi2, psi) = chi2(pi)^{a(chi1)+n(psi)} W(chi1, psi) for unramified chi2
EpsilonResult twist_unramified(const LocalMultChar& chi1, const LocalMultChar& chi2,
                               const LocalAdditiveChar& psi);

// W(alpha beta, psi) = beta^{-1}(y_{alpha,psi}) W(alpha, psi), a(alpha) >= 2 a(beta)
EpsilonResult deligne_twist(const LocalMultChar& alpha, const LocalMultChar& beta,
                            const LocalAdditiveChar& psi);

// reduced sum over (1+P^m)/(1+P^{a-m}) with the scaling q^{-(a-2m)/2}
EpsilonResult lamprecht_tate(const LocalMultChar& chi, const LocalAdditiveChar& psi, long m);

// eps_BH(chi, s, psi) = q^{(1/2-s)(a+n)} W(chi, psi); s must be a half-integer
EpsilonResult convert_convention(const EpsilonResult& r, const Rat& s);

// Finds the unit w (mod p^m, least representative) such that c = w pi^{a+n}
// satisfies chi(1+y) = psi(c^{-1} y) for all y in P^{a-m}/P^a. For m = 0 the
// condition is empty and w = 1. Throws `err` when no unit works.
long find_c_unit(const LocalMultChar& chi, const LocalAdditiveChar& psi, long m,
                 const char* err = "NoValidC");

}  // namespace lc
