#include <localconst/epsilon.hpp>
#include <localconst/errors.hpp>

#include <sstream>

namespace lc {

namespace {

long pow_l(long b, long e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

std::string c_description(long a, long n, long unit) {
    std::ostringstream os;
    os << "c = " << unit << " * pi^" << a + n;
    return os.str();
}

// the ramified full sum over Q_p
EpsilonResult qp_ramified_sum(const LocalMultChar& chi, const LocalAdditiveChar& psi, long c_unit) {
    long p = chi.F.p;
    long a = chi.a, n = psi.n;
    long pa = pow_l(p, a);
    require(gcd_l(mod_l(c_unit, pa), p) == 1, "ConductorMismatch", "c unit must be a p-adic unit");
    LocalMultChar chi_inv = chi.inverse();

    // psi(x / c) = zeta_{p^a}^{w x} with w = unit(b) * c_unit^{-1} mod p^a
    long ub = unit_part_mod(*psi.b, p, pa);
    long w = mul_mod(ub, inv_mod(c_unit, pa), pa);

    // exponents of chi^{-1} are multiples of M/ord; work in mu_{ord}
    long mu = std::max(chi.unit_order(), 1L);
    long step = chi.unit_value_modulus() / mu;
    long big = lcm_l(mu, pa);
    long su = big / mu, sp = big / pa;
    std::vector<Rat> raw(big, Rat(0));
    for (long x = 1; x < pa; ++x) {
        if (x % p == 0) continue;
        long e = mod_l(chi_inv.unit_exponent(x) / step * su + mul_mod(w, x, pa) * sp, big);
        raw[e] += 1;
    }
    Cyclotomic sum = Cyclotomic::from_coeffs(big, std::move(raw));
    Cyclotomic chi_c = chi.value_on_pi.pow(a + n) * chi.eval_unit(c_unit);
    EpsilonResult r;
    r.q = p;
    r.a = a;
    r.n = n;
    r.c_desc = c_description(a, n, c_unit);
    r.value = ScaledCyclotomic(chi_c * sum).scaled_by_half_power(p, -a);
    return r;
}

// the tame residue-level sum over a general F
EpsilonResult general_tame_sum(const LocalMultChar& chi, const LocalAdditiveChar& psi, long c_unit) {
    const FqField& k = chi.F.residue_field();
    require(c_unit != 0 && c_unit < k.q(), "ConductorMismatch", "c unit must be a residue unit");
    long n = psi.n;
    // psi(x/c) at residue level: psi_q(w * c_unit^{-1} * x)
    long shift = k.mul(psi.residue_w, k.inv(c_unit));
    ScaledCyclotomic sum = gauss_sum(chi.residue->inverse(), shift);
    Cyclotomic chi_c = chi.value_on_pi.pow(1 + n) * chi.eval_unit(c_unit);
    EpsilonResult r;
    r.q = k.q();
    r.a = 1;
    r.n = n;
    r.c_desc = c_description(1, n, c_unit);
    r.value = (chi_c * sum).scaled_by_half_power(k.q(), -1);
    return r;
}

}  // namespace

EpsilonResult epsilon_sum(const LocalMultChar& chi, const LocalAdditiveChar& psi,
                          std::optional<long> c_unit) {
    require(chi.F == psi.F, "ConductorMismatch", "chi and psi live over different fields");
    if (chi.a == 0) {
        // W(chi, psi, c) = chi(c) with nu(c) = n(psi); unramified chi ignores units
        EpsilonResult r;
        r.q = chi.F.q();
        r.a = 0;
        r.n = psi.n;
        r.c_desc = c_description(0, psi.n, c_unit.value_or(1));
        r.value = ScaledCyclotomic(chi.value_on_pi.pow(psi.n));
        return r;
    }
    if (chi.F.is_qp()) {
        require(psi.b.has_value(), "UnsupportedModel", "Q_p epsilon sums need an evaluable psi");
        return qp_ramified_sum(chi, psi, c_unit.value_or(1));
    }
    require(chi.a == 1 && chi.residue.has_value(), "UnsupportedModel",
            "ramified epsilon sums over general F are supported at conductor 1 only");
    return general_tame_sum(chi, psi, c_unit.value_or(1));
}

CheckReport check_additive_shift(const LocalMultChar& chi, const LocalAdditiveChar& psi,
                                 const Rat& b) {
    CheckReport rep;
    rep.what = "W(chi, b psi) = chi(b) W(chi, psi)";
    if (psi.b.has_value()) {
        rep.lhs = epsilon_sum(chi, psi.shifted(b)).value;
        rep.rhs = ScaledCyclotomic(chi.eval_qp(b)) * epsilon_sum(chi, psi).value;
    } else {
        // general F: shifts by residue units only
        require(boost::multiprecision::denominator(b) == 1, "UnsupportedModel",
                "general-F shifts are residue units");
        long u = static_cast<long>(boost::multiprecision::numerator(b));
        const FqField& k = chi.F.residue_field();
        require(u > 0 && u < k.q(), "UnsupportedModel", "general-F shifts are residue units");
        LocalAdditiveChar shifted = psi;
        shifted.residue_w = k.mul(psi.residue_w, u);
        rep.lhs = epsilon_sum(chi, shifted).value;
        rep.rhs = ScaledCyclotomic(chi.eval_unit(u)) * epsilon_sum(chi, psi).value;
    }
    rep.equal = rep.lhs == rep.rhs;
    return rep;
}

CheckReport check_functional_equation(const LocalMultChar& chi, const LocalAdditiveChar& psi) {
    CheckReport rep;
    rep.what = "W(chi, psi) W(chi^{-1}, psi) = chi(-1)";
    ScaledCyclotomic w1 = epsilon_sum(chi, psi).value;
    ScaledCyclotomic w2 = epsilon_sum(chi.inverse(), psi).value;
    rep.lhs = w1 * w2;
    rep.rhs = ScaledCyclotomic(chi.at_minus_one());
    rep.equal = rep.lhs == rep.rhs;
    // |W| = 1 for finite-order chi comes with the same data
    if (rep.equal) rep.equal = (w1 * w1.conj()) == ScaledCyclotomic(Rat(1));
    return rep;
}

EpsilonResult twist_unramified(const LocalMultChar& chi1, const LocalMultChar& chi2,
                               const LocalAdditiveChar& psi) {
    require(chi2.a == 0, "NotUnramified", "chi2 must be unramified");
    EpsilonResult base = epsilon_sum(chi1, psi);
    EpsilonResult r = base;
    if (chi1.a == 0) return r;  // trivial twist of an unramified character
    r.value = ScaledCyclotomic(chi2.value_on_pi.pow(chi1.a + psi.n)) * base.value;
    // cross-check against the direct sum for the product character
    EpsilonResult direct = epsilon_sum(chi1.times(chi2), psi);
    require(direct.value == r.value, "InternalError", "unramified twist disagrees with direct sum");
    return r;
}

long find_c_unit(const LocalMultChar& chi, const LocalAdditiveChar& psi, long m, const char* err) {
    require(chi.F.is_qp() && psi.b.has_value(), "UnsupportedModel", "c search needs the Q_p model");
    require(m >= 0 && 2 * m <= chi.a, "PreconditionViolated", "need 0 <= 2m <= a");
    if (m == 0) return 1;
    long p = chi.F.p;
    long a = chi.a, n = psi.n;
    long lvl = chi.qp_unit ? chi.qp_unit->level : 1;
    long pl = pow_l(p, std::max(m, lvl));
    long mchi = chi.unit_value_modulus();
    Rat pi_pow = rat_pow(Rat(p), -(a + n));
    for (long w = 1; w < pow_l(p, m); ++w) {
        if (w % p == 0) continue;
        bool ok = true;
        Rat cinv = Rat(inv_mod(w, pl)) * pi_pow;  // c^{-1} up to psi-invisible error
        for (long t = 0; t < pow_l(p, m) && ok; ++t) {
            // y = t * p^{a-m} runs over P^{a-m}/P^a
            long y = t * pow_l(p, a - m);
            long le = chi.unit_exponent(mod_l(1 + y, pow_l(p, std::max(a, 1L))));
            auto [re, rn] = psi.eval_qp_exponent(cinv * y);
            long big = lcm_l(mchi, rn);
            ok = mod_l(le * (big / mchi), big) == mod_l(re * (big / rn), big);
        }
        if (ok) return w;
    }
    fail(err, "no unit satisfies the additive approximation of chi");
}

EpsilonResult deligne_twist(const LocalMultChar& alpha, const LocalMultChar& beta,
                            const LocalAdditiveChar& psi) {
    require(alpha.F == beta.F && alpha.F == psi.F, "ConductorMismatch", "mixed base fields");
    require(alpha.a >= 2 * beta.a, "PreconditionViolated", "need a(alpha) >= 2 a(beta)");
    EpsilonResult w_alpha = epsilon_sum(alpha, psi);
    EpsilonResult r = w_alpha;
    r.a = std::max(alpha.a, beta.a);
    if (alpha.a == 0) {
        // y = pi^{-n}; beta is unramified here as well
        r.value = ScaledCyclotomic(beta.value_on_pi.pow(psi.n)) * w_alpha.value;
        return r;
    }
    long w = find_c_unit(alpha, psi, alpha.a / 2, "NoValidY");
    Rat c = Rat(w) * rat_pow(Rat(alpha.F.p), alpha.a + psi.n);
    r.value = ScaledCyclotomic(beta.eval_qp(c)) * w_alpha.value;  // beta^{-1}(y), y = c^{-1}
    r.c_desc = c_description(alpha.a, psi.n, w);
    EpsilonResult direct = epsilon_sum(alpha.times(beta), psi);
    require(direct.value == r.value, "InternalError", "Deligne twist disagrees with direct sum");
    return r;
}

EpsilonResult lamprecht_tate(const LocalMultChar& chi, const LocalAdditiveChar& psi, long m) {
    require(chi.F.is_qp() && psi.b.has_value(), "UnsupportedModel",
            "the reduced formula is modeled over Q_p");
    require(chi.a >= 1, "PreconditionViolated", "chi must be ramified");
    require(m >= 0 && 2 * m <= chi.a, "PreconditionViolated", "need 2m <= a(chi)");
    long p = chi.F.p;
    long a = chi.a, n = psi.n;
    long w = find_c_unit(chi, psi, m, "NoValidC");
    if (m == 0) return epsilon_sum(chi, psi, w);

    long pa = pow_l(p, a);
    Rat c = Rat(w) * rat_pow(Rat(p), a + n);
    Rat cinv = Rat(1) / c;
    LocalMultChar chi_inv = chi.inverse();
    long mchi = chi.unit_value_modulus();
    long big = lcm_l(mchi, pa);
    std::vector<Rat> raw(big, Rat(0));
    for (long t = 0; t < pow_l(p, a - 2 * m); ++t) {
        long x = mod_l(1 + t * pow_l(p, m), pa);
        auto [pe, pn] = psi.eval_qp_exponent(cinv * x);
        raw[mod_l(chi_inv.unit_exponent(x) * (big / mchi) + pe * (big / pn), big)] += 1;
    }
    Cyclotomic sum = Cyclotomic::from_coeffs(big, std::move(raw));
    Cyclotomic chi_c = chi.value_on_pi.pow(a + n) * chi.eval_unit(w);
    EpsilonResult r;
    r.q = p;
    r.a = a;
    r.n = n;
    r.c_desc = c_description(a, n, w);
    r.value = ScaledCyclotomic(chi_c * sum).scaled_by_half_power(p, -(a - 2 * m));
    return r;
}

EpsilonResult convert_convention(const EpsilonResult& r, const Rat& s) {
    require(boost::multiprecision::denominator(s) <= 2, "UnsupportedExponent",
            "convention parameter must be a half-integer");
    // q^{(1/2 - s)(a+n)} = q^{h/2} with h = (1 - 2s)(a+n)
    Rat h = (Rat(1) - 2 * s) * (r.a + r.n);
    EpsilonResult out = r;
    out.conv = Convention::BH;
    out.s = s;
    out.value = r.value.scaled_by_half_power(r.q, static_cast<long>(boost::multiprecision::numerator(h)));
    return out;
}

}  // namespace lc
