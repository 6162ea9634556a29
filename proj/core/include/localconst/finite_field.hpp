#pragma once

#include <localconst/cyclo.hpp>

#include <string>
#include <vector>

namespace lc {

// F_{p^s} with a deterministic construction: the modulus is the
// lexicographically least monic primitive polynomial over F_p (coefficients
// compared low-to-high), the generator the least primitive element in the
// induced element order. Elements are encoded as integers sum c_i p^i with
// 0 <= c_i < p. Immutable after construction; instances are cached.
class FqField {
public:
    static const FqField& get(long p, long s);

    long p() const { return p_; }
    long s() const { return s_; }
    long q() const { return q_; }
    const std::vector<long>& modulus() const { return modulus_; }
    long generator() const { return gen_; }

    long add(long a, long b) const;
    long neg(long a) const;
    long sub(long a, long b) const { return add(a, neg(b)); }
    long mul(long a, long b) const;
    long inv(long a) const;
    long pow(long a, long e) const;
    long frobenius(long a) const { return a == 0 ? 0 : exp_[mul_mod(dlog_[a], p_, q_ - 1)]; }

    long dlog(long a) const;           // base generator, a != 0
    long exp(long e) const { return exp_[mod_l(e, q_ - 1)]; }
    long element_order(long a) const;  // multiplicative order

    long trace(long a) const;  // absolute trace, value in [0, p)
    long norm(long a) const;   // absolute norm, value in [0, p)
    // Trace/norm to the subfield F_{p^t}, t | s; values are elements of this
    // field lying in that subfield.
    long rel_trace(long a, long t) const;
    long rel_norm(long a, long t) const;

    std::string descriptor() const;  // Fq(p^s; modulus=[c0,...,cs])

private:
    FqField(long p, long s);
    long p_, s_, q_;
    std::vector<long> modulus_;
    long gen_;
    std::vector<long> exp_, dlog_;
};

// Multiplicative character chi(g^j) = zeta_{q-1}^{kj}; chi(0) is an error.
struct FFMultChar {
    const FqField* field;
    long k;  // index mod q-1

    long order() const { return (field->q() - 1) / gcd_l(mod_l(k, field->q() - 1), field->q() - 1); }
    bool is_trivial() const { return mod_l(k, field->q() - 1) == 0; }
    FFMultChar inverse() const { return {field, mod_l(-k, field->q() - 1)}; }
    FFMultChar times(const FFMultChar& o) const;
    // exponent e with chi(x) = zeta_{q-1}^e
    long exponent(long x) const;
    Cyclotomic value(long x) const;
    Cyclotomic value_at_exponent(long j) const;  // chi(g^j)
    static FFMultChar quadratic(const FqField& f);
    static FFMultChar trivial(const FqField& f) { return {&f, 0}; }
    std::string descriptor() const;  // chi(k mod q-1)
};

// zeta_p^{Tr(x)}: the canonical additive character of F_q.
Cyclotomic psi_q(const FqField& f, long x);

// Exact sum over F_q^x of chi(x) psi(b x), as a ScaledCyclotomic with e = 0.
ScaledCyclotomic gauss_sum(const FFMultChar& chi, long b = 1);

// Closed form for the quadratic character and canonical psi (p odd):
// (-1)^{s-1} sqrt(q) if p = 1 mod 4, (-1)^{s-1} i^s sqrt(q) if p = 3 mod 4.
ScaledCyclotomic quadratic_gauss_closed_form(long p, long s);

struct DavenportHasseReport {
    ScaledCyclotomic lhs;  // G(chi', psi') over the lift E/F_q of degree s
    ScaledCyclotomic rhs;  // (-1)^{s-1} G(chi, psi)^s
    bool equal;
};

// Lifts chi and psi_b to E = F_{q^s} via norm and trace and compares both
// sides of the Davenport-Hasse relation exactly.
DavenportHasseReport lift_and_check_davenport_hasse(const FFMultChar& chi, long s, long b = 1);

}  // namespace lc
