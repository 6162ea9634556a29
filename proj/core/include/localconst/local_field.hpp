#pragma once

#include <localconst/cyclo.hpp>
#include <localconst/finite_field.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace lc {

// Desk-scale model of F/Q_p: only the numerical invariants travel with the
// field. Full unit arithmetic is available over Q_p; general F supports tame
// (residue-level) data only.
struct LocalFieldDesc {
    long p = 2;  // residue characteristic
    long e = 1;  // absolute ramification index
    long f = 1;  // residue degree
    long d = 0;  // exponent of the absolute different

    long q() const;
    bool is_qp() const { return e == 1 && f == 1 && d == 0; }
    const FqField& residue_field() const { return FqField::get(p, f); }

    static LocalFieldDesc qp(long p) { return make(p, 1, 1, 0); }
    static LocalFieldDesc make(long p, long e, long f, long d);

    std::string descriptor() const;  // Local(p, e, f, d)
    static LocalFieldDesc parse(const std::string&);
    bool operator==(const LocalFieldDesc&) const = default;
};

// n(psi ∘ Tr_{K/F}) = e_{K/F} n(psi) + d_{K/F}
long composed_psi_conductor(long ext_e, long ext_d, long n_psi);

// |F^x / (F^x)^2| = 4 q^{nu_F(2)}
long square_class_order(const LocalFieldDesc& F);

// Additive character b * psi_F. Over Q_p it is exactly evaluable at rationals.
// Over general F the model keeps the conductor plus the residue normalization:
// x -> psi(x * pi^{-(1+n)}) on O_F/P_F equals psi_q(w * x).
struct LocalAdditiveChar {
    LocalFieldDesc F;
    long n = 0;            // conductor
    std::optional<Rat> b;  // Q_p only; psi = b * psi_{Q_p}, n = nu_p(b)
    long residue_w = 1;    // general F: unit residue scaling

    static LocalAdditiveChar canonical_qp(long p);
    static LocalAdditiveChar qp_shift(long p, const Rat& b);
    static LocalAdditiveChar residue_normalized(const LocalFieldDesc& F, long n, long w = 1);

    LocalAdditiveChar shifted(const Rat& bb) const;  // (bb * psi), Q_p only
    Cyclotomic eval_qp(const Rat& x) const;
    // psi(x) = zeta_second^first; second is a power of p (1 for the value 1)
    std::pair<long, long> eval_qp_exponent(const Rat& x) const;
};

// Character of (Z/p^a)^x given by values on fixed generators (least primitive
// root for odd p; -1 and 5 for p = 2).
struct QpUnitChar {
    long p = 2, level = 1;
    std::vector<long> gens;    // generator residues
    std::vector<long> orders;  // their orders
    std::vector<long> t;       // chi(g_i) = zeta_{orders[i]}^{t[i]}

    static QpUnitChar trivial(long p, long level);
    long value_modulus() const;          // lcm of orders
    long exponent(long u) const;         // chi(u) = zeta_{value_modulus}^{exponent}
    Cyclotomic eval(long u) const;       // u coprime to p, reduced mod p^level
    long conductor() const;              // exact
    QpUnitChar inverse() const;
    QpUnitChar times(const QpUnitChar& o) const;  // aligned to max level
    QpUnitChar lifted(long new_level) const;
};

// Character of F^x in the supported arithmetic matrix: value on pi plus either
// a residue-field character (a <= 1) or a QpUnitChar (F = Q_p, any a).
struct LocalMultChar {
    LocalFieldDesc F;
    long a = 0;  // exact conductor
    Cyclotomic value_on_pi{Rat(1)};
    std::optional<FFMultChar> residue;  // general F, a <= 1
    std::optional<QpUnitChar> qp_unit;  // Q_p

    static LocalMultChar unramified(const LocalFieldDesc& F, Cyclotomic value_on_pi);
    static LocalMultChar tame(const LocalFieldDesc& F, long residue_index, Cyclotomic value_on_pi);
    static LocalMultChar qp(long p, QpUnitChar unit, Cyclotomic value_on_pi);
    static LocalMultChar trivial(const LocalFieldDesc& F) { return unramified(F, Cyclotomic(Rat(1))); }

    bool is_unramified() const { return a == 0; }
    bool is_trivial() const;
    long unit_order() const;  // order of the unit part
    // unit evaluation: residue-field element for the residue model, integer
    // coprime to p for the Q_p model
    Cyclotomic eval_unit(long u) const;
    long unit_exponent(long u) const;     // exponent w.r.t. unit_value_modulus()
    long unit_value_modulus() const;
    Cyclotomic eval_qp(const Rat& x) const;  // full evaluation over Q_p
    Cyclotomic at_minus_one() const;
    LocalMultChar inverse() const;
    LocalMultChar times(const LocalMultChar& o) const;  // exact conductor recomputed
    std::string descriptor() const;
};

// canonical representatives of U_F / U_F^a
std::vector<long> unit_quotient_reps(const LocalFieldDesc& F, long a);

// all characters of (Z/p^amax)^x, exact conductors attached, value_on_pi = 1
std::vector<LocalMultChar> enumerate_qp_unit_chars(long p, long a_max);

struct Q2QuadRecord {
    long d;             // squarefree label: 5, -1, -5, 2, 10, -2, -10
    long conductor;
    std::string norm_desc;
    LocalMultChar chi;
};

// The seven quadratic characters of Q_2^x, derived from the hard-coded norm
// groups of the seven quadratic extensions.
std::array<Q2QuadRecord, 7> q2_quadratic_catalogue();

// Test hook: corrupts one catalogue value while enabled.
void q2_catalogue_inject_fault(bool on);

}  // namespace lc
