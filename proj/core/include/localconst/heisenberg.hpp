#pragma once

#include <localconst/epsilon.hpp>
#include <localconst/finite_field.hpp>
#include <localconst/group.hpp>

#include <optional>
#include <vector>

namespace lc {

// linear character of a subgroup, values zeta_modulus^{exps[i]} on h[i]
struct SubgroupChar {
    Subgroup h;
    long modulus = 1;
    std::vector<long> exps;

    long exponent_at(int x) const;  // x must lie in h
    Cyclotomic value_at(int x) const { return Cyclotomic::zeta(modulus, exponent_at(x)); }
    SubgroupChar rescaled(long new_modulus) const;  // modulus | new_modulus
};

// Heisenberg triple (G, Z, chi_Z): Z coabelian normal, chi_Z a G-invariant
// character whose commutator pairing X on G/Z is nondegenerate alternating.
struct HeisenbergDatum {
    FiniteGroup g;
    Subgroup z;
    SubgroupChar chi_z;
    Quotient gz;  // G/Z
    AltBichar x;  // X(g1^, g2^) = chi_Z([g1, g2])
    long dim;

    static HeisenbergDatum make(FiniteGroup g, Subgroup z, long modulus, std::vector<long> exps);
};

struct MonomialMatrix {
    std::vector<int> row_of;  // column -> row
    std::vector<long> expo;   // exponent of zeta_modulus in the nonzero entry
};

// rho = Ind_H^G chi_H as exact monomial matrices
struct MonomialRep {
    FiniteGroup g;
    long dim = 1;
    long modulus = 1;
    Subgroup h;
    SubgroupChar chi_h;
    std::vector<MonomialMatrix> images;  // indexed by group element

    Cyclotomic trace(int x) const;
};

// all maximal isotropic subgroups of X, lifted to subgroups of G containing Z
std::vector<Subgroup> maximal_isotropics_lifted(const HeisenbergDatum& d);

// deterministic extension of chi_Z to H (least-exponent images on the
// invariant-factor generators of H/Z)
SubgroupChar extend_central_char(const HeisenbergDatum& d, const Subgroup& h);
// all extensions of chi_Z to H
std::vector<SubgroupChar> all_extensions(const HeisenbergDatum& d, const Subgroup& h);

MonomialRep build_rho(const HeisenbergDatum& d, std::optional<Subgroup> h_choice = std::nullopt,
                      std::optional<SubgroupChar> chi_h_choice = std::nullopt);

// determinant of the monomial matrix: permutation sign times entry product
Cyclotomic det_brute(const MonomialRep& rep, int x);

// the invariant formula: eps(x) * chi_Z(x^dim) with the G^2 Z sign rule
Cyclotomic det_invariant(const HeisenbergDatum& d, int x);
// the same for all elements at once (one reduction mod Ker chi_Z)
std::vector<Cyclotomic> det_invariant_table(const HeisenbergDatum& d);

// det via the induced-representation formula Delta_H^G(x) * chi_H(T_{G/H}(x))
Cyclotomic gallagher_det(const MonomialRep& rep, int x);

// ---- U-isotropic arithmetic layer ------------------------------------------------

// character of F^x at residue level: value on pi plus a character of k_F^x
struct ResidueLocalChar {
    Cyclotomic value_on_pi{Rat(1)};
    FFMultChar unit;

    Cyclotomic eval(long pi_exp, long u) const { return value_on_pi.pow(pi_exp) * unit.value(u); }
};

// data for a U-isotropic Heisenberg representation rho(X_eta, chi_K) of
// dimension m = #eta prime to p; theta stands for chi_K o N_{E1/F}^{-1} and
// delta for Delta_{E/F}, both supplied at residue level
struct UIsotropicDatum {
    const FqField* k = nullptr;  // residue field of F
    FFMultChar eta;              // character of U_F/U_F^1
    long a_eta = 1;              // conductor of eta in the wider (wild) model
    ResidueLocalChar theta;
    ResidueLocalChar delta;    // quadratic or trivial on units
    ResidueLocalChar det_rho;  // det(rho) = delta * theta on F^x (validated)

    long m() const { return eta.order(); }
};

// X_eta(pi^a e1, pi^b e2) = eta(e1)^b eta(e2)^{-a}
Cyclotomic x_eta_eval(const FFMultChar& eta, long a, long e1, long b, long e2);

struct RadicalDescriptor {
    long pi_exponent;               // <pi^{#eta}>
    std::vector<long> eta_kernel;   // Ker(eta) in k^x
};
RadicalDescriptor x_eta_radical(const FFMultChar& eta);

struct ConductorData {
    long sw;        // Swan conductor m * j(eta)
    long a_rho;     // Artin conductor m * a(eta)
    long a_chi_E;   // m a(eta) - d_{E/F}
    long a_chi_E1;  // a(eta)
    long a_chi_K;   // m a(eta) - d_{K/F}
    bool dim_divides_a_rho;
};
// validates the tame consistency (d = e-1 when gcd(m,p) = 1) and that both
// conductor routes through Ind agree
ConductorData conductors(long p, long m, long a_eta, long d_EF, long d_KF, long f_E1F);

// a(rho_0 tensor chi_F) = m * a(chi_F) for a(chi_F) > a(eta)
long twisted_conductor(long m, long a_eta, long a_chi_F);

// the m-primary part of q-1: prod_{l | m} l^{v_l(q-1)}
long m_primary_part(long m, long q_minus_1);

struct MinimalWResult {
    ScaledCyclotomic r;  // lambda_{E/F}(psi) * Delta(c)
    ScaledCyclotomic l;  // det(rho)(c) q^{-1/2} sum theta^{-1}(x) (c^{-1}psi)(m x)
    ScaledCyclotomic w;  // R * L
};

// W(rho, psi) = R(psi,c) * L(psi,c) for a minimal-conductor rho of dimension
// m prime to p. psi is the residue-normalized character of conductor n_psi
// with scaling w_psi; c = c_unit * pi^{1+n_psi}.
MinimalWResult minimal_w(const UIsotropicDatum& u, long n_psi, long w_psi, long c_unit,
                         const ScaledCyclotomic& lambda_EF);

struct CosetCheck {
    bool pass;
    std::pair<long, long> ratio;  // candidate^d / (lambda * W(chi_K)) as zeta_n^k
    long modulus;                 // d for odd d, lcm(4, d) for even d
};
// checks candidate^d = lambda_{K/F} * W(chi_K) up to the stated coset
CosetCheck invariant_mod_roots(const ScaledCyclotomic& w_chi_k, long d,
                               const ScaledCyclotomic& lambda_kf, const ScaledCyclotomic& candidate);

// W(rho, psi) = W(chi_F, psi)^m * det(rho_0)(c) for a(chi_F) >= 2
ScaledCyclotomic deligne_henniart_w(const LocalMultChar& chi_f, long m,
                                    const Cyclotomic& det_rho0_at_c, const LocalAdditiveChar& psi);

struct DimGate {
    long p_part;        // p^n
    long tame_part;     // d'
    bool tame_divides;  // d' | q-1
    bool dim_divides;   // dim | q-1
};
DimGate dim_gate(long q, long dim);

}  // namespace lc
