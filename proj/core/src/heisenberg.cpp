#include <localconst/errors.hpp>
#include <localconst/heisenberg.hpp>

#include <algorithm>
#include <set>

namespace lc {

// ---- subgroup characters -----------------------------------------------------------

long SubgroupChar::exponent_at(int x) const {
    auto it = std::lower_bound(h.begin(), h.end(), x);
    require(it != h.end() && *it == x, "NotSubgroup", "character evaluated outside its subgroup");
    return exps[static_cast<size_t>(it - h.begin())];
}

SubgroupChar SubgroupChar::rescaled(long new_modulus) const {
    require(new_modulus % modulus == 0, "InvalidOrder", "modulus must grow by a multiple");
    SubgroupChar c{h, new_modulus, exps};
    long f = new_modulus / modulus;
    for (auto& e : c.exps) e = mod_l(e * f, new_modulus);
    return c;
}

// ---- datum -------------------------------------------------------------------------

HeisenbergDatum HeisenbergDatum::make(FiniteGroup g, Subgroup z, long modulus,
                                      std::vector<long> exps) {
    require(is_subgroup(g, z), "NotSubgroup", "Z must be a subgroup");
    require(is_normal(g, z), "NotSubgroup", "Z must be normal");
    require(exps.size() == z.size(), "InvalidCharacter", "character values must match Z");
    SubgroupChar chi{z, modulus, std::move(exps)};
    for (auto& e : chi.exps) e = mod_l(e, modulus);
    // homomorphism on Z
    for (size_t i = 0; i < z.size(); ++i)
        for (size_t j = 0; j < z.size(); ++j)
            require(chi.exponent_at(g.mul(z[i], z[j])) ==
                        mod_l(chi.exps[i] + chi.exps[j], modulus),
                    "InvalidCharacter", "chi_Z is not a homomorphism");
    // G-invariance
    for (int x = 0; x < g.order(); ++x)
        for (size_t i = 0; i < z.size(); ++i) {
            int c = g.conjugate(x, z[i]);
            require(contains(z, c), "NotSubgroup", "Z is not normal");
            require(chi.exponent_at(c) == chi.exps[i], "NotInvariant",
                    "chi_Z is not G-invariant");
        }

    HeisenbergDatum d;
    d.gz = quotient(g, z);
    // commutators must land in Z (G/Z abelian)
    require(d.gz.group.is_abelian(), "NotSquareIndex", "G/Z must be abelian");
    int qn = d.gz.group.order();
    std::vector<long> xe(static_cast<size_t>(qn) * qn);
    for (int i = 0; i < qn; ++i)
        for (int j = 0; j < qn; ++j) {
            int c = g.comm(d.gz.reps[i], d.gz.reps[j]);
            require(contains(z, c), "NotSubgroup", "commutators escape Z");
            xe[static_cast<size_t>(i) * qn + j] = chi.exponent_at(c);
        }
    d.x = AltBichar::make(d.gz.group, modulus, std::move(xe));
    require(d.x.nondegenerate(), "Degenerate", "the commutator pairing is degenerate");
    long dim2 = qn;
    long dim = 0;
    while (dim * dim < dim2) ++dim;
    require(dim * dim == dim2, "NotSquareIndex", "[G:Z] must be a perfect square");
    d.dim = dim;
    d.g = std::move(g);
    d.z = std::move(z);
    d.chi_z = std::move(chi);
    return d;
}

std::vector<Subgroup> maximal_isotropics_lifted(const HeisenbergDatum& d) {
    const FiniteGroup& q = d.gz.group;
    std::set<Subgroup> found;
    auto consider = [&](std::vector<int> gens) {
        Subgroup h = subgroup_generated(q, std::move(gens));
        if (static_cast<long>(h.size()) * static_cast<long>(h.size()) != q.order()) return;
        for (int a : h)
            for (int b : h)
                if (d.x.exponent(a, b) != 0) return;
        found.insert(std::move(h));
    };
    for (int a = 0; a < q.order(); ++a) {
        consider({a});
        for (int b = a + 1; b < q.order(); ++b) consider({a, b});
    }
    std::vector<Subgroup> lifted;
    for (const auto& hq : found) {
        Subgroup h;
        for (int x = 0; x < d.g.order(); ++x)
            if (contains(hq, d.gz.proj[x])) h.push_back(x);
        lifted.push_back(std::move(h));
    }
    return lifted;
}

SubgroupChar extend_central_char(const HeisenbergDatum& d, const Subgroup& h) {
    const FiniteGroup& g = d.g;
    // H/Z with its invariant-factor generators
    std::vector<int> hz_idx;
    FiniteGroup hg = subgroup_as_group(g, h, &hz_idx);
    std::vector<int> z_in_h;
    for (int z : d.z) z_in_h.push_back(hz_idx[z]);
    std::sort(z_in_h.begin(), z_in_h.end());
    Quotient hq = quotient(hg, z_in_h);
    ElementaryDivisors ed = elementary_divisors(hq.group);

    long big = d.chi_z.modulus;
    for (long f : ed.factors) big = lcm_l(big, f * d.chi_z.modulus);
    SubgroupChar chi;
    chi.modulus = big;
    // start from chi_Z on Z
    std::vector<int> span = d.z;
    std::vector<long> expo(g.order(), -1);
    long scale = big / d.chi_z.modulus;
    for (size_t i = 0; i < d.z.size(); ++i) expo[d.z[i]] = mod_l(d.chi_z.exps[i] * scale, big);

    for (size_t bi = 0; bi < ed.basis.size(); ++bi) {
        // lift the generator of H/Z back to H (least representative)
        int gen_h = hq.reps[ed.basis[bi]];
        int gen = h[gen_h];
        if (expo[gen] >= 0) continue;
        // least t with gen^t already in the span
        long t = 1;
        int pw = gen;
        while (expo[pw] < 0) {
            pw = g.mul(pw, gen);
            ++t;
        }
        long c = expo[pw];  // chi(gen^t) so far
        // least exponent e with t e = c (mod big)
        long gcd = gcd_l(t, big);
        require(c % gcd == 0, "InvalidCharacter", "central character does not extend");
        long e0 = -1;
        for (long e = 0; e < big; ++e)
            if (mod_l(t * e, big) == c) {
                e0 = e;
                break;
            }
        require(e0 >= 0, "InvalidCharacter", "no extension exponent found");
        // extend the span
        std::vector<int> new_span;
        std::vector<long> cur = expo;
        for (long j = 0; j < t; ++j) {
            for (int s : span) {
                int x = g.mul(g.pow(gen, j), s);
                cur[x] = mod_l(j * e0 + expo[s], big);
            }
        }
        expo = std::move(cur);
        std::vector<int> grown;
        for (int x = 0; x < g.order(); ++x)
            if (expo[x] >= 0) grown.push_back(x);
        span = std::move(grown);
    }
    require(span.size() == h.size(), "InternalError", "extension did not reach H");
    chi.h = h;
    chi.exps.reserve(h.size());
    for (int x : h) chi.exps.push_back(expo[x]);
    // verify multiplicativity
    for (int a : h)
        for (int b : h)
            require(chi.exponent_at(g.mul(a, b)) ==
                        mod_l(chi.exponent_at(a) + chi.exponent_at(b), big),
                    "InternalError", "extension is not a homomorphism");
    return chi;
}

std::vector<SubgroupChar> all_extensions(const HeisenbergDatum& d, const Subgroup& h) {
    SubgroupChar base = extend_central_char(d, h);
    const FiniteGroup& g = d.g;
    std::vector<int> hz_idx;
    FiniteGroup hg = subgroup_as_group(g, h, &hz_idx);
    std::vector<int> z_in_h;
    for (int z : d.z) z_in_h.push_back(hz_idx[z]);
    std::sort(z_in_h.begin(), z_in_h.end());
    Quotient hq = quotient(hg, z_in_h);
    ElementaryDivisors ed = elementary_divisors(hq.group);

    long big = base.modulus;
    for (long f : ed.factors) big = lcm_l(big, f);
    base = base.rescaled(big);

    // coordinates of every element of H/Z in the invariant-factor basis
    size_t nb = ed.basis.size();
    std::vector<std::vector<long>> coords(hq.group.order());
    std::vector<long> tuple(nb, 0);
    while (true) {
        int acc = 0;
        for (size_t bi = 0; bi < nb; ++bi) acc = hq.group.mul(acc, hq.group.pow(ed.basis[bi], tuple[bi]));
        coords[acc] = tuple;
        long i = static_cast<long>(nb) - 1;
        while (i >= 0 && tuple[i] == ed.factors[i] - 1) tuple[i--] = 0;
        if (i < 0) break;
        ++tuple[i];
    }

    std::vector<SubgroupChar> out;
    std::vector<long> idx(nb, 0);
    while (true) {
        SubgroupChar chi = base;
        for (size_t i = 0; i < h.size(); ++i) {
            const auto& coord = coords[hq.proj[hz_idx[h[i]]]];
            long add = 0;
            for (size_t bi = 0; bi < nb; ++bi)
                add = mod_l(add + idx[bi] * (big / ed.factors[bi]) % big * coord[bi], big);
            chi.exps[i] = mod_l(chi.exps[i] + add, big);
        }
        out.push_back(std::move(chi));
        long i = static_cast<long>(nb) - 1;
        while (i >= 0 && idx[i] == ed.factors[i] - 1) idx[i--] = 0;
        if (i < 0) break;
        ++idx[i];
    }
    return out;
}

MonomialRep build_rho(const HeisenbergDatum& d, std::optional<Subgroup> h_choice,
                      std::optional<SubgroupChar> chi_h_choice) {
    Subgroup h;
    if (h_choice) {
        h = *h_choice;
    } else {
        Subgroup hq = maximal_isotropic(d.x);
        for (int x = 0; x < d.g.order(); ++x)
            if (contains(hq, d.gz.proj[x])) h.push_back(x);
    }
    SubgroupChar chi_h = chi_h_choice ? *chi_h_choice : extend_central_char(d, h);

    MonomialRep rep;
    rep.g = d.g;
    rep.h = h;
    rep.chi_h = chi_h;
    rep.modulus = chi_h.modulus;
    std::vector<int> t = left_transversal(d.g, h);
    rep.dim = static_cast<long>(t.size());
    require(rep.dim == d.dim, "InternalError", "isotropic lift has the wrong index");

    std::vector<int> coset(d.g.order(), -1);
    for (size_t i = 0; i < t.size(); ++i)
        for (int hh : h) coset[d.g.mul(t[i], hh)] = static_cast<int>(i);

    rep.images.resize(d.g.order());
    for (int x = 0; x < d.g.order(); ++x) {
        MonomialMatrix m;
        m.row_of.resize(t.size());
        m.expo.resize(t.size());
        for (size_t j = 0; j < t.size(); ++j) {
            int xt = d.g.mul(x, t[j]);
            int i = coset[xt];
            m.row_of[j] = i;
            m.expo[j] = chi_h.exponent_at(d.g.mul(d.g.inv(t[i]), xt));
        }
        rep.images[x] = std::move(m);
    }
    return rep;
}

Cyclotomic MonomialRep::trace(int x) const {
    const MonomialMatrix& m = images[x];
    Cyclotomic tr{Rat(0)};
    for (size_t j = 0; j < m.row_of.size(); ++j)
        if (m.row_of[j] == static_cast<int>(j)) tr += Cyclotomic::zeta(modulus, m.expo[j]);
    return tr;
}

namespace {
int permutation_sign(const std::vector<int>& perm) {
    std::vector<char> seen(perm.size(), 0);
    int transpositions = 0;
    for (size_t j = 0; j < perm.size(); ++j) {
        if (seen[j]) continue;
        int len = 0;
        size_t cur = j;
        while (!seen[cur]) {
            seen[cur] = 1;
            cur = static_cast<size_t>(perm[cur]);
            ++len;
        }
        transpositions += len - 1;
    }
    return transpositions % 2 ? -1 : 1;
}
}  // namespace

Cyclotomic det_brute(const MonomialRep& rep, int x) {
    const MonomialMatrix& m = rep.images[x];
    long total = 0;
    for (long e : m.expo) total = mod_l(total + e, rep.modulus);
    Cyclotomic det = Cyclotomic::zeta(rep.modulus, total);
    return permutation_sign(m.row_of) < 0 ? -det : det;
}

namespace {

// the reduction mod Ker(chi_Z) shared by every det_invariant evaluation
struct InvariantDetData {
    Quotient q0;
    Subgroup zb;
    SubgroupChar chib;
    long rk2;
    Subgroup g2z;
};

InvariantDetData invariant_det_data(const HeisenbergDatum& d) {
    InvariantDetData out;
    Subgroup k0;
    for (size_t i = 0; i < d.z.size(); ++i)
        if (d.chi_z.exps[i] == 0) k0.push_back(d.z[i]);
    out.q0 = quotient(d.g, k0);
    for (int z : d.z) out.zb.push_back(out.q0.proj[z]);
    std::sort(out.zb.begin(), out.zb.end());
    out.zb.erase(std::unique(out.zb.begin(), out.zb.end()), out.zb.end());

    out.chib.h = out.zb;
    out.chib.modulus = d.chi_z.modulus;
    out.chib.exps.assign(out.zb.size(), 0);
    for (size_t i = 0; i < d.z.size(); ++i) {
        auto it = std::lower_bound(out.zb.begin(), out.zb.end(), out.q0.proj[d.z[i]]);
        out.chib.exps[static_cast<size_t>(it - out.zb.begin())] = d.chi_z.exps[i];
    }
    out.rk2 = elementary_divisors(d.gz.group).two_rank;
    if (out.rk2 == 2) out.g2z = squares_times(out.q0.group, out.zb);
    return out;
}

Cyclotomic invariant_det_eval(const HeisenbergDatum& d, const InvariantDetData& data, int x) {
    const FiniteGroup& gb = data.q0.group;
    int xb = data.q0.proj[x];
    int xd = gb.pow(xb, d.dim);
    require(contains(data.zb, xd), "GdNotInZ", "x^dim is not central after the reduction");
    Cyclotomic v = data.chib.value_at(xd);
    if (data.rk2 == 2 && !contains(data.g2z, xb)) v = -v;
    return v;
}

}  // namespace

Cyclotomic det_invariant(const HeisenbergDatum& d, int x) {
    return invariant_det_eval(d, invariant_det_data(d), x);
}

std::vector<Cyclotomic> det_invariant_table(const HeisenbergDatum& d) {
    InvariantDetData data = invariant_det_data(d);
    std::vector<Cyclotomic> out;
    out.reserve(d.g.order());
    for (int x = 0; x < d.g.order(); ++x) out.push_back(invariant_det_eval(d, data, x));
    return out;
}

Cyclotomic gallagher_det(const MonomialRep& rep, int x) {
    // Delta_H^G(x) is the sign of x acting on the cosets
    int tr = transfer(rep.g, rep.h, x);
    Cyclotomic v = rep.chi_h.value_at(tr);
    return permutation_sign(rep.images[x].row_of) < 0 ? -v : v;
}

// ---- U-isotropic layer ----------------------------------------------------------------

Cyclotomic x_eta_eval(const FFMultChar& eta, long a, long e1, long b, long e2) {
    long q1 = eta.field->q() - 1;
    long e = mod_l(mul_mod(mod_l(b, q1), eta.exponent(e1), q1) -
                       mul_mod(mod_l(a, q1), eta.exponent(e2), q1),
                   q1);
    return Cyclotomic::zeta(q1, e);
}

RadicalDescriptor x_eta_radical(const FFMultChar& eta) {
    RadicalDescriptor r;
    r.pi_exponent = eta.order();
    for (long x = 1; x < eta.field->q(); ++x)
        if (eta.exponent(x) == 0) r.eta_kernel.push_back(x);
    return r;
}

ConductorData conductors(long p, long m, long a_eta, long d_EF, long d_KF, long f_E1F) {
    require(m >= 1 && a_eta >= 1, "InconsistentExtensionData", "need m >= 1 and a(eta) >= 1");
    require(f_E1F == m, "InconsistentExtensionData", "E_1/F must be unramified of degree m");
    // K/E is unramified, so d_{K/F} = d_{E/F}
    require(d_EF == d_KF, "InconsistentExtensionData", "d_{K/F} must equal d_{E/F}");
    if (gcd_l(m, p) == 1) {
        require(d_EF == m - 1, "InconsistentExtensionData",
                "tame extensions have d = e - 1 = m - 1");
    } else {
        require(d_EF >= m - 1, "InconsistentExtensionData", "different exponent too small");
    }
    ConductorData c;
    c.sw = m * (a_eta - 1);
    c.a_rho = m * a_eta;
    c.a_chi_E = m * a_eta - d_EF;
    c.a_chi_E1 = a_eta;
    c.a_chi_K = m * a_eta - d_KF;
    c.dim_divides_a_rho = c.a_rho % m == 0;
    return c;
}

long twisted_conductor(long m, long a_eta, long a_chi_F) {
    require(a_chi_F > a_eta, "PreconditionViolated",
            "the twist formula needs a(chi_F) > a(rho_0)/dim");
    return m * a_chi_F;
}

long m_primary_part(long m, long q_minus_1) {
    long r = 1;
    for (long l = 2; l * l <= m; ++l)
        if (m % l == 0) {
            while (m % l == 0) m /= l;
            long n = q_minus_1;
            while (n % l == 0) {
                n /= l;
                r *= l;
            }
        }
    if (m > 1) {
        long n = q_minus_1;
        while (n % m == 0) {
            n /= m;
            r *= m;
        }
    }
    return r;
}

MinimalWResult minimal_w(const UIsotropicDatum& u, long n_psi, long w_psi, long c_unit,
                         const ScaledCyclotomic& lambda_EF) {
    const FqField& k = *u.k;
    long m = u.m();
    require((k.q() - 1) % m == 0 && m % k.p() != 0, "DimensionNotTame",
            "minimal W needs gcd(m, p) = 1 and m | q - 1");
    require(u.theta.unit.field == &k && u.delta.unit.field == &k && u.det_rho.unit.field == &k,
            "MissingCharacterData", "all residue characters must live on k_F");
    // a(chi_K) = 1 forces a nontrivial residue character
    require(!u.theta.unit.is_trivial(), "MissingCharacterData",
            "theta must be nontrivial for a minimal-conductor datum");
    // Delta is quadratic or trivial, matching the parity of m
    require(mod_l(2 * u.delta.unit.k, k.q() - 1) == 0, "MissingCharacterData",
            "Delta must be quadratic or trivial");
    if (m % 2 == 1) {
        require(u.delta.unit.is_trivial(), "MissingCharacterData", "Delta is trivial for odd m");
    } else {
        require(!u.delta.unit.is_trivial(), "MissingCharacterData",
                "Delta restricts to the quadratic residue character for even m");
    }
    // det(rho) = Delta * theta on units
    require(mod_l(u.det_rho.unit.k - u.delta.unit.k - u.theta.unit.k, k.q() - 1) == 0,
            "MissingCharacterData", "det(rho) must equal Delta * theta on units");
    require(c_unit != 0, "MissingCharacterData", "c unit must be a residue unit");

    long m_bar = mod_l(m, k.p());  // m as a residue element (prime subfield)
    long shift = k.mul(w_psi, k.mul(k.inv(c_unit), m_bar));
    ScaledCyclotomic sum = gauss_sum(u.theta.unit.inverse(), shift);
    Cyclotomic det_c = u.det_rho.eval(1 + n_psi, c_unit);
    MinimalWResult out;
    out.l = (det_c * sum).scaled_by_half_power(k.q(), -1);
    out.r = ScaledCyclotomic(u.delta.eval(1 + n_psi, c_unit)) * lambda_EF;
    out.w = out.r * out.l;
    return out;
}

CosetCheck invariant_mod_roots(const ScaledCyclotomic& w_chi_k, long d,
                               const ScaledCyclotomic& lambda_kf,
                               const ScaledCyclotomic& candidate) {
    CosetCheck out;
    out.modulus = d % 2 == 1 ? d : lcm_l(4, d);
    ScaledCyclotomic ratio = candidate.pow(d) / (lambda_kf * w_chi_k);
    auto ru = ratio.as_root_of_unity();
    require(ru.has_value(), "NotARoot", "W(rho)^d / (lambda W(chi_K)) is not a root of unity");
    out.ratio = *ru;
    out.pass = out.modulus % ru->second == 0;
    return out;
}

ScaledCyclotomic deligne_henniart_w(const LocalMultChar& chi_f, long m,
                                    const Cyclotomic& det_rho0_at_c,
                                    const LocalAdditiveChar& psi) {
    require(chi_f.a >= 2, "ConductorTooSmall", "the Deligne-Henniart route needs a(chi_F) >= 2");
    // the Deligne element c must exist (same search as the twisting formula)
    (void)find_c_unit(chi_f, psi, chi_f.a / 2, "NoValidC");
    ScaledCyclotomic base = epsilon_sum(chi_f, psi).value.pow(m);
    ScaledCyclotomic out = ScaledCyclotomic(det_rho0_at_c) * base;
    // consistency: twisting chi_F by a character of F^x/(F^x)^m keeps W^m
    long p = chi_f.F.p;
    if (p != 2 && m % 2 == 0) {
        LocalMultChar chi = LocalMultChar::tame(chi_f.F, (p - 1) / 2, Cyclotomic(Rat(1)));
        ScaledCyclotomic twisted = epsilon_sum(chi.times(chi_f), psi).value.pow(m);
        require(twisted == base, "InternalError", "W(chi chi_F)^m deviates from W(chi_F)^m");
    }
    return out;
}

DimGate dim_gate(long q, long dim) {
    auto pp = as_prime_power(q);
    require(static_cast<bool>(pp), "InvalidPrime", "q must be a prime power");
    DimGate g;
    g.p_part = 1;
    long d = dim;
    while (d % pp.p == 0) {
        d /= pp.p;
        g.p_part *= pp.p;
    }
    g.tame_part = d;
    g.tame_divides = (q - 1) % g.tame_part == 0;
    g.dim_divides = (q - 1) % dim == 0;
    return g;
}

}  // namespace lc
