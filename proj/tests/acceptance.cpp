// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <localconst/epsilon.hpp>
#include <localconst/errors.hpp>
#include <localconst/heisenberg.hpp>
#include <localconst/lambda.hpp>

#include "tame_uisotropic_helpers.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <vector>

using namespace lc;

namespace {

const ScaledCyclotomic kOne{Rat(1)};

bool criterion_q2_table() {
    auto table = lambda_q2_table();
    std::vector<long> d_order = {5, -1, -5, 2, 10, -2, -10};
    std::vector<ScaledCyclotomic> expect = {
        kOne, ScaledCyclotomic(Cyclotomic::zeta(4)), ScaledCyclotomic(Cyclotomic::zeta(4)),
        kOne, -kOne, ScaledCyclotomic(Cyclotomic::zeta(4)), ScaledCyclotomic(Cyclotomic::zeta(4, 3))};
    for (size_t i = 0; i < 7; ++i) {
        if (table.rows[i].d != d_order[i]) return false;
        if (!table.rows[i].lambda.value.same_value(expect[i])) return false;
    }
    return table.product_pass && table.all_pass;
}

bool criterion_quadratic_gauss() {
    for (long q = 3; q <= 2000; q += 2) {
        auto pp = as_prime_power(q);
        if (!pp || pp.p == 2) continue;
        const FqField& f = FqField::get(pp.p, pp.s);
        if (!gauss_sum(FFMultChar::quadratic(f)).same_value(quadratic_gauss_closed_form(pp.p, pp.s)))
            return false;
    }
    return true;
}

bool criterion_davenport_hasse() {
    // lifts of degree s >= 2 with q^s <= 3000 (s = 1 is the identity)
    for (long q = 2; q <= 54; ++q) {
        auto pp = as_prime_power(q);
        if (!pp) continue;
        const FqField& f = FqField::get(pp.p, pp.s);
        for (long s = 2;; ++s) {
            double size = 1;
            for (long i = 0; i < s; ++i) size *= static_cast<double>(q);
            if (size > 3000) break;
            for (long k = 0; k < q - 1; ++k)
                if (!lift_and_check_davenport_hasse({&f, k}, s).equal) return false;
        }
    }
    return true;
}

bool criterion_functional_equation() {
    for (long p : {2L, 3L, 5L}) {
        auto psi = LocalAdditiveChar::canonical_qp(p);
        for (auto chi : enumerate_qp_unit_chars(p, 4)) {
            for (int twist = 0; twist < 2; ++twist) {
                if (twist) chi.value_on_pi = Cyclotomic::zeta(4);
                auto rep = check_functional_equation(chi, psi);
                if (!rep.equal) return false;
                auto w = epsilon_sum(chi, psi).value;
                if (!(w * w.conj()).same_value(kOne)) return false;
            }
        }
    }
    return true;
}

bool criterion_lamprecht_tate() {
    for (long p : {2L, 3L, 5L}) {
        auto psi = LocalAdditiveChar::canonical_qp(p);
        for (const auto& chi : enumerate_qp_unit_chars(p, 6)) {
            if (chi.a == 0) continue;
            auto full = epsilon_sum(chi, psi).value;
            for (long m = 0; 2 * m <= chi.a; ++m)
                if (!(lamprecht_tate(chi, psi, m).value == full)) return false;
            if (chi.a >= 2) {
                // the closed forms for even and odd conductors
                long d = chi.a / 2;
                long w = find_c_unit(chi, psi, d);
                Rat c = Rat(w) * rat_pow(Rat(p), chi.a);
                ScaledCyclotomic chi_c{chi.value_on_pi.pow(chi.a) * chi.eval_unit(w)};
                ScaledCyclotomic closed = chi_c * ScaledCyclotomic(psi.eval_qp(Rat(1) / c));
                if (chi.a % 2 == 1) {
                    long pd = 1;
                    for (long i = 0; i < d; ++i) pd *= p;
                    long pa = pd * pd * p;
                    Cyclotomic sum{Rat(0)};
                    for (long t = 0; t < p; ++t) {
                        long x = t * pd;
                        sum += chi.inverse().eval_unit(mod_l(1 + x, pa)) * psi.eval_qp(Rat(x) / c);
                    }
                    closed = closed * ScaledCyclotomic(p, -1, sum);
                }
                if (!(full == closed)) return false;
            }
        }
    }
    return true;
}

bool criterion_tame_lambda() {
    // closed form vs residue Gauss sum, all odd prime powers q <= 1000
    for (long q = 3; q <= 1000; q += 2) {
        auto pp = as_prime_power(q);
        if (!pp || pp.p == 2) continue;
        auto F = pp.s == 1 ? LocalFieldDesc::qp(pp.p) : LocalFieldDesc::make(pp.p, 1, pp.s, 0);
        if (!lambda_tame_quadratic(F, TamePsiChoice::conductor_minus_one)
                 .value.same_value(lambda_tame_quadratic_gauss(F).value))
            return false;
        // Lemma 4.6 sign
        auto k4 = lambda_klein4(q).value;
        if (!(k4 == (q % 4 == 1 ? -kOne : kOne))) return false;
    }
    // the sign-table relations over odd prime powers q <= 200, both psi parities
    for (long q = 3; q <= 200; q += 2) {
        auto pp = as_prime_power(q);
        if (!pp || pp.p == 2) continue;
        auto F = pp.s == 1 ? LocalFieldDesc::qp(pp.p) : LocalFieldDesc::make(pp.p, 1, pp.s, 0);
        long half = (q - 1) / 2;
        for (long n : {-1L, 0L}) {  // odd and even conductors of psi
            auto psi = LocalAdditiveChar::residue_normalized(F, n, 1);
            auto l1 = epsilon_sum(LocalMultChar::unramified(F, Cyclotomic(Rat(-1))), psi).value;
            auto l2 = epsilon_sum(LocalMultChar::tame(F, half, Cyclotomic(Rat(1))), psi).value;
            auto l3 = epsilon_sum(LocalMultChar::tame(F, half, Cyclotomic(Rat(-1))), psi).value;
            if (!(l1 == (mod_l(n, 2) == 0 ? kOne : -kOne))) return false;
            if (!(l1 * l3 == -l2) || !(l1 * l2 == -l3)) return false;
            if (!(l1 * l2 * l3).same_value(lambda_klein4(q).value)) return false;
            bool row;
            ScaledCyclotomic i{Cyclotomic::zeta(4)};
            if (q % 4 == 1 && mod_l(n, 2) == 0)
                row = (l2.same_value(kOne) && l3.same_value(-kOne)) ||
                      (l2.same_value(-kOne) && l3.same_value(kOne));
            else if (q % 4 == 1)
                row = l2 == l3 && (l2 * l2).same_value(kOne);
            else if (mod_l(n, 2) == 0)
                row = (l2.same_value(i) && l3.same_value(i.conj())) ||
                      (l2.same_value(i.conj()) && l3.same_value(i));
            else
                row = l2 == l3 && (l2 * l2).same_value(-kOne);
            if (!row) return false;
        }
    }
    return true;
}

HeisenbergDatum central_datum(FiniteGroup g, long k) {
    Subgroup z = center(g);
    FiniteGroup zg = subgroup_as_group(g, z);
    long c = zg.order();
    int gen = -1;
    for (int x = 0; x < zg.order(); ++x)
        if (zg.element_order(x) == c) {
            gen = x;
            break;
        }
    std::vector<long> exps(z.size(), 0);
    for (size_t i = 0; i < z.size(); ++i) {
        int x = 0;
        for (long j = 0; j < c; ++j) {
            if (x == static_cast<int>(i)) {
                exps[i] = mod_l(j * k, c);
                break;
            }
            x = zg.mul(x, gen);
        }
    }
    return HeisenbergDatum::make(std::move(g), std::move(z), c, std::move(exps));
}

bool criterion_det_triangle() {
    struct Entry {
        FiniteGroup g;
        long chis;
        bool det_trivial;  // expected det == 1 everywhere
    };
    std::vector<Entry> entries;
    entries.push_back({FiniteGroup::dihedral8(), 1, false});
    entries.push_back({FiniteGroup::quaternion8(), 1, false});
    entries.push_back({FiniteGroup::heisenberg_p(3), 2, true});
    entries.push_back({FiniteGroup::extraspecial_p2(3), 2, false});
    entries.push_back({FiniteGroup::heisenberg_p(5), 4, true});
    entries.push_back({FiniteGroup::extraspecial_p2(5), 4, false});
    for (auto& e : entries) {
        for (long k = 1; k <= e.chis; ++k) {
            auto d = central_datum(e.g, k);
            auto inv = det_invariant_table(d);
            bool trivial = true;
            for (const auto& h : maximal_isotropics_lifted(d)) {
                auto rho = build_rho(d, h);
                for (int x = 0; x < d.g.order(); ++x) {
                    Cyclotomic b = det_brute(rho, x);
                    if (!(b == inv[x]) || !(b == gallagher_det(rho, x))) return false;
                    if (!(b == Cyclotomic(Rat(1)))) trivial = false;
                }
            }
            if (trivial != e.det_trivial) return false;
        }
    }
    // the D8 sign pattern: det(g) = chi(g^2) on G^2 Z, -chi(g^2) off it
    auto d8 = central_datum(FiniteGroup::dihedral8(), 1);
    auto rho8 = build_rho(d8);
    Subgroup g2z = squares_times(d8.g, d8.z);
    for (int x = 0; x < 8; ++x) {
        Cyclotomic expect = d8.chi_z.value_at(d8.g.mul(x, x));
        if (!contains(g2z, x)) expect = -expect;
        if (!(det_brute(rho8, x) == expect)) return false;
    }
    return true;
}

bool subgroup_is_abelian(const FiniteGroup& g, const Subgroup& h) {
    for (int a : h)
        for (int b : h)
            if (g.mul(a, b) != g.mul(b, a)) return false;
    return true;
}

std::vector<Subgroup> subgroups_over_commutator(const FiniteGroup& g) {
    Subgroup comm = commutator_subgroup(g);
    std::set<Subgroup> out;
    out.insert(comm);
    for (int a = 0; a < g.order(); ++a) {
        std::vector<int> base(comm.begin(), comm.end());
        base.push_back(a);
        out.insert(subgroup_generated(g, base));
        for (int b = a + 1; b < g.order(); ++b) {
            auto gens = base;
            gens.push_back(b);
            out.insert(subgroup_generated(g, gens));
        }
    }
    return {out.begin(), out.end()};
}

bool criterion_transfer_laws() {
    std::vector<FiniteGroup> catalogue;
    catalogue.push_back(FiniteGroup::dihedral8());
    catalogue.push_back(FiniteGroup::quaternion8());
    catalogue.push_back(FiniteGroup::heisenberg_p(3));
    catalogue.push_back(FiniteGroup::extraspecial_p2(3));
    catalogue.push_back(FiniteGroup::heisenberg_p(5));
    catalogue.push_back(FiniteGroup::extraspecial_p2(5));
    catalogue.push_back(FiniteGroup::direct_product(FiniteGroup::dihedral8(), FiniteGroup::cyclic(2)));
    catalogue.push_back(FiniteGroup::direct_product(FiniteGroup::heisenberg_p(3), FiniteGroup::cyclic(2)));
    catalogue.push_back(FiniteGroup::symmetric3());

    for (const auto& g : catalogue) {
        // Furtwangler: T_{G/[G,G]} is trivial
        Subgroup comm = commutator_subgroup(g);
        for (int x = 0; x < g.order(); ++x)
            if (!equal_mod_derived(g, comm, transfer(g, comm, x), 0)) return false;
        if (!derived_data(g).is_two_step_nilpotent) continue;
        if (g.order() > 128) continue;
        Subgroup zg = center(g);
        for (const auto& h : subgroups_over_commutator(g)) {
            if (!subgroup_is_abelian(g, h)) continue;
            long d = g.order() / static_cast<long>(h.size());
            for (int x = 0; x < g.order(); ++x) {
                int t = transfer(g, h, x);
                // Lemma 2.10(iii): the correcting element is central of order <= 2
                int corr = g.mul(t, g.inv(g.pow(x, d)));
                if (!contains(zg, corr) || g.mul(corr, corr) != 0) return false;
                // Lemma 2.2: T(g) = g^d for odd d
                if (d % 2 == 1 && !equal_mod_derived(g, h, t, g.pow(x, d))) return false;
            }
        }
    }
    return true;
}

bool criterion_bicyclic() {
    for (long m = 1; m <= 12; ++m) {
        auto g = FiniteGroup::abelian({m, m});
        auto counts = bicyclic_counts(m);
        long order_m = 0;
        std::set<Subgroup> cyclic_m;
        for (int x = 0; x < g.order(); ++x)
            if (g.element_order(x) == m) {
                ++order_m;
                cyclic_m.insert(subgroup_generated(g, {x}));
            }
        if (order_m != counts.order_m_elements) return false;
        if (static_cast<long>(cyclic_m.size()) != counts.psi) return false;
        if (m > 1) {
            Subgroup b = subgroup_generated(g, {1});
            long complements = 0;
            for (const auto& c : cyclic_m) {
                Subgroup meet;
                for (int x : c)
                    if (contains(b, x)) meet.push_back(x);
                if (meet.size() == 1) ++complements;
            }
            if (complements != counts.complements) return false;
        }
    }
    return true;
}

bool criterion_miller() {
    // all abelian groups of order <= 64 via invariant-factor chains
    std::vector<std::vector<long>> shapes;
    std::function<void(long, long, std::vector<long>&)> gen = [&](long max_total, long min_f,
                                                                  std::vector<long>& cur) {
        if (!cur.empty()) shapes.push_back(cur);
        for (long f = min_f; f <= max_total; ++f) {
            if (f < 2) continue;
            long remaining = max_total / f;
            if (remaining < 1) break;
            // the next factor must be a multiple of every previous one
            if (!cur.empty() && f % cur.back() != 0) continue;
            cur.push_back(f);
            gen(remaining, f, cur);
            cur.pop_back();
        }
    };
    std::vector<long> cur;
    gen(64, 2, cur);
    for (const auto& shape : shapes) {
        auto g = FiniteGroup::abelian(shape);
        int cnt = 0, t = 0;
        for (int x = 1; x < g.order(); ++x)
            if (g.mul(x, x) == 0) {
                ++cnt;
                t = x;
            }
        if (miller_product(g) != (cnt == 1 ? t : 0)) return false;
    }
    return true;
}

bool criterion_u_isotropic() {
    for (long q = 3; q <= 13; ++q) {
        auto pp = as_prime_power(q);
        if (!pp) continue;
        const FqField& k = FqField::get(pp.p, pp.s);
        for (long ki = 1; ki < q - 1; ++ki) {
            FFMultChar eta{&k, ki};
            long m = eta.order();
            // alternating, antisymmetric, and the normalizations
            for (long a = 0; a < 3; ++a)
                for (long e1 = 1; e1 < q; ++e1) {
                    if (!(x_eta_eval(eta, a, e1, a, e1) == Cyclotomic(Rat(1)))) return false;
                    if (!(x_eta_eval(eta, 0, e1, 1, 1) == eta.value(e1))) return false;
                    for (long b = 0; b < 3; ++b)
                        for (long e2 = 1; e2 < q; e2 += 2) {
                            auto xy = x_eta_eval(eta, a, e1, b, e2);
                            auto yx = x_eta_eval(eta, b, e2, a, e1);
                            if (!(xy * yx == Cyclotomic(Rat(1)))) return false;
                        }
                }
            auto rad = x_eta_radical(eta);
            if (rad.pi_exponent != m) return false;
            if (static_cast<long>(rad.eta_kernel.size()) != (q - 1) / m) return false;
            // dim = #eta through the radical index
            if (rad.pi_exponent * ((q - 1) / static_cast<long>(rad.eta_kernel.size())) != m * m)
                return false;
        }
    }
    // conductor formulas on a tame grid, both routes
    for (long p : {3L, 5L, 7L}) {
        for (long m = 1; m <= 6; ++m) {
            if (m % p == 0) continue;
            for (long a_eta = 1; a_eta <= 3; ++a_eta) {
                auto c = conductors(p, m, a_eta, m - 1, m - 1, m);
                if (c.a_rho != m * a_eta || c.sw != m * (a_eta - 1)) return false;
                // route through E: f = 1, dim = 1
                if (c.a_rho != (m - 1) + c.a_chi_E) return false;
                // route through E1: f = m, d = 0
                if (c.a_rho != m * c.a_chi_E1) return false;
                // route through K: m * a_F(rho) = f (d dim + a)
                if (m * c.a_rho != m * ((m - 1) + c.a_chi_K)) return false;
                if (!c.dim_divides_a_rho) return false;
            }
        }
    }
    // minimal W: product invariance under c-unit change, all q <= 13, m | q-1
    for (long q = 3; q <= 13; ++q) {
        auto pp = as_prime_power(q);
        if (!pp) continue;
        for (long m = 1; m < q; ++m) {
            if ((q - 1) % m != 0 || m % pp.p == 0) continue;
            auto data = lc::testing::make_tame_minimal(pp.p, pp.s, m, 1, false);
            auto base = minimal_w(data.datum, -1, 1, 1, data.lambda_EF);
            for (long eps = 2; eps < q; ++eps)
                if (!(minimal_w(data.datum, -1, 1, eps, data.lambda_EF).w == base.w)) return false;
        }
    }
    return true;
}

bool criterion_substitutes() {
    // Full W(rho) for wild (p-power dimensional) Heisenberg representations is
    // out of desk scale; the substitutes are exercised instead.
    // (a) the coset check on dim-1 data
    auto psi3 = LocalAdditiveChar::canonical_qp(3);
    for (const auto& chi : enumerate_qp_unit_chars(3, 2)) {
        if (chi.a == 0) continue;
        auto w = epsilon_sum(chi, psi3).value;
        auto chk = invariant_mod_roots(w, 1, kOne, w);
        if (!chk.pass || chk.ratio != std::make_pair(0L, 1L)) return false;
    }
    // (b) the coset check on tame minimal cases via minimal_w
    for (auto [p, f, m] : std::vector<std::array<long, 3>>{{5, 1, 2},
                                                           {5, 1, 4},
                                                           {7, 1, 2},
                                                           {7, 1, 3},
                                                           {7, 1, 6},
                                                           {11, 1, 2},
                                                           {11, 1, 5},
                                                           {13, 1, 2},
                                                           {13, 1, 3},
                                                           {13, 1, 4},
                                                           {3, 2, 2},
                                                           {3, 2, 4}}) {
        for (long w_psi : {1L, 2L}) {
            auto data = lc::testing::make_tame_minimal(p, f, m, w_psi);
            for (long cu : {1L, 2L}) {
                auto w = minimal_w(data.datum, -1, w_psi, cu, data.lambda_EF);
                auto chk = invariant_mod_roots(data.w_chi_k, m, data.lambda_KF, w.w);
                if (!chk.pass) return false;
            }
        }
    }
    // (c) the dim | q-1 gate as a pure predicate suite
    for (long q : {3L, 4L, 5L, 7L, 8L, 9L, 11L, 13L}) {
        auto pp = as_prime_power(q);
        for (long dim = 1; dim <= 12; ++dim) {
            auto gate = dim_gate(q, dim);
            if (gate.p_part * gate.tame_part != dim) return false;
            if (gate.tame_part % pp.p == 0 && gate.tame_part > 1) return false;
            if (gate.tame_divides != ((q - 1) % gate.tame_part == 0)) return false;
            if (gate.dim_divides != ((q - 1) % dim == 0)) return false;
        }
    }
    if (!dim_gate(5, 4).dim_divides) return false;
    if (dim_gate(5, 3).tame_divides) return false;
    if (dim_gate(9, 6).dim_divides) return false;
    if (!dim_gate(9, 6).tame_divides) return false;
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* label;
        std::function<bool()> run;
        double limit_s;  // 0 = no stated limit
    };
    std::vector<Criterion> criteria = {
        {1, "Q2 quadratic lambda table (1, i, i, 1, -1, i, -i) and product 1", criterion_q2_table, 1.0},
        {2, "quadratic Gauss closed form for all odd q <= 2000", criterion_quadratic_gauss, 30.0},
        {3, "Davenport-Hasse for all chi with q^s <= 3000", criterion_davenport_hasse, 60.0},
        {4, "functional equation and |W| = 1, p in {2,3,5}, a <= 4", criterion_functional_equation, 0},
        {5, "Lamprecht-Tate reduced = full, a <= 6, all m; closed forms", criterion_lamprecht_tate, 0},
        {6, "tame quadratic lambda closed form, Klein sign, sign table", criterion_tame_lambda, 0},
        {7, "determinant oracle triangle on the extraspecial catalogue", criterion_det_triangle, 10.0},
        {8, "transfer laws: Furtwangler, T(g) = g^d, correcting element", criterion_transfer_laws, 0},
        {9, "bicyclic counts vs brute force, m <= 12", criterion_bicyclic, 0},
        {10, "Miller products for all abelian groups of order <= 64", criterion_miller, 0},
        {11, "U-isotropic layer: X_eta, conductor routes, minimal W", criterion_u_isotropic, 0},
        {12, "wild W(rho) out of desk scale: coset + dimension-gate substitutes",
         criterion_substitutes, 0},
    };

    int failures = 0;
    for (auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        std::string note;
        try {
            ok = c.run();
        } catch (const Error& e) {
            note = std::string(" [") + e.what() + "]";
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (ok && c.limit_s > 0 && dt > c.limit_s) {
            ok = false;
            note = " [time limit exceeded]";
        }
        std::printf("%s criterion %2d: %s (%.2fs%s)%s\n", ok ? "PASS" : "FAIL", c.id, c.label, dt,
                    c.limit_s > 0 ? (" < " + std::to_string((long)c.limit_s) + "s").c_str() : "",
                    note.c_str());
        if (!ok) ++failures;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
