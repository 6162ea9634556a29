#include <localconst/errors.hpp>
#include <localconst/local_field.hpp>

#include <atomic>
#include <map>
#include <mutex>
#include <sstream>

namespace lc {

namespace {

long pow_l(long b, long e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

long euler_phi_pk(long p, long k) { return k == 0 ? 1 : (p - 1) * pow_l(p, k - 1); }

std::vector<long> prime_factors(long n) {
    std::vector<long> fs;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) fs.push_back(n);
    return fs;
}

// multiplicative structure of (Z/p^level)^x with fixed generators
struct UnitGroupData {
    std::vector<long> gens, orders;
    std::vector<long> dec;  // dec[u * gens.size() + i], -1 for non-units
};

std::mutex g_units_mutex;
std::map<std::pair<long, long>, UnitGroupData> g_units;

const UnitGroupData& unit_group_data(long p, long level) {
    std::lock_guard<std::mutex> lock(g_units_mutex);
    auto key = std::make_pair(p, level);
    auto it = g_units.find(key);
    if (it != g_units.end()) return it->second;

    UnitGroupData d;
    long m = pow_l(p, level);
    if (p == 2) {
        if (level == 2) {
            d.gens = {3};
            d.orders = {2};
        } else if (level >= 3) {
            d.gens = {m - 1, 5};
            d.orders = {2, pow_l(2, level - 2)};
        }
    } else {
        long phi = euler_phi_pk(p, level);
        auto fs = prime_factors(phi);
        long g = 0;
        for (long cand = 2; cand < m; ++cand) {
            if (cand % p == 0) continue;
            bool prim = true;
            for (long l : fs)
                if (pow_mod(cand, phi / l, m) == 1) prim = false;
            if (prim) {
                g = cand;
                break;
            }
        }
        require(g > 0, "InternalError", "no primitive root found");
        d.gens = {g};
        d.orders = {phi};
    }
    size_t ng = d.gens.size();
    d.dec.assign(m * std::max<size_t>(ng, 1), -1);
    if (ng == 1) {
        long x = 1;
        for (long j = 0; j < d.orders[0]; ++j) {
            d.dec[x] = j;
            x = mul_mod(x, d.gens[0], m);
        }
    } else if (ng == 2) {
        long a = 1;
        for (long i = 0; i < d.orders[0]; ++i) {
            long x = a;
            for (long j = 0; j < d.orders[1]; ++j) {
                d.dec[x * 2] = i;
                d.dec[x * 2 + 1] = j;
                x = mul_mod(x, d.gens[1], m);
            }
            a = mul_mod(a, d.gens[0], m);
        }
    }
    return g_units.emplace(key, std::move(d)).first->second;
}

std::atomic<bool> g_q2_fault{false};

}  // namespace

// ---- LocalFieldDesc -----------------------------------------------------------

long LocalFieldDesc::q() const { return pow_l(p, f); }

LocalFieldDesc LocalFieldDesc::make(long p, long e, long f, long d) {
    require(is_prime_l(p), "InvalidPrime", "residue characteristic must be prime");
    require(e >= 1 && f >= 1 && d >= 0, "InvalidField", "bad invariants");
    if (e % p != 0)
        require(d == e - 1, "InvalidField",
                "tame consistency violated: gcd(p,e)=1 forces d = e-1");
    return LocalFieldDesc{p, e, f, d};
}

std::string LocalFieldDesc::descriptor() const {
    std::ostringstream os;
    os << "Local(" << p << ", " << e << ", " << f << ", " << d << ")";
    return os.str();
}

LocalFieldDesc LocalFieldDesc::parse(const std::string& s) {
    long p, e, f, d;
    if (std::sscanf(s.c_str(), "Local(%ld, %ld, %ld, %ld)", &p, &e, &f, &d) != 4 &&
        std::sscanf(s.c_str(), "Local(%ld,%ld,%ld,%ld)", &p, &e, &f, &d) != 4)
        fail("ParseError", "bad field descriptor: " + s);
    return make(p, e, f, d);
}

long composed_psi_conductor(long ext_e, long ext_d, long n_psi) {
    require(ext_e >= 1 && ext_d >= 0, "InvalidField", "bad extension data");
    return ext_e * n_psi + ext_d;
}

long square_class_order(const LocalFieldDesc& F) {
    long v2 = F.p == 2 ? F.e : 0;
    long r = 4;
    for (long i = 0; i < v2; ++i) r *= F.q();
    return r;
}

// ---- LocalAdditiveChar ----------------------------------------------------------

LocalAdditiveChar LocalAdditiveChar::canonical_qp(long p) {
    return {LocalFieldDesc::qp(p), 0, Rat(1), 1};
}

LocalAdditiveChar LocalAdditiveChar::qp_shift(long p, const Rat& b) {
    require(b != 0, "InvalidShift", "additive character shift must be nonzero");
    return {LocalFieldDesc::qp(p), val_p(b, p), b, 1};
}

LocalAdditiveChar LocalAdditiveChar::residue_normalized(const LocalFieldDesc& F, long n, long w) {
    require(w != 0, "InvalidShift", "residue scaling must be a unit");
    LocalAdditiveChar psi;
    psi.F = F;
    psi.n = n;
    psi.residue_w = w;
    if (F.is_qp()) psi.b = rat_pow(Rat(F.p), -(n + 1)) * w;  // exact model available
    return psi;
}

LocalAdditiveChar LocalAdditiveChar::shifted(const Rat& bb) const {
    require(b.has_value(), "UnsupportedModel", "additive shifts need the Q_p model");
    return qp_shift(F.p, *b * bb);
}

Cyclotomic LocalAdditiveChar::eval_qp(const Rat& x) const {
    auto [e, n] = eval_qp_exponent(x);
    return Cyclotomic::zeta(n, e);
}

std::pair<long, long> LocalAdditiveChar::eval_qp_exponent(const Rat& x) const {
    require(b.has_value(), "UnsupportedModel", "evaluation needs the Q_p model");
    Rat t = *b * x;
    if (t == 0) return {0, 1};
    long v = val_p(t, F.p);
    if (v >= 0) return {0, 1};
    long pk = pow_l(F.p, -v);
    return {unit_part_mod(t, F.p, pk), pk};
}

// ---- QpUnitChar -----------------------------------------------------------------

QpUnitChar QpUnitChar::trivial(long p, long level) {
    require(level >= 1, "InvalidField", "unit character level must be >= 1");
    QpUnitChar c;
    c.p = p;
    c.level = level;
    const auto& d = unit_group_data(p, level);
    c.gens = d.gens;
    c.orders = d.orders;
    c.t.assign(c.gens.size(), 0);
    return c;
}

long QpUnitChar::value_modulus() const {
    long m = 1;
    for (long o : orders) m = lcm_l(m, o);
    return std::max(m, 1L);
}

long QpUnitChar::exponent(long u) const {
    long m = pow_l(p, level);
    u = mod_l(u, m);
    require(u % p != 0, "DomainError", "not a unit");
    if (gens.empty()) return 0;
    const auto& d = unit_group_data(p, level);
    long M = value_modulus();
    long e = 0;
    for (size_t i = 0; i < gens.size(); ++i) {
        long di = d.dec[u * gens.size() + i];
        e = mod_l(e + t[i] % orders[i] * (M / orders[i]) % M * (di % orders[i]) % M, M);
    }
    return e;
}

Cyclotomic QpUnitChar::eval(long u) const { return Cyclotomic::zeta(value_modulus(), exponent(u)); }

long QpUnitChar::conductor() const {
    if (p == 2) {
        long a = 0;
        if (gens.size() >= 1 && level >= 2 && mod_l(t[0], 2) != 0) a = std::max(a, 2L);
        if (gens.size() == 2) {
            long t5 = mod_l(t[1], orders[1]);
            if (t5 != 0) {
                long v = 0;
                while (t5 % 2 == 0) {
                    t5 /= 2;
                    ++v;
                }
                a = std::max(a, level - v);
            }
        }
        return a;
    }
    long tt = mod_l(t[0], orders[0]);
    if (tt == 0) return 0;
    long v = 0;
    while (tt % p == 0) {
        tt /= p;
        ++v;
    }
    return std::max(1L, level - v);
}

QpUnitChar QpUnitChar::inverse() const {
    QpUnitChar c = *this;
    for (size_t i = 0; i < t.size(); ++i) c.t[i] = mod_l(-t[i], orders[i]);
    return c;
}

QpUnitChar QpUnitChar::lifted(long new_level) const {
    require(new_level >= level, "InvalidField", "can only lift to a higher level");
    if (new_level == level) return *this;
    QpUnitChar c = trivial(p, new_level);
    long low = pow_l(p, level);
    for (size_t i = 0; i < c.gens.size(); ++i) {
        // chi'(g_i) = chi(g_i mod p^level), rescaled to the new order
        long e = exponent(mod_l(c.gens[i], low));
        long M = value_modulus();
        // zeta_M^e as a power of zeta_{c.orders[i]}: e/M = t_i'/orders[i]
        require((static_cast<__int128>(e) * c.orders[i]) % M == 0, "InternalError",
                "incompatible unit character lift");
        c.t[i] = mod_l(static_cast<long>(static_cast<__int128>(e) * c.orders[i] / M), c.orders[i]);
    }
    return c;
}

QpUnitChar QpUnitChar::times(const QpUnitChar& o) const {
    require(p == o.p, "IncompatibleBase", "unit characters over different primes");
    long lvl = std::max(level, o.level);
    QpUnitChar a = lifted(lvl), b = o.lifted(lvl);
    for (size_t i = 0; i < a.t.size(); ++i) a.t[i] = mod_l(a.t[i] + b.t[i], a.orders[i]);
    return a;
}

// ---- LocalMultChar ---------------------------------------------------------------

namespace {
void check_root_of_unity(const Cyclotomic& z) {
    require(ScaledCyclotomic(z).as_root_of_unity().has_value(), "InvalidCharacter",
            "value on pi must be a root of unity");
}
}  // namespace

LocalMultChar LocalMultChar::unramified(const LocalFieldDesc& F, Cyclotomic value_on_pi) {
    check_root_of_unity(value_on_pi);
    LocalMultChar c;
    c.F = F;
    c.a = 0;
    c.value_on_pi = std::move(value_on_pi);
    return c;
}

LocalMultChar LocalMultChar::tame(const LocalFieldDesc& F, long residue_index, Cyclotomic value_on_pi) {
    check_root_of_unity(value_on_pi);
    LocalMultChar c;
    c.F = F;
    c.value_on_pi = std::move(value_on_pi);
    const FqField& k = F.residue_field();
    FFMultChar r{&k, mod_l(residue_index, k.q() - 1)};
    c.a = r.is_trivial() ? 0 : 1;
    if (c.a == 1) c.residue = r;
    return c;
}

LocalMultChar LocalMultChar::qp(long p, QpUnitChar unit, Cyclotomic value_on_pi) {
    check_root_of_unity(value_on_pi);
    LocalMultChar c;
    c.F = LocalFieldDesc::qp(p);
    c.a = unit.conductor();
    c.value_on_pi = std::move(value_on_pi);
    c.qp_unit = std::move(unit);
    return c;
}

bool LocalMultChar::is_trivial() const { return a == 0 && value_on_pi == Cyclotomic(Rat(1)); }

long LocalMultChar::unit_order() const {
    if (qp_unit) {
        long M = qp_unit->value_modulus();
        long g = M;
        for (size_t i = 0; i < qp_unit->t.size(); ++i)
            g = gcd_l(g, mod_l(qp_unit->t[i], qp_unit->orders[i]) * (M / qp_unit->orders[i]));
        return g == 0 ? 1 : M / g;
    }
    if (residue) return residue->order();
    return 1;
}

long LocalMultChar::unit_value_modulus() const {
    if (qp_unit) return qp_unit->value_modulus();
    if (residue) return residue->field->q() - 1;
    return 1;
}

long LocalMultChar::unit_exponent(long u) const {
    if (qp_unit) return qp_unit->exponent(u);
    if (residue) return residue->exponent(u);
    return 0;
}

Cyclotomic LocalMultChar::eval_unit(long u) const {
    return Cyclotomic::zeta(unit_value_modulus(), unit_exponent(u));
}

Cyclotomic LocalMultChar::eval_qp(const Rat& x) const {
    require(F.is_qp(), "UnsupportedModel", "full evaluation needs F = Q_p");
    require(x != 0, "DomainError", "character evaluated at 0");
    long v = val_p(x, F.p);
    long lvl = qp_unit ? qp_unit->level : 1;
    long u = unit_part_mod(x, F.p, pow_l(F.p, lvl));
    return value_on_pi.pow(v) * eval_unit(u);
}

Cyclotomic LocalMultChar::at_minus_one() const {
    if (qp_unit) return eval_unit(pow_l(F.p, qp_unit->level) - 1);
    if (residue) return eval_unit(residue->field->neg(1));
    return Cyclotomic(Rat(1));
}

LocalMultChar LocalMultChar::inverse() const {
    LocalMultChar c = *this;
    c.value_on_pi = value_on_pi.conj();  // inverse of a root of unity
    if (c.qp_unit) c.qp_unit = qp_unit->inverse();
    if (c.residue) c.residue = residue->inverse();
    return c;
}

LocalMultChar LocalMultChar::times(const LocalMultChar& o) const {
    require(F == o.F, "IncompatibleBase", "character product across fields");
    LocalMultChar c;
    c.F = F;
    c.value_on_pi = value_on_pi * o.value_on_pi;
    auto to_qp_unit = [&](const LocalMultChar& x, long lvl) -> QpUnitChar {
        if (x.qp_unit) return x.qp_unit->lifted(lvl);
        QpUnitChar u = QpUnitChar::trivial(F.p, lvl);
        if (x.residue) {
            // residue character as a level-lvl unit character
            for (size_t i = 0; i < u.gens.size(); ++i) {
                long e = x.residue->exponent(mod_l(u.gens[i], F.p));
                long M = x.residue->field->q() - 1;
                require((static_cast<__int128>(e) * u.orders[i]) % M == 0, "InternalError",
                        "incompatible residue lift");
                u.t[i] = mod_l(static_cast<long>(static_cast<__int128>(e) * u.orders[i] / M),
                               u.orders[i]);
            }
        }
        return u;
    };
    if (F.is_qp() && (qp_unit || o.qp_unit)) {
        long lvl = std::max({qp_unit ? qp_unit->level : 1, o.qp_unit ? o.qp_unit->level : 1, 1L});
        QpUnitChar u = to_qp_unit(*this, lvl).times(to_qp_unit(o, lvl));
        c.a = u.conductor();
        if (c.a > 0 || !u.gens.empty()) c.qp_unit = std::move(u);
        return c;
    }
    // residue-level product
    if (residue && o.residue) {
        FFMultChar r = residue->times(*o.residue);
        c.a = r.is_trivial() ? 0 : 1;
        if (c.a == 1) c.residue = r;
    } else if (residue || o.residue) {
        c.residue = residue ? residue : o.residue;
        c.a = 1;
    } else {
        c.a = 0;
    }
    return c;
}

std::string LocalMultChar::descriptor() const {
    std::ostringstream os;
    auto pi = ScaledCyclotomic(value_on_pi).as_root_of_unity();
    os << "locchi(a=" << a << "; pi->zeta_" << pi->second << "^" << pi->first << "; unit->";
    if (qp_unit) {
        os << "qp[";
        for (size_t i = 0; i < qp_unit->t.size(); ++i)
            os << (i ? "," : "") << qp_unit->gens[i] << ":" << qp_unit->t[i] << "/" << qp_unit->orders[i];
        os << "]";
    } else if (residue) {
        os << residue->descriptor();
    } else {
        os << "1";
    }
    os << ")";
    return os.str();
}

// ---- quotients and enumerations ---------------------------------------------------

std::vector<long> unit_quotient_reps(const LocalFieldDesc& F, long a) {
    require(a >= 1, "InvalidField", "level must be >= 1");
    if (F.is_qp()) {
        long m = pow_l(F.p, a);
        std::vector<long> reps;
        reps.reserve(m - m / F.p);
        for (long u = 1; u < m; ++u)
            if (u % F.p != 0) reps.push_back(u);
        return reps;
    }
    require(a == 1, "UnsupportedModel",
            "unit quotients above level 1 are only modeled over Q_p");
    std::vector<long> reps;
    for (long x = 1; x < F.q(); ++x) reps.push_back(x);
    return reps;
}

std::vector<LocalMultChar> enumerate_qp_unit_chars(long p, long a_max) {
    require(a_max >= 1, "InvalidField", "a_max must be >= 1");
    QpUnitChar base = QpUnitChar::trivial(p, a_max);
    std::vector<LocalMultChar> out;
    std::vector<long> idx(base.t.size(), 0);
    while (true) {
        QpUnitChar u = base;
        u.t = idx;
        out.push_back(LocalMultChar::qp(p, u, Cyclotomic(Rat(1))));
        long i = static_cast<long>(idx.size()) - 1;
        while (i >= 0 && idx[i] == base.orders[i] - 1) idx[i--] = 0;
        if (i < 0) break;
        ++idx[i];
    }
    return out;
}

// ---- the Q_2 quadratic catalogue ---------------------------------------------------

void q2_catalogue_inject_fault(bool on) { g_q2_fault.store(on); }

std::array<Q2QuadRecord, 7> q2_quadratic_catalogue() {
    // square classes of Q_2^x labeled by squarefree d, keyed by
    // (valuation mod 2, unit part mod 8)
    auto class_of = [](long vpar, long u8) -> long {
        if (vpar == 0) return u8 == 1 ? 1 : (u8 == 5 ? 5 : (u8 == 7 ? -1 : -5));
        return u8 == 1 ? 2 : (u8 == 5 ? 10 : (u8 == 7 ? -2 : -10));
    };
    struct Entry {
        long d;
        std::vector<long> norm_classes;  // the four square classes of the norm group
        const char* desc;
    };
    const std::vector<Entry> entries = {
        {5, {1, 5, -1, -5}, "<2^2> x U"},
        {-1, {1, 5, 2, 10}, "<2> x U^2"},
        {-5, {1, 5, -2, -10}, "<-2> x U^2"},
        {2, {1, -1, 2, -2}, "<2> x <-1> x U^3"},
        {10, {1, -1, 10, -10}, "<10> x <-1> x U^3"},
        {-2, {1, -5, 2, -10}, "norm classes {1,-5,2,-10}"},
        {-10, {1, -5, -2, 10}, "norm classes {1,-5,-2,10}"},
    };
    std::array<Q2QuadRecord, 7> out;
    for (size_t i = 0; i < entries.size(); ++i) {
        const auto& en = entries[i];
        auto in_norm = [&](long cls) {
            for (long c : en.norm_classes)
                if (c == cls) return true;
            return false;
        };
        auto sign_of = [&](long vpar, long u8) { return in_norm(class_of(vpar, u8)) ? 1 : -1; };
        QpUnitChar u = QpUnitChar::trivial(2, 3);
        u.t[0] = sign_of(0, 7) == 1 ? 0 : 1;  // value at -1
        u.t[1] = sign_of(0, 5) == 1 ? 0 : 1;  // value at 5
        Cyclotomic pi_val{Rat(sign_of(1, 1))};  // value at the uniformizer 2
        if (g_q2_fault.load() && en.d == 2) pi_val = -pi_val;  // test hook
        LocalMultChar chi = LocalMultChar::qp(2, u, pi_val);
        out[i] = Q2QuadRecord{en.d, chi.a, en.desc, chi};
    }
    return out;
}

}  // namespace lc
