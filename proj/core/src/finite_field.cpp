#include <localconst/errors.hpp>
#include <localconst/finite_field.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace lc {

namespace {

std::mutex g_field_mutex;
std::map<std::pair<long, long>, std::unique_ptr<FqField>> g_fields;

std::vector<long> prime_factors(long n) {
    std::vector<long> fs;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

// polynomial arithmetic over F_p, coefficient vectors low-to-high
std::vector<long> poly_mul_mod(const std::vector<long>& a, const std::vector<long>& b,
                               const std::vector<long>& f, long p) {
    std::vector<long> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    long s = static_cast<long>(f.size()) - 1;
    for (long i = static_cast<long>(r.size()) - 1; i >= s; --i) {
        long c = r[i];
        if (c == 0) continue;
        r[i] = 0;
        for (long j = 0; j < s; ++j) r[i - s + j] = mod_l(r[i - s + j] - c * f[j], p);
    }
    r.resize(s);
    return r;
}

std::vector<long> poly_pow_mod(std::vector<long> base, long e, const std::vector<long>& f, long p) {
    std::vector<long> r(f.size() - 1, 0);
    r[0] = 1;
    while (e > 0) {
        if (e & 1) r = poly_mul_mod(r, base, f, p);
        base = poly_mul_mod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

bool poly_is_one(const std::vector<long>& a) {
    if (a.empty() || a[0] != 1) return false;
    for (size_t i = 1; i < a.size(); ++i)
        if (a[i] != 0) return false;
    return true;
}

std::vector<long> decode(long x, long p, long s) {
    std::vector<long> d(s, 0);
    for (long i = 0; i < s && x; ++i) {
        d[i] = x % p;
        x /= p;
    }
    return d;
}

long encode(const std::vector<long>& d, long p) {
    long x = 0;
    for (long i = static_cast<long>(d.size()) - 1; i >= 0; --i) x = x * p + d[i];
    return x;
}

}  // namespace

const FqField& FqField::get(long p, long s) {
    std::lock_guard<std::mutex> lock(g_field_mutex);
    auto key = std::make_pair(p, s);
    auto it = g_fields.find(key);
    if (it == g_fields.end())
        it = g_fields.emplace(key, std::unique_ptr<FqField>(new FqField(p, s))).first;
    return *it->second;
}

FqField::FqField(long p, long s) : p_(p), s_(s) {
    require(is_prime_l(p), "InvalidPrime", "field characteristic must be prime");
    require(s >= 1, "InvalidDegree", "extension degree must be >= 1");
    q_ = 1;
    for (long i = 0; i < s; ++i) {
        require(q_ <= (1L << 27) / p, "TooLarge", "field size exceeds the desk-scale bound");
        q_ *= p;
    }
    auto qm1_factors = prime_factors(q_ - 1);

    // lexicographically least monic primitive modulus, low coefficients first
    std::vector<long> f(s + 1, 0);
    f[s] = 1;
    bool found = false;
    std::vector<long> tuple(s, 0);
    while (!found) {
        for (long i = 0; i < s; ++i) f[i] = tuple[i];
        if (f[0] != 0) {  // x must be a unit mod f
            if (s == 1) {
                // root of x + c0 is -c0; primitivity of the root decides
                long root = mod_l(-f[0], p);
                bool prim = root != 0;
                for (long l : qm1_factors)
                    if (prim && pow_mod(root, (q_ - 1) / l, p) == 1) prim = false;
                found = prim;
            } else {
                std::vector<long> x(s, 0);
                x[1] = 1;
                if (poly_is_one(poly_pow_mod(x, q_ - 1, f, p))) {
                    bool prim = true;
                    for (long l : qm1_factors)
                        if (poly_is_one(poly_pow_mod(x, (q_ - 1) / l, f, p))) prim = false;
                    found = prim;
                }
            }
        }
        if (found) break;
        long i = s - 1;
        while (i >= 0 && tuple[i] == p - 1) tuple[i--] = 0;
        require(i >= 0, "InternalError", "no primitive modulus found");
        ++tuple[i];
    }
    modulus_ = f;

    // least primitive element, tuples (c0,..,c_{s-1}) compared at c0 first
    gen_ = -1;
    std::vector<long> cand(s, 0);
    auto order_is_max = [&](const std::vector<long>& e) {
        if (!poly_is_one(poly_pow_mod(e, q_ - 1, f, p))) return false;
        for (long l : qm1_factors)
            if (poly_is_one(poly_pow_mod(e, (q_ - 1) / l, f, p))) return false;
        return true;
    };
    while (true) {
        long i = s - 1;
        while (i >= 0 && cand[i] == p - 1) cand[i--] = 0;
        require(i >= 0, "InternalError", "no generator found");
        ++cand[i];
        if (order_is_max(cand)) {
            gen_ = encode(cand, p);
            break;
        }
    }

    exp_.assign(q_ - 1, 0);
    dlog_.assign(q_, -1);
    std::vector<long> g = decode(gen_, p, s);
    std::vector<long> acc(s, 0), buf(2 * s, 0);
    acc[0] = 1;
    for (long i = 0; i < q_ - 1; ++i) {
        long e = encode(acc, p);
        exp_[i] = e;
        require(dlog_[e] == -1, "InternalError", "generator order too small");
        dlog_[e] = i;
        // acc <- acc * g mod (f, p), allocation free
        std::fill(buf.begin(), buf.end(), 0L);
        for (long a = 0; a < s; ++a) {
            if (acc[a] == 0) continue;
            for (long b = 0; b < s; ++b) buf[a + b] = (buf[a + b] + acc[a] * g[b]) % p;
        }
        for (long d = 2 * s - 2; d >= s; --d) {
            long c = buf[d];
            if (c == 0) continue;
            buf[d] = 0;
            for (long j = 0; j < s; ++j) buf[d - s + j] = mod_l(buf[d - s + j] - c * f[j], p);
        }
        std::copy(buf.begin(), buf.begin() + s, acc.begin());
    }
}

long FqField::add(long a, long b) const {
    long r = 0, pw = 1;
    for (long i = 0; i < s_; ++i) {
        r += ((a + b) % p_) * pw;
        a /= p_;
        b /= p_;
        pw *= p_;
    }
    return r;
}

long FqField::neg(long a) const {
    long r = 0, pw = 1;
    for (long i = 0; i < s_; ++i) {
        r += ((p_ - a % p_) % p_) * pw;
        a /= p_;
        pw *= p_;
    }
    return r;
}

long FqField::mul(long a, long b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(dlog_[a] + dlog_[b]) % (q_ - 1)];
}

long FqField::inv(long a) const {
    require(a != 0, "DivisionByZero", "field inverse of zero");
    return exp_[mod_l(-dlog_[a], q_ - 1)];
}

long FqField::pow(long a, long e) const {
    if (a == 0) {
        require(e > 0, "DivisionByZero", "0^e with e <= 0");
        return 0;
    }
    return exp_[static_cast<long>(mod_l(dlog_[a] % (q_ - 1) * static_cast<__int128>(e) % (q_ - 1), q_ - 1))];
}

long FqField::dlog(long a) const {
    require(a != 0, "DivisionByZero", "dlog of zero");
    return dlog_[a];
}

long FqField::element_order(long a) const {
    require(a != 0, "DivisionByZero", "order of zero");
    return (q_ - 1) / gcd_l(dlog_[a], q_ - 1);
}

long FqField::trace(long a) const { return rel_trace(a, 1); }

long FqField::norm(long a) const {
    if (a == 0) return 0;
    return rel_norm(a, 1);
}

long FqField::rel_trace(long a, long t) const {
    require(t >= 1 && s_ % t == 0, "InvalidDegree", "subfield degree must divide s");
    long r = 0;
    long x = a;
    for (long i = 0; i < s_ / t; ++i) {
        r = add(r, x);
        for (long j = 0; j < t; ++j) x = frobenius(x);
    }
    return r;
}

long FqField::rel_norm(long a, long t) const {
    require(t >= 1 && s_ % t == 0, "InvalidDegree", "subfield degree must divide s");
    if (a == 0) return 0;
    long qt = 1;
    for (long i = 0; i < t; ++i) qt *= p_;
    long e = (q_ - 1) / (qt - 1);
    return exp_[mul_mod(dlog_[a], e, q_ - 1)];
}

std::string FqField::descriptor() const {
    std::ostringstream os;
    os << "Fq(" << p_ << "^" << s_ << "; modulus=[";
    for (size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
    os << "])";
    return os.str();
}

FFMultChar FFMultChar::times(const FFMultChar& o) const {
    require(field == o.field, "IncompatibleBase", "character product across fields");
    return {field, mod_l(k + o.k, field->q() - 1)};
}

long FFMultChar::exponent(long x) const {
    require(x != 0, "DomainError", "multiplicative character evaluated at 0");
    return mul_mod(mod_l(k, field->q() - 1), field->dlog(x), field->q() - 1);
}

Cyclotomic FFMultChar::value(long x) const { return Cyclotomic::zeta(field->q() - 1, exponent(x)); }

Cyclotomic FFMultChar::value_at_exponent(long j) const {
    return Cyclotomic::zeta(field->q() - 1,
                            mul_mod(mod_l(k, field->q() - 1), mod_l(j, field->q() - 1), field->q() - 1));
}

FFMultChar FFMultChar::quadratic(const FqField& f) {
    require(f.p() != 2, "InvalidPrime", "quadratic character needs odd q");
    return {&f, (f.q() - 1) / 2};
}

std::string FFMultChar::descriptor() const {
    std::ostringstream os;
    os << "chi(" << mod_l(k, field->q() - 1) << " mod " << field->q() - 1 << ")";
    return os.str();
}

Cyclotomic psi_q(const FqField& f, long x) { return Cyclotomic::zeta(f.p(), f.trace(x)); }

ScaledCyclotomic gauss_sum(const FFMultChar& chi, long b) {
    const FqField& f = *chi.field;
    long q = f.q(), p = f.p();
    // chi takes values in the mu_ord of its exact order, which keeps the
    // ambient cyclotomic field small
    long kk = mod_l(chi.k, q - 1);
    long ord = (q - 1) / gcd_l(kk == 0 ? q - 1 : kk, q - 1);
    long kred = kk / ((q - 1) / std::max(ord, 1L));
    long n = lcm_l(p, std::max(ord, 1L));
    long su = n / std::max(ord, 1L), sp = n / p;
    std::vector<Rat> raw(n, Rat(0));
    for (long j = 0; j < q - 1; ++j) {
        long x = f.exp(j);
        long e = mod_l(mul_mod(kred, j, std::max(ord, 1L)) * su + f.trace(f.mul(b, x)) * sp, n);
        raw[e] += 1;
    }
    return ScaledCyclotomic(Cyclotomic::from_coeffs(n, std::move(raw)));
}

ScaledCyclotomic quadratic_gauss_closed_form(long p, long s) {
    require(p != 2 && is_prime_l(p), "InvalidPrime", "quadratic Gauss closed form needs an odd prime");
    require(s >= 1, "InvalidDegree", "degree must be >= 1");
    long q = 1;
    for (long i = 0; i < s; ++i) q *= p;
    Cyclotomic v{Rat((s - 1) % 2 == 0 ? 1 : -1)};
    if (p % 4 == 3) v = v * Cyclotomic::zeta(4, mod_l(s, 4));
    return ScaledCyclotomic(q, 1, v);
}

DavenportHasseReport lift_and_check_davenport_hasse(const FFMultChar& chi, long s, long b) {
    require(s >= 1, "InvalidDegree", "lift degree must be >= 1");
    require(!(chi.is_trivial() && b == 0), "BothTrivial", "chi and psi must not both be trivial");
    const FqField& f = *chi.field;
    long q0 = f.q(), p = f.p();
    const FqField& e = FqField::get(p, f.s() * s);
    long qe = e.q();

    // deterministic embedding of F into E: least root of the modulus in E
    long beta = -1;
    for (long cand = 0; cand < qe && beta < 0; ++cand) {
        long acc = 0;
        for (long i = static_cast<long>(f.modulus().size()) - 1; i >= 0; --i)
            acc = e.add(e.mul(acc, cand), f.modulus()[i] % p);
        if (acc == 0) beta = cand;
    }
    require(beta >= 0, "InternalError", "modulus has no root in the lift field");
    std::vector<long> back(qe, -1);
    for (long x = 0; x < q0; ++x) {
        long acc = 0, xx = x;
        std::vector<long> digits;
        for (long i = 0; i < f.s(); ++i) {
            digits.push_back(xx % p);
            xx /= p;
        }
        for (long i = f.s() - 1; i >= 0; --i) acc = e.add(e.mul(acc, beta), digits[i]);
        back[acc] = x;
    }

    long kk = mod_l(chi.k, q0 - 1);
    long ord = (q0 - 1) / gcd_l(kk == 0 ? q0 - 1 : kk, q0 - 1);
    long kred = kk / ((q0 - 1) / ord);
    long n = lcm_l(p, ord);
    long su = n / ord, sp = n / p;
    long norm_exp = (qe - 1) / (q0 - 1);
    std::vector<Rat> raw(n, Rat(0));
    for (long j = 0; j < qe - 1; ++j) {
        long y = e.exp(j);
        long nrm = back[e.exp(mul_mod(j, norm_exp, qe - 1))];  // N_{E/F}(y)
        long tr = f.trace(f.mul(b, back[e.rel_trace(y, f.s())]));
        long ee = mod_l(mul_mod(kred, mod_l(f.dlog(nrm), ord), ord) * su + tr * sp, n);
        raw[ee] += 1;
    }
    DavenportHasseReport rep{ScaledCyclotomic(Cyclotomic::from_coeffs(n, std::move(raw))),
                             ScaledCyclotomic(), false};
    ScaledCyclotomic g = gauss_sum(chi, b).pow(s);
    if (s % 2 == 0) g = -g;
    rep.rhs = g;
    rep.equal = rep.lhs == rep.rhs;
    return rep;
}

}  // namespace lc
