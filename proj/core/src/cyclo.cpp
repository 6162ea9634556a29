#include <localconst/cyclo.hpp>
#include <localconst/errors.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

namespace lc {

namespace {

// ---- cyclotomic polynomial cache -------------------------------------------

std::mutex g_phi_mutex;
std::map<long, std::vector<Int>> g_phi;  // n -> coefficients of Phi_n, monic

// Exact division of integer polynomials, b monic-ish (leading coeff divides).
std::vector<Int> poly_div_exact(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> r = a;
    long db = static_cast<long>(b.size()) - 1;
    long da = static_cast<long>(r.size()) - 1;
    std::vector<Int> q(da - db + 1, Int(0));
    for (long i = da; i >= db; --i) {
        if (r[i] == 0) continue;
        Int coef = r[i] / b[db];
        q[i - db] = coef;
        for (long j = 0; j <= db; ++j) r[i - db + j] -= coef * b[j];
    }
    return q;
}

const std::vector<Int>& phi_poly(long n) {
    std::lock_guard<std::mutex> lock(g_phi_mutex);
    auto it = g_phi.find(n);
    if (it != g_phi.end()) return it->second;

    // Compute by the recursion Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d.
    // Dependencies first, without holding a recursive lock: collect divisors.
    std::vector<long> divs;
    for (long d = 1; d < n; ++d)
        if (n % d == 0) divs.push_back(d);
    for (long d : divs) {
        if (!g_phi.count(d)) {
            // compute recursively (divisor chains are short)
            std::vector<Int> f(d + 1, Int(0));
            f[0] = -1;
            f[d] = 1;
            for (long e = 1; e < d; ++e)
                if (d % e == 0) f = poly_div_exact(f, g_phi.at(e));
            g_phi.emplace(d, std::move(f));
        }
    }
    std::vector<Int> f(n + 1, Int(0));
    f[0] = -1;
    f[n] = 1;
    for (long d : divs) f = poly_div_exact(f, g_phi.at(d));
    return g_phi.emplace(n, std::move(f)).first->second;
}

long phi_degree(long n) { return static_cast<long>(phi_poly(n).size()) - 1; }

// Sparse index list of Phi_n's nonzero coefficients below the leading term.
struct PhiView {
    long deg;
    std::vector<std::pair<long, long>> small_terms;  // (index, coeff) when all fit in long
    const std::vector<Int>* big = nullptr;
};

PhiView phi_view(long n) {
    const auto& p = phi_poly(n);
    PhiView v;
    v.deg = static_cast<long>(p.size()) - 1;
    bool small = true;
    for (long j = 0; j < v.deg; ++j) {
        if (p[j] == 0) continue;
        if (p[j] > std::numeric_limits<long>::max() / 4 || p[j] < std::numeric_limits<long>::min() / 4) {
            small = false;
            break;
        }
        v.small_terms.emplace_back(j, static_cast<long>(p[j]));
    }
    if (!small) {
        v.small_terms.clear();
        v.big = &p;
    }
    return v;
}

// Reduce raw exponent vector (indices mod n already) modulo Phi_n, in place.
template <typename T>
void reduce_mod_phi(std::vector<T>& a, long n) {
    PhiView pv = phi_view(n);
    long deg = pv.deg;
    for (long i = static_cast<long>(a.size()) - 1; i >= deg; --i) {
        if (a[i] == 0) continue;
        T coef = a[i];
        a[i] = 0;
        if (pv.big) {
            const auto& p = *pv.big;
            for (long j = 0; j < deg; ++j)
                if (p[j] != 0) a[i - deg + j] -= coef * T(p[j]);
        } else {
            for (auto [j, c] : pv.small_terms) a[i - deg + j] -= coef * T(c);
        }
    }
}

template <typename T>
void fold_mod_xn(std::vector<T>& a, long n) {
    if (static_cast<long>(a.size()) <= n) {
        a.resize(n, T(0));
        return;
    }
    for (long i = n; i < static_cast<long>(a.size()); ++i) {
        if (a[i] != 0) a[i % n] += a[i];
    }
    a.resize(n);
}

bool all_integral(const std::vector<Rat>& v) {
    for (const auto& c : v)
        if (boost::multiprecision::denominator(c) != 1) return false;
    return true;
}

long legendre(long t, long p) {
    long r = pow_mod(t, (p - 1) / 2, p);
    return r == 1 ? 1 : (r == 0 ? 0 : -1);
}

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

}  // namespace

// ---- Cyclotomic -------------------------------------------------------------

Cyclotomic Cyclotomic::zeta(long n, long k) {
    require(n >= 1, "InvalidOrder", "zeta order must be positive");
    std::vector<Rat> raw(n, Rat(0));
    raw[mod_l(k, n)] = 1;
    return from_coeffs(n, std::move(raw));
}

Cyclotomic Cyclotomic::from_coeffs(long n, std::vector<Rat> raw) {
    require(n >= 1, "InvalidOrder", "order must be positive");
    Cyclotomic z;
    z.n_ = n;
    if (all_integral(raw)) {
        std::vector<Int> w(raw.size());
        for (size_t i = 0; i < raw.size(); ++i) w[i] = boost::multiprecision::numerator(raw[i]);
        fold_mod_xn(w, n);
        reduce_mod_phi(w, n);
        z.c_.assign(n, Rat(0));
        for (long i = 0; i < n; ++i)
            if (w[i] != 0) z.c_[i] = Rat(w[i]);
    } else {
        fold_mod_xn(raw, n);
        reduce_mod_phi(raw, n);
        z.c_ = std::move(raw);
    }
    return z;
}

bool Cyclotomic::is_zero() const {
    for (const auto& c : c_)
        if (c != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

std::optional<Rat> Cyclotomic::as_rational() const {
    if (!is_rational()) return std::nullopt;
    return c_[0];
}

Cyclotomic Cyclotomic::embedded(long m) const {
    require(m >= 1 && m % n_ == 0, "InvalidOrder", "embedding target must be a multiple of the order");
    if (m == n_) return *this;
    long stride = m / n_;
    std::vector<Rat> raw(m, Rat(0));
    for (long k = 0; k < n_; ++k)
        if (c_[k] != 0) raw[k * stride] = c_[k];
    return from_coeffs(m, std::move(raw));
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic z = *this;
    for (auto& c : z.c_) c = -c;
    return z;
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    if (n_ == o.n_) {
        Cyclotomic z = *this;
        for (long i = 0; i < n_; ++i) z.c_[i] += o.c_[i];
        return z;
    }
    long m = lcm_l(n_, o.n_);
    return embedded(m) + o.embedded(m);
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    long m = lcm_l(n_, o.n_);
    const Cyclotomic a = (m == n_) ? *this : embedded(m);
    const Cyclotomic b = (m == o.n_) ? o : o.embedded(m);
    // clear denominators so the convolution runs over the integers
    auto common_den = [m](const std::vector<Rat>& v) {
        Int d = 1;
        for (long i = 0; i < m; ++i) {
            const Int& di = boost::multiprecision::denominator(v[i]);
            if (di != 1) d = boost::multiprecision::lcm(d, di);
        }
        return d;
    };
    Int da = common_den(a.c_), db = common_den(b.c_);
    std::vector<Int> ia(m), ib(m);
    std::vector<long> nza, nzb;
    for (long i = 0; i < m; ++i) {
        if (a.c_[i] != 0) {
            ia[i] = boost::multiprecision::numerator(a.c_[i]) *
                    (da / boost::multiprecision::denominator(a.c_[i]));
            nza.push_back(i);
        }
        if (b.c_[i] != 0) {
            ib[i] = boost::multiprecision::numerator(b.c_[i]) *
                    (db / boost::multiprecision::denominator(b.c_[i]));
            nzb.push_back(i);
        }
    }
    Cyclotomic z;
    z.n_ = m;
    z.c_.assign(m, Rat(0));
    if (nza.empty() || nzb.empty()) return z;
    std::vector<Int> raw(2 * m, Int(0));
    for (long i : nza)
        for (long j : nzb) raw[i + j] += ia[i] * ib[j];
    fold_mod_xn(raw, m);
    reduce_mod_phi(raw, m);
    Int den = da * db;
    for (long i = 0; i < m; ++i)
        if (raw[i] != 0) z.c_[i] = Rat(raw[i], den);
    return z;
}

Cyclotomic Cyclotomic::inv() const {
    require(!is_zero(), "DivisionByZero", "inverse of zero");
    if (auto r = as_rational()) return Cyclotomic(Rat(1) / *r);
    // monomial fast path: c * zeta^k
    long nz = -1;
    bool monomial = true;
    for (long i = 0; i < n_; ++i) {
        if (c_[i] != 0) {
            if (nz >= 0) {
                monomial = false;
                break;
            }
            nz = i;
        }
    }
    if (monomial) {
        std::vector<Rat> raw(n_, Rat(0));
        raw[mod_l(-nz, n_)] = Rat(1) / c_[nz];
        return from_coeffs(n_, std::move(raw));
    }
    // extended euclid against Phi_n over Q
    long deg = phi_degree(n_);
    std::vector<Rat> r0, r1(c_.begin(), c_.begin() + deg);
    const auto& phi = phi_poly(n_);
    r0.resize(deg + 1);
    for (long i = 0; i <= deg; ++i) r0[i] = Rat(phi[i]);
    std::vector<Rat> s0(1, Rat(0)), s1(1, Rat(1));  // coefficients for *this
    auto degree = [](const std::vector<Rat>& v) {
        for (long i = static_cast<long>(v.size()) - 1; i >= 0; --i)
            if (v[i] != 0) return i;
        return -1L;
    };
    while (true) {
        long d1 = degree(r1);
        require(d1 >= 0, "DivisionByZero", "element is a zero divisor (internal)");
        if (d1 == 0) break;
        long d0 = degree(r0);
        if (d0 < d1) {
            std::swap(r0, r1);
            std::swap(s0, s1);
            continue;
        }
        Rat coef = r0[d0] / r1[d1];
        long shift = d0 - d1;
        for (long j = 0; j <= d1; ++j) r0[j + shift] -= coef * r1[j];
        if (s0.size() < s1.size() + shift) s0.resize(s1.size() + shift, Rat(0));
        for (size_t j = 0; j < s1.size(); ++j) s0[j + shift] -= coef * s1[j];
    }
    Rat unit = r1[degree(r1)];
    std::vector<Rat> raw(n_, Rat(0));
    for (size_t j = 0; j < s1.size() && j < static_cast<size_t>(n_); ++j) raw[j] = s1[j] / unit;
    return from_coeffs(n_, std::move(raw));
}

Cyclotomic Cyclotomic::operator/(const Cyclotomic& o) const { return *this * o.inv(); }

Cyclotomic Cyclotomic::galois(long k) const {
    if (n_ == 1) return *this;
    require(gcd_l(mod_l(k, n_), n_) == 1, "InvalidAutomorphism", "galois exponent must be coprime to the order");
    std::vector<Rat> raw(n_, Rat(0));
    for (long i = 0; i < n_; ++i)
        if (c_[i] != 0) raw[mod_l(i * (k % n_), n_)] += c_[i];
    return from_coeffs(n_, std::move(raw));
}

Cyclotomic Cyclotomic::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    Cyclotomic r(Rat(1));
    Cyclotomic b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        if (e >>= 1) b = b * b;
    }
    return r;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    if (n_ == o.n_) return c_ == o.c_;
    long m = lcm_l(n_, o.n_);
    return embedded(m).c_ == o.embedded(m).c_;
}

std::pair<double, double> Cyclotomic::approx() const {
    double re = 0, im = 0;
    for (long k = 0; k < n_; ++k) {
        if (c_[k] == 0) continue;
        double v = static_cast<double>(c_[k]);
        double t = 2.0 * M_PI * k / n_;
        re += v * std::cos(t);
        im += v * std::sin(t);
    }
    return {re, im};
}

std::optional<std::pair<long, long>> Cyclotomic::as_root_of_unity() const {
    if (is_zero()) return std::nullopt;
    if (auto r = as_rational()) {
        if (*r == 1) return std::make_pair(0L, 1L);
        if (*r == -1) return std::make_pair(1L, 2L);
        return std::nullopt;
    }
    if (!all_integral(c_)) return std::nullopt;  // roots of unity are algebraic integers
    long m = lcm_l(2, n_);
    auto reduced = [&](long j) {
        long g = gcd_l(j, m);  // gcd(0, m) = m, so j = 0 maps to (0, 1)
        return std::make_pair(j / g, m / g);
    };
    // numeric guess first, then exact verification
    auto [re, im] = approx();
    double mod2 = re * re + im * im;
    if (std::abs(mod2 - 1.0) < 1e-6) {
        double ang = std::atan2(im, re);
        long j0 = mod_l(static_cast<long>(std::llround(ang * m / (2.0 * M_PI))), m);
        for (long d : {0L, 1L, m - 1}) {
            long j = (j0 + d) % m;
            if (*this == zeta(m, j)) return reduced(j);
        }
    }
    // exact decision: z root of unity iff z integral and z * conj(z) = 1
    if (!((*this * conj()) == Cyclotomic(Rat(1)))) return std::nullopt;
    for (long j = 0; j < m; ++j)
        if (*this == zeta(m, j)) return reduced(j);
    return std::nullopt;  // unreachable mathematically
}

Cyclotomic sqrt_prime_cyclotomic(long p) {
    require(is_prime_l(p), "InvalidPrime", "sqrt_prime_cyclotomic needs a prime");
    if (p == 2) {
        std::vector<Rat> raw(8, Rat(0));
        raw[1] = 1;
        raw[7] = 1;  // zeta_8 + zeta_8^{-1} = sqrt(2)
        return Cyclotomic::from_coeffs(8, std::move(raw));
    }
    if (p % 4 == 1) {
        std::vector<Rat> raw(p, Rat(0));
        for (long t = 1; t < p; ++t) raw[t] = legendre(t, p);
        return Cyclotomic::from_coeffs(p, std::move(raw));  // Gauss sum = sqrt(p)
    }
    // p = 3 mod 4: Gauss sum = i*sqrt(p); multiply by -i = zeta_4^3.
    long n = 4 * p;
    std::vector<Rat> raw(n, Rat(0));
    for (long t = 1; t < p; ++t) raw[mod_l(4 * t + 3 * p, n)] += legendre(t, p);
    return Cyclotomic::from_coeffs(n, std::move(raw));
}

// ---- ScaledCyclotomic --------------------------------------------------------

void ScaledCyclotomic::normalize() {
    if (v_.is_zero()) {
        q_ = 0;
        e_ = 0;
        v_ = Cyclotomic();
        return;
    }
    if (e_ != 0) {
        require(q_ >= 1, "IncompatibleBase", "half powers need a positive base");
        if (q_ == 1) {
            e_ = 0;
        } else {
            long r = mod_l(e_, 2);
            long k = (e_ - r) / 2;  // integer power of q to absorb
            if (k != 0) v_ = v_ * Cyclotomic(rat_pow(Rat(q_), k));
            e_ = r;
        }
    }
    if (e_ == 1) {
        // base reduces to its squarefree kernel: sqrt(r^2 q0) = r sqrt(q0),
        // so sqrt(q) and sqrt(q^3) share a normal form
        long root = 1, q0 = 1, q = q_;
        for (long p = 2; p * p <= q; ++p) {
            if (q % p) continue;
            long a = 0;
            while (q % p == 0) {
                q /= p;
                ++a;
            }
            for (long i = 0; i < a / 2; ++i) root *= p;
            if (a % 2) q0 *= p;
        }
        q0 *= q;
        if (root != 1) v_ = v_ * Cyclotomic(Rat(root));
        q_ = q0;
        if (q_ == 1) e_ = 0;
    }
    if (e_ == 0) q_ = 0;
}

ScaledCyclotomic ScaledCyclotomic::operator-() const {
    ScaledCyclotomic z = *this;
    z.v_ = -z.v_;
    return z;
}

ScaledCyclotomic ScaledCyclotomic::operator+(const ScaledCyclotomic& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    require(e_ == o.e_ && (e_ == 0 || q_ == o.q_), "IncompatibleBase",
            "sum of values with different radical parts is not representable");
    ScaledCyclotomic z;
    z.q_ = q_;
    z.e_ = e_;
    z.v_ = v_ + o.v_;
    z.normalize();
    return z;
}

ScaledCyclotomic ScaledCyclotomic::operator-(const ScaledCyclotomic& o) const { return *this + (-o); }

ScaledCyclotomic ScaledCyclotomic::operator*(const ScaledCyclotomic& o) const {
    if (is_zero() || o.is_zero()) return ScaledCyclotomic();
    long qq;
    if (e_ == 0)
        qq = o.q_;
    else if (o.e_ == 0)
        qq = q_;
    else {
        require(q_ == o.q_, "IncompatibleBase", "product of sqrt values over different bases");
        qq = q_;
    }
    ScaledCyclotomic z;
    z.q_ = qq;
    z.e_ = e_ + o.e_;
    z.v_ = v_ * o.v_;
    z.normalize();
    return z;
}

ScaledCyclotomic ScaledCyclotomic::operator/(const ScaledCyclotomic& o) const {
    require(!o.is_zero(), "DivisionByZero", "division by zero");
    ScaledCyclotomic inv;
    inv.q_ = o.q_;
    inv.e_ = -o.e_;
    inv.v_ = o.v_.inv();
    inv.normalize();
    return *this * inv;
}

ScaledCyclotomic ScaledCyclotomic::conj() const {
    ScaledCyclotomic z = *this;
    z.v_ = z.v_.conj();
    return z;
}

ScaledCyclotomic ScaledCyclotomic::pow(long e) const {
    if (e < 0) return (ScaledCyclotomic(Rat(1)) / *this).pow(-e);
    ScaledCyclotomic r{Rat(1)};
    ScaledCyclotomic b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        if (e >>= 1) b = b * b;
    }
    return r;
}

ScaledCyclotomic ScaledCyclotomic::scaled_by_half_power(long base, long k) const {
    if (k == 0 || is_zero()) return *this;
    ScaledCyclotomic z = *this;
    if (z.e_ != 0 || z.q_ != 0)
        require(z.q_ == base || z.q_ == 0, "IncompatibleBase", "mixed bases in half-power scaling");
    z.q_ = base;
    z.e_ += k;
    z.normalize();
    return z;
}

bool ScaledCyclotomic::operator==(const ScaledCyclotomic& o) const {
    return q_ == o.q_ && e_ == o.e_ && v_ == o.v_;
}

Cyclotomic ScaledCyclotomic::to_cyclotomic() const {
    if (e_ == 0) return v_;
    // sqrt(q) = rational * i^{3#'} * prod G_p over the odd primes with odd
    // exponent (G_p the quadratic Gauss sum, which lies in Q(zeta_p)), times
    // sqrt(2) when needed. Folding the i-powers first keeps the ambient field
    // small in the common comparisons.
    Rat scale(1);
    long ipow = 0;
    bool need_sqrt2 = false;
    std::vector<long> odd_parts;
    long q = q_;
    auto take = [&](long p) {
        long a = 0;
        while (q % p == 0) {
            q /= p;
            ++a;
        }
        scale *= rat_pow(Rat(p), a / 2);
        if (a % 2) {
            if (p == 2) {
                need_sqrt2 = true;
            } else {
                odd_parts.push_back(p);
                if (p % 4 == 3) ipow += 3;  // sqrt(p) = zeta_4^3 * G_p
            }
        }
    };
    for (long p = 2; p * p <= q; ++p)
        if (q % p == 0) take(p);
    if (q > 1) take(q);

    Cyclotomic out = v_ * Cyclotomic(scale);
    if (ipow % 4 != 0) out = out * Cyclotomic::zeta(4, ipow);
    if (auto r = out.as_rational()) out = Cyclotomic(*r);  // shrink the ambient order
    for (long p : odd_parts) {
        std::vector<Rat> raw(p, Rat(0));
        for (long t = 1; t < p; ++t) raw[t] = legendre(t, p);
        out = out * Cyclotomic::from_coeffs(p, std::move(raw));  // G_p
    }
    if (need_sqrt2) out = out * sqrt_prime_cyclotomic(2);
    return out;
}

bool ScaledCyclotomic::same_value(const ScaledCyclotomic& o) const {
    if (*this == o) return true;
    if (e_ == 0 && o.e_ == 0) return v_ == o.v_;
    if (e_ == 1 && o.e_ == 1 && q_ == o.q_) return v_ == o.v_;
    return to_cyclotomic() == o.to_cyclotomic();
}

std::optional<std::pair<long, long>> ScaledCyclotomic::as_root_of_unity() const {
    if (is_zero()) return std::nullopt;
    if (e_ == 0) return v_.as_root_of_unity();
    // A formal sqrt(q) can still hide a root of unity (e.g. (1+i)/2 * sqrt(2)
    // equals zeta_8); decide on the unfolded exact value.
    return to_cyclotomic().as_root_of_unity();
}

std::pair<double, double> ScaledCyclotomic::approx() const {
    auto [re, im] = v_.approx();
    double s = e_ == 0 ? 1.0 : std::sqrt(static_cast<double>(q_));
    return {re * s, im * s};
}

// ---- serialization -----------------------------------------------------------

std::string ScaledCyclotomic::to_string() const {
    std::ostringstream os;
    os << (q_ == 0 ? 1 : q_) << "^(" << e_ << "/2) * (";
    const auto& c = v_.coeffs();
    bool first = true;
    for (long k = 0; k < v_.order(); ++k) {
        if (c[k] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << rat_str(c[k]);
        if (k == 1)
            os << "*z";
        else if (k >= 2)
            os << "*z^" << k;
    }
    if (first) os << "0";
    os << ") where z = zeta_" << v_.order();
    return os.str();
}

ScaledCyclotomic ScaledCyclotomic::parse(const std::string& s) {
    auto bad = [&]() { fail("ParseError", "malformed scaled-cyclotomic literal: " + s); };
    size_t caret = s.find("^(");
    if (caret == std::string::npos) bad();
    long q = std::stol(s.substr(0, caret));
    size_t e_end = s.find("/2) * (", caret);
    if (e_end == std::string::npos) bad();
    long e = std::stol(s.substr(caret + 2, e_end - caret - 2));
    size_t poly_beg = e_end + 7;
    size_t poly_end = s.find(") where z = zeta_", poly_beg);
    if (poly_end == std::string::npos) bad();
    long n = std::stol(s.substr(poly_end + 17));
    require(n >= 1, "ParseError", "bad order in literal");
    std::vector<Rat> raw(n, Rat(0));
    std::string poly = s.substr(poly_beg, poly_end - poly_beg);
    size_t pos = 0;
    while (pos < poly.size()) {
        size_t next = poly.find(" + ", pos);
        std::string term = poly.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        pos = next == std::string::npos ? poly.size() : next + 3;
        if (term == "0") continue;
        size_t star = term.find("*z");
        long k = 0;
        std::string coef = term;
        if (star != std::string::npos) {
            coef = term.substr(0, star);
            k = (star + 2 < term.size() && term[star + 2] == '^') ? std::stol(term.substr(star + 3)) : 1;
        }
        if (k < 0 || k >= n) bad();
        raw[k] += Rat(coef);
    }
    return ScaledCyclotomic(q, e, Cyclotomic::from_coeffs(n, std::move(raw)));
}

std::string pretty(const ScaledCyclotomic& z) {
    if (z.is_zero()) return "0";
    auto root_str = [](long k, long n) -> std::string {
        if (n == 1) return "1";
        if (n == 2) return "-1";
        if (n == 4) return k == 1 ? "i" : "-i";
        std::ostringstream os;
        os << "zeta_" << n << (k == 1 ? "" : "^" + std::to_string(k));
        return os.str();
    };
    // hidden roots of unity first (covers e = 1 values like (1+i)/2 sqrt(2))
    if (auto ru = z.as_root_of_unity()) return root_str(ru->first, ru->second);
    if (z.half_exponent() == 0) {
        if (auto r = z.value().as_rational()) return rat_str(*r);
        // rational multiple of a root of unity
        const auto& c = z.value().coeffs();
        long nz = -1;
        bool monomial = true;
        for (long i = 0; i < z.value().order(); ++i)
            if (c[i] != 0) {
                if (nz >= 0) monomial = false;
                else nz = i;
            }
        if (monomial && nz > 0)
            return rat_str(c[nz]) + "*" + root_str(nz, z.value().order());
        return z.to_string();
    }
    std::string tail = "sqrt(" + std::to_string(z.base_q()) + ")";
    if (auto r = z.value().as_rational()) {
        if (*r == 1) return tail;
        if (*r == -1) return "-" + tail;
        return rat_str(*r) + "*" + tail;
    }
    if (auto ru = z.value().as_root_of_unity()) return root_str(ru->first, ru->second) + "*" + tail;
    return z.to_string();
}

}  // namespace lc
