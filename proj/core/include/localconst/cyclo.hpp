#pragma once

#include <localconst/numeric.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lc {

// Element of Q(zeta_N), stored as a dense rational vector in the power basis
// {zeta_N^k}. Canonical form: the coefficient polynomial is reduced mod the
// N-th cyclotomic polynomial, so two equal values of the same order have
// identical coefficient vectors. Values of different orders compare equal via
// embedding into Q(zeta_lcm). Immutable after construction.
class Cyclotomic {
public:
    Cyclotomic() : n_(1), c_(1, Rat(0)) {}
    explicit Cyclotomic(const Rat& r) : n_(1), c_(1, r) {}
    explicit Cyclotomic(long v) : n_(1), c_(1, Rat(v)) {}

    static Cyclotomic zeta(long n, long k = 1);
    // Reduces an arbitrary exponent->coefficient vector (size n) mod Phi_n.
    static Cyclotomic from_coeffs(long n, std::vector<Rat> raw);

    long order() const { return n_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    std::optional<Rat> as_rational() const;

    // Same value viewed in Q(zeta_m); requires order() | m.
    Cyclotomic embedded(long m) const;

    Cyclotomic operator-() const;
    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic operator/(const Cyclotomic& o) const;  // DivisionByZero
    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

    Cyclotomic inv() const;
    // Field automorphism zeta^j -> zeta^{kj}, gcd(k, N) = 1.
    Cyclotomic galois(long k) const;
    // Complex conjugation zeta -> zeta^{-1}.
    Cyclotomic conj() const { return galois(n_ - 1 == 0 ? 1 : n_ - 1); }
    Cyclotomic pow(long e) const;

    bool operator==(const Cyclotomic& o) const;
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    // (k, n) in lowest terms with *this = zeta_n^k, if *this is a root of
    // unity; decided exactly.
    std::optional<std::pair<long, long>> as_root_of_unity() const;

    // Approximate complex value under zeta_N -> exp(2*pi*i/N); debug only,
    // carries no contract.
    std::pair<double, double> approx() const;

private:
    long n_;
    std::vector<Rat> c_;
};

// sqrt(p) for a prime p, as an exact cyclotomic: in Q(zeta_p) for p = 1 mod 4,
// Q(zeta_{4p}) for p = 3 mod 4, Q(zeta_8) for p = 2.
Cyclotomic sqrt_prime_cyclotomic(long p);

// Value v * q^{e/2} with a formal sqrt(q). Normal form: e in {0, 1} (integer
// powers of q absorbed into v) and base_q = 0 when e = 0 or v = 0. Structural
// equality is componentwise on this normal form; same_value() decides true
// numeric equality by unfolding sqrt(q) into cyclotomics.
class ScaledCyclotomic {
public:
    ScaledCyclotomic() = default;
    explicit ScaledCyclotomic(const Rat& r) : v_(r) { normalize(); }
    explicit ScaledCyclotomic(Cyclotomic v) : v_(std::move(v)) { normalize(); }
    ScaledCyclotomic(long base_q, long half_exp, Cyclotomic v)
        : q_(base_q), e_(half_exp), v_(std::move(v)) {
        normalize();
    }

    long base_q() const { return q_; }
    long half_exponent() const { return e_; }
    const Cyclotomic& value() const { return v_; }
    bool is_zero() const { return v_.is_zero(); }

    ScaledCyclotomic operator-() const;
    ScaledCyclotomic operator+(const ScaledCyclotomic& o) const;
    ScaledCyclotomic operator-(const ScaledCyclotomic& o) const;
    ScaledCyclotomic operator*(const ScaledCyclotomic& o) const;
    ScaledCyclotomic operator/(const ScaledCyclotomic& o) const;
    ScaledCyclotomic& operator*=(const ScaledCyclotomic& o) { return *this = *this * o; }

    ScaledCyclotomic conj() const;
    ScaledCyclotomic pow(long e) const;
    // Multiplies by q^{k/2} (k may be negative), keeping the same base.
    ScaledCyclotomic scaled_by_half_power(long base, long k) const;

    bool operator==(const ScaledCyclotomic& o) const;
    bool operator!=(const ScaledCyclotomic& o) const { return !(*this == o); }

    // Unfolds the formal sqrt(q) into an exact cyclotomic value.
    Cyclotomic to_cyclotomic() const;
    // Numeric equality (may differ from structural == across representations).
    bool same_value(const ScaledCyclotomic& o) const;

    std::optional<std::pair<long, long>> as_root_of_unity() const;

    std::string to_string() const;
    static ScaledCyclotomic parse(const std::string& s);

    std::pair<double, double> approx() const;

private:
    void normalize();

    long q_ = 0;
    long e_ = 0;
    Cyclotomic v_;
};

inline ScaledCyclotomic operator*(const Cyclotomic& a, const ScaledCyclotomic& b) {
    return ScaledCyclotomic(a) * b;
}

// Renders a value the way the thesis tables do when possible (1, -1, i, -i,
// i*sqrt(3), ...), falling back to the exact serialization.
std::string pretty(const ScaledCyclotomic& z);

}  // namespace lc
