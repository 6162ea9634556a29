#pragma once

#include <localconst/cyclo.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace lc {

// Cayley-table group on ids 0..n-1 with 0 the identity. Axioms are verified
// at construction (fully for n <= 256, sampled above). Immutable.
class FiniteGroup {
public:
    FiniteGroup() : n_(1), t_{0}, inv_{0}, name_("C1") {}  // the trivial group

    static FiniteGroup from_table(std::vector<std::vector<int>> table, std::string name = "cayley");
    static FiniteGroup cyclic(long n);
    static FiniteGroup abelian(const std::vector<long>& factors);  // product of cyclic groups
    static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
    static FiniteGroup dihedral8();
    static FiniteGroup quaternion8();
    static FiniteGroup symmetric3();
    static FiniteGroup heisenberg_p(long p);     // unitriangular 3x3 over F_p, exponent p
    static FiniteGroup extraspecial_p2(long p);  // order p^3, exponent p^2 (p odd)
    static FiniteGroup from_permutations(int domain, std::vector<std::vector<int>> gens,
                                         std::string name = "perm");
    // "D8", "Q8", "S3", "C12", "C2xC4", "heis(3)", "extraspecial(5)", "cayley:<file>"
    static FiniteGroup parse_spec(const std::string& spec);

    int order() const { return n_; }
    int mul(int a, int b) const { return t_[static_cast<size_t>(a) * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int id() const { return 0; }
    int pow(int a, long e) const;
    int conjugate(int g, int x) const { return mul(mul(g, x), inv(g)); }  // g x g^{-1}
    int comm(int a, int b) const;  // [a,b] = a b a^{-1} b^{-1}
    long element_order(int a) const;
    bool is_abelian() const;
    const std::string& name() const { return name_; }

private:
    void finish(std::string name);  // builds inverses, checks axioms
    int n_ = 0;
    std::vector<uint16_t> t_;
    std::vector<uint16_t> inv_;
    std::string name_;

    friend FiniteGroup derived_group_from_table(std::vector<std::vector<int>>, std::string);
};

// construction for tables derived from an already-verified group (quotients,
// subgroup views): identity/inverse checks only, associativity sampled
FiniteGroup derived_group_from_table(std::vector<std::vector<int>> table, std::string name);

using Subgroup = std::vector<int>;  // sorted element ids, always containing 0

bool contains(const Subgroup& h, int x);
Subgroup subgroup_generated(const FiniteGroup& g, std::vector<int> gens);
bool is_subgroup(const FiniteGroup& g, const Subgroup& h);
bool is_normal(const FiniteGroup& g, const Subgroup& h);
Subgroup commutator_subgroup(const FiniteGroup& g);
Subgroup center(const FiniteGroup& g);
Subgroup squares_times(const FiniteGroup& g, const Subgroup& z);  // G^2 Z

struct DerivedData {
    Subgroup commutator;
    Subgroup center;
    bool is_two_step_nilpotent;
    bool is_abelian;
};
DerivedData derived_data(const FiniteGroup& g);

// quotient G/N for normal N
struct Quotient {
    FiniteGroup group;
    std::vector<int> proj;  // G element id -> coset id
    std::vector<int> reps;  // coset id -> least representative
};
Quotient quotient(const FiniteGroup& g, const Subgroup& n);

// subgroup H as a group of its own; idx maps G ids to H ids (-1 outside)
FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h, std::vector<int>* idx = nullptr);

// least-id representatives of the left cosets gH, in ascending order
std::vector<int> left_transversal(const FiniteGroup& g, const Subgroup& h);
std::vector<int> random_transversal(const FiniteGroup& g, const Subgroup& h, std::mt19937& rng);

// T_{G/H}(x) as an element of H; well-defined modulo [H,H]
int transfer(const FiniteGroup& g, const Subgroup& h, int x,
             const std::vector<int>* transversal = nullptr);
// x = y modulo the subgroup generated by commutators of h
bool equal_mod_derived(const FiniteGroup& g, const Subgroup& h, int x, int y);

// product of all elements of an abelian group
int miller_product(const FiniteGroup& g);

struct ElementaryDivisors {
    std::vector<long> factors;  // m_1 | m_2 | ... | m_s, ascending
    int two_rank;               // number of even factors
    std::vector<int> basis;     // independent generators, basis[i] of order factors[i]
};
ElementaryDivisors elementary_divisors(const FiniteGroup& g);

// Alternating bicharacter on an abelian group, stored as exponents of a fixed
// root of unity zeta_L.
class AltBichar {
public:
    static AltBichar make(FiniteGroup a, long modulus, std::vector<long> exponents);
    const FiniteGroup& group() const { return a_; }
    long modulus() const { return L_; }
    long exponent(int x, int y) const { return e_[static_cast<size_t>(x) * a_.order() + y]; }
    Cyclotomic eval(int x, int y) const { return Cyclotomic::zeta(L_, exponent(x, y)); }
    Subgroup radical() const;
    bool nondegenerate() const { return radical().size() == 1; }

private:
    FiniteGroup a_;  // owned copy
    long L_ = 1;
    std::vector<long> e_;
};

// the standard symplectic pairing on C_m x C_m (the X_eta normal form)
struct StdSymplectic {
    FiniteGroup group;  // abelian {m, m}; id = a + m*b for (a, b)
    AltBichar form;     // X((a1,b1),(a2,b2)) = zeta_m^{a1 b2 - a2 b1}
};
StdSymplectic std_symplectic(long m);

struct SymplecticBasis {
    std::vector<std::pair<int, int>> pairs;  // (t_i, t_i')
    std::vector<long> orders;                // m_1 | ... | m_s
};
SymplecticBasis symplectic_basis(const AltBichar& x);  // Degenerate if radical nontrivial

Subgroup maximal_isotropic(const AltBichar& x, std::optional<int> seed = std::nullopt);

struct BicyclicCounts {
    long psi;              // number of cyclic subgroups of order m in Z_m x Z_m
    long order_m_elements;
    long complements;      // complements of a fixed cyclic B of order m
};
BicyclicCounts bicyclic_counts(long m);

struct Sylow2Type {
    enum class Kind { trivial, cyclic, metacyclic_not_cyclic, not_metacyclic };
    Kind kind;
    long order;
    bool contains_klein;
    Subgroup sylow;
};
Sylow2Type sylow2_type(const FiniteGroup& g);

}  // namespace lc
