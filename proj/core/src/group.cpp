#include <localconst/errors.hpp>
#include <localconst/group.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace lc {

namespace {
constexpr int kMaxOrder = 4096;
constexpr int kFullAxiomCheck = 256;
}  // namespace

// ---- construction ---------------------------------------------------------------

namespace {
bool g_trusted_table = false;  // set while building derived tables
}

FiniteGroup derived_group_from_table(std::vector<std::vector<int>> table, std::string name) {
    g_trusted_table = true;
    FiniteGroup g = FiniteGroup::from_table(std::move(table), std::move(name));
    g_trusted_table = false;
    return g;
}

void FiniteGroup::finish(std::string name) {
    name_ = std::move(name);
    require(n_ >= 1 && n_ <= kMaxOrder, "TooLarge", "group order out of range");
    for (int j = 0; j < n_; ++j) {
        require(mul(0, j) == j && mul(j, 0) == j, "AxiomViolation", "id 0 is not an identity");
    }
    inv_.assign(n_, 0);
    for (int a = 0; a < n_; ++a) {
        int found = -1;
        for (int b = 0; b < n_; ++b)
            if (mul(a, b) == 0 && mul(b, a) == 0) {
                found = b;
                break;
            }
        require(found >= 0, "AxiomViolation", "missing inverse");
        inv_[a] = static_cast<uint16_t>(found);
    }
    if (n_ <= (g_trusted_table ? 16 : kFullAxiomCheck)) {
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                for (int c = 0; c < n_; ++c)
                    require(mul(mul(a, b), c) == mul(a, mul(b, c)), "AxiomViolation",
                            "associativity fails");
    } else {
        std::mt19937 rng(7);
        std::uniform_int_distribution<int> d(0, n_ - 1);
        for (int i = 0; i < 200000; ++i) {
            int a = d(rng), b = d(rng), c = d(rng);
            require(mul(mul(a, b), c) == mul(a, mul(b, c)), "AxiomViolation",
                    "associativity fails (sampled)");
        }
    }
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table, std::string name) {
    FiniteGroup g;
    g.n_ = static_cast<int>(table.size());
    require(g.n_ >= 1 && g.n_ <= kMaxOrder, "TooLarge", "group order out of range");
    g.t_.assign(static_cast<size_t>(g.n_) * g.n_, 0);
    for (int i = 0; i < g.n_; ++i) {
        require(static_cast<int>(table[i].size()) == g.n_, "NotClosed", "table is not square");
        for (int j = 0; j < g.n_; ++j) {
            require(table[i][j] >= 0 && table[i][j] < g.n_, "NotClosed", "table entry out of range");
            g.t_[static_cast<size_t>(i) * g.n_ + j] = static_cast<uint16_t>(table[i][j]);
        }
    }
    g.finish(std::move(name));
    return g;
}

namespace {
FiniteGroup build_from_fn(int n, const std::string& name, const std::function<int(int, int)>& f) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] = f(i, j);
    return FiniteGroup::from_table(std::move(t), name);
}
}  // namespace

FiniteGroup FiniteGroup::cyclic(long n) {
    return build_from_fn(static_cast<int>(n), "C" + std::to_string(n),
                         [n](int a, int b) { return static_cast<int>((a + b) % n); });
}

FiniteGroup FiniteGroup::abelian(const std::vector<long>& factors) {
    long n = 1;
    for (long f : factors) n *= f;
    std::string name;
    for (size_t i = 0; i < factors.size(); ++i)
        name += (i ? "x" : "") + ("C" + std::to_string(factors[i]));
    auto f = [&factors](int a, int b) {
        int r = 0, scale = 1;
        for (long m : factors) {
            r += static_cast<int>((a % m + b % m) % m) * scale;
            a /= static_cast<int>(m);
            b /= static_cast<int>(m);
            scale *= static_cast<int>(m);
        }
        return r;
    };
    return build_from_fn(static_cast<int>(n), name.empty() ? "C1" : name, f);
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    int nb = b.order();
    auto f = [&](int x, int y) {
        return a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    };
    return build_from_fn(a.order() * b.order(), a.name() + "x" + b.name(), f);
}

namespace {
// groups <a, b | a^m = e or a^m = t, b a b^{-1} = a^r>, elements a^i b^j
int semidirect_mul(int i, int j, int k, int l, int m, int r, int b_sq_in_a, int b_ord) {
    // (a^i b^j)(a^k b^l) = a^{i + k r^j} b^{j+l}, with b^2 = a^{b_sq_in_a}
    long rj = 1;
    for (int t = 0; t < j; ++t) rj = rj * r % m;
    long ii = mod_l(i + k * rj, m);
    int jl = j + l;
    if (jl >= b_ord) {
        jl -= b_ord;
        ii = mod_l(ii + b_sq_in_a, m);
    }
    return static_cast<int>(ii) + m * jl;
}
}  // namespace

FiniteGroup FiniteGroup::dihedral8() {
    return build_from_fn(8, "D8", [](int x, int y) {
        return semidirect_mul(x % 4, x / 4, y % 4, y / 4, 4, 3, 0, 2);
    });
}

FiniteGroup FiniteGroup::quaternion8() {
    return build_from_fn(8, "Q8", [](int x, int y) {
        return semidirect_mul(x % 4, x / 4, y % 4, y / 4, 4, 3, 2, 2);
    });
}

FiniteGroup FiniteGroup::symmetric3() {
    return build_from_fn(6, "S3", [](int x, int y) {
        return semidirect_mul(x % 3, x / 3, y % 3, y / 3, 3, 2, 0, 2);
    });
}

FiniteGroup FiniteGroup::heisenberg_p(long p) {
    require(is_prime_l(p), "InvalidPrime", "Heis(p) needs a prime");
    int n = static_cast<int>(p * p * p);
    auto f = [p](int x, int y) {
        long a1 = x % p, b1 = x / p % p, c1 = x / (p * p);
        long a2 = y % p, b2 = y / p % p, c2 = y / (p * p);
        // (1 a b; 0 1 c; 0 0 1) multiplication
        long a = (a1 + a2) % p, b = (b1 + b2 + a1 * c2) % p, c = (c1 + c2) % p;
        return static_cast<int>(a + p * b + p * p * c);
    };
    return build_from_fn(n, "Heis(" + std::to_string(p) + ")", f);
}

FiniteGroup FiniteGroup::extraspecial_p2(long p) {
    require(is_prime_l(p) && p != 2, "InvalidPrime", "the exponent-p^2 extraspecial group needs odd p");
    int p2 = static_cast<int>(p * p);
    int n = p2 * static_cast<int>(p);
    // <g, h | g^{p^2} = h^p = e, h g h^{-1} = g^{1+p}>, elements g^i h^j
    auto f = [p, p2](int x, int y) {
        long i = x % p2, j = x / p2, k = y % p2, l = y / p2;
        long rj = 1 + j * p;  // (1+p)^j mod p^2
        long ii = (i + k % p2 * rj) % p2;
        return static_cast<int>(ii + p2 * ((j + l) % p));
    };
    return build_from_fn(n, "ExtraSpecial(" + std::to_string(p) + ",p2)", f);
}

FiniteGroup FiniteGroup::from_permutations(int domain, std::vector<std::vector<int>> gens,
                                           std::string name) {
    std::vector<int> idperm(domain);
    std::iota(idperm.begin(), idperm.end(), 0);
    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<int>> elems;
    elems.push_back(idperm);
    ids[idperm] = 0;
    for (size_t head = 0; head < elems.size(); ++head) {
        for (const auto& g : gens) {
            std::vector<int> next(domain);
            for (int i = 0; i < domain; ++i) next[i] = elems[head][g[i]];
            if (!ids.count(next)) {
                require(static_cast<int>(elems.size()) < kMaxOrder, "NotClosed",
                        "permutation closure exceeds the size bound");
                ids[next] = static_cast<int>(elems.size());
                elems.push_back(next);
            }
        }
    }
    int n = static_cast<int>(elems.size());
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<int> prod(domain);
            for (int i = 0; i < domain; ++i) prod[i] = elems[a][elems[b][i]];
            auto it = ids.find(prod);
            require(it != ids.end(), "NotClosed", "permutation set not closed");
            t[a][b] = it->second;
        }
    return from_table(std::move(t), std::move(name));
}

FiniteGroup FiniteGroup::parse_spec(const std::string& spec_in) {
    std::string s = spec_in;
    if (s.rfind("group:", 0) == 0) s = s.substr(6);
    if (s == "D8") return dihedral8();
    if (s == "Q8") return quaternion8();
    if (s == "S3") return symmetric3();
    if (s.rfind("heis(", 0) == 0) return heisenberg_p(std::stol(s.substr(5)));
    if (s.rfind("extraspecial(", 0) == 0) return extraspecial_p2(std::stol(s.substr(13)));
    if (s.rfind("cayley:", 0) == 0) {
        std::ifstream in(s.substr(7));
        require(in.good(), "ParseError", "cannot open cayley table file");
        std::vector<std::vector<int>> rows;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            for (auto& ch : line)
                if (ch == ',' || ch == ';') ch = ' ';
            std::istringstream ls(line);
            std::vector<int> row;
            int v;
            while (ls >> v) row.push_back(v);
            rows.push_back(std::move(row));
        }
        return from_table(std::move(rows), "cayley");
    }
    if (!s.empty() && s[0] == 'C') {
        std::vector<long> factors;
        size_t pos = 0;
        while (pos < s.size()) {
            require(s[pos] == 'C', "ParseError", "bad group spec: " + spec_in);
            size_t end = s.find('x', pos);
            factors.push_back(std::stol(s.substr(pos + 1, end - pos - 1)));
            pos = end == std::string::npos ? s.size() : end + 1;
        }
        return factors.size() == 1 ? cyclic(factors[0]) : abelian(factors);
    }
    fail("ParseError", "unknown group spec: " + spec_in);
}

int FiniteGroup::pow(int a, long e) const {
    if (e < 0) return pow(inv(a), -e);
    int r = 0;
    while (e-- > 0) r = mul(r, a);
    return r;
}

int FiniteGroup::comm(int a, int b) const { return mul(mul(a, b), mul(inv(a), inv(b))); }

long FiniteGroup::element_order(int a) const {
    long o = 1;
    int x = a;
    while (x != 0) {
        x = mul(x, a);
        ++o;
    }
    return o;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

// ---- subgroup machinery -----------------------------------------------------------

bool contains(const Subgroup& h, int x) { return std::binary_search(h.begin(), h.end(), x); }

Subgroup subgroup_generated(const FiniteGroup& g, std::vector<int> gens) {
    std::vector<char> in(g.order(), 0);
    std::vector<int> elems{0};
    in[0] = 1;
    for (int x : gens)
        if (!in[x]) {
            in[x] = 1;
            elems.push_back(x);
        }
    for (size_t head = 0; head < elems.size(); ++head) {
        for (size_t j = 0; j < elems.size(); ++j) {
            int p1 = g.mul(elems[head], elems[j]);
            if (!in[p1]) {
                in[p1] = 1;
                elems.push_back(p1);
            }
            int p2 = g.mul(elems[j], elems[head]);
            if (!in[p2]) {
                in[p2] = 1;
                elems.push_back(p2);
            }
        }
    }
    std::sort(elems.begin(), elems.end());
    return elems;
}

bool is_subgroup(const FiniteGroup& g, const Subgroup& h) {
    if (h.empty() || h[0] != 0) return false;
    for (int a : h)
        for (int b : h)
            if (!contains(h, g.mul(a, b))) return false;
    return true;
}

bool is_normal(const FiniteGroup& g, const Subgroup& h) {
    for (int x = 0; x < g.order(); ++x)
        for (int a : h)
            if (!contains(h, g.conjugate(x, a))) return false;
    return true;
}

Subgroup commutator_subgroup(const FiniteGroup& g) {
    std::vector<int> gens;
    for (int a = 0; a < g.order(); ++a)
        for (int b = a + 1; b < g.order(); ++b) {
            int c = g.comm(a, b);
            if (c != 0) gens.push_back(c);
        }
    return subgroup_generated(g, std::move(gens));
}

Subgroup center(const FiniteGroup& g) {
    Subgroup z;
    for (int a = 0; a < g.order(); ++a) {
        bool central = true;
        for (int b = 0; b < g.order() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
        if (central) z.push_back(a);
    }
    return z;
}

Subgroup squares_times(const FiniteGroup& g, const Subgroup& z) {
    std::vector<int> gens(z.begin(), z.end());
    for (int a = 0; a < g.order(); ++a) gens.push_back(g.mul(a, a));
    return subgroup_generated(g, std::move(gens));
}

DerivedData derived_data(const FiniteGroup& g) {
    DerivedData d;
    d.commutator = commutator_subgroup(g);
    d.center = center(g);
    d.is_abelian = g.is_abelian();
    d.is_two_step_nilpotent = true;
    for (int c : d.commutator)
        for (int x = 0; x < g.order() && d.is_two_step_nilpotent; ++x)
            if (g.comm(c, x) != 0) d.is_two_step_nilpotent = false;
    return d;
}

Quotient quotient(const FiniteGroup& g, const Subgroup& n) {
    require(is_subgroup(g, n), "NotSubgroup", "quotient needs a subgroup");
    require(is_normal(g, n), "NotSubgroup", "quotient needs a normal subgroup");
    int order = g.order();
    std::vector<int> least(order, -1);
    for (int x = 0; x < order; ++x) {
        if (least[x] >= 0) continue;
        int m = order;
        for (int h : n) m = std::min(m, g.mul(x, h));
        for (int h : n) least[g.mul(x, h)] = m;
    }
    Quotient q;
    std::map<int, int> ids;
    for (int x = 0; x < order; ++x)
        if (least[x] == x) {
            int id = static_cast<int>(ids.size());
            ids[x] = id;
        }
    q.proj.assign(order, 0);
    q.reps.assign(ids.size(), 0);
    for (int x = 0; x < order; ++x) {
        q.proj[x] = ids.at(least[x]);
        q.reps[q.proj[x]] = least[x];
    }
    int qn = static_cast<int>(ids.size());
    std::vector<std::vector<int>> t(qn, std::vector<int>(qn));
    for (int i = 0; i < qn; ++i)
        for (int j = 0; j < qn; ++j) t[i][j] = q.proj[g.mul(q.reps[i], q.reps[j])];
    q.group = derived_group_from_table(std::move(t), g.name() + "/N");
    return q;
}

FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h, std::vector<int>* idx) {
    require(is_subgroup(g, h), "NotSubgroup", "not a subgroup");
    std::vector<int> map(g.order(), -1);
    for (size_t i = 0; i < h.size(); ++i) map[h[i]] = static_cast<int>(i);
    int n = static_cast<int>(h.size());
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] = map[g.mul(h[i], h[j])];
    if (idx) *idx = map;
    return derived_group_from_table(std::move(t), g.name() + ".sub");
}

std::vector<int> left_transversal(const FiniteGroup& g, const Subgroup& h) {
    std::vector<char> seen(g.order(), 0);
    std::vector<int> t;
    for (int x = 0; x < g.order(); ++x) {
        if (seen[x]) continue;
        t.push_back(x);
        for (int hh : h) seen[g.mul(x, hh)] = 1;
    }
    return t;
}

std::vector<int> random_transversal(const FiniteGroup& g, const Subgroup& h, std::mt19937& rng) {
    std::vector<int> t = left_transversal(g, h);
    std::uniform_int_distribution<size_t> pick(0, h.size() - 1);
    for (int& rep : t) rep = g.mul(rep, h[pick(rng)]);
    return t;
}

int transfer(const FiniteGroup& g, const Subgroup& h, int x, const std::vector<int>* transversal) {
    require(is_subgroup(g, h), "NotSubgroup", "transfer needs a subgroup");
    std::vector<int> t = transversal ? *transversal : left_transversal(g, h);
    // coset index of any element
    std::vector<int> coset(g.order(), -1);
    for (size_t i = 0; i < t.size(); ++i)
        for (int hh : h) coset[g.mul(t[i], hh)] = static_cast<int>(i);
    int prod = 0;
    for (int ti : t) {
        int gt = g.mul(x, ti);
        int j = coset[gt];
        require(j >= 0, "NotSubgroup", "transversal does not cover the group");
        int factor = g.mul(g.inv(t[j]), gt);
        require(contains(h, factor), "NotSubgroup", "transfer factor escapes H");
        prod = g.mul(prod, factor);
    }
    return prod;
}

bool equal_mod_derived(const FiniteGroup& g, const Subgroup& h, int x, int y) {
    std::vector<int> gens;
    for (int a : h)
        for (int b : h) {
            int c = g.comm(a, b);
            if (c != 0) gens.push_back(c);
        }
    Subgroup hh = subgroup_generated(g, std::move(gens));
    return contains(hh, g.mul(x, g.inv(y)));
}

int miller_product(const FiniteGroup& g) {
    require(g.is_abelian(), "NotAbelian", "Miller products are for abelian groups");
    int prod = 0;
    for (int x = 0; x < g.order(); ++x) prod = g.mul(prod, x);
    return prod;
}

// ---- elementary divisors ------------------------------------------------------------

ElementaryDivisors elementary_divisors(const FiniteGroup& g) {
    require(g.is_abelian(), "NotAbelian", "elementary divisors need an abelian group");
    long n = g.order();
    std::vector<long> primes;
    for (long m = n, d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            primes.push_back(d);
            while (m % d == 0) m /= d;
            if (m > 1 && d * d > m) break;
        }
    {
        long m = n;
        for (long p : primes)
            while (m % p == 0) m /= p;
        if (m > 1) primes.push_back(m);
    }

    // per prime: extract a basis of the p-primary part
    std::map<long, std::vector<std::pair<long, int>>> primary;  // p -> [(exponent, basis elem)]
    for (long p : primes) {
        std::vector<int> ap;  // the p-primary subgroup
        for (int x = 0; x < n; ++x) {
            long o = g.element_order(x);
            while (o % p == 0) o /= p;
            if (o == 1) ap.push_back(x);
        }
        Subgroup span{0};
        std::vector<std::pair<long, int>> basis;
        while (static_cast<long>(span.size()) < static_cast<long>(ap.size())) {
            // element of maximal order in A_p / span
            int best = -1;
            long best_oq = 0;
            for (int x : ap) {
                long oq = 1;
                int y = x;
                while (!contains(span, y)) {
                    y = g.pow(y, p);
                    oq *= p;
                }
                if (oq > best_oq) {
                    best_oq = oq;
                    best = x;
                }
            }
            // adjust the representative so its order equals the quotient order
            int adjusted = -1;
            for (int y : span) {
                int cand = g.mul(best, y);
                if (g.element_order(cand) == best_oq) {
                    adjusted = cand;
                    break;
                }
            }
            require(adjusted >= 0, "InternalError", "basis lift failed");
            basis.emplace_back(best_oq, adjusted);
            std::vector<int> gens;
            for (auto& [o, b] : basis) gens.push_back(b);
            span = subgroup_generated(g, gens);
        }
        std::sort(basis.rbegin(), basis.rend());
        primary[p] = std::move(basis);
    }

    size_t depth = 0;
    for (auto& [p, b] : primary) depth = std::max(depth, b.size());
    ElementaryDivisors out;
    out.factors.assign(depth, 1);
    out.basis.assign(depth, 0);
    for (auto& [p, b] : primary) {
        for (size_t i = 0; i < b.size(); ++i) {
            out.factors[i] *= b[i].first;
            out.basis[i] = g.mul(out.basis[i], b[i].second);
        }
    }
    std::reverse(out.factors.begin(), out.factors.end());
    std::reverse(out.basis.begin(), out.basis.end());
    out.two_rank = 0;
    long prod = 1;
    for (size_t i = 0; i < out.factors.size(); ++i) {
        if (out.factors[i] % 2 == 0) ++out.two_rank;
        if (i + 1 < out.factors.size())
            require(out.factors[i + 1] % out.factors[i] == 0, "InternalError", "divisor chain broken");
        require(g.element_order(out.basis[i]) == out.factors[i], "InternalError", "basis order mismatch");
        prod *= out.factors[i];
    }
    require(prod == n || (n == 1 && out.factors.empty()), "InternalError", "factor product mismatch");
    if (n > 1)
        require(static_cast<long>(subgroup_generated(g, out.basis).size()) == n, "InternalError",
                "basis does not generate");
    return out;
}

// ---- alternating bicharacters --------------------------------------------------------

AltBichar AltBichar::make(FiniteGroup a, long modulus, std::vector<long> exponents) {
    require(a.is_abelian(), "NotAbelian", "bicharacters live on abelian groups");
    require(modulus >= 1, "InvalidOrder", "modulus must be positive");
    int n = a.order();
    require(static_cast<long>(exponents.size()) == static_cast<long>(n) * n, "AxiomViolation",
            "exponent matrix has the wrong size");
    AltBichar x;
    x.a_ = std::move(a);
    x.L_ = modulus;
    x.e_ = std::move(exponents);
    for (auto& e : x.e_) e = mod_l(e, modulus);
    for (int i = 0; i < n; ++i)
        require(x.exponent(i, i) == 0, "AxiomViolation", "not alternating");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            require(mod_l(x.exponent(i, j) + x.exponent(j, i), modulus) == 0, "AxiomViolation",
                    "not antisymmetric");
            for (int k = 0; k < n; ++k)
                require(x.exponent(x.a_.mul(i, j), k) ==
                            mod_l(x.exponent(i, k) + x.exponent(j, k), modulus),
                        "AxiomViolation", "not bimultiplicative");
        }
    return x;
}

Subgroup AltBichar::radical() const {
    Subgroup r;
    for (int x = 0; x < a_.order(); ++x) {
        bool in = true;
        for (int y = 0; y < a_.order() && in; ++y) in = exponent(x, y) == 0;
        if (in) r.push_back(x);
    }
    return r;
}

StdSymplectic std_symplectic(long m) {
    FiniteGroup a = FiniteGroup::abelian({m, m});
    int n = a.order();
    std::vector<long> e(static_cast<size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            long a1 = x % m, b1 = x / m, a2 = y % m, b2 = y / m;
            e[static_cast<size_t>(x) * n + y] = mod_l(a1 * b2 - a2 * b1, m);
        }
    AltBichar form = AltBichar::make(a, m, std::move(e));
    return StdSymplectic{std::move(a), std::move(form)};
}

SymplecticBasis symplectic_basis(const AltBichar& x) {
    const FiniteGroup& a = x.group();
    Subgroup rad = x.radical();
    require(rad.size() == 1, "Degenerate", "bicharacter has a nontrivial radical");
    SymplecticBasis out;
    std::vector<int> current;
    for (int i = 0; i < a.order(); ++i) current.push_back(i);
    while (current.size() > 1) {
        long best_ord = 1;
        int bt = -1, bu = -1;
        for (int t : current)
            for (int u : current) {
                long e = x.exponent(t, u);
                long ord = x.modulus() / gcd_l(e == 0 ? x.modulus() : e, x.modulus());
                if (ord > best_ord) {
                    best_ord = ord;
                    bt = t;
                    bu = u;
                }
            }
        require(bt >= 0, "Degenerate", "no hyperbolic pair found");
        out.pairs.emplace_back(bt, bu);
        out.orders.push_back(best_ord);
        std::vector<int> next;
        for (int v : current)
            if (x.exponent(v, bt) == 0 && x.exponent(v, bu) == 0) next.push_back(v);
        current = std::move(next);
    }
    std::reverse(out.pairs.begin(), out.pairs.end());
    std::reverse(out.orders.begin(), out.orders.end());
    long prod = 1;
    for (size_t i = 0; i < out.orders.size(); ++i) {
        prod *= out.orders[i] * out.orders[i];
        if (i + 1 < out.orders.size())
            require(out.orders[i + 1] % out.orders[i] == 0, "InternalError",
                    "symplectic orders are not a divisor chain");
    }
    require(prod == a.order(), "InternalError", "symplectic decomposition incomplete");
    return out;
}

Subgroup maximal_isotropic(const AltBichar& x, std::optional<int> seed) {
    const FiniteGroup& a = x.group();
    require(x.nondegenerate(), "Degenerate", "maximal isotropic needs a nondegenerate form");
    Subgroup h = subgroup_generated(a, seed ? std::vector<int>{*seed} : std::vector<int>{});
    while (true) {
        Subgroup perp;
        for (int v = 0; v < a.order(); ++v) {
            bool ok = true;
            for (int hh : h)
                if (x.exponent(v, hh) != 0) {
                    ok = false;
                    break;
                }
            if (ok) perp.push_back(v);
        }
        if (perp.size() == h.size()) {
            require(static_cast<long>(h.size()) * static_cast<long>(h.size()) == a.order(),
                    "InternalError", "isotropic subgroup is not maximal");
            return h;
        }
        int pick = -1;
        for (int v : perp)
            if (!contains(h, v)) {
                pick = v;
                break;
            }
        require(pick >= 0, "InternalError", "perp does not extend H");
        std::vector<int> gens(h.begin(), h.end());
        gens.push_back(pick);
        h = subgroup_generated(a, std::move(gens));
    }
}

BicyclicCounts bicyclic_counts(long m) {
    require(m >= 1, "InvalidOrder", "m must be positive");
    BicyclicCounts c{m, m * m, m};
    long mm = m;
    for (long p = 2; p * p <= mm; ++p)
        if (mm % p == 0) {
            c.psi = c.psi / p * (p + 1);
            c.order_m_elements = c.order_m_elements / (p * p) * (p * p - 1);
            while (mm % p == 0) mm /= p;
        }
    if (mm > 1) {
        c.psi = c.psi / mm * (mm + 1);
        c.order_m_elements = c.order_m_elements / (mm * mm) * (mm * mm - 1);
    }
    return c;
}

// ---- Sylow-2 classification ------------------------------------------------------------

Sylow2Type sylow2_type(const FiniteGroup& g) {
    require(g.order() <= kMaxOrder, "TooLarge", "group too large");
    long target = 1;
    for (long n = g.order(); n % 2 == 0; n /= 2) target *= 2;

    Subgroup s{0};
    while (static_cast<long>(s.size()) < target) {
        // normalizer of S
        std::vector<int> norm;
        for (int x = 0; x < g.order(); ++x) {
            bool ok = true;
            for (int a : s)
                if (!contains(s, g.conjugate(x, a))) {
                    ok = false;
                    break;
                }
            if (ok) norm.push_back(x);
        }
        int grow = -1;
        for (int x : norm) {
            if (contains(s, x)) continue;
            std::vector<int> gens(s.begin(), s.end());
            gens.push_back(x);
            Subgroup bigger = subgroup_generated(g, std::move(gens));
            if (static_cast<long>(bigger.size()) == 2 * static_cast<long>(s.size())) {
                s = std::move(bigger);
                grow = x;
                break;
            }
        }
        require(grow >= 0, "InternalError", "Sylow growth failed");
    }

    Sylow2Type out;
    out.order = static_cast<long>(s.size());
    out.sylow = s;
    out.contains_klein = false;
    std::vector<int> invs;
    for (int x : s)
        if (x != 0 && g.mul(x, x) == 0) invs.push_back(x);
    for (size_t i = 0; i < invs.size() && !out.contains_klein; ++i)
        for (size_t j = i + 1; j < invs.size() && !out.contains_klein; ++j)
            if (g.mul(invs[i], invs[j]) == g.mul(invs[j], invs[i])) out.contains_klein = true;

    if (out.order == 1) {
        out.kind = Sylow2Type::Kind::trivial;
        return out;
    }
    FiniteGroup sg = subgroup_as_group(g, s);
    bool cyclic = false;
    for (int x = 0; x < sg.order() && !cyclic; ++x) cyclic = sg.element_order(x) == sg.order();
    if (cyclic) {
        out.kind = Sylow2Type::Kind::cyclic;
        return out;
    }
    bool metacyclic = false;
    for (int x = 0; x < sg.order() && !metacyclic; ++x) {
        Subgroup n = subgroup_generated(sg, {x});
        if (!is_normal(sg, n)) continue;
        Quotient q = quotient(sg, n);
        for (int y = 0; y < q.group.order(); ++y)
            if (q.group.element_order(y) == q.group.order()) {
                metacyclic = true;
                break;
            }
    }
    out.kind = metacyclic ? Sylow2Type::Kind::metacyclic_not_cyclic : Sylow2Type::Kind::not_metacyclic;
    return out;
}

}  // namespace lc
