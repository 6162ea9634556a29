#pragma once

#include <localconst/epsilon.hpp>
#include <localconst/group.hpp>

#include <array>

namespace lc {

enum class LambdaProvenance { closed_form, gauss_sum, epsilon_product, classifier };

struct LambdaValue {
    ScaledCyclotomic value;
    LambdaProvenance provenance = LambdaProvenance::closed_form;
};

// even-degree unramified extension: lambda = (-1)^{n(psi)}
LambdaValue lambda_unramified(long n_psi, long degree);

// odd-degree Galois extension: lambda = 1
LambdaValue lambda_odd(long degree);

enum class TamePsiChoice { conductor_minus_one, canonical };

// tamely ramified quadratic K/F with q_F = p^s (p odd). For the canonical psi
// the discriminant correction needs the square class of the residue of
// Tr_{F/F_0}(p c); it is computed when e_{F/Q_p} = 1 and must be supplied
// otherwise.
LambdaValue lambda_tame_quadratic(const LocalFieldDesc& F, TamePsiChoice choice,
                                  std::optional<bool> trace_residue_is_square = std::nullopt);

// the same lambda(psi_{-1}) through the residue-field Gauss sum
LambdaValue lambda_tame_quadratic_gauss(const LocalFieldDesc& F);

// lambda for the Klein-four extension of F with q_F = q, p odd
LambdaValue lambda_klein4(long q);

struct Q2LambdaRow {
    long d;
    LambdaValue lambda;
    ScaledCyclotomic expected;
    bool pass;
};

struct Q2LambdaTable {
    std::array<Q2LambdaRow, 7> rows;
    ScaledCyclotomic product;
    bool product_pass;
    bool all_pass;
};

// the seven quadratic lambdas over Q_2 via epsilon sums on the catalogue
Q2LambdaTable lambda_q2_table();

struct ClassifierContext {
    long q = 0;      // residue field size, when the arithmetic context is known
    long n_psi = 0;  // conductor of psi
};

struct ClassifierResult {
    int case_no;           // 1..4 following the Sylow-2 structure split
    std::string symbolic;  // "1", "W(alpha)", "c1G*W(alpha)", "lambda_1^V"
    std::optional<LambdaValue> value;
    Sylow2Type sylow;
};

ClassifierResult lambda_classifier(const FiniteGroup& g,
                                   std::optional<ClassifierContext> ctx = std::nullopt);

struct IdentityRow {
    std::string what;
    bool pass;
};

struct IdentityReport {
    std::vector<IdentityRow> rows;
    bool all_pass = true;
};

// the lambda identity suite: the Q_2 product, the two-ramified-quadratics
// relations, the four-row sign table, and lambda^2 = Delta(-1), over Q_p for
// the given odd primes and both parities of n(psi)
IdentityReport lambda_identity_suite(const std::vector<long>& odd_primes);

}  // namespace lc
