#pragma once

// Membership of beta in B_N (uniqueness of bounded-digit expansions) and the
// graph-depth offset vartheta(beta).
//
// B_N holds exactly when sum i_k beta^k = sum j_k beta^k with i_k in
// {0..2N}, j_k in {0..N} forces i = j; equivalently, no nonzero integer
// vector c in [-2N, N]^n satisfies sum c_k beta^k = 0.

#include <memory>
#include <optional>
#include <vector>

#include "selfsim/algnum.hpp"
#include "selfsim/errors.hpp"

namespace selfsim {

enum class BnVerdict { InBN, NotInBN, Unknown };

enum class BnProvenance {
    rule_small_beta,
    rule_rational_denominator,
    relation_search,
    user_assertion,
};

struct BnStatus {
    BnVerdict verdict = BnVerdict::Unknown;
    // For NotInBN via search: coefficients c_1..c_n of an exact relation
    // sum c_k beta^k = 0, each c_k = j_k - i_k in [-2N, N], not all zero.
    std::vector<Integer> witness;
    BnProvenance provenance = BnProvenance::relation_search;
    int search_degree = 0;

    static BnStatus asserted(bool in_bn)
    {
        BnStatus s;
        s.verdict = in_bn ? BnVerdict::InBN : BnVerdict::NotInBN;
        s.provenance = BnProvenance::user_assertion;
        return s;
    }
};

namespace detail {

// Depth-first search for a relation of length exactly n. Digits are chosen
// from position 1 upward, largest first, so partial sums shrink monotonically
// within a level and the attainable-tail bound prunes exactly:
// a completion exists only if P_j is within [-N*R_j, 2N*R_j], where
// R_j = sum_{k=j+1}^n beta^k.
inline bool relation_dfs(const std::shared_ptr<const FieldContext>& F, int n,
    const std::vector<AlgebraicNumber>& beta_pow,
    const std::vector<AlgebraicNumber>& tail_sum,
    int position, const AlgebraicNumber& partial, std::vector<Integer>& digits)
{
    int N = F->N();
    if (position == n)
        return partial.is_zero();
    for (int c = N; c >= -2 * N; --c) {
        if (position == 0 && c == 0)
            continue;
        AlgebraicNumber next = partial + beta_pow[static_cast<std::size_t>(position + 1)] * Rational(c);
        const AlgebraicNumber& tail = tail_sum[static_cast<std::size_t>(position + 2)];
        if ((next + tail * Rational(N)).sign() < 0)
            break; // digits descend, so every later c is smaller still
        if ((next - tail * Rational(2 * N)).sign() > 0)
            continue;
        digits.push_back(Integer(c));
        if (relation_dfs(F, n, beta_pow, tail_sum, position + 1, next, digits))
            return true;
        digits.pop_back();
    }
    return false;
}

} // namespace detail

// Bounded search for a nonzero c in [-2N, N]^n with sum c_k beta^k = 0,
// scanning n = 1..search_degree. First find wins.
inline std::optional<std::vector<Integer>> find_relation(
    const std::shared_ptr<const FieldContext>& F, int search_degree)
{
    std::vector<AlgebraicNumber> beta_pow;
    beta_pow.push_back(F->one());
    for (int k = 1; k <= search_degree; ++k)
        beta_pow.push_back(beta_pow.back() * F->beta());

    for (int n = 1; n <= search_degree; ++n) {
        std::vector<AlgebraicNumber> tail_sum(static_cast<std::size_t>(n) + 2, F->zero());
        for (int j = n - 1; j >= 0; --j)
            tail_sum[static_cast<std::size_t>(j + 1)]
                = tail_sum[static_cast<std::size_t>(j + 2)] + beta_pow[static_cast<std::size_t>(j + 1)];
        std::vector<Integer> digits;
        if (detail::relation_dfs(F, n, beta_pow, tail_sum, 0, F->zero(), digits))
            return digits;
    }
    return std::nullopt;
}

inline BnStatus in_B_N(const std::shared_ptr<const FieldContext>& F, int search_degree = 12)
{
    int N = F->N();
    BnStatus status;
    status.search_degree = search_degree;

    if (F->is_rational_field()) {
        // For beta = p/q in lowest terms with q >= 2N+1, reducing
        // sum c_k p^k q^(n-k) = 0 modulo q forces every c_k to vanish.
        Rational b = F->rational_beta();
        if (b.get_den() >= 2 * N + 1) {
            status.verdict = BnVerdict::InBN;
            status.provenance = BnProvenance::rule_rational_denominator;
            return status;
        }
    } else {
        AlgebraicNumber gap = F->beta() - F->from_rational(Rational(1, 2 * N + 1));
        if (gap.sign() <= 0) {
            status.verdict = BnVerdict::InBN;
            status.provenance = BnProvenance::rule_small_beta;
            return status;
        }
    }

    if (auto witness = find_relation(F, search_degree)) {
        status.verdict = BnVerdict::NotInBN;
        status.provenance = BnProvenance::relation_search;
        status.witness = std::move(*witness);
        return status;
    }

    status.verdict = BnVerdict::Unknown;
    return status;
}

// Sign of (N+1) beta + N beta^(n+1) - 1. The polynomial is strictly
// increasing on (0, 1/(N+1)), so this compares beta against beta_n.
inline int beta_n_compare(const std::shared_ptr<const FieldContext>& F, int n)
{
    if (n < 1)
        fail(Errc::internal, "beta_n_compare requires n >= 1");
    int N = F->N();
    AlgebraicNumber beta = F->beta();
    AlgebraicNumber value = beta * Rational(N + 1)
        + beta.pow(static_cast<unsigned>(n + 1)) * Rational(N) - F->one();
    return value.sign();
}

inline int vartheta(const std::shared_ptr<const FieldContext>& F, const BnStatus& bn)
{
    if (bn.verdict == BnVerdict::Unknown)
        fail(Errc::unresolved_bn,
            "membership of beta in B_N is unresolved; raise the search degree "
            "or assert membership in the problem options");
    if (bn.verdict == BnVerdict::InBN)
        return 0;
    // beta_n increases to 1/(N+1) > beta, so the loop terminates.
    for (int n = 1; n <= 1 << 20; ++n)
        if (beta_n_compare(F, n) <= 0)
            return n;
    fail(Errc::internal, "vartheta search exceeded bound");
}

} // namespace selfsim
