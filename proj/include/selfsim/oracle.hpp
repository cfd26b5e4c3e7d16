#pragma once

// Brute-force admissibility check for cross-validation: a vector is
// admissible iff some level l >= tau satisfies
//     union over n in [tau, l] of W^n x Omega^(l-n)  =  Omega^l.
// The word sets are recomputed here from the raw definitions, sharing only
// the exact arithmetic and the E_n multimap with the main pipeline; in
// particular the level-n0 reduction used by the graph is never consulted.

#include <cstdint>
#include <memory>
#include <vector>

#include "selfsim/algnum.hpp"
#include "selfsim/errors.hpp"
#include "selfsim/words.hpp"

namespace selfsim {
namespace oracle {

namespace detail {

// W_t^n straight from the definitions: collect the exact values
// {phi_i(t_j)} over i with all phi_i(t_j) in E_n, match them back to words
// of E_n, same on the reflected side, and take the union.
inline std::vector<bool> w_set_from_definitions(const TranslationVector& tv, int n,
    std::size_t cap)
{
    const auto& F = tv.ctx;
    int m = tv.m();
    std::size_t total = pow_checked(static_cast<std::size_t>(F->N() + 1), n, cap);
    EMap E = materialize_E(F, n, cap);

    AlgebraicNumber beta_n = F->beta().pow(static_cast<unsigned>(n));
    std::vector<AlgebraicNumber> shift;
    for (const AlgebraicNumber& t : tv.values)
        shift.push_back(t * beta_n);

    std::vector<bool> W(total, false);
    enumerate_word_values(F, n, cap, [&](std::size_t, const AlgebraicNumber& v) {
        bool plus_ok = true, minus_ok = true;
        for (int j = 1; j <= m && (plus_ok || minus_ok); ++j) {
            if (plus_ok && !E.find(v + shift[static_cast<std::size_t>(j)]))
                plus_ok = false;
            if (minus_ok && !E.find(v - shift[static_cast<std::size_t>(j)]))
                minus_ok = false;
        }
        for (int j = 0; j <= m; ++j) {
            if (plus_ok)
                for (std::uint32_t w : *E.find(v + shift[static_cast<std::size_t>(j)]))
                    W[w] = true;
            if (minus_ok)
                for (std::uint32_t w : *E.find(v - shift[static_cast<std::size_t>(j)]))
                    W[w] = true;
        }
    });
    return W;
}

inline bool covered_at(const TranslationVector& tv, int level,
    const std::vector<std::vector<bool>>& w_by_level, std::size_t cap)
{
    int N1 = tv.ctx->N() + 1;
    std::size_t total = pow_checked(static_cast<std::size_t>(N1), level, cap);
    std::vector<bool> covered(total, false);
    for (int n = tv.tau; n <= level; ++n) {
        const std::vector<bool>& W = w_by_level[static_cast<std::size_t>(n)];
        std::size_t block = 1;
        for (int i = 0; i < level - n; ++i)
            block *= static_cast<std::size_t>(N1);
        for (std::size_t w = 0; w < W.size(); ++w)
            if (W[w])
                std::fill(covered.begin() + static_cast<long>(w * block),
                    covered.begin() + static_cast<long>((w + 1) * block), true);
    }
    for (bool c : covered)
        if (!c)
            return false;
    return true;
}

} // namespace detail

inline bool criterion_holds(const TranslationVector& tv, int level,
    std::size_t cap = WordSet::default_enum_cap)
{
    if (level < tv.tau)
        fail(Errc::internal, "criterion level below tau");
    std::vector<std::vector<bool>> w_by_level(static_cast<std::size_t>(level) + 1);
    for (int n = tv.tau; n <= level; ++n)
        w_by_level[static_cast<std::size_t>(n)] = detail::w_set_from_definitions(tv, n, cap);
    return detail::covered_at(tv, level, w_by_level, cap);
}

struct BruteResult {
    bool admissible = false;
    int level = 0; // least covering level, or the scanned bound

    friend bool operator==(const BruteResult& a, const BruteResult& b)
    {
        return a.admissible == b.admissible && a.level == b.level;
    }
};

// Scans l = tau..l_max for the first covering level. A negative result is
// only "not admissible up to l_max"; the proof of non-admissibility is the
// graph's job.
inline BruteResult brute_decide(const TranslationVector& tv, int l_max,
    std::size_t cap = WordSet::default_enum_cap)
{
    if (l_max < tv.tau)
        fail(Errc::internal, "l_max below tau");
    std::vector<std::vector<bool>> w_by_level(static_cast<std::size_t>(l_max) + 1);
    for (int level = tv.tau; level <= l_max; ++level) {
        w_by_level[static_cast<std::size_t>(level)]
            = detail::w_set_from_definitions(tv, level, cap);
        if (detail::covered_at(tv, level, w_by_level, cap))
            return { true, level };
    }
    return { false, l_max };
}

} // namespace oracle
} // namespace selfsim
