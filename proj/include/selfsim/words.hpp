#pragma once

// Digit words over {0,...,N}, exact cylinder endpoints phi_w(0), the level
// sets E_n, membership in T = union of beta^(-n) E_n, translation vectors
// with their digit words, and the word sets Omega_t^n / W_t^n that drive the
// overlap graph.
//
// Words are most-significant-digit first: phi_{w_1...w_n} applies phi_{w_1}
// outermost, and the dense index of a word is sum w_k (N+1)^(n-k).

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "selfsim/algnum.hpp"
#include "selfsim/errors.hpp"

namespace selfsim {

using Digit = int;
using Word = std::vector<Digit>;

inline std::size_t pow_checked(std::size_t base, int exp, std::size_t cap)
{
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > cap / base)
            fail(Errc::cap_exceeded,
                "word enumeration " + std::to_string(base) + "^" + std::to_string(exp)
                    + " exceeds cap " + std::to_string(cap));
        r *= base;
    }
    if (r > cap)
        fail(Errc::cap_exceeded,
            "word enumeration " + std::to_string(base) + "^" + std::to_string(exp)
                + " exceeds cap " + std::to_string(cap));
    return r;
}

inline std::size_t word_index(const Word& w, int N)
{
    std::size_t idx = 0;
    for (Digit d : w)
        idx = idx * static_cast<std::size_t>(N + 1) + static_cast<std::size_t>(d);
    return idx;
}

inline Word word_from_index(std::size_t idx, int n, int N)
{
    Word w(static_cast<std::size_t>(n), 0);
    for (int k = n - 1; k >= 0; --k) {
        w[static_cast<std::size_t>(k)] = static_cast<Digit>(idx % static_cast<std::size_t>(N + 1));
        idx /= static_cast<std::size_t>(N + 1);
    }
    return w;
}

inline std::string word_str(const Word& w)
{
    std::string s;
    bool wide = std::any_of(w.begin(), w.end(), [](Digit d) { return d > 9; });
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (wide && i > 0)
            s += '.';
        s += std::to_string(w[i]);
    }
    return s;
}

class WordSet {
public:
    WordSet() = default;

    WordSet(int n, int N, std::size_t cap = default_enum_cap)
        : n_(n)
        , N_(N)
        , bits_(pow_checked(static_cast<std::size_t>(N + 1), n, cap), false)
    {
    }

    static constexpr std::size_t default_enum_cap = std::size_t(1) << 24;

    static WordSet full(int n, int N, std::size_t cap = default_enum_cap)
    {
        WordSet s(n, N, cap);
        std::fill(s.bits_.begin(), s.bits_.end(), true);
        s.count_ = s.bits_.size();
        return s;
    }

    int level() const { return n_; }
    int alphabet_max() const { return N_; }
    std::size_t slots() const { return bits_.size(); }
    std::size_t count() const { return count_; }
    bool empty() const { return count_ == 0; }

    bool test(std::size_t idx) const { return bits_[idx]; }

    bool contains(const Word& w) const
    {
        return static_cast<int>(w.size()) == n_ && bits_[word_index(w, N_)];
    }

    void set(std::size_t idx)
    {
        if (!bits_[idx]) {
            bits_[idx] = true;
            ++count_;
        }
    }

    WordSet complement() const
    {
        WordSet r(n_, N_, bits_.size());
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (!bits_[i])
                r.set(i);
        return r;
    }

    WordSet unite(const WordSet& o) const
    {
        WordSet r = *this;
        for (std::size_t i = 0; i < o.bits_.size(); ++i)
            if (o.bits_[i])
                r.set(i);
        return r;
    }

    bool subset_of(const WordSet& o) const
    {
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] && !o.bits_[i])
                return false;
        return true;
    }

    friend bool operator==(const WordSet& a, const WordSet& b)
    {
        return a.n_ == b.n_ && a.N_ == b.N_ && a.bits_ == b.bits_;
    }

    std::vector<std::uint32_t> members() const
    {
        std::vector<std::uint32_t> v;
        v.reserve(count_);
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i])
                v.push_back(static_cast<std::uint32_t>(i));
        return v;
    }

    std::vector<Word> member_words() const
    {
        std::vector<Word> v;
        v.reserve(count_);
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i])
                v.push_back(word_from_index(i, n_, N_));
        return v;
    }

private:
    int n_ = 0;
    int N_ = 0;
    std::vector<bool> bits_;
    std::size_t count_ = 0;
};

// phi_w(0) = (1-beta)/N * sum w_k beta^(k-1), exactly.
inline AlgebraicNumber value_of_word(const std::shared_ptr<const FieldContext>& F, const Word& w)
{
    AlgebraicNumber beta = F->beta();
    AlgebraicNumber acc = F->zero();
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        if (*it < 0 || *it > F->N())
            fail(Errc::parse_error, "digit out of range");
        acc = acc * beta + F->from_rational(Rational(*it));
    }
    return acc * F->digit_step();
}

// Enumerates all words of length n in index order, handing each (index,
// exact value phi_w(0)) to the callback. Values are maintained incrementally.
template <typename Callback>
inline void enumerate_word_values(const std::shared_ptr<const FieldContext>& F, int n,
    std::size_t cap, Callback&& cb)
{
    int N = F->N();
    std::size_t total = pow_checked(static_cast<std::size_t>(N + 1), n, cap);

    // weight[k][d] = d * step * beta^k for 0-based position k
    AlgebraicNumber step = F->digit_step();
    std::vector<std::vector<AlgebraicNumber>> weight;
    AlgebraicNumber pos_weight = step;
    for (int k = 0; k < n; ++k) {
        std::vector<AlgebraicNumber> row;
        row.push_back(F->zero());
        for (int d = 1; d <= N; ++d)
            row.push_back(pos_weight * Rational(d));
        weight.push_back(std::move(row));
        pos_weight = pos_weight * F->beta();
    }

    std::vector<Digit> digits(static_cast<std::size_t>(std::max(n, 1)), 0);
    // prefix[k] = value of digits[0..k-1]
    std::vector<AlgebraicNumber> prefix(static_cast<std::size_t>(n) + 1, F->zero());
    cb(std::size_t(0), prefix[static_cast<std::size_t>(n)]);
    for (std::size_t idx = 1; idx < total; ++idx) {
        int p = n - 1;
        while (digits[static_cast<std::size_t>(p)] == N) {
            digits[static_cast<std::size_t>(p)] = 0;
            --p;
        }
        ++digits[static_cast<std::size_t>(p)];
        prefix[static_cast<std::size_t>(p + 1)] = prefix[static_cast<std::size_t>(p)]
            + weight[static_cast<std::size_t>(p)][static_cast<std::size_t>(digits[static_cast<std::size_t>(p)])];
        for (int k = p + 1; k < n; ++k)
            prefix[static_cast<std::size_t>(k + 1)] = prefix[static_cast<std::size_t>(k)];
        cb(idx, prefix[static_cast<std::size_t>(n)]);
    }
}

// E_n as a value -> words multimap. Every key maps to all words of length n
// whose cylinder endpoint equals it.
struct EMap {
    int n = 0;
    std::unordered_map<AlgebraicNumber, std::vector<std::uint32_t>, AlgebraicNumberHash> by_value;

    const std::vector<std::uint32_t>* find(const AlgebraicNumber& v) const
    {
        auto it = by_value.find(v);
        return it == by_value.end() ? nullptr : &it->second;
    }
};

inline EMap materialize_E(const std::shared_ptr<const FieldContext>& F, int n,
    std::size_t cap = WordSet::default_enum_cap)
{
    EMap E;
    E.n = n;
    enumerate_word_values(F, n, cap, [&](std::size_t idx, const AlgebraicNumber& v) {
        E.by_value[v].push_back(static_cast<std::uint32_t>(idx));
    });
    return E;
}

struct TranslationVector {
    std::shared_ptr<const FieldContext> ctx;
    std::vector<AlgebraicNumber> values; // t_0 = 0 < t_1 < ... < t_m
    std::vector<Word> words;             // digit words padded to length tau
    int tau = 0;

    int m() const { return static_cast<int>(values.size()) - 1; }
};

namespace detail {

inline bool digit_dfs(const std::vector<AlgebraicNumber>& pos_weight,
    const std::vector<AlgebraicNumber>& tail_max, int n, int N, std::size_t k,
    const AlgebraicNumber& residual, Word& digits)
{
    if (k == static_cast<std::size_t>(n))
        return residual.is_zero();
    for (Digit d = 0; d <= N; ++d) {
        AlgebraicNumber rest = residual - pos_weight[k] * Rational(d);
        if (rest.sign() < 0)
            break; // larger digits only overshoot further
        if ((rest - tail_max[k + 1]).sign() > 0)
            continue; // remaining positions cannot absorb this much
        digits.push_back(d);
        if (digit_dfs(pos_weight, tail_max, n, N, k + 1, rest, digits))
            return true;
        digits.pop_back();
    }
    return false;
}

} // namespace detail

// Searches for digits w_1..w_n with phi_w(0) = v * beta^n, i.e. a level-n
// witness of v in T_n. Pruning is exact: a partial assignment survives only
// while the residual stays within [0, attainable tail maximum].
inline std::optional<Word> find_word_at_level(const AlgebraicNumber& v, int n)
{
    const auto& F = v.context();
    int N = F->N();
    AlgebraicNumber step = F->digit_step();
    AlgebraicNumber beta = F->beta();

    std::vector<AlgebraicNumber> pos_weight; // step * beta^(k-1), k = 1..n
    pos_weight.push_back(step);
    for (int k = 1; k < n; ++k)
        pos_weight.push_back(pos_weight.back() * beta);
    std::vector<AlgebraicNumber> tail_max(static_cast<std::size_t>(n) + 1, F->zero());
    for (int k = n - 1; k >= 0; --k)
        tail_max[static_cast<std::size_t>(k)] = tail_max[static_cast<std::size_t>(k) + 1]
            + pos_weight[static_cast<std::size_t>(k)] * Rational(N);

    Word digits;
    AlgebraicNumber target = v * beta.pow(static_cast<unsigned>(n));
    if (detail::digit_dfs(pos_weight, tail_max, n, N, 0, target, digits))
        return digits;
    return std::nullopt;
}

// Minimal n with v in T_n = beta^(-n) E_n, together with a witnessing word.
// A nullopt return is a proof of v not in T: a word at level n that is not a
// padded lower-level word starts with a nonzero digit, which forces
// (1-beta)/N <= v beta^n, and that fails for all n past the scanned range.
inline std::optional<std::pair<int, Word>> t_membership(const AlgebraicNumber& v)
{
    const auto& F = v.context();
    if (v.sign() <= 0)
        fail(Errc::internal, "t_membership requires a positive value");
    AlgebraicNumber step = F->digit_step();
    AlgebraicNumber beta = F->beta();
    AlgebraicNumber scaled = v; // v * beta^n
    for (int n = 1; n <= 4096; ++n) {
        scaled = scaled * beta;
        if ((scaled - step).sign() < 0)
            return std::nullopt;
        if (auto w = find_word_at_level(v, n))
            return std::make_pair(n, *w);
    }
    fail(Errc::internal, "t_membership scan exceeded bound");
}

// Builds the translation vector (0, t_1, ..., t_m) from its positive entries.
inline TranslationVector build_translation(const std::shared_ptr<const FieldContext>& F,
    const std::vector<AlgebraicNumber>& positive_entries)
{
    if (positive_entries.empty())
        fail(Errc::unsupported, "translation vector needs m >= 1");
    TranslationVector tv;
    tv.ctx = F;
    tv.values.push_back(F->zero());
    AlgebraicNumber prev = F->zero();
    for (const AlgebraicNumber& t : positive_entries) {
        if ((t - prev).sign() <= 0)
            fail(Errc::not_sorted, "translation entries must be strictly increasing and positive");
        prev = t;
        tv.values.push_back(t);
    }

    std::vector<std::pair<int, Word>> reps;
    for (int j = 1; j <= tv.m(); ++j) {
        auto r = t_membership(tv.values[static_cast<std::size_t>(j)]);
        if (!r)
            fail(Errc::not_in_t, "t_" + std::to_string(j) + " is not in T", j);
        reps.push_back(*r);
        tv.tau = std::max(tv.tau, r->first);
    }

    tv.words.push_back(Word(static_cast<std::size_t>(tv.tau), 0));
    for (auto& [n, w] : reps) {
        Word padded(static_cast<std::size_t>(tv.tau - n), 0);
        padded.insert(padded.end(), w.begin(), w.end());
        tv.words.push_back(std::move(padded));
    }
    return tv;
}

inline TranslationVector translation_from_words(const std::shared_ptr<const FieldContext>& F,
    const std::vector<Word>& words)
{
    AlgebraicNumber beta_inv = F->beta().inverse();
    std::vector<AlgebraicNumber> values;
    for (const Word& w : words) {
        if (w.empty())
            fail(Errc::parse_error, "translation digit word is empty");
        values.push_back(value_of_word(F, w) * beta_inv.pow(static_cast<unsigned>(w.size())));
    }
    return build_translation(F, values);
}

// Conjugate vector (t_m - t_{m-j})_j; may fail T-membership, which the
// caller treats as a branch outcome.
inline TranslationVector conjugate(const TranslationVector& tv)
{
    std::vector<AlgebraicNumber> entries;
    const AlgebraicNumber& top = tv.values.back();
    for (int j = 1; j <= tv.m(); ++j)
        entries.push_back(top - tv.values[static_cast<std::size_t>(tv.m() - j)]);
    return build_translation(tv.ctx, entries);
}

struct LevelSets {
    int n = 0;
    WordSet omega;     // words i with phi_i(t_j) in E_n for all j
    WordSet omega_hat; // words i with phi_i(-t_j) in E_n for all j
    WordSet A;         // words of E_n hit by {phi_i(t_j)}
    WordSet A_hat;     // words of E_n hit by {phi_i(-t_j)}
    WordSet W;         // A union A_hat
};

inline LevelSets level_sets(const TranslationVector& tv, int n,
    std::size_t cap = WordSet::default_enum_cap)
{
    const auto& F = tv.ctx;
    if (n < tv.tau)
        fail(Errc::internal, "level below tau");
    int N = F->N();
    LevelSets ls { n, WordSet(n, N, cap), WordSet(n, N, cap), WordSet(n, N, cap),
        WordSet(n, N, cap), WordSet(n, N, cap) };

    EMap E = materialize_E(F, n, cap);
    AlgebraicNumber beta_n = F->beta().pow(static_cast<unsigned>(n));
    std::vector<AlgebraicNumber> shift; // beta^n t_j, j = 0..m
    for (const AlgebraicNumber& t : tv.values)
        shift.push_back(t * beta_n);

    int m = tv.m();
    enumerate_word_values(F, n, cap, [&](std::size_t idx, const AlgebraicNumber& v) {
        bool in_omega = true, in_omega_hat = true;
        for (int j = 1; j <= m && (in_omega || in_omega_hat); ++j) {
            const AlgebraicNumber& s = shift[static_cast<std::size_t>(j)];
            if (in_omega && !E.find(v + s))
                in_omega = false;
            if (in_omega_hat && !E.find(v - s))
                in_omega_hat = false;
        }
        if (in_omega) {
            ls.omega.set(idx);
            for (int j = 0; j <= m; ++j) {
                const auto* pre = E.find(v + shift[static_cast<std::size_t>(j)]);
                for (std::uint32_t w : *pre)
                    ls.A.set(w);
            }
        }
        if (in_omega_hat) {
            ls.omega_hat.set(idx);
            for (int j = 0; j <= m; ++j) {
                const auto* pre = E.find(v - shift[static_cast<std::size_t>(j)]);
                for (std::uint32_t w : *pre)
                    ls.A_hat.set(w);
            }
        }
    });

    ls.W = ls.A.unite(ls.A_hat);
    return ls;
}

inline std::pair<WordSet, WordSet> omega_sets(const TranslationVector& tv, int n,
    std::size_t cap = WordSet::default_enum_cap)
{
    LevelSets ls = level_sets(tv, n, cap);
    return { std::move(ls.omega), std::move(ls.omega_hat) };
}

inline WordSet w_set(const TranslationVector& tv, int n,
    std::size_t cap = WordSet::default_enum_cap)
{
    return level_sets(tv, n, cap).W;
}

} // namespace selfsim
