#pragma once

// Top-level decision: the union of Gamma with its translates is self-similar
// iff the direct vector or its conjugate is admissible, and a vector in
// T^(m+1) is admissible iff its overlap graph at level n0 = tau + vartheta
// is acyclic. Admissible branches yield an explicit generating system.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "selfsim/algnum.hpp"
#include "selfsim/errors.hpp"
#include "selfsim/graph.hpp"
#include "selfsim/theta.hpp"
#include "selfsim/words.hpp"

namespace selfsim {

enum class Verdict { SelfSimilar, NotSelfSimilar, Unknown };

enum class BranchUsed { direct, conjugate, both_failed_T, neither_admissible, unresolved };

struct BranchOutcome {
    enum class Status { admissible, cycle, not_in_T, skipped };

    Status status = Status::skipped;
    int failed_index = -1; // not_in_T: offending entry, 1-based
    int tau = -1;
    int n0 = -1;
    long v_size = -1;
    long edges = -1;
    std::vector<Word> vertices;
    std::vector<Word> cycle; // closed walk, first == last
    int longest_path = -1;   // admissible branches only
    int witness_level = -1;
};

struct WitnessMap {
    Word word;            // the composing digit word i
    int j = 0;            // translate index
    bool reflected = false;
    AlgebraicNumber ratio;  // signed contraction ratio
    AlgebraicNumber offset;
};

struct Witness {
    int level = 0; // covering level l
    std::vector<Word> I1, I2;
    std::vector<WitnessMap> maps;
    std::shared_ptr<const FieldContext> ctx;
    std::vector<AlgebraicNumber> translate_values; // t_0..t_m of the decided vector
};

struct DecisionReport {
    Verdict verdict = Verdict::Unknown;
    BranchUsed branch = BranchUsed::unresolved;
    BnStatus bn;
    int vartheta = -1;
    BranchOutcome direct, conj;
    std::optional<Witness> witness;
};

struct DecideConfig {
    int search_degree = 12;
    std::size_t enum_cap = WordSet::default_enum_cap;
    std::optional<bool> assert_in_bn;
    bool evaluate_both_branches = false;
    bool crosscheck_m1 = true;
};

// Corollary closed form for m = 1 and beta in B_N: the union is self-similar
// iff t = i (1-beta)/N * beta^(-k) with 1 <= i <= floor((N+1)/2), k >= 1.
inline Verdict closed_form_m1(const std::shared_ptr<const FieldContext>& F, const BnStatus& bn,
    const AlgebraicNumber& t)
{
    if (bn.verdict != BnVerdict::InBN)
        fail(Errc::requires_bn, "closed form is only valid for beta in B_N");
    if (t.sign() <= 0)
        fail(Errc::unsupported, "closed form needs t > 0");
    int N = F->N();
    AlgebraicNumber beta_inv = F->beta().inverse();
    AlgebraicNumber bound = F->digit_step();
    for (int k = 1; k <= 4096; ++k) {
        bound = bound * beta_inv; // (1-beta)/N * beta^(-k)
        if ((bound - t).sign() > 0)
            return Verdict::NotSelfSimilar;
        AlgebraicNumber q = t / bound;
        if (q.is_rational() && is_integer(q.rational_value())) {
            Integer i = numerator(q.rational_value());
            if (i >= 1 && 2 * i <= N + 1)
                return Verdict::SelfSimilar;
        }
    }
    fail(Errc::internal, "closed form scan exceeded bound");
}

// Assembles the generating system certified by an acyclic branch. The
// covering level is l = n0 + L + 1 (or n0 itself when W^n0 already covers
// everything): a word of length l avoiding W at every offset would trace a
// path of length L+1 through the graph, which cannot exist.
//
// When the admissible branch is the conjugate vector, the maps are
// conjugated by x -> (1 + t_m) - x so that they generate the union for the
// vector the caller originally asked about.
inline Witness extract_witness(const TranslationVector& branch_tv,
    const std::vector<AlgebraicNumber>& original_values, int n0, int longest_path,
    bool v_empty, bool from_conjugate_branch, std::size_t enum_cap)
{
    const auto& F = branch_tv.ctx;
    int N = F->N();
    Witness w;
    w.level = v_empty ? n0 : n0 + longest_path + 1;
    w.ctx = F;
    w.translate_values = original_values;

    std::size_t total = pow_checked(static_cast<std::size_t>(N + 1), w.level, enum_cap);
    std::vector<bool> covered(total, false);

    std::vector<std::pair<int, std::vector<std::uint32_t>>> omega_levels, omega_hat_levels;
    for (int n = n0; n <= w.level; ++n) {
        LevelSets ls = level_sets(branch_tv, n, enum_cap);
        omega_levels.emplace_back(n, ls.omega.members());
        omega_hat_levels.emplace_back(n, ls.omega_hat.members());
        std::size_t block = 1;
        for (int i = 0; i < w.level - n; ++i)
            block *= static_cast<std::size_t>(N + 1);
        for (std::uint32_t word : ls.W.members())
            std::fill(covered.begin() + static_cast<long>(word * block),
                covered.begin() + static_cast<long>((word + 1) * block), true);
    }
    for (bool c : covered)
        if (!c)
            fail(Errc::internal, "admissible branch failed the covering identity");

    AlgebraicNumber one_plus_top = F->one() + branch_tv.values.back();
    auto push_maps = [&](const Word& word, bool reflected) {
        AlgebraicNumber scale = F->beta().pow(static_cast<unsigned>(word.size()));
        AlgebraicNumber base = value_of_word(F, word); // phi_word(0)
        for (int j = 0; j <= branch_tv.m(); ++j) {
            WitnessMap m;
            m.word = word;
            m.j = j;
            m.reflected = reflected;
            if (!reflected) {
                m.ratio = scale;
                m.offset = base + branch_tv.values[static_cast<std::size_t>(j)];
            } else {
                m.ratio = -scale;
                m.offset = base + scale + branch_tv.values[static_cast<std::size_t>(j)];
            }
            if (from_conjugate_branch)
                m.offset = one_plus_top * (F->one() - m.ratio) - m.offset;
            w.maps.push_back(std::move(m));
        }
    };

    for (auto& [n, idxs] : omega_levels)
        for (std::uint32_t idx : idxs) {
            Word word = word_from_index(idx, n, N);
            w.I1.push_back(word);
            push_maps(word, false);
        }
    for (auto& [n, idxs] : omega_hat_levels)
        for (std::uint32_t idx : idxs) {
            Word word = word_from_index(idx, n, N);
            w.I2.push_back(word);
            push_maps(word, true);
        }
    return w;
}

namespace detail {

inline std::vector<Word> to_words(const std::vector<std::uint32_t>& idxs, int n, int N)
{
    std::vector<Word> ws;
    ws.reserve(idxs.size());
    for (std::uint32_t i : idxs)
        ws.push_back(word_from_index(i, n, N));
    return ws;
}

// Runs the graph pipeline on one vector known to lie in T^(m+1).
inline void evaluate_branch(const TranslationVector& tv, int theta, std::size_t enum_cap,
    BranchOutcome& out)
{
    out.tau = tv.tau;
    out.n0 = tv.tau + theta;
    LevelSets ls = level_sets(tv, out.n0, enum_cap);
    WordSet V = ls.W.complement();
    out.v_size = static_cast<long>(V.count());
    out.vertices = V.member_words();
    OverlapGraph g = build_graph(V);
    out.edges = static_cast<long>(g.edge_count());
    if (auto cyc = has_cycle(g)) {
        out.status = BranchOutcome::Status::cycle;
        out.cycle = to_words(*cyc, out.n0, V.alphabet_max());
    } else {
        out.status = BranchOutcome::Status::admissible;
        out.longest_path = longest_path_length(g);
        out.witness_level = V.empty() ? out.n0 : out.n0 + out.longest_path + 1;
    }
}

} // namespace detail

inline DecisionReport decide(const std::shared_ptr<const FieldContext>& F,
    const std::vector<AlgebraicNumber>& positive_entries, const DecideConfig& config = {})
{
    DecisionReport rep;
    rep.bn = config.assert_in_bn ? BnStatus::asserted(*config.assert_in_bn)
                                 : in_B_N(F, config.search_degree);
    if (rep.bn.verdict != BnVerdict::Unknown)
        rep.vartheta = vartheta(F, rep.bn);

    // T-membership of both vectors first; it needs no B_N resolution and
    // a double failure already decides the instance.
    std::optional<TranslationVector> tv_dir, tv_conj;
    try {
        tv_dir = build_translation(F, positive_entries);
        rep.direct.status = BranchOutcome::Status::skipped;
        rep.direct.tau = tv_dir->tau;
    } catch (const Error& e) {
        if (e.code() != Errc::not_in_t)
            throw;
        rep.direct.status = BranchOutcome::Status::not_in_T;
        rep.direct.failed_index = e.index();
    }

    std::vector<AlgebraicNumber> conj_entries;
    {
        std::vector<AlgebraicNumber> full = positive_entries;
        full.insert(full.begin(), F->zero());
        const AlgebraicNumber& top = full.back();
        for (std::size_t j = 1; j < full.size(); ++j)
            conj_entries.push_back(top - full[full.size() - 1 - j]);
    }
    try {
        tv_conj = build_translation(F, conj_entries);
        rep.conj.status = BranchOutcome::Status::skipped;
        rep.conj.tau = tv_conj->tau;
    } catch (const Error& e) {
        if (e.code() != Errc::not_in_t)
            throw;
        rep.conj.status = BranchOutcome::Status::not_in_T;
        rep.conj.failed_index = e.index();
    }

    if (!tv_dir && !tv_conj) {
        rep.verdict = Verdict::NotSelfSimilar;
        rep.branch = BranchUsed::both_failed_T;
        return rep;
    }

    if (rep.bn.verdict == BnVerdict::Unknown) {
        rep.verdict = Verdict::Unknown;
        rep.branch = BranchUsed::unresolved;
        return rep;
    }

    std::vector<AlgebraicNumber> original_values;
    original_values.push_back(F->zero());
    for (const AlgebraicNumber& t : positive_entries)
        original_values.push_back(t);

    if (tv_dir) {
        detail::evaluate_branch(*tv_dir, rep.vartheta, config.enum_cap, rep.direct);
        if (rep.direct.status == BranchOutcome::Status::admissible) {
            rep.verdict = Verdict::SelfSimilar;
            rep.branch = BranchUsed::direct;
            rep.witness = extract_witness(*tv_dir, original_values, rep.direct.n0,
                rep.direct.longest_path, rep.direct.v_size == 0, false, config.enum_cap);
            if (config.evaluate_both_branches && tv_conj)
                detail::evaluate_branch(*tv_conj, rep.vartheta, config.enum_cap, rep.conj);
        }
    }
    if (rep.verdict != Verdict::SelfSimilar && tv_conj) {
        detail::evaluate_branch(*tv_conj, rep.vartheta, config.enum_cap, rep.conj);
        if (rep.conj.status == BranchOutcome::Status::admissible) {
            rep.verdict = Verdict::SelfSimilar;
            rep.branch = BranchUsed::conjugate;
            rep.witness = extract_witness(*tv_conj, original_values, rep.conj.n0,
                rep.conj.longest_path, rep.conj.v_size == 0, true, config.enum_cap);
        }
    }

    if (rep.verdict != Verdict::SelfSimilar) {
        rep.verdict = Verdict::NotSelfSimilar;
        rep.branch = BranchUsed::neither_admissible;
    }

    if (config.crosscheck_m1 && positive_entries.size() == 1
        && rep.bn.verdict == BnVerdict::InBN) {
        Verdict cf = closed_form_m1(F, rep.bn, positive_entries[0]);
        if (cf != rep.verdict)
            fail(Errc::internal, "graph pipeline disagrees with the m=1 closed form");
    }
    return rep;
}

} // namespace selfsim
