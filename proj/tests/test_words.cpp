#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "selfsim/theta.hpp"
#include "selfsim/words.hpp"
#include "suite_instances.hpp"

using namespace selfsim;

namespace {

WordSet set_of(int n, int N, const std::vector<Word>& words)
{
    WordSet s(n, N);
    for (const Word& w : words)
        s.set(word_index(w, N));
    return s;
}

} // namespace

TEST_CASE("value_of_word")
{
    auto F = testutil::quarter_field();
    REQUIRE(value_of_word(F, { 1, 0 }).rational_value() == Rational(3, 4));
    REQUIRE(value_of_word(F, { 1, 1 }).rational_value() == Rational(15, 16));
    REQUIRE(value_of_word(F, { 0, 0, 0 }).is_zero());
}

TEST_CASE("word values stay in [0, 1)")
{
    for (const auto& inst : testutil::make_suite()) {
        const auto& F = inst.F;
        enumerate_word_values(F, 3, WordSet::default_enum_cap,
            [&](std::size_t, const AlgebraicNumber& v) {
                REQUIRE(v.sign() >= 0);
                REQUIRE((v - F->one()).sign() < 0);
            });
        break; // value bound is field-independent; one field per run suffices
    }
    auto F = testutil::ex42_field(3);
    enumerate_word_values(F, 4, WordSet::default_enum_cap,
        [&](std::size_t, const AlgebraicNumber& v) {
            REQUIRE(v.sign() >= 0);
            REQUIRE((v - F->one()).sign() < 0);
        });
}

TEST_CASE("t_membership finds minimal levels")
{
    auto F = testutil::quarter_field();
    auto r3 = t_membership(F->from_rational(Rational(3)));
    REQUIRE(r3);
    REQUIRE(r3->first == 1);
    REQUIRE(r3->second == Word { 1 });

    auto r15 = t_membership(F->from_rational(Rational(15)));
    REQUIRE(r15);
    REQUIRE(r15->first == 2);
    REQUIRE(r15->second == Word { 1, 1 });
    // minimality: no representation at level 1
    REQUIRE(!find_word_at_level(F->from_rational(Rational(15)), 1));

    REQUIRE(!t_membership(F->from_rational(Rational(1, 2))));
}

TEST_CASE("build_translation")
{
    auto F = testutil::quarter_field();
    TranslationVector tv = build_translation(F, { F->from_rational(Rational(3)) });
    REQUIRE(tv.tau == 1);
    REQUIRE(tv.words == std::vector<Word> { { 0 }, { 1 } });

    auto F41 = testutil::ex41_field(2);
    TranslationVector tv41 = build_translation(F41, { testutil::ex41_t(F41) });
    REQUIRE(tv41.tau == 2);
    REQUIRE(tv41.words == std::vector<Word> { { 0, 0 }, { 2, 2 } });

    REQUIRE_THROWS_MATCHES(
        build_translation(F, { F->from_rational(Rational(3)), F->from_rational(Rational(1)) }),
        Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
            return e.code() == Errc::not_sorted;
        }));
    REQUIRE_THROWS_MATCHES(build_translation(F, { F->from_rational(Rational(1, 2)) }), Error,
        Catch::Matchers::Predicate<Error>(
            [](const Error& e) { return e.code() == Errc::not_in_t && e.index() == 1; }));
}

TEST_CASE("conjugate")
{
    // (0, 4/3, 4) over beta = 1/5, N = 3 conjugates to (0, 8/3, 4)
    auto F = FieldContext::make(BetaSpec::rational(Rational(1, 5), 3));
    TranslationVector tv = build_translation(
        F, { F->from_rational(Rational(4, 3)), F->from_rational(Rational(4)) });
    TranslationVector cj = conjugate(tv);
    REQUIRE(cj.values[1] == F->from_rational(Rational(8, 3)));
    REQUIRE(cj.values[2] == F->from_rational(Rational(4)));

    // involution
    TranslationVector cj2 = conjugate(cj);
    REQUIRE(cj2.values == tv.values);

    // m = 1 is self-conjugate
    auto Fq = testutil::quarter_field();
    TranslationVector one = build_translation(Fq, { Fq->from_rational(Rational(3)) });
    REQUIRE(conjugate(one).values == one.values);
}

TEST_CASE("materialize_E")
{
    auto F = testutil::quarter_field();
    EMap e1 = materialize_E(F, 1);
    REQUIRE(e1.by_value.size() == 2);
    REQUIRE(e1.find(F->zero()));
    REQUIRE(e1.find(F->from_rational(Rational(3, 4))));

    EMap e2 = materialize_E(F, 2);
    REQUIRE(e2.by_value.size() == 4);
    for (const Rational& r : { Rational(0), Rational(3, 16), Rational(3, 4), Rational(15, 16) })
        REQUIRE(e2.find(F->from_rational(r)));

    // E_n is injective for every valid (N, beta): a first differing digit
    // d >= 1 dominates the alternating tail because N beta/(1-beta) < 1.
    auto F41 = testutil::ex41_field(2);
    EMap e = materialize_E(F41, 2);
    REQUIRE(e.by_value.size() == 9);
    for (const auto& [value, words] : e.by_value)
        REQUIRE(words.size() == 1);

    EMap e3 = materialize_E(F41, 3);
    REQUIRE(e3.by_value.size() == 27);
}

TEST_CASE("enumeration cap")
{
    auto F = testutil::quarter_field();
    REQUIRE_THROWS_MATCHES(materialize_E(F, 4, 15), Error,
        Catch::Matchers::Predicate<Error>(
            [](const Error& e) { return e.code() == Errc::cap_exceeded; }));
}

TEST_CASE("omega sets for the quarter field")
{
    auto F = testutil::quarter_field();
    TranslationVector tv = build_translation(F, { F->from_rational(Rational(3)) });
    auto [omega, omega_hat] = omega_sets(tv, 1);
    REQUIRE(omega == set_of(1, 1, { { 0 } }));
    REQUIRE(omega_hat == set_of(1, 1, { { 1 } }));

    // the all-zero word always sits in Omega, the all-N word in Omega-hat
    for (const auto& inst : testutil::make_suite()) {
        TranslationVector t = build_translation(inst.F, inst.ts);
        LevelSets ls = level_sets(t, t.tau);
        REQUIRE(ls.omega.contains(Word(static_cast<std::size_t>(t.tau), 0)));
        REQUIRE(ls.omega_hat.contains(Word(static_cast<std::size_t>(t.tau), inst.F->N())));
    }
}

TEST_CASE("omega sets of the second worked example at level 3")
{
    for (int N : { 2, 3 }) {
        auto F = testutil::ex42_field(N);
        TranslationVector tv = build_translation(F, { testutil::ex42_t(F) });
        REQUIRE(tv.tau == 1);
        auto [omega, omega_hat] = omega_sets(tv, 3);
        std::vector<Word> om, omh;
        for (int i1 = 0; i1 <= N; ++i1)
            for (int i2 = 0; i2 <= N; ++i2) {
                om.push_back({ i1, i2, 0 });
                omh.push_back({ i1, i2, N });
            }
        REQUIRE(omega == set_of(3, N, om));
        REQUIRE(omega_hat == set_of(3, N, omh));

        WordSet W = w_set(tv, 3);
        std::vector<Word> expect;
        for (int i1 = 0; i1 <= N; ++i1)
            for (int i2 = 0; i2 <= N; ++i2) {
                expect.push_back({ i1, i2, 0 });
                expect.push_back({ i1, i2, N });
            }
        REQUIRE(W == set_of(3, N, expect));
    }
}

TEST_CASE("w_set for the quarter field")
{
    auto F = testutil::quarter_field();
    TranslationVector t3 = build_translation(F, { F->from_rational(Rational(3)) });
    REQUIRE(w_set(t3, 1) == WordSet::full(1, 1));

    TranslationVector t15 = build_translation(F, { F->from_rational(Rational(15)) });
    REQUIRE(w_set(t15, 2) == set_of(2, 1, { { 0, 0 }, { 1, 1 } }));
}

TEST_CASE("prepending digits preserves W membership")
{
    // Omega x W^n is contained in W^(n+1) for n in [tau, tau+2]
    for (const auto& inst : testutil::make_suite()) {
        TranslationVector tv = build_translation(inst.F, inst.ts);
        int N = inst.F->N();
        for (int n = tv.tau; n <= tv.tau + 2; ++n) {
            if (pow_checked(static_cast<std::size_t>(N + 1), n + 1, WordSet::default_enum_cap)
                > (std::size_t(1) << 16))
                break;
            WordSet wn = w_set(tv, n);
            WordSet wn1 = w_set(tv, n + 1);
            WordSet lifted(n + 1, N);
            for (std::uint32_t idx : wn.members())
                for (int d = 0; d <= N; ++d)
                    lifted.set(static_cast<std::size_t>(d)
                            * pow_checked(static_cast<std::size_t>(N + 1), n,
                                WordSet::default_enum_cap)
                        + idx);
            REQUIRE(lifted.subset_of(wn1));
        }
    }
}

TEST_CASE("W stabilizes at n0 = tau + vartheta")
{
    for (const auto& inst : testutil::make_suite()) {
        TranslationVector tv = build_translation(inst.F, inst.ts);
        const auto& F = inst.F;
        int N = F->N();
        int n0 = tv.tau + vartheta(F, in_B_N(F));
        for (int n = n0 + 1; n <= n0 + 2; ++n) {
            if (pow_checked(static_cast<std::size_t>(N + 1), n, WordSet::default_enum_cap)
                > (std::size_t(1) << 16))
                break;
            WordSet wn = w_set(tv, n);
            WordSet base = w_set(tv, n0);
            // expected: Omega^(n-n0) x W^(n0)
            WordSet expect(n, N);
            std::size_t copies
                = pow_checked(static_cast<std::size_t>(N + 1), n - n0, WordSet::default_enum_cap);
            std::size_t block
                = pow_checked(static_cast<std::size_t>(N + 1), n0, WordSet::default_enum_cap);
            for (std::size_t c = 0; c < copies; ++c)
                for (std::uint32_t idx : base.members())
                    expect.set(c * block + idx);
            REQUIRE(wn == expect);
        }
    }
}
