#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "selfsim/theta.hpp"
#include "suite_instances.hpp"

using namespace selfsim;

namespace {

AlgebraicNumber witness_value(const std::shared_ptr<const FieldContext>& F,
    const std::vector<Integer>& c)
{
    std::vector<Rational> coeffs;
    coeffs.push_back(Rational(0));
    for (const Integer& z : c)
        coeffs.push_back(Rational(z));
    return eval_poly(F, coeffs);
}

} // namespace

TEST_CASE("rational rule")
{
    auto F = FieldContext::make(BetaSpec::rational(Rational(1, 5), 1));
    BnStatus s = in_B_N(F);
    REQUIRE(s.verdict == BnVerdict::InBN);
    REQUIRE(s.provenance == BnProvenance::rule_rational_denominator);

    // q = 4 < 2N+1 = 5 for N = 2: the relation beta = 4 beta^2 shows up
    auto F2 = FieldContext::make(BetaSpec::rational(Rational(1, 4), 2));
    BnStatus s2 = in_B_N(F2);
    REQUIRE(s2.verdict == BnVerdict::NotInBN);
    REQUIRE(witness_value(F2, s2.witness).is_zero());
}

TEST_CASE("small beta rule applies to irrational bases")
{
    // root of x^2 + 4x - 1 = 0 is sqrt(5) - 2 ~ 0.236 <= 1/3 for N = 1
    qpoly::IPoly p = { Integer(-1), Integer(4), Integer(1) };
    auto F = FieldContext::make(BetaSpec::root(p, Rational(23, 100), Rational(6, 25), 1));
    BnStatus s = in_B_N(F);
    REQUIRE(s.verdict == BnVerdict::InBN);
    REQUIRE(s.provenance == BnProvenance::rule_small_beta);
}

TEST_CASE("relation search finds the pinned witnesses")
{
    // 3 beta + 2 beta^2 = 1: beta = 3 beta^2 + 2 beta^3, i.e. c = (1,-3,-2)
    auto F = testutil::ex41_field(2);
    BnStatus s = in_B_N(F, 12);
    REQUIRE(s.verdict == BnVerdict::NotInBN);
    REQUIRE(s.provenance == BnProvenance::relation_search);
    REQUIRE(s.witness == std::vector<Integer> { Integer(1), Integer(-3), Integer(-2) });
    REQUIRE(witness_value(F, s.witness).is_zero());

    // 3 beta + beta^2 = 1: c = (1,-3,-1)
    auto F2 = testutil::ex42_field(2);
    BnStatus s2 = in_B_N(F2, 12);
    REQUIRE(s2.verdict == BnVerdict::NotInBN);
    REQUIRE(s2.witness == std::vector<Integer> { Integer(1), Integer(-3), Integer(-1) });
    REQUIRE(witness_value(F2, s2.witness).is_zero());

    for (const Integer& c : s.witness) {
        REQUIRE(c <= 2);  // N = 2: c_k = j_k - i_k <= N
        REQUIRE(c >= -4); // and >= -2N
    }
}

TEST_CASE("witnesses stay in digit range across suite fields")
{
    for (int N : { 1, 2, 3 }) {
        auto F = testutil::ex41_field(N);
        BnStatus s = in_B_N(F);
        REQUIRE(s.verdict == BnVerdict::NotInBN);
        REQUIRE(witness_value(F, s.witness).is_zero());
        bool nonzero = false;
        for (const Integer& c : s.witness) {
            REQUIRE(c <= N);
            REQUIRE(c >= -2 * N);
            nonzero = nonzero || c != 0;
        }
        REQUIRE(nonzero);
    }
}

TEST_CASE("beta_n comparison")
{
    auto F41 = testutil::ex41_field(2);
    REQUIRE(beta_n_compare(F41, 1) == 0); // beta is exactly beta_1

    auto F42 = testutil::ex42_field(2);
    REQUIRE(beta_n_compare(F42, 1) == 1);
    REQUIRE(beta_n_compare(F42, 2) == -1);

    auto Fq = testutil::quarter_field();
    REQUIRE(beta_n_compare(Fq, 1) == -1); // 2/4 + 1/16 - 1 < 0
}

TEST_CASE("vartheta values")
{
    auto Fq = FieldContext::make(BetaSpec::rational(Rational(1, 5), 1));
    REQUIRE(vartheta(Fq, in_B_N(Fq)) == 0);

    for (int N : { 1, 2, 3 }) {
        auto F = testutil::ex41_field(N);
        REQUIRE(vartheta(F, in_B_N(F)) == 1);
    }
    for (int N : { 2, 3 }) {
        auto F = testutil::ex42_field(N);
        BnStatus bn = in_B_N(F);
        int theta = vartheta(F, bn);
        REQUIRE(theta == 2);
        // consistency: beta <= beta_theta and beta > beta_(theta-1)
        REQUIRE(beta_n_compare(F, theta) <= 0);
        REQUIRE(beta_n_compare(F, theta - 1) > 0);
    }
}

TEST_CASE("unknown status propagates as an error from vartheta")
{
    BnStatus unknown;
    unknown.verdict = BnVerdict::Unknown;
    auto F = testutil::quarter_field();
    REQUIRE_THROWS_MATCHES(vartheta(F, unknown), Error,
        Catch::Matchers::Predicate<Error>(
            [](const Error& e) { return e.code() == Errc::unresolved_bn; }));

    BnStatus asserted = BnStatus::asserted(true);
    REQUIRE(vartheta(F, asserted) == 0);
}

TEST_CASE("random rationals with large denominators have no relation")
{
    std::mt19937 rng(991235);
    for (int N : { 1, 2 }) {
        int found = 0;
        for (int i = 0; i < 50; ++i) {
            // q >= 2N+1, 0 < p/q < 1/(N+1), in lowest terms
            std::uniform_int_distribution<long> qd(2 * N + 1, 60);
            long q = qd(rng);
            long pmax = (q - 1) / (N + 1);
            if (pmax < 1)
                continue;
            std::uniform_int_distribution<long> pd(1, pmax);
            Rational b(pd(rng), q);
            b.canonicalize();
            if (b.get_den() < 2 * N + 1)
                continue;
            auto F = FieldContext::make(BetaSpec::rational(b, N));

            // the rule says InBN; the raw degree-8 search must agree by
            // finding nothing
            REQUIRE(in_B_N(F, 8).verdict == BnVerdict::InBN);
            REQUIRE(!find_relation(F, 8));
            ++found;
        }
        REQUIRE(found > 25);
    }
}
