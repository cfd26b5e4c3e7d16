#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "selfsim/algnum.hpp"
#include "suite_instances.hpp"

using namespace selfsim;

TEST_CASE("rational field construction")
{
    auto F = FieldContext::make(BetaSpec::rational(Rational(1, 4), 1));
    REQUIRE(F->degree() == 1);
    REQUIRE(F->min_poly() == qpoly::IPoly { Integer(-1), Integer(4) });
    REQUIRE(F->rational_beta() == Rational(1, 4));
    REQUIRE(F->digit_step().rational_value() == Rational(3, 4));
}

TEST_CASE("quadratic field keeps the supplied irreducible polynomial")
{
    auto F = testutil::ex41_field(2);
    REQUIRE(F->degree() == 2);
    REQUIRE(F->min_poly() == qpoly::IPoly { Integer(-1), Integer(3), Integer(2) });
}

TEST_CASE("beta out of range is rejected")
{
    REQUIRE_THROWS_MATCHES(FieldContext::make(BetaSpec::rational(Rational(1, 2), 1)), Error,
        Catch::Matchers::Predicate<Error>(
            [](const Error& e) { return e.code() == Errc::beta_out_of_range; }));
    REQUIRE_THROWS_MATCHES(FieldContext::make(BetaSpec::rational(Rational(0), 1)), Error,
        Catch::Matchers::Predicate<Error>(
            [](const Error& e) { return e.code() == Errc::beta_out_of_range; }));
    // root of 3x - 1 in [0.3, 0.35] is fine for N = 1 but not for N = 2
    qpoly::IPoly third = { Integer(-1), Integer(3) };
    REQUIRE_NOTHROW(FieldContext::make(BetaSpec::root(third, Rational(3, 10), Rational(7, 20), 1)));
    REQUIRE_THROWS_MATCHES(
        FieldContext::make(BetaSpec::root(third, Rational(3, 10), Rational(7, 20), 2)), Error,
        Catch::Matchers::Predicate<Error>(
            [](const Error& e) { return e.code() == Errc::beta_out_of_range; }));
}

TEST_CASE("root counting in the isolating interval")
{
    // x^2 - 2 has no root in [0, 1/2]
    qpoly::IPoly p = { Integer(-2), Integer(0), Integer(1) };
    REQUIRE_THROWS_MATCHES(FieldContext::make(BetaSpec::root(p, Rational(0), Rational(1, 2), 1)),
        Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
            return e.code() == Errc::no_root_in_interval;
        }));
    // 16x^2 - 16x + 3 has roots 1/4 and 3/4; [0, 1] holds both
    qpoly::IPoly q = { Integer(3), Integer(-16), Integer(16) };
    REQUIRE_THROWS_MATCHES(FieldContext::make(BetaSpec::root(q, Rational(0), Rational(1), 1)),
        Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
            return e.code() == Errc::multiple_roots_in_interval;
        }));
}

TEST_CASE("reducible input selects the factor with the isolated root")
{
    // (2x^2 + 3x - 1)(x - 2): the rational root 2 is outside the interval
    qpoly::IPoly p = { Integer(2), Integer(-7), Integer(-1), Integer(2) };
    auto F = FieldContext::make(BetaSpec::root(p, Rational(1, 4), Rational(3, 10), 2));
    REQUIRE(F->min_poly() == qpoly::IPoly { Integer(-1), Integer(3), Integer(2) });

    // squared input reduces to the squarefree part
    auto sq = qpoly::mul(qpoly::to_qpoly(qpoly::IPoly { Integer(-1), Integer(3), Integer(2) }),
        qpoly::to_qpoly(qpoly::IPoly { Integer(-1), Integer(3), Integer(2) }));
    auto F2 = FieldContext::make(
        BetaSpec::root(qpoly::primitive_part(sq), Rational(1, 4), Rational(3, 10), 2));
    REQUIRE(F2->min_poly() == qpoly::IPoly { Integer(-1), Integer(3), Integer(2) });

    // degree-1 polynomial through the root path lands in the rational field
    qpoly::IPoly lin = { Integer(-1), Integer(4) };
    auto F3 = FieldContext::make(BetaSpec::root(lin, Rational(1, 5), Rational(3, 10), 1));
    REQUIRE(F3->is_rational_field());
    REQUIRE(F3->rational_beta() == Rational(1, 4));
}

TEST_CASE("multiplication reduces modulo the minimal polynomial")
{
    auto Fq = testutil::quarter_field();
    AlgebraicNumber b = Fq->beta();
    REQUIRE((b * b).rational_value() == Rational(1, 16));

    // 2x^2 + 3x - 1 = 0  =>  beta^2 = (1 - 3 beta)/2
    auto F = testutil::ex41_field(2);
    AlgebraicNumber beta = F->beta();
    AlgebraicNumber b2 = beta * beta;
    REQUIRE(b2.coeffs() == std::vector<Rational> { Rational(1, 2), Rational(-3, 2) });

    AlgebraicNumber x = eval_poly(F, { Rational(7, 3), Rational(-2) });
    REQUIRE((x + F->zero()) == x);
}

TEST_CASE("sign determination")
{
    auto F = testutil::ex41_field(2);
    AlgebraicNumber rel = eval_poly(F, { Rational(-1), Rational(3), Rational(2) });
    REQUIRE(rel.is_zero());
    REQUIRE(rel.sign() == 0);
    REQUIRE((F->beta() - F->from_rational(Rational(1, 3))).sign() == -1);
    REQUIRE(F->zero().sign() == 0);
    REQUIRE(F->beta().sign() == 1);
}

TEST_CASE("eval_poly")
{
    auto F = testutil::ex41_field(2);
    REQUIRE(eval_poly(F, { Rational(0), Rational(1) }) == F->beta());
    REQUIRE(eval_poly(F, { Rational(-1), Rational(3), Rational(2) }).is_zero());

    auto Fq = testutil::quarter_field();
    REQUIRE(eval_poly(Fq, { Rational(0), Rational(3, 4) }).rational_value() == Rational(3, 16));
}

TEST_CASE("field inverse and division")
{
    auto F = testutil::ex41_field(2);
    AlgebraicNumber beta = F->beta();
    REQUIRE((beta * beta.inverse()) == F->one());

    // (1 - beta^2)/beta^2 = 10 + 6 beta in this field
    AlgebraicNumber t = testutil::ex41_t(F);
    REQUIRE(t == eval_poly(F, { Rational(10), Rational(6) }));
}

namespace {

// Independent numeric root: bisection of the minimal polynomial in 512-bit
// floats, far beyond the 1e-40 agreement threshold.
mpf_class numeric_root(const std::shared_ptr<const FieldContext>& F)
{
    mpf_set_default_prec(512);
    if (F->is_rational_field())
        return mpf_class(F->rational_beta());
    mpf_class lo(F->interval_lo()), hi(F->interval_hi());
    auto eval = [&](const mpf_class& x) {
        mpf_class acc(0);
        const auto& mp = F->min_poly();
        for (auto it = mp.rbegin(); it != mp.rend(); ++it)
            acc = acc * x + mpf_class(*it);
        return acc;
    };
    int sign_lo = sgn(eval(lo));
    for (int i = 0; i < 400; ++i) {
        mpf_class mid = (lo + hi) / 2;
        if (sgn(eval(mid)) == sign_lo)
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / 2;
}

mpf_class numeric_eval(const AlgebraicNumber& a, const mpf_class& root)
{
    mpf_class acc(0);
    const auto& c = a.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * root + mpf_class(*it);
    return acc;
}

} // namespace

TEST_CASE("algebra properties on random samples")
{
    auto F = testutil::ex41_field(2);
    mpf_class root = numeric_root(F);
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<long> num(-40, 40);
    std::uniform_int_distribution<long> den(1, 12);

    auto random_elem = [&]() {
        std::vector<Rational> c;
        for (int i = 0; i < F->degree(); ++i)
            c.push_back(Rational(num(rng), den(rng)));
        for (auto& r : c)
            r.canonicalize();
        return AlgebraicNumber(F, c);
    };

    mpf_class threshold;
    mpf_set_default_prec(512);
    threshold = 1;
    for (int i = 0; i < 40; ++i)
        threshold /= 10;

    for (int iter = 0; iter < 200; ++iter) {
        AlgebraicNumber a = random_elem(), b = random_elem(), c = random_elem();
        REQUIRE(a + b == b + a);
        REQUIRE(a * b == b * a);
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);

        // canonicalization is a fixed point: multiplying twice by beta in
        // either association gives identical coefficient vectors
        AlgebraicNumber beta = F->beta();
        REQUIRE((a * beta) * beta == a * (beta * beta));

        // equality of canonical forms == vanishing difference
        REQUIRE(((a - b).sign() == 0) == (a == b));

        // sign agrees with the independent numeric evaluation
        mpf_class nv = numeric_eval(a - b, root);
        if (abs(nv) > threshold) {
            int ns = sgn(nv) > 0 ? 1 : -1;
            REQUIRE((a - b).sign() == ns);
        }
    }
}

TEST_CASE("mixed contexts are rejected")
{
    auto F1 = testutil::quarter_field();
    auto F2 = testutil::ex41_field(2);
    REQUIRE_THROWS_MATCHES(F1->beta() + F2->beta(), Error,
        Catch::Matchers::Predicate<Error>(
            [](const Error& e) { return e.code() == Errc::mixed_contexts; }));
}
