#pragma once

// Shared fixture: the fields and translation vectors exercised across the
// unit and acceptance suites. Expected values are frozen from hand
// derivations with the exact kernel re-checking them.

#include <memory>
#include <string>
#include <vector>

#include "selfsim/algnum.hpp"
#include "selfsim/words.hpp"

namespace testutil {

using namespace selfsim;

inline std::string problem_path(const std::string& name)
{
    return std::string(SELFSIM_PROBLEMS_DIR) + "/" + name;
}

inline std::shared_ptr<const FieldContext> quarter_field()
{
    return FieldContext::make(BetaSpec::rational(Rational(1, 4), 1));
}

inline std::shared_ptr<const FieldContext> eighth_n3_field()
{
    return FieldContext::make(BetaSpec::rational(Rational(1, 8), 3));
}

// (N+1) x + N x^2 = 1, the field of the first worked example.
inline std::shared_ptr<const FieldContext> ex41_field(int N)
{
    qpoly::IPoly p = { Integer(-1), Integer(N + 1), Integer(N) };
    Rational lo, hi;
    switch (N) {
    case 1: lo = Rational(2, 5); hi = Rational(21, 50); break;
    case 2: lo = Rational(1, 4); hi = Rational(3, 10); break;
    case 3: lo = Rational(1, 5); hi = Rational(11, 50); break;
    default: fail(Errc::internal, "no pinned interval for this N");
    }
    return FieldContext::make(BetaSpec::root(p, lo, hi, N));
}

// (N+1) x + x^2 = 1, the field of the second worked example.
inline std::shared_ptr<const FieldContext> ex42_field(int N)
{
    qpoly::IPoly p = { Integer(-1), Integer(N + 1), Integer(1) };
    Rational lo, hi;
    switch (N) {
    case 2: lo = Rational(3, 10); hi = Rational(31, 100); break;
    case 3: lo = Rational(23, 100); hi = Rational(6, 25); break;
    default: fail(Errc::internal, "no pinned interval for this N");
    }
    return FieldContext::make(BetaSpec::root(p, lo, hi, N));
}

// t = (1 - beta^2)/beta^2 = beta^(-2) phi_NN(0)
inline AlgebraicNumber ex41_t(const std::shared_ptr<const FieldContext>& F)
{
    AlgebraicNumber b2 = F->beta() * F->beta();
    return (F->one() - b2) / b2;
}

// t = (1 - beta)/beta = beta^(-1) phi_N(0)
inline AlgebraicNumber ex42_t(const std::shared_ptr<const FieldContext>& F)
{
    return (F->one() - F->beta()) / F->beta();
}

struct Instance {
    std::string name;
    std::shared_ptr<const FieldContext> F;
    std::vector<AlgebraicNumber> ts; // positive entries t_1 < ... < t_m
};

inline std::vector<Instance> make_suite()
{
    std::vector<Instance> suite;

    auto q = quarter_field();
    for (long t : { 3L, 12L, 15L, 48L, 51L, 60L, 63L })
        suite.push_back({ "quarter_t" + std::to_string(t), q, { q->from_rational(Rational(t)) } });
    suite.push_back({ "quarter_3_15", q,
        { q->from_rational(Rational(3)), q->from_rational(Rational(15)) } });
    suite.push_back({ "quarter_3_12", q,
        { q->from_rational(Rational(3)), q->from_rational(Rational(12)) } });
    suite.push_back({ "quarter_15_60", q,
        { q->from_rational(Rational(15)), q->from_rational(Rational(60)) } });

    auto e8 = eighth_n3_field();
    for (const char* t : { "7/3", "14/3", "7", "56/3", "21", "112/3" })
        suite.push_back({ std::string("eighth_t") + t, e8, { e8->from_rational(parse_rational(t)) } });

    for (int N : { 1, 2, 3 }) {
        auto F = ex41_field(N);
        suite.push_back({ "ex41_N" + std::to_string(N), F, { ex41_t(F) } });
    }
    for (int N : { 2, 3 }) {
        auto F = ex42_field(N);
        suite.push_back({ "ex42_N" + std::to_string(N), F, { ex42_t(F) } });
        suite.push_back({ "ex42_N" + std::to_string(N) + "_scaled", F,
            { ex42_t(F) / F->beta() } });
    }
    return suite;
}

} // namespace testutil
