#pragma once

// Dense univariate polynomial helpers over Q and Z, constant term first.
// Just enough machinery for minimal-polynomial extraction: Euclidean
// division, gcd, Sturm chains, rational roots, and Kronecker factoring
// for the small degrees this project allows.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "selfsim/errors.hpp"
#include "selfsim/rational.hpp"

namespace selfsim {
namespace qpoly {

using Poly = std::vector<Rational>;
using IPoly = std::vector<Integer>;

inline void trim(Poly& p)
{
    while (!p.empty() && sgn(p.back()) == 0)
        p.pop_back();
}

inline void trim(IPoly& p)
{
    while (!p.empty() && sgn(p.back()) == 0)
        p.pop_back();
}

inline int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }
inline int degree(const IPoly& p) { return static_cast<int>(p.size()) - 1; }

inline bool is_zero(const Poly& p)
{
    return std::all_of(p.begin(), p.end(), [](const Rational& c) { return sgn(c) == 0; });
}

inline Poly to_qpoly(const IPoly& p)
{
    Poly q;
    q.reserve(p.size());
    for (const Integer& c : p)
        q.emplace_back(c);
    return q;
}

inline Poly add(const Poly& a, const Poly& b)
{
    Poly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] += b[i];
    trim(r);
    return r;
}

inline Poly sub(const Poly& a, const Poly& b)
{
    Poly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] -= b[i];
    trim(r);
    return r;
}

inline Poly mul(const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

inline Poly scale(const Poly& a, const Rational& s)
{
    Poly r = a;
    for (Rational& c : r)
        c *= s;
    trim(r);
    return r;
}

inline Poly derivative(const Poly& p)
{
    Poly r;
    for (std::size_t i = 1; i < p.size(); ++i)
        r.push_back(p[i] * Rational(static_cast<long>(i)));
    trim(r);
    return r;
}

inline Rational eval(const Poly& p, const Rational& x)
{
    Rational acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

inline Rational eval(const IPoly& p, const Rational& x)
{
    Rational acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        acc = acc * x + Rational(*it);
    return acc;
}

// Quotient and remainder of a by b over Q; b must be nonzero.
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b)
{
    Poly bb = b;
    trim(bb);
    if (bb.empty())
        fail(Errc::internal, "polynomial division by zero");
    Poly rem = a;
    trim(rem);
    Poly quot;
    if (degree(rem) >= degree(bb))
        quot.assign(rem.size() - bb.size() + 1, Rational(0));
    while (degree(rem) >= degree(bb)) {
        std::size_t shift = rem.size() - bb.size();
        Rational c = rem.back() / bb.back();
        quot[shift] = c;
        for (std::size_t i = 0; i < bb.size(); ++i)
            rem[shift + i] -= c * bb[i];
        rem.pop_back();
        trim(rem);
    }
    trim(quot);
    return { quot, rem };
}

inline Poly make_monic(const Poly& p)
{
    Poly q = p;
    trim(q);
    if (q.empty())
        return q;
    Rational lead = q.back();
    for (Rational& c : q)
        c /= lead;
    return q;
}

inline Poly gcd(Poly a, Poly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

// Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic.
inline std::tuple<Poly, Poly, Poly> extended_gcd(Poly a, Poly b)
{
    Poly u0 = { Rational(1) }, v0 = {};
    Poly u1 = {}, v1 = { Rational(1) };
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto [q, r] = divmod(a, b);
        Poly u2 = sub(u0, mul(q, u1));
        Poly v2 = sub(v0, mul(q, v1));
        a = std::move(b);
        b = std::move(r);
        u0 = std::move(u1);
        u1 = std::move(u2);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    if (a.empty())
        return { a, u0, v0 };
    Rational lead = a.back();
    return { make_monic(a), scale(u0, 1 / lead), scale(v0, 1 / lead) };
}

inline IPoly primitive_part(const Poly& p)
{
    Poly q = p;
    trim(q);
    if (q.empty())
        return {};
    Integer den_lcm(1);
    for (const Rational& c : q)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    IPoly z;
    z.reserve(q.size());
    for (const Rational& c : q) {
        Rational t = c * Rational(den_lcm);
        z.push_back(t.get_num());
    }
    Integer content(0);
    for (const Integer& c : z)
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    if (content != 0)
        for (Integer& c : z)
            c /= content;
    if (!z.empty() && sgn(z.back()) < 0)
        for (Integer& c : z)
            c = -c;
    return z;
}

inline IPoly primitive_part(const IPoly& p)
{
    IPoly z = p;
    trim(z);
    Integer content(0);
    for (const Integer& c : z)
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    if (content != 0)
        for (Integer& c : z)
            c /= content;
    if (!z.empty() && sgn(z.back()) < 0)
        for (Integer& c : z)
            c = -c;
    return z;
}

// p / gcd(p, p'), primitive. Root set preserved, multiplicities dropped.
inline IPoly squarefree_part(const IPoly& p)
{
    Poly q = to_qpoly(p);
    trim(q);
    if (degree(q) <= 1)
        return primitive_part(q);
    Poly g = gcd(q, derivative(q));
    if (degree(g) <= 0)
        return primitive_part(q);
    return primitive_part(divmod(q, g).first);
}

inline std::vector<Poly> sturm_chain(const Poly& squarefree)
{
    std::vector<Poly> chain;
    Poly f0 = squarefree;
    trim(f0);
    if (f0.empty())
        return chain;
    chain.push_back(f0);
    Poly f1 = derivative(f0);
    while (!f1.empty()) {
        chain.push_back(f1);
        Poly r = divmod(f0, f1).second;
        for (Rational& c : r)
            c = -c;
        f0 = std::move(f1);
        f1 = std::move(r);
    }
    return chain;
}

inline int sign_variations(const std::vector<Poly>& chain, const Rational& x)
{
    int variations = 0;
    int prev = 0;
    for (const Poly& f : chain) {
        int s = sgn(eval(f, x));
        if (s == 0)
            continue;
        if (prev != 0 && s != prev)
            ++variations;
        prev = s;
    }
    return variations;
}

// Number of distinct real roots in (lo, hi]; the argument must be squarefree.
inline int sturm_count(const std::vector<Poly>& chain, const Rational& lo, const Rational& hi)
{
    if (chain.empty())
        return 0;
    return sign_variations(chain, lo) - sign_variations(chain, hi);
}

// Distinct rational roots of a squarefree integer polynomial.
inline std::vector<Rational> rational_roots(const IPoly& p)
{
    std::vector<Rational> roots;
    IPoly q = p;
    trim(q);
    if (q.empty())
        return roots;
    std::size_t low = 0;
    while (low < q.size() && q[low] == 0)
        ++low;
    if (low > 0) {
        roots.push_back(Rational(0));
        q.erase(q.begin(), q.begin() + static_cast<long>(low));
    }
    if (q.size() <= 1)
        return roots;
    Integer c0 = abs(q.front());
    Integer cl = abs(q.back());
    std::vector<Integer> ps, qs;
    for (Integer d(1); d * d <= c0; ++d) {
        if (c0 % d == 0) {
            ps.push_back(d);
            ps.push_back(c0 / d);
        }
    }
    for (Integer d(1); d * d <= cl; ++d) {
        if (cl % d == 0) {
            qs.push_back(d);
            qs.push_back(cl / d);
        }
    }
    for (const Integer& num : ps) {
        for (const Integer& den : qs) {
            for (int s : { 1, -1 }) {
                Rational cand(s * num, den);
                cand.canonicalize();
                if (sgn(eval(q, cand)) == 0
                    && std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Removes the linear factor for each rational root; input squarefree.
inline IPoly strip_rational_roots(const IPoly& p, std::vector<Rational>* stripped = nullptr)
{
    Poly q = to_qpoly(p);
    for (const Rational& r : rational_roots(p)) {
        Poly lin = { -r, Rational(1) };
        auto [quot, rem] = divmod(q, lin);
        if (!is_zero(rem))
            fail(Errc::internal, "rational root did not divide");
        q = quot;
        if (stripped)
            stripped->push_back(r);
    }
    return primitive_part(q);
}

namespace detail {

inline std::vector<Integer> positive_divisors(const Integer& v)
{
    Integer a = abs(v);
    if (a == 0)
        fail(Errc::internal, "divisors of zero");
    if (a > Integer("1000000000000000"))
        fail(Errc::unsupported, "coefficient too large for factor search");
    std::vector<Integer> ds;
    for (Integer d(1); d * d <= a; ++d) {
        if (a % d == 0) {
            ds.push_back(d);
            if (d * d != a)
                ds.push_back(a / d);
        }
        if (ds.size() > 4096)
            fail(Errc::unsupported, "too many divisors in factor search");
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

inline Poly lagrange_interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys)
{
    Poly acc;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Poly basis = { Rational(1) };
        Rational denom(1);
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (i == j)
                continue;
            basis = mul(basis, Poly { -xs[j], Rational(1) });
            denom *= xs[i] - xs[j];
        }
        acc = add(acc, scale(basis, ys[i] / denom));
    }
    return acc;
}

// Kronecker search for an integer factor of degree exactly k.
// Input must be squarefree with no rational roots.
inline std::optional<IPoly> kronecker_find_factor(const IPoly& p, int k)
{
    static const long sample_points[] = { 0, 1, -1, 2, -2, 3, -3, 4, -4 };
    std::vector<Rational> xs;
    std::vector<std::vector<Integer>> divisor_sets;
    double combos = 1.0;
    for (int i = 0; i <= k; ++i) {
        Rational x(sample_points[i]);
        Integer v = eval(p, x).get_num();
        xs.push_back(x);
        divisor_sets.push_back(positive_divisors(v));
        combos *= 2.0 * static_cast<double>(divisor_sets.back().size());
    }
    combos /= 2.0; // d_0 sign fixed below
    if (combos > 4e6)
        fail(Errc::unsupported, "factor search space too large");

    Poly pq = to_qpoly(p);
    // Slot 0 walks positive divisors only (a factor and its negation divide
    // equally); the other slots walk signed divisors.
    std::size_t slots = static_cast<std::size_t>(k) + 1;
    std::vector<std::size_t> state(slots, 0);
    auto options = [&](std::size_t i) {
        return i == 0 ? divisor_sets[0].size() : 2 * divisor_sets[i].size();
    };
    auto value_at = [&](std::size_t i) -> Rational {
        if (i == 0)
            return Rational(divisor_sets[0][state[0]]);
        Integer d = divisor_sets[i][state[i] >> 1];
        return Rational((state[i] & 1) ? -d : d);
    };
    while (true) {
        std::vector<Rational> ys;
        ys.reserve(slots);
        for (std::size_t i = 0; i < slots; ++i)
            ys.push_back(value_at(i));
        Poly g = lagrange_interpolate(xs, ys);
        if (degree(g) == k) {
            bool integral = std::all_of(g.begin(), g.end(), [](const Rational& c) { return c.get_den() == 1; });
            if (integral) {
                IPoly gz = primitive_part(g);
                auto [quot, rem] = divmod(pq, to_qpoly(gz));
                if (is_zero(rem) && degree(gz) == k)
                    return gz;
            }
        }
        std::size_t slot = slots;
        while (true) {
            if (slot == 0)
                return std::nullopt;
            --slot;
            if (++state[slot] < options(slot))
                break;
            state[slot] = 0;
        }
    }
}

} // namespace detail

// Irreducible factors over Q of a squarefree primitive polynomial with no
// rational roots. Degrees 2 and 3 are irreducible outright; beyond that a
// Kronecker search does the splitting.
inline std::vector<IPoly> irreducible_factors(const IPoly& p)
{
    IPoly q = primitive_part(p);
    if (degree(q) <= 3)
        return { q };
    for (int k = 2; k <= degree(q) / 2; ++k) {
        if (auto g = detail::kronecker_find_factor(q, k)) {
            auto [quot, rem] = divmod(to_qpoly(q), to_qpoly(*g));
            if (!is_zero(rem))
                fail(Errc::internal, "kronecker factor does not divide");
            std::vector<IPoly> out = irreducible_factors(*g);
            std::vector<IPoly> rest = irreducible_factors(primitive_part(quot));
            out.insert(out.end(), rest.begin(), rest.end());
            return out;
        }
    }
    return { q };
}

} // namespace qpoly
} // namespace selfsim
