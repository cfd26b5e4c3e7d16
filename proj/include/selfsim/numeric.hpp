#pragma once

// Floating-point sanity layer: interval-union over-approximations of
// attractors, exact Hausdorff distance between finite interval unions, and
// witness verification against the union of translated copies. Never the
// verdict source; the decision kernel is exact.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "selfsim/decide.hpp"
#include "selfsim/errors.hpp"

namespace selfsim {
namespace numeric {

struct NumericMap {
    double r = 0.0;
    double c = 0.0;

    double apply(double x) const { return r * x + c; }
};

struct NumericIFS {
    std::vector<NumericMap> maps;
};

struct IntervalUnion {
    std::vector<std::pair<double, double>> parts; // sorted, pairwise disjoint
    double merge_tol = 0.0;

    bool empty() const { return parts.empty(); }
    std::size_t size() const { return parts.size(); }
    double lo() const { return parts.front().first; }
    double hi() const { return parts.back().second; }

    static IntervalUnion from_intervals(std::vector<std::pair<double, double>> iv,
        double merge_tol = 0.0)
    {
        IntervalUnion u;
        u.merge_tol = merge_tol;
        for (auto& [a, b] : iv)
            if (a > b)
                std::swap(a, b);
        std::sort(iv.begin(), iv.end());
        for (const auto& [a, b] : iv) {
            if (!u.parts.empty() && a <= u.parts.back().second + merge_tol)
                u.parts.back().second = std::max(u.parts.back().second, b);
            else
                u.parts.emplace_back(a, b);
        }
        return u;
    }

    IntervalUnion translated(double dx) const
    {
        IntervalUnion u = *this;
        for (auto& [a, b] : u.parts) {
            a += dx;
            b += dx;
        }
        return u;
    }

    // Is every point of *this inside v (up to eps slack)?
    bool contained_in(const IntervalUnion& v, double eps = 0.0) const
    {
        for (const auto& [a, b] : parts) {
            auto it = std::upper_bound(v.parts.begin(), v.parts.end(),
                std::make_pair(a + eps, std::numeric_limits<double>::infinity()));
            if (it == v.parts.begin())
                return false;
            --it;
            if (a < it->first - eps || b > it->second + eps)
                return false;
        }
        return true;
    }
};

inline IntervalUnion union_of(const IntervalUnion& a, const IntervalUnion& b,
    double merge_tol = 0.0)
{
    std::vector<std::pair<double, double>> iv = a.parts;
    iv.insert(iv.end(), b.parts.begin(), b.parts.end());
    return IntervalUnion::from_intervals(std::move(iv), merge_tol);
}

// Convex hull [a, b] of the attractor: the smallest interval fixed by
// a <- min_i f_i-image-left, b <- max_i f_i-image-right. Iterated from an
// invariant box; converges geometrically, so the double iteration reaches
// its fixed point.
inline std::pair<double, double> attractor_hull(const NumericIFS& ifs)
{
    if (ifs.maps.empty())
        fail(Errc::empty_input, "attractor of an empty system");
    double M = 0.0;
    for (const NumericMap& f : ifs.maps) {
        double ar = std::fabs(f.r);
        if (ar <= 0.0 || ar >= 1.0)
            fail(Errc::unsupported, "contraction ratio out of (0,1)");
        M = std::max(M, std::fabs(f.c) / (1.0 - ar));
    }
    double a = -M, b = M;
    for (int iter = 0; iter < 5000; ++iter) {
        double a2 = std::numeric_limits<double>::infinity();
        double b2 = -std::numeric_limits<double>::infinity();
        for (const NumericMap& f : ifs.maps) {
            double x = f.r > 0 ? f.apply(a) : f.apply(b);
            double y = f.r > 0 ? f.apply(b) : f.apply(a);
            a2 = std::min(a2, x);
            b2 = std::max(b2, y);
        }
        if (a2 == a && b2 == b)
            break;
        a = a2;
        b = b2;
    }
    return { a + 0.0, b + 0.0 };
}

// Union of all depth-fold images of the hull: an over-approximation of the
// attractor with Hausdorff error <= (max |r|)^depth * diam(hull). With a
// zero merge tolerance the levels are nested.
inline IntervalUnion approx_attractor(const NumericIFS& ifs, int depth,
    std::size_t cap = 1'000'000, double merge_tol = 0.0)
{
    auto [a, b] = attractor_hull(ifs);
    IntervalUnion u = IntervalUnion::from_intervals({ { a, b } }, merge_tol);
    for (int level = 0; level < depth; ++level) {
        std::vector<std::pair<double, double>> next;
        next.reserve(u.parts.size() * ifs.maps.size());
        for (const NumericMap& f : ifs.maps)
            for (const auto& [x, y] : u.parts)
                next.emplace_back(f.apply(x), f.apply(y));
        u = IntervalUnion::from_intervals(std::move(next), merge_tol);
        if (u.size() > cap)
            fail(Errc::blowup_guard,
                "interval count " + std::to_string(u.size()) + " exceeds cap");
    }
    return u;
}

inline NumericIFS gamma_ifs(const std::shared_ptr<const FieldContext>& F)
{
    NumericIFS ifs;
    double beta = F->beta().to_double();
    double step = F->digit_step().to_double();
    for (int i = 0; i <= F->N(); ++i)
        ifs.maps.push_back({ beta, i * step });
    return ifs;
}

// Union of the translated attractor copies, approximated at the given depth.
inline IntervalUnion approx_gamma_t(const std::shared_ptr<const FieldContext>& F,
    const std::vector<AlgebraicNumber>& translate_values, int depth,
    std::size_t cap = 1'000'000, double merge_tol = 0.0)
{
    IntervalUnion gamma = approx_attractor(gamma_ifs(F), depth, cap, merge_tol);
    std::vector<std::pair<double, double>> iv;
    for (const AlgebraicNumber& t : translate_values) {
        double dx = t.to_double();
        for (const auto& [a, b] : gamma.parts)
            iv.emplace_back(a + dx, b + dx);
    }
    return IntervalUnion::from_intervals(std::move(iv), merge_tol);
}

namespace detail {

inline double point_distance(double x, const IntervalUnion& v)
{
    auto it = std::upper_bound(v.parts.begin(), v.parts.end(),
        std::make_pair(x, std::numeric_limits<double>::infinity()));
    double best = std::numeric_limits<double>::infinity();
    if (it != v.parts.end())
        best = std::min(best, it->first - x);
    if (it != v.parts.begin()) {
        --it;
        if (x <= it->second)
            return 0.0;
        best = std::min(best, x - it->second);
    }
    return best;
}

// sup over x in u of dist(x, v): attained at interval endpoints of u or at
// gap midpoints of v lying inside u.
inline double directed_hausdorff(const IntervalUnion& u, const IntervalUnion& v)
{
    double best = 0.0;
    for (const auto& [a, b] : u.parts) {
        best = std::max(best, point_distance(a, v));
        best = std::max(best, point_distance(b, v));
    }
    for (std::size_t i = 0; i + 1 < v.parts.size(); ++i) {
        double mid = 0.5 * (v.parts[i].second + v.parts[i + 1].first);
        if (point_distance(mid, u) == 0.0)
            best = std::max(best, mid - v.parts[i].second);
    }
    return best;
}

} // namespace detail

// Exact Hausdorff distance between two finite interval unions.
inline double hausdorff(const IntervalUnion& u, const IntervalUnion& v)
{
    if (u.empty() || v.empty())
        fail(Errc::empty_input, "hausdorff distance of an empty union");
    return std::max(detail::directed_hausdorff(u, v), detail::directed_hausdorff(v, u));
}

inline NumericIFS witness_ifs(const Witness& w)
{
    NumericIFS ifs;
    for (const WitnessMap& m : w.maps)
        ifs.maps.push_back({ m.ratio.to_double(), m.offset.to_double() });
    return ifs;
}

// Rational upper bound on beta from the isolating interval, as a double
// rounded up a hair.
inline double beta_upper_bound(const std::shared_ptr<const FieldContext>& F)
{
    double ub = to_double(F->interval_hi());
    return std::nextafter(ub, 1.0);
}

struct VerifyResult {
    bool ok = false;
    double distance = 0.0;
    double tol = 0.0;
    int gamma_depth = 0;
    int witness_depth = 0;
};

inline double default_witness_tol(const std::shared_ptr<const FieldContext>& F,
    const std::vector<AlgebraicNumber>& translate_values, int depth)
{
    double ub = beta_upper_bound(F);
    double t_m = translate_values.back().to_double();
    return 4.0 * std::pow(ub, depth) * (1.0 + t_m);
}

// Compares the witness attractor with the union of translated copies at
// matched accuracy. `depth` fixes the target resolution ub(beta)^depth; the
// witness side iterates just enough levels of its own (much stronger)
// contractions to reach it, so both over-approximations sit within the
// tolerance of the common limit set whenever the witness is genuine.
inline VerifyResult verify_witness(const NumericIFS& wifs,
    const std::shared_ptr<const FieldContext>& F,
    const std::vector<AlgebraicNumber>& translate_values, int depth,
    std::optional<double> tol = std::nullopt, std::size_t cap = 1'000'000,
    double merge_tol = 0.0)
{
    VerifyResult res;
    res.gamma_depth = depth;
    res.tol = tol ? *tol : default_witness_tol(F, translate_values, depth);

    double ub = beta_upper_bound(F);
    double r_max = 0.0;
    for (const NumericMap& m : wifs.maps)
        r_max = std::max(r_max, std::fabs(m.r));
    if (r_max <= 0.0 || r_max >= 1.0)
        fail(Errc::unsupported, "witness ratios out of range");
    double target = depth * std::log(ub);
    res.witness_depth = std::max(1, static_cast<int>(std::ceil(target / std::log(r_max))));
    res.witness_depth = std::min(res.witness_depth, 256);

    IntervalUnion reference = approx_gamma_t(F, translate_values, depth, cap, merge_tol);
    IntervalUnion approx = approx_attractor(wifs, res.witness_depth, cap, merge_tol);
    res.distance = hausdorff(approx, reference);
    res.ok = res.distance <= res.tol;
    return res;
}

inline VerifyResult verify_witness(const Witness& w, int depth,
    std::optional<double> tol = std::nullopt, std::size_t cap = 1'000'000,
    double merge_tol = 0.0)
{
    return verify_witness(witness_ifs(w), w.ctx, w.translate_values, depth, tol, cap, merge_tol);
}

} // namespace numeric
} // namespace selfsim
