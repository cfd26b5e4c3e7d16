#pragma once

// Exact arithmetic in Q(beta), where beta is either rational or the unique
// root of an integer polynomial inside a supplied isolating interval.
// Elements are coefficient vectors modulo the minimal polynomial; sign
// determination refines the isolating interval with exact rational interval
// arithmetic, so no floating point enters any decision.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "selfsim/errors.hpp"
#include "selfsim/qpoly.hpp"
#include "selfsim/rational.hpp"

namespace selfsim {

struct BetaSpec {
    enum class Kind { rational, root };

    Kind kind = Kind::rational;
    Rational value;              // rational kind
    qpoly::IPoly poly;           // root kind, constant term first
    Rational lo, hi;             // isolating interval, root kind
    int N = 1;                   // digit alphabet is {0, ..., N}

    static BetaSpec rational(Rational v, int N)
    {
        BetaSpec s;
        s.kind = Kind::rational;
        s.value = std::move(v);
        s.N = N;
        return s;
    }

    static BetaSpec root(qpoly::IPoly p, Rational lo, Rational hi, int N)
    {
        BetaSpec s;
        s.kind = Kind::root;
        s.poly = std::move(p);
        s.lo = std::move(lo);
        s.hi = std::move(hi);
        s.N = N;
        return s;
    }
};

class AlgebraicNumber;

namespace detail {

struct QInterval {
    Rational lo, hi;

    QInterval() = default;
    QInterval(Rational a, Rational b)
        : lo(std::move(a))
        , hi(std::move(b))
    {
    }

    static QInterval point(const Rational& x) { return { x, x }; }

    QInterval operator+(const QInterval& o) const { return { lo + o.lo, hi + o.hi }; }

    QInterval operator*(const QInterval& o) const
    {
        Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        Rational mn = a, mx = a;
        for (const Rational* r : { &b, &c, &d }) {
            if (*r < mn)
                mn = *r;
            if (*r > mx)
                mx = *r;
        }
        return { mn, mx };
    }

    bool excludes_zero() const { return sgn(lo) > 0 || sgn(hi) < 0; }
};

inline QInterval horner(const std::vector<Rational>& coeffs, const QInterval& x)
{
    QInterval acc = QInterval::point(Rational(0));
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * x + QInterval::point(*it);
    return acc;
}

} // namespace detail

class FieldContext : public std::enable_shared_from_this<FieldContext> {
    struct Passkey {
    };

public:
    FieldContext(Passkey, int N)
        : N_(N)
    {
    }

    static std::shared_ptr<const FieldContext> make(const BetaSpec& spec);

    int N() const { return N_; }
    int degree() const { return static_cast<int>(monic_.size()) - 1; }
    bool is_rational_field() const { return degree() == 1; }

    // Primitive integer minimal polynomial, constant term first.
    const qpoly::IPoly& min_poly() const { return min_poly_int_; }

    // Current isolating interval (refined once at construction).
    const Rational& interval_lo() const { return lo_; }
    const Rational& interval_hi() const { return hi_; }

    Rational rational_beta() const
    {
        if (!is_rational_field())
            fail(Errc::internal, "rational_beta on algebraic field");
        return -monic_[0];
    }

    AlgebraicNumber beta() const;
    AlgebraicNumber zero() const;
    AlgebraicNumber one() const;
    AlgebraicNumber from_rational(const Rational& r) const;
    // (1 - beta)/N, the digit weight of the generating system.
    AlgebraicNumber digit_step() const;

    bool compatible_with(const FieldContext& o) const
    {
        if (this == &o)
            return true;
        return N_ == o.N_ && min_poly_int_ == o.min_poly_int_ && lo_ == o.lo_ && hi_ == o.hi_;
    }

    std::vector<Rational> reduce(std::vector<Rational> conv) const
    {
        std::size_t d = static_cast<std::size_t>(degree());
        std::vector<Rational> out(d, Rational(0));
        for (std::size_t k = 0; k < conv.size() && k < d; ++k)
            out[k] = conv[k];
        for (std::size_t k = d; k < conv.size(); ++k) {
            if (sgn(conv[k]) == 0)
                continue;
            const std::vector<Rational>& row = pow_red_[k - d];
            for (std::size_t i = 0; i < d; ++i)
                out[i] += conv[k] * row[i];
        }
        return out;
    }

    int sign_of(const std::vector<Rational>& coeffs) const
    {
        bool zero = true;
        for (const Rational& c : coeffs)
            if (sgn(c) != 0) {
                zero = false;
                break;
            }
        if (zero)
            return 0;
        if (degree() == 1)
            return sgn(coeffs[0]);
        Rational lo = lo_, hi = hi_;
        int sign_lo = sign_lo_;
        for (int iter = 0; iter < 100000; ++iter) {
            detail::QInterval v = detail::horner(coeffs, { lo, hi });
            if (sgn(v.lo) > 0)
                return 1;
            if (sgn(v.hi) < 0)
                return -1;
            Rational mid = (lo + hi) / 2;
            int sm = sgn(qpoly::eval(monic_, mid));
            if (sm == 0)
                fail(Errc::internal, "minimal polynomial vanished at rational point");
            if (sm == sign_lo)
                lo = mid;
            else
                hi = mid;
        }
        fail(Errc::internal, "sign refinement did not converge");
    }

    double to_double(const std::vector<Rational>& coeffs) const
    {
        if (degree() == 1)
            return selfsim::to_double(coeffs[0]);
        detail::QInterval v = detail::horner(coeffs, { lo_, hi_ });
        return selfsim::to_double((v.lo + v.hi) / 2);
    }

private:
    friend class AlgebraicNumber;

    int N_;
    qpoly::IPoly min_poly_int_;
    std::vector<Rational> monic_;                 // monic minimal polynomial
    std::vector<std::vector<Rational>> pow_red_;  // x^(d+k) mod monic, k = 0..d-2
    Rational lo_, hi_;
    int sign_lo_ = 0; // sign of monic minimal polynomial at lo_ (degree >= 2)

    void finish_setup();
};

class AlgebraicNumber {
public:
    AlgebraicNumber() = default;

    AlgebraicNumber(std::shared_ptr<const FieldContext> ctx, std::vector<Rational> coeffs)
        : ctx_(std::move(ctx))
        , c_(std::move(coeffs))
    {
        c_.resize(static_cast<std::size_t>(ctx_->degree()), Rational(0));
    }

    const std::shared_ptr<const FieldContext>& context() const { return ctx_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const
    {
        for (const Rational& c : c_)
            if (sgn(c) != 0)
                return false;
        return true;
    }

    bool is_rational() const
    {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (sgn(c_[i]) != 0)
                return false;
        return true;
    }

    // Only valid when is_rational().
    const Rational& rational_value() const { return c_[0]; }

    int sign() const { return ctx_->sign_of(c_); }

    double to_double() const { return ctx_->to_double(c_); }

    AlgebraicNumber operator-() const
    {
        std::vector<Rational> r = c_;
        for (Rational& x : r)
            x = -x;
        return AlgebraicNumber(ctx_, std::move(r));
    }

    friend AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b)
    {
        check_ctx(a, b);
        std::vector<Rational> r = a.c_;
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] += b.c_[i];
        return AlgebraicNumber(a.ctx_, std::move(r));
    }

    friend AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b)
    {
        check_ctx(a, b);
        std::vector<Rational> r = a.c_;
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] -= b.c_[i];
        return AlgebraicNumber(a.ctx_, std::move(r));
    }

    friend AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b)
    {
        check_ctx(a, b);
        std::size_t d = a.c_.size();
        std::vector<Rational> conv(2 * d - 1, Rational(0));
        for (std::size_t i = 0; i < d; ++i) {
            if (sgn(a.c_[i]) == 0)
                continue;
            for (std::size_t j = 0; j < d; ++j)
                if (sgn(b.c_[j]) != 0)
                    conv[i + j] += a.c_[i] * b.c_[j];
        }
        return AlgebraicNumber(a.ctx_, a.ctx_->reduce(std::move(conv)));
    }

    friend AlgebraicNumber operator*(const AlgebraicNumber& a, const Rational& s)
    {
        std::vector<Rational> r = a.c_;
        for (Rational& x : r)
            x *= s;
        return AlgebraicNumber(a.ctx_, std::move(r));
    }

    friend AlgebraicNumber operator*(const Rational& s, const AlgebraicNumber& a) { return a * s; }

    friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b)
    {
        check_ctx(a, b);
        return a.c_ == b.c_;
    }

    friend bool operator!=(const AlgebraicNumber& a, const AlgebraicNumber& b) { return !(a == b); }

    AlgebraicNumber inverse() const
    {
        if (is_zero())
            fail(Errc::internal, "inverse of zero");
        if (ctx_->degree() == 1)
            return AlgebraicNumber(ctx_, { 1 / c_[0] });
        qpoly::Poly a(c_.begin(), c_.end());
        auto [g, u, v] = qpoly::extended_gcd(a, ctx_->monic_);
        (void)v;
        if (qpoly::degree(g) != 0)
            fail(Errc::internal, "element not invertible modulo minimal polynomial");
        return AlgebraicNumber(ctx_, ctx_->reduce(std::move(u)));
    }

    friend AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b)
    {
        return a * b.inverse();
    }

    AlgebraicNumber pow(unsigned k) const
    {
        AlgebraicNumber acc = ctx_->one();
        AlgebraicNumber base = *this;
        while (k > 0) {
            if (k & 1u)
                acc = acc * base;
            base = base * base;
            k >>= 1u;
        }
        return acc;
    }

    std::string str() const
    {
        if (is_zero())
            return "0";
        std::string out;
        bool first = true;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (sgn(c_[k]) == 0)
                continue;
            Rational mag = abs(c_[k]);
            std::string term;
            if (k == 0) {
                term = to_string(mag);
            } else {
                std::string var = k == 1 ? "b" : "b^" + std::to_string(k);
                term = mag == 1 ? var : to_string(mag) + "*" + var;
            }
            if (first) {
                out = (sgn(c_[k]) < 0 ? "-" : "") + term;
                first = false;
            } else {
                out += (sgn(c_[k]) < 0 ? "-" : "+") + term;
            }
        }
        return out;
    }

private:
    static void check_ctx(const AlgebraicNumber& a, const AlgebraicNumber& b)
    {
        if (!a.ctx_ || !b.ctx_)
            fail(Errc::internal, "uninitialized algebraic number");
        if (!a.ctx_->compatible_with(*b.ctx_))
            fail(Errc::mixed_contexts, "operands belong to different field contexts");
    }

    std::shared_ptr<const FieldContext> ctx_;
    std::vector<Rational> c_;
};

struct AlgebraicNumberHash {
    std::size_t operator()(const AlgebraicNumber& a) const
    {
        std::size_t h = 0x2545f4914f6cdd1dULL;
        for (const Rational& c : a.coeffs())
            h ^= hash_value(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

inline int sign(const AlgebraicNumber& a) { return a.sign(); }

inline int compare(const AlgebraicNumber& a, const AlgebraicNumber& b) { return (a - b).sign(); }

// Sigma c_k beta^k, exactly.
inline AlgebraicNumber eval_poly(const std::shared_ptr<const FieldContext>& ctx,
    const std::vector<Rational>& coeffs)
{
    AlgebraicNumber beta = ctx->beta();
    AlgebraicNumber acc = ctx->zero();
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * beta + ctx->from_rational(*it);
    return acc;
}

inline AlgebraicNumber FieldContext::beta() const
{
    std::vector<Rational> c(static_cast<std::size_t>(degree()), Rational(0));
    if (degree() == 1)
        c[0] = rational_beta();
    else
        c[1] = 1;
    return AlgebraicNumber(shared_from_this(), std::move(c));
}

inline AlgebraicNumber FieldContext::zero() const
{
    return AlgebraicNumber(shared_from_this(),
        std::vector<Rational>(static_cast<std::size_t>(degree()), Rational(0)));
}

inline AlgebraicNumber FieldContext::one() const
{
    std::vector<Rational> c(static_cast<std::size_t>(degree()), Rational(0));
    c[0] = 1;
    return AlgebraicNumber(shared_from_this(), std::move(c));
}

inline AlgebraicNumber FieldContext::from_rational(const Rational& r) const
{
    std::vector<Rational> c(static_cast<std::size_t>(degree()), Rational(0));
    c[0] = r;
    return AlgebraicNumber(shared_from_this(), std::move(c));
}

inline AlgebraicNumber FieldContext::digit_step() const
{
    return (one() - beta()) * Rational(1, N_);
}

inline void FieldContext::finish_setup()
{
    int d = static_cast<int>(min_poly_int_.size()) - 1;
    monic_.assign(min_poly_int_.begin(), min_poly_int_.end());
    Rational lead = monic_.back();
    for (Rational& c : monic_)
        c /= lead;

    if (d >= 2) {
        // x^d == -(m_0 + ... + m_{d-1} x^{d-1}); higher powers by shifting.
        std::vector<Rational> row(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
            row[static_cast<std::size_t>(i)] = -monic_[static_cast<std::size_t>(i)];
        pow_red_.push_back(row);
        for (int k = 1; k <= d - 2; ++k) {
            std::vector<Rational> next(static_cast<std::size_t>(d), Rational(0));
            const std::vector<Rational>& prev = pow_red_.back();
            for (int i = 0; i < d - 1; ++i)
                next[static_cast<std::size_t>(i + 1)] = prev[static_cast<std::size_t>(i)];
            const Rational& carry = prev[static_cast<std::size_t>(d - 1)];
            if (sgn(carry) != 0)
                for (int i = 0; i < d; ++i)
                    next[static_cast<std::size_t>(i)] += carry * pow_red_[0][static_cast<std::size_t>(i)];
            pow_red_.push_back(std::move(next));
        }

        sign_lo_ = sgn(qpoly::eval(monic_, lo_));
        if (sign_lo_ == 0)
            fail(Errc::internal, "isolating interval endpoint is a root");
        // Pre-refine so later sign queries usually settle in one evaluation.
        Rational width_target(1, 1);
        width_target /= Integer(1) << 64;
        while (hi_ - lo_ > width_target) {
            Rational mid = (lo_ + hi_) / 2;
            int sm = sgn(qpoly::eval(monic_, mid));
            if (sm == 0)
                fail(Errc::internal, "minimal polynomial vanished at rational point");
            if (sm == sign_lo_)
                lo_ = mid;
            else
                hi_ = mid;
        }
    }
}

inline std::shared_ptr<const FieldContext> FieldContext::make(const BetaSpec& spec)
{
    if (spec.N < 1)
        fail(Errc::unsupported, "N must be a positive integer");
    auto ctx = std::make_shared<FieldContext>(Passkey {}, spec.N);
    Rational upper(1, spec.N + 1);

    auto set_rational = [&](const Rational& b) {
        if (sgn(b) <= 0 || b >= upper)
            fail(Errc::beta_out_of_range,
                "beta = " + to_string(b) + " is not in (0, 1/" + std::to_string(spec.N + 1) + ")");
        ctx->min_poly_int_ = { -b.get_num(), b.get_den() };
        ctx->lo_ = b;
        ctx->hi_ = b;
    };

    if (spec.kind == BetaSpec::Kind::rational) {
        Rational b = spec.value;
        b.canonicalize();
        set_rational(b);
        ctx->finish_setup();
        return ctx;
    }

    qpoly::IPoly input = spec.poly;
    qpoly::trim(input);
    if (qpoly::degree(input) < 1)
        fail(Errc::parse_error, "beta polynomial must have positive degree");
    if (qpoly::degree(input) > 16)
        fail(Errc::degree_cap_exceeded, "beta polynomial degree exceeds 16");
    if (spec.lo >= spec.hi)
        fail(Errc::parse_error, "isolating interval is empty");

    qpoly::IPoly sf = qpoly::squarefree_part(input);

    // Count roots in the closed interval: Sturm handles (lo, hi]; a root at
    // lo is rational and counted separately.
    auto chain = qpoly::sturm_chain(qpoly::to_qpoly(sf));
    int count = qpoly::sturm_count(chain, spec.lo, spec.hi);
    if (sgn(qpoly::eval(sf, spec.lo)) == 0)
        ++count;
    if (count == 0)
        fail(Errc::no_root_in_interval, "polynomial has no root in the isolating interval");
    if (count > 1)
        fail(Errc::multiple_roots_in_interval, "polynomial has several roots in the isolating interval");

    std::vector<Rational> rroots = qpoly::rational_roots(sf);
    for (const Rational& r : rroots) {
        if (r >= spec.lo && r <= spec.hi) {
            set_rational(r);
            ctx->finish_setup();
            return ctx;
        }
    }

    qpoly::IPoly stripped = qpoly::strip_rational_roots(sf);
    std::vector<qpoly::IPoly> factors = qpoly::irreducible_factors(stripped);
    const qpoly::IPoly* selected = nullptr;
    for (const qpoly::IPoly& f : factors) {
        auto fchain = qpoly::sturm_chain(qpoly::to_qpoly(f));
        if (qpoly::sturm_count(fchain, spec.lo, spec.hi) == 1) {
            selected = &f;
            break;
        }
    }
    if (!selected)
        fail(Errc::internal, "no irreducible factor isolates the root");
    if (qpoly::degree(*selected) > 8)
        fail(Errc::degree_cap_exceeded, "minimal polynomial degree exceeds 8");

    ctx->min_poly_int_ = *selected;
    ctx->lo_ = spec.lo;
    ctx->hi_ = spec.hi;
    ctx->finish_setup();

    AlgebraicNumber beta = ctx->beta();
    if (beta.sign() <= 0 || (beta - ctx->from_rational(upper)).sign() >= 0)
        fail(Errc::beta_out_of_range,
            "root is not in (0, 1/" + std::to_string(spec.N + 1) + ")");
    return ctx;
}

// Field construction entry point: context plus the generator itself.
struct Field {
    std::shared_ptr<const FieldContext> ctx;
    AlgebraicNumber beta;
};

inline Field make_beta(const BetaSpec& spec)
{
    auto ctx = FieldContext::make(spec);
    return { ctx, ctx->beta() };
}

} // namespace selfsim
