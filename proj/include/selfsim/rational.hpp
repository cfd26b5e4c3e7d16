#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "selfsim/errors.hpp"

namespace selfsim {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline int sgn_of(const Rational& r) { return sgn(r); }

inline Integer numerator(const Rational& r) { return r.get_num(); }
inline Integer denominator(const Rational& r) { return r.get_den(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// Parses "p", "-p", or "p/q" with arbitrary-precision components.
inline Rational parse_rational(const std::string& s)
{
    if (s.empty())
        fail(Errc::parse_error, "empty rational literal");
    try {
        Rational r(s);
        if (r.get_den() == 0)
            fail(Errc::parse_error, "zero denominator in '" + s + "'");
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        fail(Errc::parse_error, "invalid rational literal '" + s + "'");
    }
}

inline std::string to_string(const Rational& r)
{
    if (r.get_den() == 1)
        return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

inline std::size_t hash_value(const Integer& z)
{
    const mp_limb_t* limbs = mpz_limbs_read(z.get_mpz_t());
    std::size_t n = mpz_size(z.get_mpz_t());
    std::size_t h = n * 0x9e3779b97f4a7c15ULL + static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 2);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= static_cast<std::size_t>(limbs[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

inline std::size_t hash_value(const Rational& r)
{
    std::size_t h = hash_value(Integer(r.get_num()));
    h ^= hash_value(Integer(r.get_den())) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

} // namespace selfsim
