#pragma once

#include <gmpxx.h>

#include <string>

namespace singinv {

// Exact scalars.  GMP supplies the big-integer / rational layer; everything
// above it (polynomials, rational functions) is built in this library.
using Int = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) {
    return q.get_den() == 1;
}

inline Int numerator(const Rational& q) { return q.get_num(); }
inline Int denominator(const Rational& q) { return q.get_den(); }

inline std::string rational_str(const Rational& q) {
    return q.get_str();
}

/// Exact k-th root of a non-negative integer, or false if none exists.
inline bool exact_root(const Int& v, unsigned long k, Int& out) {
    if (sgn(v) < 0) return false;
    mpz_class r;
    int exact = mpz_root(r.get_mpz_t(), v.get_mpz_t(), k);
    out = r;
    return exact != 0;
}

} // namespace singinv
