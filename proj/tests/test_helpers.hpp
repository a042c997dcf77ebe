#pragma once

// Shared test utilities: a deterministic RNG, random polynomial generators,
// and independent oracles (schoolbook division, Sylvester resultants,
// brute-force expansion) used to derive expected values.

#include <cstdint>
#include <functional>
#include <vector>

#include "singinv/form.hpp"
#include "singinv/parampoly.hpp"
#include "singinv/parse.hpp"
#include "singinv/ratfunc.hpp"

namespace testutil {

using namespace singinv;

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed = 42)
        : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    long range(long lo, long hi) {
        return lo + static_cast<long>(
                        next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

inline ParamPoly random_parampoly(Rng& rng, const VarsPtr& vars,
                                  std::uint32_t max_deg, long coeff_bound,
                                  int terms) {
    ParamPoly p(vars);
    for (int t = 0; t < terms; ++t) {
        ExpVec e(vars->size(), 0);
        std::uint32_t left = max_deg;
        for (auto& x : e) {
            x = static_cast<std::uint32_t>(rng.range(0, left));
            left -= x;
        }
        p.add_term(e, Rational(rng.range(-coeff_bound, coeff_bound)));
    }
    return p;
}

inline RatFunc random_ratfunc(Rng& rng, const VarsPtr& vars) {
    ParamPoly num = random_parampoly(rng, vars, 3, 5, 3);
    ParamPoly den;
    do {
        den = random_parampoly(rng, vars, 2, 4, 2);
    } while (den.is_zero());
    return RatFunc(num, den);
}

// Schoolbook multivariate division with remainder by a single divisor:
// a = q*b + r where no term of r is divisible by the leading term of b.
inline std::pair<ParamPoly, ParamPoly> oracle_divmod(const ParamPoly& a,
                                                     const ParamPoly& b) {
    ParamPoly p = a, q(a.vars()), r(a.vars());
    while (!p.is_zero()) {
        const ExpVec& lm = p.leading_monomial();
        const Rational lc = p.leading_coeff();
        if (mono_divides(b.leading_monomial(), lm)) {
            ExpVec shift = mono_div(lm, b.leading_monomial());
            Rational c = lc / b.leading_coeff();
            ParamPoly t(a.vars());
            t.add_term(shift, c);
            q = q + t;
            p = p - t * b;
        } else {
            ParamPoly t(a.vars());
            t.add_term(lm, lc);
            r = r + t;
            p = p - t;
        }
    }
    return {q, r};
}

inline bool oracle_divides(const ParamPoly& d, const ParamPoly& a) {
    if (d.is_zero()) return a.is_zero();
    return oracle_divmod(a, d).second.is_zero();
}

// Sylvester-matrix resultant of two univariate polynomials (single-variable
// ParamPoly), via fraction-free-ish Gaussian elimination over Q.
inline Rational oracle_resultant(const ParamPoly& a, const ParamPoly& b) {
    auto coeffs = [](const ParamPoly& p) {
        std::vector<Rational> c(p.degree() + 1);
        for (const auto& [m, coef] : p.terms()) c[total_degree(m)] = coef;
        return c;
    };
    std::vector<Rational> ca = coeffs(a), cb = coeffs(b);
    std::size_t m = ca.size() - 1, n = cb.size() - 1;
    std::size_t size = m + n;
    if (size == 0) return Rational(1);
    std::vector<std::vector<Rational>> s(size, std::vector<Rational>(size));
    for (std::size_t row = 0; row < n; ++row)
        for (std::size_t k = 0; k <= m; ++k) s[row][row + k] = ca[m - k];
    for (std::size_t row = 0; row < m; ++row)
        for (std::size_t k = 0; k <= n; ++k) s[n + row][row + k] = cb[n - k];
    Rational det(1);
    for (std::size_t col = 0; col < size; ++col) {
        std::size_t piv = size;
        for (std::size_t r = col; r < size; ++r)
            if (s[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv == size) return Rational(0);
        if (piv != col) {
            std::swap(s[piv], s[col]);
            det = -det;
        }
        det *= s[col][col];
        Rational inv = 1 / s[col][col];
        for (std::size_t r = col + 1; r < size; ++r) {
            if (s[r][col] == 0) continue;
            Rational f = s[r][col] * inv;
            for (std::size_t k = col; k < size; ++k)
                s[r][k] -= f * s[col][k];
        }
    }
    return det;
}

// Reduces powers of a formal cube root of unity: w^3 = 1.
inline ParamPoly reduce_omega(const ParamPoly& p, const std::string& name) {
    auto it = std::find(p.vars()->begin(), p.vars()->end(), name);
    if (it == p.vars()->end()) return p;
    std::size_t w = static_cast<std::size_t>(it - p.vars()->begin());
    ParamPoly r(p.vars());
    for (const auto& [m, c] : p.terms()) {
        ExpVec e = m;
        e[w] %= 3;
        r.add_term(e, c);
    }
    return r;
}

inline RatFunc reduce_omega(const RatFunc& v, const std::string& name) {
    return RatFunc(reduce_omega(v.num(), name), reduce_omega(v.den(), name));
}

inline VarsPtr test_vars(std::size_t n) {
    static const std::vector<std::string> names = {"X", "Y", "Z",
                                                   "U", "V", "W"};
    return FPoly::declare_vars(
        std::vector<std::string>(names.begin(), names.begin() + n));
}

// Brute-force expansion of sum_{i..k} a_{i..k} x_i...x_k for a symmetric
// tensor: the independent oracle for the form/tensor correspondence.
inline HomogeneousForm oracle_expand(const SymmetricTensor& t, VarsPtr vars) {
    FPoly acc(vars);
    std::vector<std::size_t> idx(t.valence(), 0);
    for (;;) {
        RatFunc v = t.at(idx);
        if (!v.is_zero()) {
            ExpVec mono(t.dim(), 0);
            for (auto i : idx) mono[i] += 1;
            acc.add_term(mono, v);
        }
        std::size_t pos = idx.size();
        bool more = false;
        while (pos-- > 0) {
            if (++idx[pos] < t.dim()) {
                more = true;
                break;
            }
            idx[pos] = 0;
        }
        if (!more) break;
    }
    return HomogeneousForm::from_poly(acc);
}

} // namespace testutil
