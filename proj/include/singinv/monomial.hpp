#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "singinv/rational.hpp"

namespace singinv {

/// Exponent vector.  Its length always equals the owning polynomial's
/// variable count.
using ExpVec = std::vector<std::uint32_t>;

/// Ordered list of variable names.  Shared between values so that monomial
/// arithmetic never re-checks name sets.
using VarList = std::vector<std::string>;
using VarsPtr = std::shared_ptr<const VarList>;

inline std::uint32_t total_degree(const ExpVec& e) {
    std::uint32_t d = 0;
    for (auto x : e) d += x;
    return d;
}

/// Graded lexicographic comparison: higher total degree first, ties broken by
/// lexicographic comparison in variable order.
inline bool grlex_greater(const ExpVec& a, const ExpVec& b) {
    std::uint32_t da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

/// Map comparator placing the grlex-leading term first.
struct GrlexDesc {
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        return grlex_greater(a, b);
    }
};

inline ExpVec mono_mul(const ExpVec& a, const ExpVec& b) {
    ExpVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline bool mono_divides(const ExpVec& d, const ExpVec& m) {
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] > m[i]) return false;
    return true;
}

inline ExpVec mono_div(const ExpVec& m, const ExpVec& d) {
    ExpVec r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) r[i] = m[i] - d[i];
    return r;
}

inline ExpVec mono_lcm(const ExpVec& a, const ExpVec& b) {
    ExpVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

inline ExpVec mono_gcd(const ExpVec& a, const ExpVec& b) {
    ExpVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b[i]);
    return r;
}

inline bool is_constant_mono(const ExpVec& e) {
    for (auto x : e)
        if (x) return false;
    return true;
}

/// N! / (e_1! e_2! ... e_k!) for the monomial's exponents; N = total degree.
inline Int multinomial(const ExpVec& e) {
    Int result = 1;
    std::uint32_t seen = 0;
    for (auto x : e) {
        for (std::uint32_t j = 1; j <= x; ++j) {
            ++seen;
            result *= seen;
            result /= j;
        }
    }
    return result;
}

/// Renders "x^2*y" style; empty product renders "1".
std::string mono_str(const ExpVec& e, const VarList& vars);

} // namespace singinv
