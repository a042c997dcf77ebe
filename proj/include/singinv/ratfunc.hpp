#pragma once

#include <map>
#include <string>

#include "singinv/parampoly.hpp"

namespace singinv {

/// Exact rational function in parameter variables, kept in canonical form:
/// numerator and denominator are coprime integer-coefficient polynomials with
/// joint content 1, and the denominator's leading coefficient (graded-lex) is
/// positive.  Two values are equal iff their canonical forms coincide, which
/// agrees with cross-multiplication.
///
/// Values are immutable; all operations are pure and safe to run
/// concurrently on shared inputs.
class RatFunc {
public:
    RatFunc() : num_(), den_(ParamPoly::constant(Rational(1))) {}
    RatFunc(ParamPoly num, ParamPoly den);

    explicit RatFunc(const Rational& c)
        : RatFunc(ParamPoly::constant(c), ParamPoly::constant(Rational(1))) {}
    explicit RatFunc(long c) : RatFunc(Rational(c)) {}
    explicit RatFunc(ParamPoly num)
        : RatFunc(std::move(num), ParamPoly::constant(Rational(1))) {}

    static RatFunc variable(const VarsPtr& vars, const std::string& name) {
        return RatFunc(ParamPoly::variable(vars, name));
    }

    const ParamPoly& num() const { return num_; }
    const ParamPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }
    /// Value as a Rational; requires is_constant().
    Rational constant_value() const;

    RatFunc operator-() const;
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    /// Throws UndefinedError on division by the zero rational function.
    RatFunc operator/(const RatFunc& o) const;
    RatFunc inverse() const;
    RatFunc pow(std::int64_t k) const;

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

    bool operator==(const RatFunc& o) const;
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    /// Evaluates at a parameter assignment (indexed like num().vars()).
    /// Throws UndefinedError when the denominator vanishes at the point.
    Rational eval(const std::vector<Rational>& values) const;
    Rational eval(const std::map<std::string, Rational>& assignment) const;

    /// Substitutes rational functions for the parameters.
    RatFunc compose(const std::vector<RatFunc>& images) const;
    /// Substitutes `image` for the single named parameter.
    RatFunc compose_param(const std::string& name, const RatFunc& image) const;

    /// Canonical textual form: expanded numerator/denominator with explicit
    /// `*` and `^`; with `pretty`, free factorizations (sign, integer
    /// content, monomial part, perfect powers) are displayed.
    std::string str(bool pretty = true) const;

private:
    ParamPoly num_, den_;
};

/// Cross-multiplication equality a.num*b.den == b.num*a.den, bypassing
/// canonical forms (both must agree; kept for use inside algorithms).
bool equal_cross(const RatFunc& a, const RatFunc& b);

} // namespace singinv
