#pragma once

#include <map>
#include <string>
#include <vector>

#include "singinv/ratfunc.hpp"

namespace singinv {

/// Polynomial in declared form/ambient variables with RatFunc coefficients,
/// i.e. an element of k(params)[x_1..x_n].  Variable order is the declared
/// order (not sorted); terms are kept in graded-lex descending order.
class FPoly {
public:
    using TermMap = std::map<ExpVec, RatFunc, GrlexDesc>;

    FPoly() : vars_(ParamPoly::no_vars()) {}
    explicit FPoly(VarsPtr vars) : vars_(std::move(vars)) {}

    /// Declared-order variable list (no sorting).
    static VarsPtr declare_vars(const std::vector<std::string>& names);

    static FPoly zero(VarsPtr vars) { return FPoly(std::move(vars)); }
    static FPoly constant(VarsPtr vars, RatFunc c);
    static FPoly variable(VarsPtr vars, const std::string& name);

    const VarsPtr& vars() const { return vars_; }
    std::size_t nvars() const { return vars_->size(); }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    RatFunc constant_value() const;

    std::uint32_t degree() const;
    bool is_homogeneous() const;

    const ExpVec& leading_monomial() const;
    const RatFunc& leading_coeff() const;

    void add_term(const ExpVec& mono, const RatFunc& coeff);

    FPoly operator-() const;
    FPoly operator+(const FPoly& o) const;
    FPoly operator-(const FPoly& o) const;
    FPoly operator*(const FPoly& o) const;
    FPoly operator*(const RatFunc& c) const;
    FPoly pow(std::uint32_t k) const;

    bool operator==(const FPoly& o) const;
    bool operator!=(const FPoly& o) const { return !(*this == o); }

    FPoly derivative(std::size_t var) const;

    /// Substitutes variable i by `images[i]`.
    FPoly substitute(const std::vector<FPoly>& images) const;

    /// Coefficient of a monomial (zero if absent).
    RatFunc coeff(const ExpVec& mono) const;

    std::string str(bool pretty = true) const;

private:
    VarsPtr vars_;
    TermMap terms_;
};

} // namespace singinv
