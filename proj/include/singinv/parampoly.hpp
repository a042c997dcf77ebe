#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "singinv/monomial.hpp"
#include "singinv/rational.hpp"

namespace singinv {

/// Multivariate polynomial in parameter variables over the rationals.
///
/// Parameter order is the lexicographic order of the declared names, fixed at
/// construction.  Values are immutable after construction; all operations are
/// pure.  No zero coefficients are ever stored.
class ParamPoly {
public:
    using TermMap = std::map<ExpVec, Rational, GrlexDesc>;

    /// Builds a shared variable list.  Names are sorted lexicographically;
    /// duplicates rejected.
    static VarsPtr make_vars(std::vector<std::string> names);
    static VarsPtr no_vars();

    ParamPoly() : vars_(no_vars()) {}
    explicit ParamPoly(VarsPtr vars) : vars_(std::move(vars)) {}

    static ParamPoly zero(VarsPtr vars) { return ParamPoly(std::move(vars)); }
    static ParamPoly constant(VarsPtr vars, const Rational& c);
    static ParamPoly constant(const Rational& c) { return constant(no_vars(), c); }
    static ParamPoly variable(VarsPtr vars, const std::string& name);

    const VarsPtr& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t nvars() const { return vars_->size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// The constant term (0 if absent).
    Rational constant_value() const;

    std::uint32_t degree() const; // total degree; 0 for the zero polynomial
    std::uint32_t degree_in(std::size_t var) const;

    const ExpVec& leading_monomial() const;  // grlex
    const Rational& leading_coeff() const;

    void add_term(const ExpVec& mono, const Rational& coeff); // builder use

    ParamPoly operator-() const;
    ParamPoly operator+(const ParamPoly& o) const;
    ParamPoly operator-(const ParamPoly& o) const;
    ParamPoly operator*(const ParamPoly& o) const;
    ParamPoly operator*(const Rational& c) const;
    ParamPoly pow(std::uint32_t k) const;

    bool operator==(const ParamPoly& o) const;
    bool operator!=(const ParamPoly& o) const { return !(*this == o); }

    /// Exact evaluation; `values` indexed like the variable list.
    Rational eval(const std::vector<Rational>& values) const;

    /// Rational content: gcd of coefficient numerators over lcm of
    /// denominators, signed like the leading coefficient.  Zero poly -> 0.
    Rational content() const;

    /// this / content(): integer coefficients, content 1, leading
    /// coefficient positive when `fix_sign`.
    ParamPoly primitive_part(bool fix_sign = true) const;

    std::string str() const;

    /// Re-expresses the polynomial over a superset variable list.
    ParamPoly lifted(const VarsPtr& wider) const;

private:
    VarsPtr vars_;
    TermMap terms_;
};

/// Aligns two polynomials onto a common (union) variable list.
void align_vars(ParamPoly& a, ParamPoly& b);
VarsPtr union_vars(const VarsPtr& a, const VarsPtr& b);

/// Exact division; returns std::nullopt when the division is not exact.
std::optional<ParamPoly> try_div_exact(const ParamPoly& a, const ParamPoly& b);
ParamPoly div_exact(const ParamPoly& a, const ParamPoly& b);

/// Greatest common divisor, normalized to positive leading coefficient and
/// content 1.  gcd(a, 0) = normalized a.  Content/primitive-part recursion
/// with a subresultant remainder sequence on the main variable.
ParamPoly param_gcd(const ParamPoly& a, const ParamPoly& b);

/// Polynomial lcm, same normalization as param_gcd.
ParamPoly param_lcm(const ParamPoly& a, const ParamPoly& b);

/// Substitutes each variable by the given polynomial (indexed like the
/// variable list of `p`); results live on `target_vars`.
ParamPoly compose(const ParamPoly& p, const std::vector<ParamPoly>& images);

/// Exact k-th root of an integer-coefficient polynomial, when one exists.
std::optional<ParamPoly> poly_perfect_root(const ParamPoly& p, unsigned k);

} // namespace singinv
