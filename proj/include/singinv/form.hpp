#pragma once

#include <map>
#include <string>
#include <vector>

#include "singinv/fpoly.hpp"

namespace singinv {

class SymmetricTensor;

/// Homogeneous polynomial of degree N in n form variables with RatFunc
/// coefficients.  Every stored monomial has total degree exactly N; no zero
/// coefficients are stored; n >= 1 and N >= 1.
class HomogeneousForm {
public:
    HomogeneousForm(VarsPtr vars, std::uint32_t degree);

    /// Validates homogeneity of `p` (throws InputError otherwise).
    static HomogeneousForm from_poly(const FPoly& p);

    /// Parses text over the declared variables/parameters and validates
    /// homogeneity.
    static HomogeneousForm parse(const std::string& text,
                                 const std::vector<std::string>& form_vars,
                                 const std::vector<std::string>& params);

    std::size_t nvars() const { return vars_->size(); }
    std::uint32_t degree() const { return degree_; }
    const VarsPtr& vars() const { return vars_; }
    const FPoly::TermMap& coeffs() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }
    RatFunc coeff(const ExpVec& mono) const;
    void add_term(const ExpVec& mono, const RatFunc& c);

    HomogeneousForm operator*(const RatFunc& c) const;
    bool operator==(const HomogeneousForm& o) const;
    bool operator!=(const HomogeneousForm& o) const { return !(*this == o); }

    /// True when the two forms agree up to an overall nonzero scale.
    bool proportional_to(const HomogeneousForm& o) const;

    /// Composes with the linear substitution x_i -> sum_j M[i][j] x_j,
    /// expanded and collected exactly.  M must be n x n.
    HomogeneousForm linear_substitute(
        const std::vector<std::vector<RatFunc>>& M) const;

    /// Clears denominators, divides by content, and fixes the sign so the
    /// first (graded-lex) nonzero coefficient has positive leading integer.
    /// The result spans the same line; used to pick a deterministic
    /// representative of an up-to-scale form.
    HomogeneousForm scale_normalized() const;

    SymmetricTensor to_tensor() const;
    FPoly to_poly() const;
    std::string str(bool pretty = true) const;

private:
    VarsPtr vars_;
    std::uint32_t degree_;
    FPoly::TermMap coeffs_;
};

/// Fully symmetric tensor stored by sorted index tuple (0-based indices).
class SymmetricTensor {
public:
    SymmetricTensor(std::size_t dim, std::uint32_t valence)
        : dim_(dim), valence_(valence) {}

    std::size_t dim() const { return dim_; }
    std::uint32_t valence() const { return valence_; }

    /// Lookup symmetrizes: any permutation of a stored tuple returns the
    /// stored value.
    RatFunc at(std::vector<std::size_t> idx) const;
    void set(std::vector<std::size_t> idx, const RatFunc& v);

    const std::map<std::vector<std::size_t>, RatFunc>& entries() const {
        return entries_;
    }

    bool operator==(const SymmetricTensor& o) const;

    /// Inverse of HomogeneousForm::to_tensor; the round trip is exact in
    /// both directions.
    HomogeneousForm to_form(VarsPtr vars) const;

private:
    std::size_t dim_;
    std::uint32_t valence_;
    std::map<std::vector<std::size_t>, RatFunc> entries_; // sorted keys only
};

} // namespace singinv
