#pragma once

#include <optional>
#include <string>
#include <vector>

#include "singinv/catalog.hpp"
#include "singinv/fpoly.hpp"
#include "singinv/form.hpp"
#include "singinv/linalg.hpp"

namespace singinv {

/// Generators of an ideal in the ambient polynomial ring; each generator has
/// zero constant term (the singular point sits at the origin).
struct IdealPresentation {
    VarsPtr vars;
    std::vector<FPoly> generators;
};

/// (f, df/dz_1, ..., df/dz_n).  Requires f with zero constant term and zero
/// linear part; throws InputError otherwise (nonsingular at the origin).
IdealPresentation jacobian_ideal(const FPoly& f);

/// Confluent rewriting system for ideal membership and unique normal forms,
/// computed over the rational-function coefficient field.  Every parameter
/// polynomial inverted along the way is recorded: outside the vanishing set
/// of the recorded polynomials the computation specializes verbatim.
class GroebnerReducer {
public:
    GroebnerReducer() = default;
    static GroebnerReducer compute(const IdealPresentation& ideal);

    const VarsPtr& vars() const { return vars_; }
    const std::vector<FPoly>& basis() const { return basis_; }
    const std::vector<ParamPoly>& genericity() const { return genericity_; }

    FPoly normal_form(const FPoly& p) const;
    bool ideal_contains(const FPoly& p) const {
        return normal_form(p).is_zero();
    }

private:
    void record_inversion(const RatFunc& leading);
    FPoly reduce_full(FPoly p, const std::vector<FPoly>& basis) const;

    VarsPtr vars_;
    std::vector<FPoly> basis_; // monic, inter-reduced
    std::vector<ParamPoly> genericity_;
};

/// Finite-dimensional quotient algebra presented by its standard-monomial
/// basis and multiplication table.  Immutable once built.
class QuotientAlgebra {
public:
    /// Throws UndefinedError when the quotient is infinite-dimensional
    /// (non-isolated singularity at generic parameter values).
    static QuotientAlgebra build(GroebnerReducer reducer);

    std::size_t dim() const { return basis_.size(); }
    const std::vector<ExpVec>& basis() const { return basis_; }
    const GroebnerReducer& reducer() const { return reducer_; }
    const VarsPtr& vars() const { return reducer_.vars(); }
    std::string basis_monomial_str(std::size_t i) const;

    /// Coordinates of basis_i * basis_j.
    const Vec& product(std::size_t i, std::size_t j) const;
    Vec multiply(const Vec& u, const Vec& v) const;
    Vec power(Vec v, unsigned k) const;

    /// Coordinates of the class of an ambient variable.
    const Vec& var_image(std::size_t ambient_var) const;

    std::size_t unit_index() const { return unit_index_; }
    std::optional<std::size_t> basis_index(const ExpVec& mono) const;

    /// Associativity on all (i, j, g) with g a degree-one basis element (the
    /// generator set); throws InternalError on a violation.
    void verify_table() const;
    /// Associativity on every basis triple.
    void verify_associativity_exhaustive() const;

private:
    QuotientAlgebra() = default;
    Vec coords_of(const FPoly& nf) const;

    GroebnerReducer reducer_;
    std::vector<ExpVec> basis_;               // grlex ascending, 1 first
    std::size_t unit_index_ = 0;
    std::vector<std::vector<Vec>> table_;     // upper-triangular storage
    std::vector<Vec> var_images_;
};

/// Dimensions of the powers of the maximal ideal, socle data, and the chosen
/// degree-one monomial basis of m/m^2.
struct FiltrationReport {
    std::vector<std::size_t> power_dims; // dim m^1, m^2, ..., last is 1
    std::uint32_t socle_degree = 0;      // largest N with m^N != 0
    std::size_t embedding_dim = 0;       // dim m/m^2
    std::vector<std::size_t> degree_one; // basis indices, declared var order
    Vec socle_generator;                 // spanning vector of m^N, pivot 1
};

/// Throws UndefinedError when the construction does not apply (zero maximal
/// ideal, socle degree < 2, or a socle of dimension > 1).
FiltrationReport filtration(const QuotientAlgebra& A);

/// The degree-N form on the dual of m/m^2 induced by N-fold multiplication
/// into the socle line, in a deterministic scale-normalized representative
/// (the underlying tensor is canonical only up to scale).
HomogeneousForm multiplication_tensor(const QuotientAlgebra& A,
                                      const FiltrationReport& report);

/// Span of the basis monomials of m whose k-th power vanishes, with
/// verification flags: `power_check` (every k-fold product of the span
/// vanishes), `ideal_check` (closed under multiplication by the algebra
/// generators), and `completeness_probe` (no line b + lambda*v with b
/// outside the span consists of k-nilpotents).
struct NilpotencySubspace {
    unsigned power = 0;
    std::vector<std::size_t> basis_indices;
    bool power_check = false;
    bool ideal_check = false;
    bool completeness_probe = false;

    bool verified() const {
        return power_check && ideal_check && completeness_probe;
    }
};

NilpotencySubspace nilpotency_ideal(const QuotientAlgebra& A, unsigned k);

/// Multiplication tensor of the flag variation: the top power of the given
/// ideal replaces the socle and cosets modulo m*n replace m/m^2.  The
/// canonical-subspace representative (image of m^2) is ordered last; its
/// dual direction is returned 1-based in `e_index` (0 when the construction
/// degenerates to the plain multiplication tensor).
struct FlagTensor {
    HomogeneousForm form{FPoly::declare_vars({"X"}), 1};
    std::size_t e_index = 0;
    std::uint32_t top_power = 0;
    std::vector<std::size_t> rep_indices;
};

FlagTensor flag_multiplication_tensor(const QuotientAlgebra& A,
                                      const NilpotencySubspace& nil);

/// Weighted-homogeneity detection: weights w with sum_i w_i * e_i = 1 for
/// every monomial of f, when they exist and are unique.
std::optional<std::vector<Rational>> quasihomogeneous_weights(const FPoly& f);

enum class PipelineKind { Standard, Flag };

struct Recipe {
    std::string name;
    PipelineKind kind = PipelineKind::Standard;
    unsigned nil_power = 4; // Flag only
    std::vector<std::string> ratios;
};

/// Built-in recipes: e6, e7, e8, sextic, two-param.
Recipe recipe_by_name(const std::string& name);
Recipe recipe_from_text(const std::string& text);

struct PipelineResult {
    std::size_t dimension = 0;
    std::vector<std::string> basis_monomials;
    std::vector<std::size_t> power_dims;
    std::uint32_t socle_degree = 0;
    std::size_t embedding_dim = 0;
    HomogeneousForm extracted;
    std::size_t e_index = 0; // 0: no distinguished direction
    std::vector<std::pair<std::string, RatFunc>> invariants;
    std::vector<ParamPoly> genericity;
    bool quasi_homogeneous = false;
    std::vector<Rational> weights;
    std::optional<Rational> weight_formula_dim;
    std::vector<std::string> notes;

    PipelineResult() : extracted(FPoly::declare_vars({"X"}), 1) {}
};

PipelineResult run_pipeline(const FPoly& f, const Recipe& recipe,
                            const Catalog& cat = Catalog::builtin());

/// Convenience: build the quotient algebra of the Jacobian ideal of f.
QuotientAlgebra moduli_algebra(const FPoly& f);

/// Dual variable names for extracted forms: X, Y, Z, U, V, W.
VarsPtr dual_var_names(std::size_t n);

} // namespace singinv
