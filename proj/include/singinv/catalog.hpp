#pragma once

#include <map>
#include <string>
#include <vector>

#include "singinv/form.hpp"
#include "singinv/tensor.hpp"

namespace singinv {

/// A named invariant: a contraction program over the form tensor `a`, the
/// Levi-Civita symbol `eps`, and (for parabolic entries) the distinguished
/// direction `e`, ending in a scalar.
struct CatalogEntry {
    std::string name;       // qualified, e.g. "ternary_cubic.J"
    std::string short_name; // the scalar the program defines, e.g. "J"
    std::size_t n = 0;      // number of form variables
    std::uint32_t N = 0;    // form degree
    unsigned degree_a = 0;   // homogeneity in the form tensor
    unsigned degree_eps = 0; // Levi-Civita factors used
    unsigned degree_e = 0;   // distinguished-direction factors used
    std::vector<ContractionSpec> program;

    bool parabolic() const { return degree_e > 0; }
};

/// A ratio of invariants of matching homogeneity (in a, in eps, and in e),
/// hence independent of basis and scale choices.
struct AbsoluteInvariant {
    std::string name;
    std::size_t n = 0;
    std::uint32_t N = 0;
    ParamPoly num, den; // polynomials in entry short names
};

/// The invariant library, loaded from a plain-text description.  Immutable
/// after construction; evaluation is pure.
class Catalog {
public:
    /// Built-in library (the default text, also available via dump()).
    static const Catalog& builtin();
    static Catalog parse(const std::string& text);

    const std::vector<CatalogEntry>& entries() const { return entries_; }
    const std::vector<AbsoluteInvariant>& absolutes() const {
        return absolutes_;
    }

    const CatalogEntry& entry(const std::string& name) const;
    const AbsoluteInvariant& absolute(const std::string& name) const;
    bool has_absolute(const std::string& name) const;

    /// det-exponent under the weight law for pure SL entries (d*N/n); for
    /// parabolic entries, the Levi-Civita degree.
    unsigned weight_of(const std::string& name) const;

    /// Evaluates one catalog entry on a form of matching shape.  `e_index`
    /// (1-based) selects the distinguished direction for parabolic entries.
    RatFunc evaluate_entry(const std::string& name, const HomogeneousForm& p,
                           std::size_t e_index = 1) const;

    /// Reference path: same program evaluated step by step with the
    /// brute-force summation instead of the staged scheduler.
    RatFunc evaluate_entry_bruteforce(const std::string& name,
                                      const HomogeneousForm& p,
                                      std::size_t e_index = 1) const;

    /// Evaluates an absolute invariant; throws UndefinedError when the
    /// denominator invariant vanishes on `p` (degenerate form).
    RatFunc evaluate_absolute(const std::string& name,
                              const HomogeneousForm& p,
                              std::size_t e_index = 1) const;

    /// Source text (the serialized form of the library).
    const std::string& dump() const { return text_; }

private:
    void validate();

    std::vector<CatalogEntry> entries_;
    std::vector<AbsoluteInvariant> absolutes_;
    std::string text_;
};

/// True iff J^3 + 3*J*K - 10*L vanishes for the given binary sextic.
bool sextic_syzygy_holds(const Catalog& cat, const HomogeneousForm& sextic);

/// N^2 together with the degree-30 monomials in J, K, L, M: the data needed
/// to search for the coefficients of the known degree-30 relation by linear
/// algebra.
std::vector<std::pair<std::string, RatFunc>> sextic_relation_data(
    const Catalog& cat, const HomogeneousForm& sextic);

} // namespace singinv
