#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "singinv/form.hpp"
#include "singinv/ratfunc.hpp"

namespace singinv {

enum class Variance : std::uint8_t { Lower, Upper };

/// Dense tensor over RatFunc with declared upper/lower slots, indices
/// 0..dim-1.  Immutable in use; built once, then only read.
class Tensor {
public:
    Tensor(std::size_t dim, std::vector<Variance> slots);

    /// Totally antisymmetric tensor with eps[0,1,..,n-1] = 1, all slots
    /// upper.  Requires n >= 2.
    static Tensor levi_civita(std::size_t n);

    /// All-lower dense tensor of a symmetric tensor.
    static Tensor from_symmetric(const SymmetricTensor& s);

    /// Distinguished direction: single upper slot, 1 at `index`, else 0.
    static Tensor basis_vector(std::size_t dim, std::size_t index);

    std::size_t dim() const { return dim_; }
    std::size_t valence() const { return slots_.size(); }
    const std::vector<Variance>& slots() const { return slots_; }

    const RatFunc& at(const std::vector<std::size_t>& idx) const;
    void set(const std::vector<std::size_t>& idx, RatFunc v);

    bool is_scalar() const { return slots_.empty(); }
    RatFunc scalar_value() const;
    bool is_zero() const;

    bool operator==(const Tensor& o) const;

private:
    std::size_t flatten(const std::vector<std::size_t>& idx) const;

    std::size_t dim_;
    std::vector<Variance> slots_;
    std::vector<RatFunc> data_;
};

/// One step of a contraction program:
///   result[labels] = factor[labels] factor[labels] ...
/// written e.g. `b[ij^kl] = a[pqi] a[rsj] eps[prk] eps[qsl]`.  Labels after
/// '^' on the left-hand side are upper slots of the result.  A label
/// appearing twice is summed; paired slots must have opposite variance.
struct ContractionSpec {
    struct Factor {
        std::string name;
        std::vector<char> labels;
        /// Position of '^' within the bracket, if written (validated against
        /// the bound tensor's slots).
        std::optional<std::size_t> caret;
    };

    std::string result_name;
    std::vector<char> result_labels;
    std::vector<Variance> result_variance;
    std::vector<Factor> factors;

    static ContractionSpec parse(const std::string& line);
    std::string str() const;
};

using TensorBindings = std::map<std::string, Tensor>;

/// Evaluates the contraction by staged pairwise merges, left to right,
/// materializing intermediates.  Throws InputError on unbound names,
/// dimension mismatches, or variance violations.
Tensor contract(const ContractionSpec& spec, const TensorBindings& bindings);

/// Reference evaluator: one flat summation over every label assignment, no
/// scheduling.  Slower; used to cross-check the staged path.
Tensor contract_bruteforce(const ContractionSpec& spec,
                           const TensorBindings& bindings);

} // namespace singinv
