#pragma once

#include <vector>

#include "singinv/ratfunc.hpp"

namespace singinv {

using Vec = std::vector<RatFunc>;

/// Row-reduced span of vectors over the rational-function field.
class RowSpace {
public:
    explicit RowSpace(std::size_t width) : width_(width) {}

    /// Eliminates `v` against the rows; if a residual remains it is
    /// normalized (pivot 1) and inserted.  Returns true when the dimension
    /// grew.
    bool add(Vec v);

    bool contains(Vec v) const;

    /// Residual of `v` after elimination.
    Vec reduce(Vec v) const;

    std::size_t dim() const { return rows_.size(); }
    std::size_t width() const { return width_; }
    const std::vector<Vec>& rows() const { return rows_; }

private:
    std::size_t width_;
    std::vector<Vec> rows_;            // pivot-normalized
    std::vector<std::size_t> pivots_;  // column of each row's pivot
};

Vec vec_scale(const Vec& v, const RatFunc& c);
bool vec_is_zero(const Vec& v);

} // namespace singinv
