#include "singinv/linalg.hpp"

#include "singinv/errors.hpp"

namespace singinv {

Vec RowSpace::reduce(Vec v) const {
    if (v.size() != width_) throw InternalError("vector width mismatch");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const RatFunc& c = v[pivots_[r]];
        if (c.is_zero()) continue;
        RatFunc factor = c;
        for (std::size_t j = 0; j < width_; ++j) {
            if (rows_[r][j].is_zero()) continue;
            v[j] = v[j] - factor * rows_[r][j];
        }
    }
    return v;
}

bool RowSpace::add(Vec v) {
    v = reduce(std::move(v));
    std::size_t pivot = width_;
    for (std::size_t j = 0; j < width_; ++j)
        if (!v[j].is_zero()) {
            pivot = j;
            break;
        }
    if (pivot == width_) return false;
    RatFunc inv = v[pivot].inverse();
    for (auto& x : v) x = x * inv;
    // keep the rows fully inter-reduced so reduce() needs a single pass
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const RatFunc c = rows_[r][pivot];
        if (c.is_zero()) continue;
        for (std::size_t j = 0; j < width_; ++j) {
            if (v[j].is_zero()) continue;
            rows_[r][j] = rows_[r][j] - c * v[j];
        }
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return true;
}

bool RowSpace::contains(Vec v) const {
    return vec_is_zero(reduce(std::move(v)));
}

Vec vec_scale(const Vec& v, const RatFunc& c) {
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] * c;
    return r;
}

bool vec_is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

} // namespace singinv
