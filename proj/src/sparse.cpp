#include "newsclf/sparse.hpp"

#include <algorithm>
#include <string>

#include "newsclf/error.hpp"

namespace newsclf {

SparseVector::SparseVector(std::size_t dim, std::vector<SparseEntry> entries)
    : dim_(dim), entries_(std::move(entries)) {
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        const auto& e = entries_[k];
        if (e.index >= dim_) {
            throw DimensionError("sparse index " + std::to_string(e.index) + " out of range for dim " +
                                 std::to_string(dim_));
        }
        if (k > 0 && entries_[k - 1].index >= e.index) {
            throw FormatError("sparse indices must be strictly increasing");
        }
        if (e.value == 0.0) {
            throw FormatError("sparse vector stores an explicit zero");
        }
    }
}

double SparseVector::at(std::size_t index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const SparseEntry& e, std::size_t i) { return e.index < i; });
    return it != entries_.end() && it->index == index ? it->value : 0.0;
}

double SparseVector::dot(std::span<const double> dense) const {
    if (dense.size() != dim_) {
        throw DimensionError("dot: dense length " + std::to_string(dense.size()) + " != dim " +
                             std::to_string(dim_));
    }
    double sum = 0.0;
    for (const auto& e : entries_) {
        sum += e.value * dense[e.index];
    }
    return sum;
}

std::vector<double> SparseVector::to_dense() const {
    std::vector<double> out(dim_, 0.0);
    for (const auto& e : entries_) {
        out[e.index] = e.value;
    }
    return out;
}

}  // namespace newsclf
