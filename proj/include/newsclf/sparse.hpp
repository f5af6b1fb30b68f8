#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace newsclf {

struct SparseEntry {
    std::uint32_t index = 0;
    double value = 0.0;

    bool operator==(const SparseEntry&) const = default;
};

/// Sparse feature row: strictly increasing indices below dim, no stored zeros.
class SparseVector {
public:
    SparseVector() = default;
    explicit SparseVector(std::size_t dim) : dim_(dim) {}

    /// Validates the invariants; throws DimensionError or FormatError.
    SparseVector(std::size_t dim, std::vector<SparseEntry> entries);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t nnz() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    std::span<const SparseEntry> entries() const noexcept { return entries_; }

    /// Value at a column; zero when absent. O(log nnz).
    double at(std::size_t index) const;

    double dot(std::span<const double> dense) const;

    std::vector<double> to_dense() const;

    bool operator==(const SparseVector&) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<SparseEntry> entries_;
};

}  // namespace newsclf
