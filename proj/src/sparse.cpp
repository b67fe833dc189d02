#include "chsav/sparse.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace chsav {

SparseOperator::SparseOperator(int rows, int cols, std::vector<int> offsets,
                               std::vector<int> columns, std::vector<double> values)
    : rows_(rows), cols_(cols), offsets_(std::move(offsets)),
      columns_(std::move(columns)), values_(std::move(values)) {
    if (rows_ < 0 || cols_ < 0 || offsets_.size() != static_cast<std::size_t>(rows_) + 1 ||
        columns_.size() != values_.size() ||
        offsets_.back() != static_cast<int>(values_.size())) {
        throw std::invalid_argument("SparseOperator: inconsistent CSR arrays");
    }
    for (int r = 0; r < rows_; ++r) {
        for (int k = offsets_[r]; k < offsets_[r + 1]; ++k) {
            if (columns_[k] < 0 || columns_[k] >= cols_ ||
                (k > offsets_[r] && columns_[k] <= columns_[k - 1])) {
                throw std::invalid_argument(
                    "SparseOperator: column indices must be strictly increasing per row");
            }
        }
    }
}

SparseOperator SparseOperator::from_row_pattern(int rows, int cols,
                                                const std::vector<std::vector<int>>& row_columns) {
    std::vector<int> offsets(static_cast<std::size_t>(rows) + 1, 0);
    for (int r = 0; r < rows; ++r) {
        offsets[r + 1] = offsets[r] + static_cast<int>(row_columns[static_cast<std::size_t>(r)].size());
    }
    std::vector<int> columns;
    columns.reserve(static_cast<std::size_t>(offsets.back()));
    for (const auto& row : row_columns) columns.insert(columns.end(), row.begin(), row.end());
    std::vector<double> values(columns.size(), 0.0);
    return SparseOperator(rows, cols, std::move(offsets), std::move(columns), std::move(values));
}

double& SparseOperator::at(int row, int col) {
    const auto begin = columns_.begin() + offsets_[row];
    const auto end = columns_.begin() + offsets_[row + 1];
    const auto it = std::lower_bound(begin, end, col);
    if (it == end || *it != col) {
        throw std::out_of_range("SparseOperator::at: entry (" + std::to_string(row) + ", " +
                                std::to_string(col) + ") not in pattern");
    }
    return values_[static_cast<std::size_t>(it - columns_.begin())];
}

double SparseOperator::coeff(int row, int col) const {
    const auto begin = columns_.begin() + offsets_[row];
    const auto end = columns_.begin() + offsets_[row + 1];
    const auto it = std::lower_bound(begin, end, col);
    if (it == end || *it != col) return 0.0;
    return values_[static_cast<std::size_t>(it - columns_.begin())];
}

void SparseOperator::apply(std::span<const double> x, std::span<double> y) const {
    if (x.size() != static_cast<std::size_t>(cols_) || y.size() != static_cast<std::size_t>(rows_)) {
        throw std::invalid_argument("SparseOperator::apply: dimension mismatch");
    }
    for (int r = 0; r < rows_; ++r) {
        double acc = 0.0;
        for (int k = offsets_[r]; k < offsets_[r + 1]; ++k) {
            acc += values_[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(columns_[static_cast<std::size_t>(k)])];
        }
        y[static_cast<std::size_t>(r)] = acc;
    }
}

std::vector<double> SparseOperator::apply(std::span<const double> x) const {
    std::vector<double> y(static_cast<std::size_t>(rows_));
    apply(x, y);
    return y;
}

double quadratic_form(const SparseOperator& a, std::span<const double> v) {
    return dot(v, a.apply(v));
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

}  // namespace chsav
