// sparse.hpp
// Compressed-sparse-row operator used for the mass matrix, the stiffness
// matrix, and the 2Nx2N block system.

#pragma once

#include <span>
#include <vector>

namespace chsav {

class SparseOperator {
public:
    SparseOperator() = default;
    SparseOperator(int rows, int cols, std::vector<int> offsets,
                   std::vector<int> columns, std::vector<double> values);

    // Builds a zero-valued operator from per-row column lists
    // (each list strictly increasing).
    static SparseOperator from_row_pattern(int rows, int cols,
                                           const std::vector<std::vector<int>>& row_columns);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int nnz() const { return static_cast<int>(values_.size()); }

    const std::vector<int>& offsets() const { return offsets_; }
    const std::vector<int>& columns() const { return columns_; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    // Reference to a stored entry; throws std::out_of_range if (row, col)
    // is not in the sparsity pattern.
    double& at(int row, int col);
    // Stored entry value, or 0 for entries outside the pattern.
    double coeff(int row, int col) const;

    void apply(std::span<const double> x, std::span<double> y) const;  // y = A x
    std::vector<double> apply(std::span<const double> x) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<int> offsets_;   // length rows+1
    std::vector<int> columns_;   // strictly increasing within each row
    std::vector<double> values_;
};

// v^T A v for square A.
double quadratic_form(const SparseOperator& a, std::span<const double> v);

double dot(std::span<const double> a, std::span<const double> b);

}  // namespace chsav
