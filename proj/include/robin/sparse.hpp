#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace robin {

struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
};

/// Symmetric matrix stored as the upper triangle (row <= col) in CSR form.
///
/// A triplet (i, j, v) with i != j contributes v to both A(i,j) and A(j,i);
/// triplets are canonicalised to row <= col before merging. Duplicate entries
/// are summed in insertion order, so identical input gives bit-identical output.
class SymmetricSparseMatrix {
public:
    SymmetricSparseMatrix() = default;
    explicit SymmetricSparseMatrix(std::size_t dimension);

    static SymmetricSparseMatrix from_triplets(std::size_t dimension, std::vector<Triplet> triplets);

    std::size_t dimension() const noexcept { return dimension_; }
    std::size_t stored_entries() const noexcept { return values_.size(); }

    double entry(std::size_t i, std::size_t j) const;
    std::vector<double> diagonal() const;
    bool is_zero() const;

    /// y = A x
    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> operator*(std::span<const double> x) const;

    std::vector<std::vector<double>> to_dense() const;

    const std::vector<std::size_t>& row_offsets() const noexcept { return offsets_; }
    const std::vector<std::size_t>& columns() const noexcept { return columns_; }
    const std::vector<double>& values() const noexcept { return values_; }

private:
    std::size_t dimension_ = 0;
    std::vector<std::size_t> offsets_{0};
    std::vector<std::size_t> columns_;
    std::vector<double> values_;
};

/// a + scale * b
SymmetricSparseMatrix add_scaled(const SymmetricSparseMatrix& a, double scale,
                                 const SymmetricSparseMatrix& b);

/// v^T A v
double quadratic_form(const SymmetricSparseMatrix& a, std::span<const double> v);

} // namespace robin
