#include "robin/sparse.hpp"

#include "robin/error.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace robin {

SymmetricSparseMatrix::SymmetricSparseMatrix(std::size_t dimension)
    : dimension_(dimension), offsets_(dimension + 1, 0)
{}

SymmetricSparseMatrix SymmetricSparseMatrix::from_triplets(std::size_t dimension,
                                                           std::vector<Triplet> triplets)
{
    for (auto& t : triplets) {
        if (t.row >= dimension || t.col >= dimension)
            throw Error(ErrorKind::invalid_argument,
                        fmt::format("triplet ({}, {}) outside dimension {}", t.row, t.col, dimension));
        if (t.row > t.col)
            std::swap(t.row, t.col);
    }
    std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    SymmetricSparseMatrix m(dimension);
    m.columns_.reserve(triplets.size());
    m.values_.reserve(triplets.size());
    std::size_t i = 0;
    while (i < triplets.size()) {
        const std::size_t row = triplets[i].row;
        const std::size_t col = triplets[i].col;
        double sum = 0.0;
        for (; i < triplets.size() && triplets[i].row == row && triplets[i].col == col; ++i)
            sum += triplets[i].value;
        m.columns_.push_back(col);
        m.values_.push_back(sum);
        ++m.offsets_[row + 1];
    }
    for (std::size_t r = 0; r < dimension; ++r)
        m.offsets_[r + 1] += m.offsets_[r];
    return m;
}

double SymmetricSparseMatrix::entry(std::size_t i, std::size_t j) const
{
    if (i > j)
        std::swap(i, j);
    const auto first = columns_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
    const auto last = columns_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
    const auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j)
        return 0.0;
    return values_[static_cast<std::size_t>(it - columns_.begin())];
}

std::vector<double> SymmetricSparseMatrix::diagonal() const
{
    std::vector<double> d(dimension_, 0.0);
    for (std::size_t r = 0; r < dimension_; ++r)
        d[r] = entry(r, r);
    return d;
}

bool SymmetricSparseMatrix::is_zero() const
{
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

void SymmetricSparseMatrix::multiply(std::span<const double> x, std::span<double> y) const
{
    if (x.size() != dimension_ || y.size() != dimension_)
        throw Error(ErrorKind::invalid_argument, "matrix-vector dimension mismatch");
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t r = 0; r < dimension_; ++r) {
        double acc = 0.0;
        for (std::size_t k = offsets_[r]; k < offsets_[r + 1]; ++k) {
            const std::size_t c = columns_[k];
            acc += values_[k] * x[c];
            if (c != r)
                y[c] += values_[k] * x[r];
        }
        y[r] += acc;
    }
}

std::vector<double> SymmetricSparseMatrix::operator*(std::span<const double> x) const
{
    std::vector<double> y(dimension_);
    multiply(x, y);
    return y;
}

std::vector<std::vector<double>> SymmetricSparseMatrix::to_dense() const
{
    std::vector<std::vector<double>> dense(dimension_, std::vector<double>(dimension_, 0.0));
    for (std::size_t r = 0; r < dimension_; ++r) {
        for (std::size_t k = offsets_[r]; k < offsets_[r + 1]; ++k) {
            dense[r][columns_[k]] = values_[k];
            dense[columns_[k]][r] = values_[k];
        }
    }
    return dense;
}

SymmetricSparseMatrix add_scaled(const SymmetricSparseMatrix& a, double scale,
                                 const SymmetricSparseMatrix& b)
{
    if (a.dimension() != b.dimension())
        throw Error(ErrorKind::invalid_argument, "matrix dimension mismatch in add_scaled");
    std::vector<Triplet> triplets;
    triplets.reserve(a.stored_entries() + b.stored_entries());
    for (std::size_t r = 0; r < a.dimension(); ++r)
        for (std::size_t k = a.row_offsets()[r]; k < a.row_offsets()[r + 1]; ++k)
            triplets.push_back({r, a.columns()[k], a.values()[k]});
    for (std::size_t r = 0; r < b.dimension(); ++r)
        for (std::size_t k = b.row_offsets()[r]; k < b.row_offsets()[r + 1]; ++k)
            triplets.push_back({r, b.columns()[k], scale * b.values()[k]});
    return SymmetricSparseMatrix::from_triplets(a.dimension(), std::move(triplets));
}

double quadratic_form(const SymmetricSparseMatrix& a, std::span<const double> v)
{
    if (v.size() != a.dimension())
        throw Error(ErrorKind::invalid_argument,
                    fmt::format("vector of length {} against matrix of dimension {}", v.size(),
                                a.dimension()));
    const std::vector<double> av = a * v;
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        sum += v[i] * av[i];
    return sum;
}

} // namespace robin
