#pragma once

#include <vector>

#include "gp/superalgebra.hpp"

namespace gp {

// Dense row-major rational matrix.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Rational> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    Rational& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    bool is_zero() const;
};

Matrix multiply(const Matrix& A, const Matrix& B);

// Rank by fraction-free (Bareiss) elimination over Z after clearing row denominators.
int rank(const Matrix& M);
Rational determinant(const Matrix& M);

// Reduced row echelon form over Q; pivots receives the pivot column of each nonzero row.
Matrix rref(const Matrix& M, std::vector<std::size_t>& pivots);

// Basis of {v : M v = 0}, one vector per entry, in the order of the free columns.
std::vector<std::vector<Rational>> nullspace(const Matrix& M);

// Rank of the matrix whose columns are the given vectors (all of equal length).
int column_rank(const std::vector<std::vector<Rational>>& cols, std::size_t len);

}  // namespace gp
