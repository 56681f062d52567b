#pragma once

#include "locus/field.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace locus {

// Dense row-major matrix of field elements.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<elem> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    elem& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    elem at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    const elem* row(std::size_t i) const { return a.data() + i * cols; }
    elem* row(std::size_t i) { return a.data() + i * cols; }
};

// In-place reduced row echelon form; pivots chosen by first-nonzero scan.
// Returns pivot column of each nonzero row.
std::vector<std::size_t> rref(const Field& f, Matrix& m);

std::size_t rank(const Field& f, Matrix m);

// Basis of {x : M x = 0} as rows.
Matrix nullspace(const Field& f, const Matrix& m);

// Rows of m restricted to the given column subset.
Matrix select_columns(const Matrix& m, const std::vector<std::size_t>& cols);

// Keep only a maximal independent set of rows.
Matrix row_basis(const Field& f, Matrix m);

// Inverse of a square matrix, or nullopt if singular.
std::optional<Matrix> inverse(const Field& f, const Matrix& m);

Matrix multiply(const Field& f, const Matrix& x, const Matrix& y);

// Parity-check matrix for the row space of g.
Matrix dual(const Field& f, const Matrix& g);

// Erasure solve against a parity-check matrix h. Positions with erased[i]
// are unknown. For each unknown, determined[i] tells whether every word in
// the coset agrees there; determined values are written into word.
// Returns false if the known symbols are inconsistent with h.
bool solve_erasures(const Field& f, const Matrix& h, std::vector<elem>& word,
                    const std::vector<bool>& erased, std::vector<bool>& determined);

std::vector<elem> vec_mat(const Field& f, const std::vector<elem>& v, const Matrix& m);

std::size_t weight(const std::vector<elem>& v);

} // namespace locus
