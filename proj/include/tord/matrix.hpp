#pragma once

#include <span>
#include <string>
#include <vector>

#include "tord/polynomial.hpp"
#include "tord/scalar.hpp"

namespace tord {

/// Dense row-major matrix over Q[u]/(u^e - p).
class MatrixE {
public:
    MatrixE(FieldSpec field, std::size_t rows, std::size_t cols);
    MatrixE(FieldSpec field, std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

    static MatrixE identity(FieldSpec field, std::size_t n);
    static MatrixE diagonal(FieldSpec field, std::span<const Scalar> diag);
    /// Companion matrix of a monic f: ones on the subdiagonal, last column -f_0..-f_{d-1}.
    static MatrixE companion(const Polynomial& f);
    /// lambda on the diagonal, ones on the superdiagonal.
    static MatrixE jordan(const Scalar& lambda, std::size_t size);
    static MatrixE block_diagonal(FieldSpec field, std::span<const MatrixE> blocks);
    /// Rows given as vectors (all of length `cols`).
    static MatrixE from_rows(FieldSpec field, std::size_t cols, const std::vector<std::vector<Scalar>>& rows);

    const FieldSpec& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::vector<Scalar> row(std::size_t r) const;
    std::vector<Scalar> column(std::size_t c) const;

    bool is_zero() const;
    MatrixE transpose() const;
    MatrixE submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
    MatrixE scaled(const Scalar& c) const;
    /// Inverse of a square matrix; throws DivisionByZero when singular.
    MatrixE inverse() const;
    std::size_t rank() const;

    /// M v for a column vector v.
    std::vector<Scalar> apply(std::span<const Scalar> v) const;

    friend MatrixE operator+(const MatrixE& a, const MatrixE& b);
    friend MatrixE operator-(const MatrixE& a, const MatrixE& b);
    friend MatrixE operator*(const MatrixE& a, const MatrixE& b);
    friend bool operator==(const MatrixE& a, const MatrixE& b) = default;

    std::string to_string() const;

private:
    FieldSpec field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

/// Exact determinant by fraction-exact Gaussian elimination.
Scalar determinant(const MatrixE& m);

/// det(X I - M) via reduction to upper Hessenberg form.
Polynomial charpoly(const MatrixE& m);

/// Basis (as rows) of the right kernel {v : M v = 0}.
MatrixE kernel(const MatrixE& m);

/// Reduced row echelon form with zero rows removed; pivot columns returned
/// alongside. Pivots are chosen by increasing column and row index.
struct EchelonForm {
    MatrixE matrix;
    std::vector<std::size_t> pivots;
};
EchelonForm reduced_echelon(const MatrixE& m);

}  // namespace tord
