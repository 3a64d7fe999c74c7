#include "tord/matrix.hpp"

#include <utility>

#include "tord/error.hpp"

namespace tord {

MatrixE::MatrixE(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(field)) {}

MatrixE::MatrixE(FieldSpec field, std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : field_(field), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols)
        throw Error(ErrorCode::DimensionMismatch, "matrix entry count does not match its shape");
    for (const auto& s : data_)
        if (!(s.field() == field_)) throw Error(ErrorCode::FieldMismatch, "matrix entry from another field");
}

MatrixE MatrixE::identity(FieldSpec field, std::size_t n) {
    MatrixE m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
    return m;
}

MatrixE MatrixE::diagonal(FieldSpec field, std::span<const Scalar> diag) {
    MatrixE m(field, diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

MatrixE MatrixE::companion(const Polynomial& f) {
    if (!f.is_monic()) throw Error(ErrorCode::NotMonic, "companion matrix needs a monic polynomial");
    const auto d = static_cast<std::size_t>(f.degree());
    MatrixE m(f.field(), d, d);
    for (std::size_t i = 0; i + 1 < d; ++i) m(i + 1, i) = Scalar::one(f.field());
    for (std::size_t i = 0; i < d; ++i) m(i, d - 1) = -f.coeff(i);
    return m;
}

MatrixE MatrixE::jordan(const Scalar& lambda, std::size_t size) {
    MatrixE m(lambda.field(), size, size);
    for (std::size_t i = 0; i < size; ++i) {
        m(i, i) = lambda;
        if (i + 1 < size) m(i, i + 1) = Scalar::one(lambda.field());
    }
    return m;
}

MatrixE MatrixE::block_diagonal(FieldSpec field, std::span<const MatrixE> blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks) {
        if (!b.is_square()) throw Error(ErrorCode::DimensionMismatch, "block_diagonal needs square blocks");
        n += b.rows();
    }
    MatrixE m(field, n, n);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) m(off + i, off + j) = b(i, j);
        off += b.rows();
    }
    return m;
}

MatrixE MatrixE::from_rows(FieldSpec field, std::size_t cols, const std::vector<std::vector<Scalar>>& rows) {
    MatrixE m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw Error(ErrorCode::DimensionMismatch, "row has the wrong length");
        for (std::size_t c = 0; c < cols; ++c) {
            if (!(rows[r][c].field() == field)) throw Error(ErrorCode::FieldMismatch, "row entry from another field");
            m(r, c) = rows[r][c];
        }
    }
    return m;
}

std::vector<Scalar> MatrixE::row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

std::vector<Scalar> MatrixE::column(std::size_t c) const {
    std::vector<Scalar> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
    return out;
}

bool MatrixE::is_zero() const {
    for (const auto& s : data_)
        if (!s.is_zero()) return false;
    return true;
}

MatrixE MatrixE::transpose() const {
    MatrixE t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

MatrixE MatrixE::submatrix(std::span<const std::size_t> rs, std::span<const std::size_t> cs) const {
    MatrixE out(field_, rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = 0; j < cs.size(); ++j) out(i, j) = (*this)(rs[i], cs[j]);
    return out;
}

MatrixE MatrixE::scaled(const Scalar& c) const {
    MatrixE out = *this;
    for (auto& s : out.data_) s *= c;
    return out;
}

MatrixE MatrixE::inverse() const {
    if (!is_square()) throw Error(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
    const std::size_t n = rows_;
    MatrixE a = *this;
    MatrixE inv = identity(field_, n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col).is_zero()) ++piv;
        if (piv == n) throw Error(ErrorCode::DivisionByZero, "matrix is singular");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        }
        const Scalar pinv = a(col, col).inverse();
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) *= pinv;
            inv(col, j) *= pinv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a(r, col).is_zero()) continue;
            const Scalar f = a(r, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

std::size_t MatrixE::rank() const { return reduced_echelon(*this).pivots.size(); }

std::vector<Scalar> MatrixE::apply(std::span<const Scalar> v) const {
    if (v.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "vector length does not match matrix");
    std::vector<Scalar> out(rows_, Scalar::zero(field_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
    return out;
}

MatrixE operator+(const MatrixE& a, const MatrixE& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix sum shape");
    MatrixE out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
}

MatrixE operator-(const MatrixE& a, const MatrixE& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix difference shape");
    MatrixE out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
}

MatrixE operator*(const MatrixE& a, const MatrixE& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape");
    MatrixE out(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += x * b(k, j);
        }
    return out;
}

std::string MatrixE::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        out += i ? ", [" : "[";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) out += ", ";
            out += (*this)(i, j).to_string();
        }
        out += "]";
    }
    return out + "]";
}

Scalar determinant(const MatrixE& m) {
    if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
    const std::size_t n = m.rows();
    MatrixE a = m;
    Scalar det = Scalar::one(m.field());
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col).is_zero()) ++piv;
        if (piv == n) return Scalar::zero(m.field());
        if (piv != col) {
            for (std::size_t j = col; j < n; ++j) std::swap(a(piv, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        const Scalar pinv = a(col, col).inverse();
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a(r, col).is_zero()) continue;
            const Scalar f = a(r, col) * pinv;
            for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
        }
    }
    return det;
}

Polynomial charpoly(const MatrixE& m) {
    if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "charpoly of a non-square matrix");
    const FieldSpec field = m.field();
    const std::size_t n = m.rows();
    MatrixE h = m;

    // Similarity transforms down to upper Hessenberg form.
    for (std::size_t k = 1; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && h(piv, k - 1).is_zero()) ++piv;
        if (piv == n) continue;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(h(piv, j), h(k, j));
            for (std::size_t j = 0; j < n; ++j) std::swap(h(j, piv), h(j, k));
        }
        const Scalar t_inv = h(k, k - 1).inverse();
        for (std::size_t i = k + 1; i < n; ++i) {
            if (h(i, k - 1).is_zero()) continue;
            const Scalar u = h(i, k - 1) * t_inv;
            for (std::size_t j = 0; j < n; ++j) h(i, j) -= u * h(k, j);
            for (std::size_t j = 0; j < n; ++j) h(j, k) += u * h(j, i);
        }
    }

    // p_m = (X - h_mm) p_{m-1} - sum_{i<m} h_im (prod_{j=i+1..m} h_{j,j-1}) p_{i-1}   (1-indexed)
    const Polynomial x(field, {Scalar::zero(field), Scalar::one(field)});
    std::vector<Polynomial> p;
    p.push_back(Polynomial::constant(Scalar::one(field)));
    for (std::size_t mm = 1; mm <= n; ++mm) {
        Polynomial next = (x - Polynomial::constant(h(mm - 1, mm - 1))) * p[mm - 1];
        Scalar t = Scalar::one(field);
        for (std::size_t i = mm - 1; i >= 1; --i) {
            t *= h(i, i - 1);  // h_{i+1,i} in 1-indexed terms
            if (t.is_zero()) break;
            const Scalar c = h(i - 1, mm - 1) * t;
            if (!c.is_zero()) next = next - Polynomial::constant(c) * p[i - 1];
        }
        p.push_back(std::move(next));
    }
    return p[n];
}

EchelonForm reduced_echelon(const MatrixE& m) {
    MatrixE a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a(piv, c).is_zero()) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
        const Scalar inv = a(r, c).inverse();
        for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            const Scalar f = a(i, c);
            for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<std::size_t> keep(r);
    for (std::size_t i = 0; i < r; ++i) keep[i] = i;
    std::vector<std::size_t> all_cols(cols);
    for (std::size_t j = 0; j < cols; ++j) all_cols[j] = j;
    return {a.submatrix(keep, all_cols), std::move(pivots)};
}

MatrixE kernel(const MatrixE& m) {
    const auto ech = reduced_echelon(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto c : ech.pivots) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> v(n, Scalar::zero(m.field()));
        v[f] = Scalar::one(m.field());
        for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.matrix(r, f);
        basis.push_back(std::move(v));
    }
    return MatrixE::from_rows(m.field(), n, basis);
}

}  // namespace tord
