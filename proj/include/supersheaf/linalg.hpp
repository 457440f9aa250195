#pragma once

// Exact sparse linear algebra over Q: the substrate for every cohomology and
// spectral-sequence computation.
//
// Vectors are sparse (sorted index/value pairs, no stored zeros). Subspaces
// always carry a reduced row echelon basis, so two subspaces are equal iff
// their bases compare equal.

#include "supersheaf/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace supersheaf {

class SparseVec {
public:
    using Entry = std::pair<std::size_t, Rational>;

    SparseVec() = default;
    explicit SparseVec(std::vector<Entry> entries);  // sorts and drops zeros

    static SparseVec unit(std::size_t index);

    [[nodiscard]] bool empty() const { return entries_.empty(); }
    [[nodiscard]] std::size_t nnz() const { return entries_.size(); }
    [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }
    [[nodiscard]] auto begin() const { return entries_.begin(); }
    [[nodiscard]] auto end() const { return entries_.end(); }

    /// Coefficient at index (zero if absent).
    [[nodiscard]] Rational at(std::size_t index) const;
    [[nodiscard]] std::size_t leading_index() const { return entries_.front().first; }
    [[nodiscard]] const Rational& leading_value() const { return entries_.front().second; }

    /// this += factor * other
    void axpy(const Rational& factor, const SparseVec& other);
    void scale(const Rational& factor);

    friend bool operator==(const SparseVec&, const SparseVec&) = default;

private:
    std::vector<Entry> entries_;
};

SparseVec operator+(const SparseVec& a, const SparseVec& b);
SparseVec operator-(const SparseVec& a, const SparseVec& b);
SparseVec operator*(const Rational& c, const SparseVec& v);

struct Triplet {
    std::size_t row;
    std::size_t col;
    Rational value;
};

/// Sparse rows x cols matrix. Immutable after construction; both row and
/// column views are kept so products and eliminations stay sparse.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    /// Duplicate (row, col) triplets are summed; resulting zeros are dropped.
    static Matrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets);
    static Matrix from_columns(std::size_t rows, std::vector<SparseVec> columns);
    static Matrix identity(std::size_t n);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] Rational at(std::size_t r, std::size_t c) const;
    [[nodiscard]] const SparseVec& row(std::size_t r) const { return row_data_[r]; }
    [[nodiscard]] const SparseVec& column(std::size_t c) const { return col_data_[c]; }
    [[nodiscard]] std::size_t nnz() const;
    [[nodiscard]] bool is_zero() const { return nnz() == 0; }

    [[nodiscard]] SparseVec apply(const SparseVec& x) const;
    [[nodiscard]] Matrix transpose() const;
    [[nodiscard]] Matrix submatrix(const std::vector<std::size_t>& row_ids,
                                   const std::vector<std::size_t>& col_ids) const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.row_data_ == b.row_data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<SparseVec> row_data_;
    std::vector<SparseVec> col_data_;
};

/// Incremental reduced row echelon form. Each stored row has leading
/// coefficient 1 and zeros in every other row's pivot column.
class Echelon {
public:
    explicit Echelon(std::size_t ambient_dim) : ambient_(ambient_dim) {}

    /// v minus its components along the stored rows. Zero iff v is in the span.
    [[nodiscard]] SparseVec reduce(const SparseVec& v) const;
    /// Adds v to the span. Returns false if it was already contained.
    bool insert(const SparseVec& v);

    [[nodiscard]] std::size_t ambient_dim() const { return ambient_; }
    [[nodiscard]] std::size_t rank() const { return rows_.size(); }
    /// Rows sorted by pivot column.
    [[nodiscard]] std::vector<SparseVec> sorted_rows() const;

private:
    std::size_t ambient_;
    std::vector<SparseVec> rows_;
    std::vector<std::size_t> pivot_of_row_;
    std::vector<long> row_of_pivot_;  // lazily sized to ambient_, -1 when free
};

class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

    static Subspace span(std::size_t ambient_dim, const std::vector<SparseVec>& vectors);
    static Subspace full(std::size_t ambient_dim);

    [[nodiscard]] std::size_t ambient_dim() const { return ambient_; }
    [[nodiscard]] std::size_t dim() const { return basis_.size(); }
    /// Canonical reduced echelon basis, sorted by pivot.
    [[nodiscard]] const std::vector<SparseVec>& basis() const { return basis_; }

    [[nodiscard]] bool contains(const SparseVec& v) const;
    [[nodiscard]] bool contains(const Subspace& other) const;

    friend Subspace operator+(const Subspace& a, const Subspace& b);
    friend bool operator==(const Subspace& a, const Subspace& b) = default;

private:
    std::size_t ambient_ = 0;
    std::vector<SparseVec> basis_;
};

class NotContained : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Z / B for B inside Z.
struct Subquotient {
    std::size_t dim = 0;
    /// dim x ambient. Annihilates B, inverts `section` on the quotient.
    Matrix projector;
    /// ambient x dim. Columns are representatives in Z of a quotient basis.
    Matrix section;
};

[[nodiscard]] std::size_t rank(const Matrix& m);
[[nodiscard]] Subspace kernel(const Matrix& m);
[[nodiscard]] Subspace image(const Matrix& m);
/// Throws NotContained unless B is a subspace of Z.
[[nodiscard]] Subquotient subquotient(const Subspace& z, const Subspace& b);

}  // namespace supersheaf
