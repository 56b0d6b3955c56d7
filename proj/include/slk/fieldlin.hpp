#pragma once

// Dense linear algebra over the prime field F_p.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace slk {

/// An odd prime. Construction rejects 2, composites and anything below 3.
class Prime {
public:
    explicit Prime(int value);
    int value() const noexcept { return value_; }
    operator int() const noexcept { return value_; }
    friend bool operator==(Prime a, Prime b) noexcept { return a.value_ == b.value_; }

private:
    int value_;
};

bool is_odd_prime(int value) noexcept;

class FieldElement {
public:
    FieldElement(long long value, Prime p);

    std::uint32_t value() const noexcept { return value_; }
    Prime prime() const noexcept { return p_; }

    FieldElement operator+(FieldElement o) const;
    FieldElement operator-(FieldElement o) const;
    FieldElement operator*(FieldElement o) const;
    FieldElement operator-() const;
    /// Throws UsageError on zero.
    FieldElement inverse() const;
    bool is_zero() const noexcept { return value_ == 0; }

    friend bool operator==(FieldElement a, FieldElement b) noexcept {
        return a.p_ == b.p_ && a.value_ == b.value_;
    }

private:
    std::uint32_t value_;
    Prime p_;
};

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p);

using Vector = std::vector<std::uint32_t>;

/// Row-major dense matrix with an optional set of row/column basis labels.
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols, Prime p);
    /// Builds from rows of elements; all elements must share one prime.
    static Matrix from_elements(const std::vector<std::vector<FieldElement>>& rows);
    static Matrix from_rows(const std::vector<std::vector<long long>>& rows, Prime p);
    static Matrix identity(std::size_t n, Prime p);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Prime prime() const noexcept { return p_; }

    std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    FieldElement at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, long long value);
    void add(std::size_t r, std::size_t c, long long value);

    std::uint32_t* row(std::size_t r) { return data_.data() + r * cols_; }
    const std::uint32_t* row(std::size_t r) const { return data_.data() + r * cols_; }

    const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
    const std::vector<std::string>& col_labels() const noexcept { return col_labels_; }
    /// Labels must be pairwise distinct and match the dimension.
    void set_row_labels(std::vector<std::string> labels);
    void set_col_labels(std::vector<std::string> labels);

    bool is_zero() const noexcept;
    Matrix transpose() const;
    Matrix operator*(const Matrix& rhs) const;
    Vector apply(const Vector& v) const;

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    Prime p_;
    std::vector<std::uint32_t> data_;
    std::vector<std::string> row_labels_;
    std::vector<std::string> col_labels_;
};

struct RrefResult {
    std::size_t rank = 0;
    Matrix reduced;
    std::vector<std::size_t> pivot_columns;
};

RrefResult rref_rank(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Basis of the null space {v : m v = 0}; size is cols - rank.
std::vector<Vector> kernel_basis(const Matrix& m);

/// dim ker(d_out) - rank(d_in) for V --d_out--> and --d_in--> V.
/// d_in is (dim V x *), d_out is (* x dim V); the composite must vanish.
std::size_t homology_rank(const Matrix& d_in, const Matrix& d_out);

/// Column-sparse matrix for large, very sparse boundary maps.
class SparseMatrix {
public:
    using Entry = std::pair<std::uint32_t, std::uint32_t>;  // (row, value), rows ascending
    SparseMatrix(std::size_t rows, std::size_t cols, Prime p);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Prime prime() const noexcept { return p_; }
    const std::vector<Entry>& column(std::size_t c) const { return columns_[c]; }
    void add(std::size_t r, std::size_t c, long long value);
    std::size_t nonzeros() const noexcept;

    Matrix to_dense() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    Prime p_;
    std::vector<std::vector<Entry>> columns_;
};

std::size_t rank(const SparseMatrix& m);
/// True iff a * b vanishes; a is applied after b.
bool product_is_zero(const SparseMatrix& a, const SparseMatrix& b);
/// dim ker(d_out) - rank(d_in), as for the dense version.
std::size_t homology_rank(const SparseMatrix& d_in, const SparseMatrix& d_out);

}  // namespace slk
