#include "slk/fieldlin.hpp"

#include <algorithm>
#include <set>

#include "slk/error.hpp"

namespace slk {

bool is_odd_prime(int value) noexcept {
    if (value < 3 || value % 2 == 0) return false;
    for (int d = 3; d * d <= value; d += 2)
        if (value % d == 0) return false;
    return true;
}

Prime::Prime(int value) : value_(value) {
    if (!is_odd_prime(value))
        throw UsageError("prime must be an odd prime, got " + std::to_string(value));
}

namespace {

std::uint32_t reduce(long long v, int p) {
    long long r = v % p;
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

void check_same(Prime a, Prime b) {
    if (!(a == b))
        throw DistinctModulusError("operands over F_" + std::to_string(a.value()) + " and F_" +
                                   std::to_string(b.value()));
}

}  // namespace

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
    long long t = 0, new_t = 1, r = p, new_r = a % p;
    while (new_r != 0) {
        long long q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw UsageError("element is not invertible");
    return static_cast<std::uint32_t>(t < 0 ? t + p : t);
}

FieldElement::FieldElement(long long value, Prime p) : value_(reduce(value, p)), p_(p) {}

FieldElement FieldElement::operator+(FieldElement o) const {
    check_same(p_, o.p_);
    return FieldElement(static_cast<long long>(value_) + o.value_, p_);
}

FieldElement FieldElement::operator-(FieldElement o) const {
    check_same(p_, o.p_);
    return FieldElement(static_cast<long long>(value_) - o.value_, p_);
}

FieldElement FieldElement::operator*(FieldElement o) const {
    check_same(p_, o.p_);
    return FieldElement(static_cast<long long>(value_) * o.value_, p_);
}

FieldElement FieldElement::operator-() const { return FieldElement(-static_cast<long long>(value_), p_); }

FieldElement FieldElement::inverse() const {
    if (value_ == 0) throw UsageError("zero has no inverse");
    return FieldElement(mod_inverse(value_, static_cast<std::uint32_t>(p_.value())), p_);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, Prime p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

Matrix Matrix::from_elements(const std::vector<std::vector<FieldElement>>& rows) {
    if (rows.empty() || rows.front().empty())
        throw UsageError("from_elements needs at least one entry to fix the prime");
    Prime p = rows.front().front().prime();
    Matrix m(rows.size(), rows.front().size(), p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_) throw UsageError("ragged rows");
        for (std::size_t c = 0; c < m.cols_; ++c) {
            check_same(p, rows[r][c].prime());
            m.data_[r * m.cols_ + c] = rows[r][c].value();
        }
    }
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long long>>& rows, Prime p) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), cols, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw UsageError("ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
}

Matrix Matrix::identity(std::size_t n, Prime p) {
    Matrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
    return m;
}

FieldElement Matrix::at(std::size_t r, std::size_t c) const { return FieldElement((*this)(r, c), p_); }

void Matrix::set(std::size_t r, std::size_t c, long long value) { data_[r * cols_ + c] = reduce(value, p_); }

void Matrix::add(std::size_t r, std::size_t c, long long value) {
    auto& e = data_[r * cols_ + c];
    e = reduce(static_cast<long long>(e) + value, p_);
}

namespace {

void check_labels(const std::vector<std::string>& labels, std::size_t expected) {
    if (labels.empty()) return;
    if (labels.size() != expected) throw UsageError("label count does not match matrix dimension");
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) throw UsageError("matrix labels must be pairwise distinct");
}

}  // namespace

void Matrix::set_row_labels(std::vector<std::string> labels) {
    check_labels(labels, rows_);
    row_labels_ = std::move(labels);
}

void Matrix::set_col_labels(std::vector<std::string> labels) {
    check_labels(labels, cols_);
    col_labels_ = std::move(labels);
}

bool Matrix::is_zero() const noexcept {
    for (auto v : data_)
        if (v != 0) return false;
    return true;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_, p_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
    t.row_labels_ = col_labels_;
    t.col_labels_ = row_labels_;
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    check_same(p_, rhs.p_);
    if (cols_ != rhs.rows_)
        throw UsageError("shape mismatch: " + std::to_string(rows_) + "x" + std::to_string(cols_) + " times " +
                         std::to_string(rhs.rows_) + "x" + std::to_string(rhs.cols_));
    Matrix out(rows_, rhs.cols_, p_);
    std::vector<std::uint64_t> acc(rhs.cols_);
    const std::uint64_t p = static_cast<std::uint64_t>(p_.value());
    for (std::size_t r = 0; r < rows_; ++r) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < cols_; ++k) {
            std::uint64_t a = data_[r * cols_ + k];
            if (a == 0) continue;
            const std::uint32_t* b = rhs.row(k);
            for (std::size_t c = 0; c < rhs.cols_; ++c) acc[c] += a * b[c];
        }
        for (std::size_t c = 0; c < rhs.cols_; ++c) out.data_[r * rhs.cols_ + c] = static_cast<std::uint32_t>(acc[c] % p);
    }
    return out;
}

Vector Matrix::apply(const Vector& v) const {
    if (v.size() != cols_) throw UsageError("vector length does not match column count");
    Vector out(rows_, 0);
    const std::uint64_t p = static_cast<std::uint64_t>(p_.value());
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint64_t acc = 0;
        for (std::size_t c = 0; c < cols_; ++c) acc += static_cast<std::uint64_t>(data_[r * cols_ + c]) * v[c];
        out[r] = static_cast<std::uint32_t>(acc % p);
    }
    return out;
}

RrefResult rref_rank(const Matrix& m) {
    RrefResult out{0, m, {}};
    Matrix& a = out.reduced;
    const std::uint32_t p = static_cast<std::uint32_t>(m.prime().value());
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
        std::size_t found = rows;
        for (std::size_t r = pivot_row; r < rows; ++r)
            if (a(r, c) != 0) {
                found = r;
                break;
            }
        if (found == rows) continue;
        if (found != pivot_row) std::swap_ranges(a.row(found), a.row(found) + cols, a.row(pivot_row));
        std::uint32_t* prow = a.row(pivot_row);
        const std::uint64_t inv = mod_inverse(prow[c], p);
        for (std::size_t k = c; k < cols; ++k) prow[k] = static_cast<std::uint32_t>(prow[k] * inv % p);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pivot_row) continue;
            std::uint32_t* row = a.row(r);
            const std::uint32_t f = row[c];
            if (f == 0) continue;
            const std::uint64_t neg = p - f;
            for (std::size_t k = c; k < cols; ++k)
                if (prow[k] != 0) row[k] = static_cast<std::uint32_t>((row[k] + neg * prow[k]) % p);
        }
        out.pivot_columns.push_back(c);
        ++pivot_row;
    }
    out.rank = pivot_row;
    return out;
}

std::size_t rank(const Matrix& m) {
    // Eliminate along the shorter side.
    if (m.rows() > m.cols()) return rref_rank(m.transpose()).rank;
    return rref_rank(m).rank;
}

std::vector<Vector> kernel_basis(const Matrix& m) {
    const RrefResult rr = rref_rank(m);
    const std::uint32_t p = static_cast<std::uint32_t>(m.prime().value());
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : rr.pivot_columns) is_pivot[c] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t i = 0; i < rr.pivot_columns.size(); ++i) {
            const std::uint32_t e = rr.reduced(i, free);
            v[rr.pivot_columns[i]] = e == 0 ? 0 : p - e;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t homology_rank(const Matrix& d_in, const Matrix& d_out) {
    check_same(d_in.prime(), d_out.prime());
    if (d_out.cols() != d_in.rows())
        throw UsageError("differentials do not compose: d_in lands in dimension " + std::to_string(d_in.rows()) +
                         ", d_out starts from dimension " + std::to_string(d_out.cols()));
    if (d_in.cols() > 0 && d_out.rows() > 0 && !(d_out * d_in).is_zero())
        throw IntegrityError("complex integrity: composite of consecutive differentials is nonzero");
    const std::size_t dim = d_in.rows();
    return dim - rank(d_out) - rank(d_in);
}

}  // namespace slk

namespace slk {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, Prime p)
    : rows_(rows), cols_(cols), p_(p), columns_(cols) {}

void SparseMatrix::add(std::size_t r, std::size_t c, long long value) {
    if (r >= rows_ || c >= cols_) throw UsageError("sparse entry out of range");
    const std::uint32_t v = reduce(value, p_);
    if (v == 0) return;
    auto& col = columns_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r, [](const Entry& e, std::size_t row) { return e.first < row; });
    if (it != col.end() && it->first == r) {
        it->second = reduce(static_cast<long long>(it->second) + v, p_);
        if (it->second == 0) col.erase(it);
    } else {
        col.insert(it, {static_cast<std::uint32_t>(r), v});
    }
}

std::size_t SparseMatrix::nonzeros() const noexcept {
    std::size_t n = 0;
    for (auto& c : columns_) n += c.size();
    return n;
}

Matrix SparseMatrix::to_dense() const {
    Matrix m(rows_, cols_, p_);
    for (std::size_t c = 0; c < cols_; ++c)
        for (auto [r, v] : columns_[c]) m.set(r, c, v);
    return m;
}

std::size_t rank(const SparseMatrix& m) {
    // Column reduction keyed on the lowest nonzero row, as in persistent homology.
    const std::uint64_t p = static_cast<std::uint64_t>(m.prime().value());
    std::vector<std::vector<SparseMatrix::Entry>> reduced;
    std::vector<std::int64_t> pivot_of(m.rows(), -1);
    std::vector<SparseMatrix::Entry> scratch;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        auto col = m.column(c);
        while (!col.empty()) {
            const auto [low, lv] = col.back();
            const std::int64_t piv = pivot_of[low];
            if (piv < 0) break;
            const auto& pc = reduced[static_cast<std::size_t>(piv)];
            // col -= (lv / pv) * pc, with pc's low value normalized to 1
            const std::uint64_t f = p - lv;
            scratch.clear();
            std::size_t i = 0, j = 0;
            while (i < col.size() || j < pc.size()) {
                if (j == pc.size() || (i < col.size() && col[i].first < pc[j].first)) {
                    scratch.push_back(col[i++]);
                } else if (i == col.size() || pc[j].first < col[i].first) {
                    scratch.push_back({pc[j].first, static_cast<std::uint32_t>(f * pc[j].second % p)});
                    ++j;
                } else {
                    const auto v = static_cast<std::uint32_t>((col[i].second + f * pc[j].second) % p);
                    if (v != 0) scratch.push_back({col[i].first, v});
                    ++i;
                    ++j;
                }
            }
            col.swap(scratch);
        }
        if (col.empty()) continue;
        const std::uint64_t inv = mod_inverse(col.back().second, static_cast<std::uint32_t>(p));
        for (auto& e : col) e.second = static_cast<std::uint32_t>(e.second * inv % p);
        pivot_of[col.back().first] = static_cast<std::int64_t>(reduced.size());
        reduced.push_back(std::move(col));
        ++r;
    }
    return r;
}

bool product_is_zero(const SparseMatrix& a, const SparseMatrix& b) {
    check_same(a.prime(), b.prime());
    if (a.cols() != b.rows()) throw UsageError("sparse shape mismatch");
    const std::uint64_t p = static_cast<std::uint64_t>(a.prime().value());
    std::vector<std::uint64_t> acc(a.rows(), 0);
    std::vector<std::uint32_t> touched;
    for (std::size_t c = 0; c < b.cols(); ++c) {
        touched.clear();
        for (auto [k, bv] : b.column(c))
            for (auto [r, av] : a.column(k)) {
                if (acc[r] == 0) touched.push_back(r);
                acc[r] = (acc[r] + static_cast<std::uint64_t>(av) * bv) % p + p;  // keep nonzero marker
            }
        bool zero = true;
        for (auto r : touched) {
            if (acc[r] % p != 0) zero = false;
            acc[r] = 0;
        }
        if (!zero) return false;
    }
    return true;
}

std::size_t homology_rank(const SparseMatrix& d_in, const SparseMatrix& d_out) {
    check_same(d_in.prime(), d_out.prime());
    if (d_out.cols() != d_in.rows())
        throw UsageError("differentials do not compose: d_in lands in dimension " + std::to_string(d_in.rows()) +
                         ", d_out starts from dimension " + std::to_string(d_out.cols()));
    if (!product_is_zero(d_out, d_in))
        throw IntegrityError("complex integrity: composite of consecutive differentials is nonzero");
    return d_in.rows() - rank(d_out) - rank(d_in);
}

}  // namespace slk
