#include <random>

#include "doctest.h"
#include "slk/error.hpp"
#include "slk/fieldlin.hpp"

using namespace slk;

namespace {

Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, Prime p) {
    Matrix m(r, c, p);
    std::uniform_int_distribution<int> v(0, p.value() - 1), sparse(0, 2);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (sparse(rng) == 0) m.set(i, j, v(rng));
    return m;
}

}  // namespace

TEST_CASE("primes") {
    CHECK_THROWS_AS(Prime(2), UsageError);
    CHECK_THROWS_AS(Prime(9), UsageError);
    CHECK_THROWS_AS(Prime(1), UsageError);
    CHECK(Prime(7).value() == 7);
    CHECK(is_odd_prime(5));
    CHECK_FALSE(is_odd_prime(15));
}

TEST_CASE("field arithmetic is canonical") {
    const Prime p(5);
    FieldElement a(-3, p), b(4, p);
    CHECK(a.value() == 2);
    CHECK((a + b).value() == 1);
    CHECK((a - b).value() == 3);
    CHECK((a * b).value() == 3);
    CHECK((-a).value() == 3);
    CHECK((a * a.inverse()).value() == 1);
    CHECK_THROWS_AS(FieldElement(0, p).inverse(), UsageError);
    CHECK_THROWS_AS(FieldElement(1, Prime(3)) + FieldElement(1, Prime(5)), DistinctModulusError);
}

TEST_CASE("rank examples") {
    const Prime p(3);
    CHECK(rank(Matrix::from_rows({{1, 1, 1}}, p)) == 1);
    CHECK(rank(Matrix(2, 2, p)) == 0);
    const auto r = rref_rank(Matrix::from_rows({{1, 1, 0}, {0, 1, 1}, {1, 2, 1}}, p));
    CHECK(r.rank == 2);
    CHECK(r.pivot_columns == std::vector<std::size_t>{0, 1});
    CHECK_THROWS_AS(Matrix::from_elements({{FieldElement(1, Prime(3)), FieldElement(1, Prime(5))}}),
                    DistinctModulusError);
}

TEST_CASE("kernel examples") {
    const Prime p(3);
    const Matrix ones = Matrix::from_rows({{1, 1, 1}}, p);
    const auto k = kernel_basis(ones);
    CHECK(k.size() == 2);
    for (const auto& v : k) CHECK(ones.apply(v) == Vector{0});
    CHECK(kernel_basis(Matrix::identity(2, p)).empty());
}

TEST_CASE("homology examples") {
    const Prime p(3);
    CHECK(homology_rank(Matrix(3, 0, p), Matrix::from_rows({{1, 1, 1}}, p)) == 2);
    CHECK(homology_rank(Matrix(4, 2, p), Matrix(3, 4, p)) == 4);
    CHECK(homology_rank(Matrix::identity(3, p), Matrix(0, 3, p)) == 0);
    CHECK_THROWS_AS(homology_rank(Matrix::identity(3, p), Matrix::from_rows({{1, 0, 0}}, p)), IntegrityError);
    CHECK_THROWS_AS(homology_rank(Matrix(2, 1, p), Matrix(1, 3, p)), UsageError);
}

TEST_CASE("labels must be distinct") {
    Matrix m(2, 1, Prime(3));
    CHECK_THROWS_AS(m.set_row_labels({"a", "a"}), UsageError);
    CHECK_THROWS_AS(m.set_row_labels({"a"}), UsageError);
    m.set_row_labels({"a", "b"});
    CHECK(m.row_labels().size() == 2);
}

TEST_CASE("random rank properties") {
    std::mt19937 rng(20240611);
    for (int p : {3, 5, 7}) {
        for (int trial = 0; trial < 60; ++trial) {
            std::uniform_int_distribution<std::size_t> dim(0, 7);
            const Matrix m = random_matrix(rng, dim(rng), dim(rng), Prime(p));
            const std::size_t r = rank(m);
            CHECK(r == rank(m.transpose()));
            const auto k = kernel_basis(m);
            CHECK(m.cols() == r + k.size());
            for (const auto& v : k) CHECK(m.apply(v) == Vector(m.rows(), 0));

            SparseMatrix s(m.rows(), m.cols(), Prime(p));
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) s.add(i, j, m(i, j));
            CHECK(rank(s) == r);
            CHECK(s.to_dense() == m);
        }
    }
}

TEST_CASE("homology is invariant under relabeling") {
    std::mt19937 rng(7);
    const Prime p(5);
    for (int trial = 0; trial < 30; ++trial) {
        // d_out * d_in = 0 by construction: d_in spans part of ker(d_out).
        const Matrix d_out = random_matrix(rng, 3, 6, p);
        const auto ker = kernel_basis(d_out);
        Matrix d_in(6, ker.size(), p);
        for (std::size_t c = 0; c < ker.size(); ++c)
            if (c % 2 == 0)
                for (std::size_t r = 0; r < 6; ++r) d_in.set(r, c, ker[c][r]);
        const std::size_t h = homology_rank(d_in, d_out);

        std::vector<std::size_t> perm{0, 1, 2, 3, 4, 5};
        std::shuffle(perm.begin(), perm.end(), rng);
        Matrix pin(6, d_in.cols(), p), pout(3, 6, p);
        for (std::size_t r = 0; r < 6; ++r)
            for (std::size_t c = 0; c < d_in.cols(); ++c) pin.set(perm[r], c, d_in(r, c));
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 6; ++c) pout.set(r, perm[c], d_out(r, c));
        CHECK(homology_rank(pin, pout) == h);

        SparseMatrix sin(6, d_in.cols(), p), sout(3, 6, p);
        for (std::size_t r = 0; r < 6; ++r)
            for (std::size_t c = 0; c < d_in.cols(); ++c) sin.add(r, c, d_in(r, c));
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 6; ++c) sout.add(r, c, d_out(r, c));
        CHECK(product_is_zero(sout, sin));
        CHECK(homology_rank(sin, sout) == h);
    }
}
