#include <doctest.h>

#include <random>

#include "support/random_modules.hpp"
#include "tord/matrix.hpp"
#include "tord/subspace.hpp"

using namespace tord;

namespace {

const FieldSpec Q3{3, 1};

Scalar R(long n, long d = 1, FieldSpec f = Q3) { return Scalar(f, Rational(n, d)); }

MatrixE rows(std::vector<std::vector<long>> v, FieldSpec f = Q3) {
    std::vector<std::vector<Scalar>> out;
    for (const auto& r : v) {
        out.emplace_back();
        for (long x : r) out.back().push_back(R(x, 1, f));
    }
    return MatrixE::from_rows(f, v.front().size(), out);
}

MatrixE diag(std::vector<Scalar> d) { return MatrixE::diagonal(d.front().field(), d); }

MatrixE random_matrix(std::mt19937& rng, FieldSpec f, std::size_t r, std::size_t c, long lo = -2, long hi = 2) {
    MatrixE m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar(f, Rational(testing::uniform(rng, lo, hi)));
    return m;
}

}  // namespace

TEST_SUITE("linalg") {
    TEST_CASE("echelonize") {
        CHECK(echelonize(MatrixE::identity(Q3, 2)).is_full());
        const Subspace dep = echelonize(rows({{1, 1}, {2, 2}}));
        CHECK(dep.dim() == 1);
        CHECK(dep.basis() == rows({{1, 1}}));
        CHECK(echelonize(rows({{0, 1}, {1, 0}})).basis() == MatrixE::identity(Q3, 2));
        CHECK(echelonize(MatrixE(Q3, 1, 3)).is_zero());
    }

    TEST_CASE("echelonize is canonical and idempotent") {
        std::mt19937 rng(21);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 1, 5));
            const MatrixE g = random_matrix(rng, Q3, static_cast<std::size_t>(testing::uniform(rng, 1, 4)), n);
            const Subspace s = echelonize(g);
            CHECK(echelonize(s.basis()) == s);
            // Another spanning set of the same space: random invertible mix of the basis.
            if (s.dim() == 0) continue;
            MatrixE mix(Q3, s.dim(), s.dim());
            do mix = random_matrix(rng, Q3, s.dim(), s.dim());
            while (mix.rank() != s.dim());
            const Subspace t = echelonize(mix * s.basis());
            CHECK(t == s);
            CHECK(t.to_string() == s.to_string());
        }
    }

    TEST_CASE("sum and intersection") {
        const Subspace a = echelonize(rows({{1, 1}, {1, 0}}));
        const Subspace y = echelonize(rows({{0, 1}}));
        CHECK(intersect(a, a) == a);
        CHECK(sum(echelonize(rows({{1, 0}})), y).is_full());
        CHECK(intersect(a, y) == y);
        CHECK(intersect(echelonize(rows({{1, 0}})), y).is_zero());
        CHECK(a.contains(y));
        CHECK_FALSE(y.contains(a));
        CHECK_THROWS_AS(sum(a, Subspace::zero(Q3, 3)), Error);
    }

    TEST_CASE("dimension formula on random pairs") {
        std::mt19937 rng(22);
        for (int trial = 0; trial < 150; ++trial) {
            const FieldSpec f{3, 1 + trial % 2};
            const std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 1, 5));
            // Sparse generators make nontrivial intersections common.
            const Subspace a = echelonize(random_matrix(rng, f, static_cast<std::size_t>(testing::uniform(rng, 1, 4)), n, 0, 1));
            const Subspace b = echelonize(random_matrix(rng, f, static_cast<std::size_t>(testing::uniform(rng, 1, 4)), n, 0, 1));
            const Subspace s = sum(a, b), i = intersect(a, b);
            CHECK(a.dim() + b.dim() == s.dim() + i.dim());
            CHECK(i.dim() == testing::meet_dim(a.basis(), b.basis()));
            CHECK(s.contains(a));
            CHECK(a.contains(i));
            CHECK(b.contains(i));
        }
    }

    TEST_CASE("annihilator") {
        const Subspace line = echelonize(rows({{1, 1, 0}}));
        const Subspace ann = line.annihilator();
        CHECK(ann.dim() == 2);
        for (std::size_t r = 0; r < ann.dim(); ++r) {
            Scalar dot = Scalar::zero(Q3);
            for (std::size_t c = 0; c < 3; ++c) dot += ann.basis()(r, c) * line.basis()(0, c);
            CHECK(dot.is_zero());
        }
        CHECK(ann.annihilator() == line);
        CHECK(Subspace::zero(Q3, 2).annihilator().is_full());
    }

    TEST_CASE("canonical order compares dimension before entries") {
        const Subspace zero = Subspace::zero(Q3, 2);
        const Subspace x = Subspace::coordinate(Q3, 2, {0});
        const Subspace y = Subspace::coordinate(Q3, 2, {1});
        const Subspace full = Subspace::full(Q3, 2);
        CHECK(zero < x);
        CHECK(x < y);
        CHECK(y < full);
    }

    TEST_CASE("charpoly") {
        const Scalar one = Scalar::one(Q3), third = R(1, 3);
        CHECK(charpoly(diag({one, third})) == Polynomial(Q3, {third, -(one + third), one}));
        const Polynomial x2_minus_p(Q3, {R(-3), Scalar::zero(Q3), one});
        CHECK(charpoly(MatrixE::companion(x2_minus_p)) == x2_minus_p);
        CHECK(charpoly(rows({{0, 1}, {0, 0}})) == Polynomial(Q3, {Scalar::zero(Q3), Scalar::zero(Q3), one}));
        CHECK_THROWS_AS(charpoly(MatrixE(Q3, 1, 2)), Error);
    }

    TEST_CASE("determinant") {
        CHECK(determinant(MatrixE::identity(Q3, 3)) == Scalar::one(Q3));
        CHECK(determinant(diag({R(2), R(5, 3)})) == R(10, 3));
        CHECK(determinant(rows({{0, 1}, {3, 0}})) == R(-3));
        CHECK_THROWS_AS(determinant(MatrixE(Q3, 2, 3)), Error);
    }

    TEST_CASE("determinant agrees with Leibniz and with the charpoly constant term") {
        std::mt19937 rng(23);
        for (int trial = 0; trial < 150; ++trial) {
            const FieldSpec f{2 + trial % 2, 1 + trial % 3};
            const std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 1, 4));
            MatrixE m(f, n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    m(i, j) = Scalar::uniformizer_power(f, testing::uniform(rng, -2, 2)) *
                              Scalar(f, Rational(testing::uniform(rng, -2, 2)));
            const Scalar det = determinant(m);
            CHECK(det == testing::leibniz_det(m));
            const Scalar c0 = charpoly(m).coeff(0);
            CHECK(det == (n % 2 ? -c0 : c0));
            CHECK(charpoly(m).is_monic());
            CHECK(charpoly(m).degree() == static_cast<long>(n));
        }
    }

    TEST_CASE("inverse") {
        std::mt19937 rng(24);
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 1, 4));
            const MatrixE m = random_matrix(rng, Q3, n, n);
            if (m.rank() < n) {
                CHECK_THROWS_AS(m.inverse(), Error);
                continue;
            }
            CHECK(m * m.inverse() == MatrixE::identity(Q3, n));
        }
    }

    TEST_CASE("invariance") {
        const MatrixE m = diag({Scalar::one(Q3), R(1, 3)});
        CHECK(is_invariant(Subspace::zero(Q3, 2), m));
        CHECK(is_invariant(Subspace::coordinate(Q3, 2, {1}), m));
        CHECK_FALSE(is_invariant(echelonize(rows({{1, 1}})), m));
        CHECK_THROWS_AS(is_invariant(Subspace::zero(Q3, 3), m), Error);
    }

    TEST_CASE("induced maps") {
        const Scalar lam = R(2), mu = R(1, 3);
        const MatrixE m = diag({lam, mu});
        const auto line = induced_maps(Subspace::coordinate(Q3, 2, {0}), m);
        CHECK(line.restriction == diag({lam}));
        CHECK(line.quotient == diag({mu}));
        const auto full = induced_maps(Subspace::full(Q3, 2), m);
        CHECK(full.restriction == m);
        CHECK(full.quotient.rows() == 0);
        CHECK(full.quotient.cols() == 0);
        // N(e_0) = e_-1 with coordinates (e_0, e_-1).
        const MatrixE n = rows({{0, 0}, {1, 0}});
        const auto nil = induced_maps(Subspace::coordinate(Q3, 2, {1}), n);
        CHECK(nil.restriction == MatrixE(Q3, 1, 1));
        CHECK(nil.quotient == MatrixE(Q3, 1, 1));
        CHECK_THROWS_AS(induced_maps(echelonize(rows({{1, 1}})), m), Error);
    }

    TEST_CASE("charpoly factors along invariant subspaces") {
        std::mt19937 rng(25);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 2, 5));
            const std::size_t k = static_cast<std::size_t>(testing::uniform(rng, 1, static_cast<long>(n) - 1));
            // Block upper triangular in a random basis: conjugate [A B; 0 C].
            MatrixE t = random_matrix(rng, Q3, n, n);
            for (std::size_t i = k; i < n; ++i)
                for (std::size_t j = 0; j < k; ++j) t(i, j) = Scalar::zero(Q3);
            MatrixE p(Q3, n, n);
            do p = random_matrix(rng, Q3, n, n);
            while (p.rank() != n);
            const MatrixE m = p * t * p.inverse();
            std::vector<std::vector<Scalar>> gens;
            for (std::size_t j = 0; j < k; ++j) gens.push_back(p.column(j));
            const Subspace s = echelonize(MatrixE::from_rows(Q3, n, gens));
            REQUIRE(is_invariant(s, m));
            const auto maps = induced_maps(s, m);
            CHECK(charpoly(m) == charpoly(maps.restriction) * charpoly(maps.quotient));
        }
    }

    TEST_CASE("kernel") {
        const MatrixE m = rows({{1, 2, 3}, {2, 4, 6}});
        const MatrixE k = kernel(m);
        CHECK(k.rows() == 2);
        for (std::size_t r = 0; r < k.rows(); ++r)
            for (const auto& x : m.apply(k.row(r))) CHECK(x.is_zero());
    }

    TEST_CASE("flags") {
        const Subspace full = Subspace::full(Q3, 2), x = Subspace::coordinate(Q3, 2, {0});
        const Flag f({full, x, Subspace::zero(Q3, 2)});
        CHECK(f.length() == 2);
        CHECK(f.is_complete());
        CHECK_THROWS_AS(Flag({full, full, Subspace::zero(Q3, 2)}), Error);
        CHECK_THROWS_AS(Flag({x, Subspace::zero(Q3, 2)}), Error);
    }
}
