#include <doctest.h>

#include <algorithm>
#include <random>

#include "support/random_modules.hpp"
#include "tord/corpus.hpp"
#include "tord/phimod.hpp"

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

std::vector<std::string> codes(const RawModule& raw) {
    std::vector<std::string> out;
    for (const auto& v : check_module(raw)) out.push_back(v.code);
    return out;
}

bool has(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

/// phi = diag(1, 1/p) on (e_0, e_-1), Fil^0 = all.
RawModule bad_raw(MatrixE n) {
    return RawModule{Q3, 2, {"e_0", "e_-1"}, {EigenBlock{R(1)}, EigenBlock{R(1, 3)}}, std::move(n),
                     {{0, MatrixE::identity(Q3, 2)}}};
}

/// Single block module with N = 0 and a two-step Hodge filtration.
FilteredPhiNModule with_block(Block b, long low = 0, long high = 1) {
    const std::size_t d = block_dim(b);
    RawModule raw{Q3, d, {}, {std::move(b)}, std::nullopt, {{low, MatrixE::identity(Q3, d)}}};
    if (d > 1) {
        std::vector<Scalar> line(d, R(1));
        line[0] = R(2);
        raw.hodge.emplace_back(high, MatrixE::from_rows(Q3, d, {line}));
    }
    return validate_module(raw);
}

}  // namespace

TEST_SUITE("phimod") {
    TEST_CASE("validation accepts the monodromy example and zero monodromy") {
        CHECK(check_module(bad_raw(rows({{0, 0}, {1, 0}}))).empty());
        CHECK(check_module(bad_raw(MatrixE(Q3, 2, 2))).empty());
        const auto d = validate_module(bad_raw(rows({{0, 0}, {1, 0}})));
        CHECK(d.phi() == MatrixE::diagonal(Q3, std::vector<Scalar>{R(1), R(1, 3)}));
    }

    TEST_CASE("validation reports every broken invariant") {
        RawModule same = bad_raw(rows({{0, 0}, {1, 0}}));
        same.blocks = {EigenBlock{R(1)}, EigenBlock{R(1)}};
        const auto v = check_module(same);
        REQUIRE(v.size() == 1);
        CHECK(v[0].code == "NOT_COMMUTING");
        CHECK(v[0].witness == std::vector<std::size_t>{1, 0});

        RawModule nilp = bad_raw(rows({{1, 0}, {0, 0}}));
        nilp.blocks = {EigenBlock{R(1)}, EigenBlock{R(2)}};
        CHECK(has(codes(nilp), "NOT_NILPOTENT"));

        RawModule singular = bad_raw(MatrixE(Q3, 2, 2));
        singular.blocks = {EigenBlock{R(0)}, EigenBlock{R(1)}};
        CHECK(has(codes(singular), "PHI_SINGULAR"));

        RawModule mismatch = bad_raw(MatrixE(Q3, 2, 2));
        mismatch.blocks = {EigenBlock{R(1)}};
        CHECK(has(codes(mismatch), "BLOCK_MISMATCH"));

        RawModule chain = bad_raw(MatrixE(Q3, 2, 2));
        chain.hodge = {{0, MatrixE::identity(Q3, 2)}, {1, rows({{1, 0}})}, {2, rows({{0, 1}})}};
        CHECK(has(codes(chain), "HODGE_NOT_CHAIN"));

        RawModule not_full = bad_raw(MatrixE(Q3, 2, 2));
        not_full.hodge = {{0, rows({{1, 0}})}};
        CHECK(has(codes(not_full), "HODGE_NOT_CHAIN"));

        RawModule empty{Q3, 0, {}, {}, std::nullopt, {}};
        CHECK(has(codes(empty), "DIMENSION"));

        CHECK_THROWS_AS(validate_module(same), ValidationError);
    }

    TEST_CASE("Hodge filtration lookups") {
        const auto d = modular_form({2, R(1), R(3), false, Normalization::Cohomological, {R(0), R(1)}});
        const HodgeData& h = d.hodge();
        CHECK(h.fil(-5).is_full());
        CHECK(h.fil(0).is_full());
        CHECK(h.fil(1) == Subspace::coordinate(Q3, 2, {1}));
        CHECK(h.fil(2).is_zero());
        CHECK(h.graded_dims() == std::vector<std::pair<long, std::size_t>>{{0, 1}, {1, 1}});
    }

    TEST_CASE("slopes") {
        for (long n = -2; n <= 2; ++n)
            CHECK(slopes(cyclotomic(n, Normalization::Homological)) == SlopeMultiset({{Rational(-n), 1}}));
        const auto mf = modular_form({3, R(3), R(-3), false, Normalization::Cohomological, {R(1), R(1)}});
        CHECK(slopes(mf) == SlopeMultiset({{Rational(1), 2}}));
        CHECK(slopes(counterexample_bad()) == SlopeMultiset({{Rational(-1), 1}, {Rational(0), 1}}));
    }

    TEST_CASE("t_N and t_H") {
        const auto mf = modular_form({2, R(1), R(3), false, Normalization::Cohomological, {R(0), R(1)}});
        CHECK(t_N(mf, Subspace::full(Q3, 2)) == Rational(1));
        CHECK(t_N(mf, Subspace::zero(Q3, 2)) == Rational(0));
        const auto bad = counterexample_bad();
        CHECK(t_N(bad, Subspace::coordinate(Q3, 2, {1})) == Rational(-1));
        CHECK_THROWS_AS(t_N(bad, echelonize(rows({{1, 1}}))), Error);

        CHECK(t_H(cyclotomic(1, Normalization::Homological), Subspace::full(Q3, 1)) == Rational(-1));
        CHECK(t_H(bad, Subspace::full(Q3, 2)) == Rational(0));
        CHECK(t_H(bad, Subspace::zero(Q3, 2)) == Rational(0));
        CHECK(t_H(mf, Subspace::coordinate(Q3, 2, {1})) == Rational(1));
        CHECK(t_H(mf, Subspace::coordinate(Q3, 2, {0})) == Rational(0));
    }

    TEST_CASE("t_N is the weighted slope sum and t_H matches the jump oracle") {
        std::mt19937 rng(31);
        for (int trial = 0; trial < 100; ++trial) {
            const auto d = testing::random_module(rng, {false, 4});
            const Subspace full = Subspace::full(d.field(), d.dim());
            CHECK(t_N(d, full) == slopes(d).weighted_sum());
            CHECK(t_N(d, full) == testing::oracle_t_N(d, MatrixE::identity(d.field(), d.dim())));
            MatrixE s = MatrixE::identity(d.field(), d.dim());
            for (std::size_t k = 0; k <= d.dim(); ++k) {
                const MatrixE gens = d.dim() == k ? s : MatrixE::from_rows(d.field(), d.dim(), [&] {
                    std::vector<std::vector<Scalar>> g;
                    for (std::size_t i = 0; i < k; ++i) g.push_back(s.row(i));
                    return g;
                }());
                CHECK(t_H(d, echelonize(gens)) == testing::oracle_t_H(d, gens));
            }
        }
    }

    TEST_CASE("weak admissibility") {
        CHECK(is_weakly_admissible(cyclotomic(1, Normalization::Homological)).admissible);
        const auto bad = is_weakly_admissible(counterexample_bad());
        CHECK_FALSE(bad.admissible);
        REQUIRE(bad.witness);
        CHECK(bad.witness->is_full());

        ModularFormParams inside{2, R(1), R(3), false, Normalization::Cohomological, {R(1), R(0)}, false};
        const auto r = is_weakly_admissible(modular_form(inside));
        CHECK_FALSE(r.admissible);
        REQUIRE(r.witness);
        CHECK(*r.witness == Subspace::coordinate(Q3, 2, {0}));
        inside.require_admissible = true;
        CHECK_THROWS_AS(modular_form(inside), ValidationError);

        for (long n = -2; n <= 2; ++n) {
            CHECK(is_etale(cyclotomic(n, Normalization::Homological)));
            CHECK(is_etale(cyclotomic(n, Normalization::Cohomological)));
        }
        CHECK(is_etale(modular_form({2, R(1), R(3), false, Normalization::Homological, {R(0), R(1)}})));
        CHECK_FALSE(is_etale(counterexample_bad()));
    }

    TEST_CASE("crystalline and Hodge-Tate weights") {
        CHECK_FALSE(is_crystalline(counterexample_bad()));
        CHECK(is_crystalline(cyclotomic(2, Normalization::Homological)));
        CHECK_FALSE(is_crystalline(modular_form({2, R(1), R(3), true, Normalization::Cohomological, {R(0), R(1)}})));
        for (long n = -2; n <= 2; ++n)
            CHECK(hodge_tate_weights(cyclotomic(n, Normalization::Homological)) == std::vector<long>{n});
        CHECK(hodge_tate_weights(abelian_scenario(1, HodgePosition::Generic)) == std::vector<long>{0, 0, 1, 1});
        CHECK(hodge_tate_weights(modular_form({4, R(1), R(27), false, Normalization::Cohomological, {R(1), R(1)}})) ==
              std::vector<long>{-3, 0});
        CHECK(hodge_tate_weights(counterexample_bad()) == std::vector<long>{0, 0});
    }

    TEST_CASE("dual of the modular module inverts the eigenvalues") {
        const auto coh = modular_form({2, R(1), R(3), false, Normalization::Cohomological, {R(1), R(1)}});
        const auto hom = dual(coh);
        CHECK(hom == modular_form({2, R(1), R(3), false, Normalization::Homological, {R(1), R(1)}}));
        CHECK(hom.blocks() == std::vector<Block>{EigenBlock{R(1)}, EigenBlock{R(1, 3)}});
        CHECK(hom.hodge().jumps().front().degree == -1);
        CHECK(hom.hodge().jumps().back().degree == 0);
        CHECK(hom.labels() == std::vector<std::string>{"e_lambda*", "e_mu*"});
        CHECK(slopes(dual(counterexample_bad())) == slopes(counterexample_bad()).negated());
    }

    TEST_CASE("dual is an involution on Jordan and irreducible blocks") {
        const Block blocks[] = {
            JordanBlock{R(1), 2},
            JordanBlock{R(-1), 3},
            JordanBlock{R(3), 2},
            JordanBlock{R(1, 3), 3},
            IrreducibleBlock{Polynomial(Q3, {R(1), R(-3), R(1)})},     // X^2 - 3X + 1, self-reciprocal
            IrreducibleBlock{Polynomial(Q3, {R(-3), R(0), R(1)})},     // X^2 - 3
            IrreducibleBlock{Polynomial(Q3, {R(-2), R(0), R(0), R(1)})},
            IrreducibleBlock{Polynomial(Q3, {R(1), R(1), R(1)})},      // X^2 + X + 1, self-reciprocal
        };
        for (const auto& b : blocks) {
            const auto d = with_block(b, -1, 2);
            const auto dd = dual(d);
            CHECK(charpoly(dd.phi()) == charpoly(d.phi().inverse()));
            CHECK(dual(dd) == d);
            CHECK(slopes(dd) == slopes(d).negated());
            CHECK(is_weakly_admissible(dd).admissible == is_weakly_admissible(d).admissible);
        }
    }

    TEST_CASE("dual is an involution next to an alternating block") {
        // Jordan(+-1, 2) only carries an alternating self-pairing; a Hodge
        // line mixing it with another block detects a stray sign.
        for (long lam : {1L, -1L}) {
            RawModule raw{Q3, 3, {}, {JordanBlock{R(lam), 2}, EigenBlock{R(5)}}, std::nullopt,
                          {{-1, MatrixE::identity(Q3, 3)}, {0, rows({{1, 0, 2}, {0, 1, 1}})}}};
            const auto d = validate_module(raw);
            CHECK(dual(dual(d)) == d);
            CHECK(dual(dual(dual(d))) == dual(d));
        }
    }

    TEST_CASE("twist") {
        const auto c0 = cyclotomic(0, Normalization::Homological);
        for (long n = -2; n <= 2; ++n) {
            CHECK(twist(c0, n) == cyclotomic(n, Normalization::Homological));
            CHECK(twist(cyclotomic(0, Normalization::Cohomological), -n) == cyclotomic(n, Normalization::Cohomological));
            CHECK(dual(cyclotomic(n, Normalization::Homological)) == cyclotomic(n, Normalization::Cohomological));
        }
        const auto bad = counterexample_bad();
        CHECK(slopes(twist(bad, 2)) == slopes(bad).shifted(Rational(-2)));
        CHECK(twist(twist(bad, 1), -1) == bad);
        CHECK(twist(bad, 0) == bad);
    }

    TEST_CASE("direct sum") {
        const auto a = cyclotomic(1, Normalization::Homological);
        const auto b = counterexample_bad();
        CHECK(direct_sum(b, FilteredPhiNModule::zero(Q3)) == b);
        CHECK(direct_sum(FilteredPhiNModule::zero(Q3), b) == b);
        const auto s = direct_sum(a, b);
        CHECK(s.dim() == 3);
        CHECK(slopes(s) == slopes(a).merged(slopes(b)));
        CHECK(t_H(s, Subspace::full(Q3, 3)) == t_H(a, Subspace::full(Q3, 1)) + t_H(b, Subspace::full(Q3, 2)));
        CHECK(s.monodromy()(2, 1) == R(1));
        CHECK_THROWS_AS(direct_sum(a, cyclotomic(1, Normalization::Homological, 5)), Error);
    }

    TEST_CASE("algebraic properties on random modules") {
        std::mt19937 rng(32);
        for (int trial = 0; trial < 80; ++trial) {
            const auto d = testing::random_module(rng, {false, 4});
            const auto dd = dual(d);
            CHECK(dual(dd) == d);
            CHECK(slopes(dd) == slopes(d).negated());
            auto neg = hodge_tate_weights(d);
            for (auto& w : neg) w = -w;
            std::sort(neg.begin(), neg.end());
            CHECK(hodge_tate_weights(dd) == neg);
            const long a = testing::uniform(rng, -2, 2), b = testing::uniform(rng, -2, 2);
            CHECK(twist(twist(d, a), b) == twist(d, a + b));
            const bool wa = is_weakly_admissible(d).admissible;
            CHECK(is_weakly_admissible(twist(d, a)).admissible == wa);
            CHECK(is_weakly_admissible(dd).admissible == wa);
        }
    }

    TEST_CASE("monodromy lowers slopes by one between eigen blocks") {
        std::mt19937 rng(33);
        for (int trial = 0; trial < 60; ++trial) {
            const auto d = testing::random_module(rng);
            const auto& n = d.monodromy();
            for (std::size_t i = 0; i < d.dim(); ++i)
                for (std::size_t j = 0; j < d.dim(); ++j) {
                    if (n(i, j).is_zero()) continue;
                    CHECK(*d.phi()(i, i).valuation() == *d.phi()(j, j).valuation() - Rational(1));
                }
        }
    }

    TEST_CASE("slope shift warning") {
        // N kills the Jordan kernel line and sends e_1 to the 1/p eigenline:
        // valid, but the two-dimensional slope 0 block meets a one-dimensional target.
        MatrixE n(Q3, 3, 3);
        n(2, 1) = R(1);
        RawModule raw{Q3, 3, {}, {JordanBlock{R(1), 2}, EigenBlock{R(1, 3)}}, n, {{0, MatrixE::identity(Q3, 3)}}};
        const auto d = validate_module(raw);
        CHECK(d.warnings().size() == 1);
        CHECK(validate_module(bad_raw(rows({{0, 0}, {1, 0}}))).warnings().empty());
    }
}
