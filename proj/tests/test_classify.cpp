#include <doctest.h>

#include <algorithm>
#include <random>

#include "support/random_modules.hpp"
#include "tord/classify.hpp"
#include "tord/corpus.hpp"

using namespace tord;

namespace {

const FieldSpec Q3{3, 1};

Scalar R(long n, long d = 1, FieldSpec f = Q3) { return Scalar(f, Rational(n, d)); }

FilteredPhiNModule diag_module(std::vector<Scalar> eig, std::optional<MatrixE> n = std::nullopt) {
    const FieldSpec f = eig.front().field();
    const std::size_t d = eig.size();
    std::vector<Block> blocks;
    for (auto& e : eig) blocks.push_back(EigenBlock{e});
    return validate_module(RawModule{f, d, {}, blocks, std::move(n), {{0, MatrixE::identity(f, d)}}});
}

std::size_t brute_chain_count(const std::vector<Subspace>& subs, const Subspace& top) {
    if (top.is_zero()) return 1;
    std::size_t total = 0;
    for (const auto& s : subs)
        if (s.dim() + 1 == top.dim() && top.contains(s)) total += brute_chain_count(subs, s);
    return total;
}

ModularFormParams mf(long k, Scalar lam, Scalar mu, Normalization norm, std::vector<Scalar> line, bool n = false) {
    return {k, std::move(lam), std::move(mu), n, norm, std::move(line)};
}

}  // namespace

TEST_SUITE("classify") {
    TEST_CASE("stable subspaces") {
        const auto split = stable_subspaces(diag_module({R(1), R(1, 3)}));
        CHECK(split.size() == 4);
        CHECK(split.front().is_zero());
        CHECK(split.back().is_full());

        const auto bad = stable_subspaces(counterexample_bad());
        REQUIRE(bad.size() == 3);
        CHECK(bad[1] == Subspace::coordinate(Q3, 2, {1}));

        for (const auto& s : stable_subspaces(abelian_scenario(3, HodgePosition::Generic))) CHECK(s.dim() != 4);

        CHECK_THROWS_AS(stable_subspaces(diag_module({R(2), R(2)})), Error);
        // A Jordan block's only invariant subspaces form its kernel chain.
        const auto jordan = validate_module(RawModule{Q3, 3, {}, {JordanBlock{R(2), 3}}, std::nullopt,
                                                      {{0, MatrixE::identity(Q3, 3)}}});
        const auto js = stable_subspaces(jordan);
        REQUIRE(js.size() == 4);
        CHECK(js[1] == Subspace::coordinate(Q3, 3, {0}));
        CHECK(js[2] == Subspace::coordinate(Q3, 3, {0, 1}));
        // A shared root between an eigenline and an irreducible block is refused.
        const auto shared = RawModule{Q3, 3, {}, {EigenBlock{R(1)}, IrreducibleBlock{Polynomial(Q3, {R(-1), R(0), R(1)})}},
                                      std::nullopt, {{0, MatrixE::identity(Q3, 3)}}};
        CHECK_THROWS_AS(stable_subspaces(validate_module(shared)), Error);
    }

    TEST_CASE("stable subspaces agree with subset enumeration") {
        std::mt19937 rng(41);
        for (int trial = 0; trial < 120; ++trial) {
            const auto d = testing::random_module(rng);
            const auto subs = stable_subspaces(d);
            CHECK(subs == testing::brute_force_stable(d));
            for (const auto& s : subs) CHECK(testing::oracle_stable(d, s.basis()));
            CHECK(std::is_sorted(subs.begin(), subs.end()));
        }
    }

    TEST_CASE("stable flags") {
        const auto line = stable_flags(cyclotomic(1, Normalization::Homological));
        CHECK(line.size() == 1);
        const auto two = stable_flags(diag_module({R(1), R(1, 3)}));
        CHECK(two.size() == 3);
        CHECK(std::count_if(two.begin(), two.end(), [](const Flag& f) { return f.is_complete(); }) == 2);
        CHECK(std::count_if(two.begin(), two.end(), [](const Flag& f) { return f.length() == 1; }) == 1);
        CHECK(stable_flags(diag_module({R(1), R(1, 3)}), 1).size() == 1);

        const auto bad = stable_flags(counterexample_bad());
        CHECK(std::count_if(bad.begin(), bad.end(), [](const Flag& f) { return f.is_complete(); }) == 1);
        CHECK(count_complete_flags(counterexample_bad()) == 1);
    }

    TEST_CASE("flag enumeration is independent of the thread count") {
        const auto d = abelian_scenario(1, HodgePosition::Generic);
        const auto one = stable_flags(d, std::nullopt, {1});
        CHECK(one == stable_flags(d, std::nullopt, {4}));
        CHECK(one.size() == 75);
    }

    TEST_CASE("complete flag count matches chains of the subspace poset") {
        std::mt19937 rng(42);
        for (int trial = 0; trial < 80; ++trial) {
            const auto d = testing::random_module(rng);
            const auto subs = stable_subspaces(d);
            const std::size_t want = brute_chain_count(subs, Subspace::full(d.field(), d.dim()));
            CHECK(count_complete_flags(d) == want);
            const auto flags = stable_flags(d);
            CHECK(static_cast<std::size_t>(std::count_if(flags.begin(), flags.end(),
                                                         [](const Flag& f) { return f.is_complete(); })) == want);
            CHECK(count_complete_flags(dual(d)) == want);
        }
    }

    TEST_CASE("trianguline") {
        const auto bad = is_trianguline(counterexample_bad());
        CHECK(bad.value);
        CHECK(bad.refinements == 1);
        const auto two = is_trianguline(modular_form(mf(2, R(1), R(3), Normalization::Cohomological, {R(1), R(1)})));
        CHECK(two.value);
        CHECK(two.refinements == 2);
        const auto cubic = validate_module(RawModule{Q3, 3, {}, {IrreducibleBlock{Polynomial(Q3, {R(-2), R(0), R(0), R(1)})}},
                                                     std::nullopt, {{0, MatrixE::identity(Q3, 3)}}});
        const auto c = is_trianguline(cubic);
        CHECK_FALSE(c.value);
        CHECK(c.refinements == 0);
    }

    TEST_CASE("triangulordinary filtrations") {
        for (long n = -2; n <= 2; ++n) {
            const auto fs = triangulordinary_filtrations(cyclotomic(n, Normalization::Homological));
            REQUIRE(fs.size() == 1);
            CHECK(fs[0].flag.length() == 1);
            CHECK(fs[0].weights == std::vector<long>{n});
            CHECK(is_ordinary(cyclotomic(n, Normalization::Homological), fs[0]));
        }
        CHECK(triangulordinary_filtrations(counterexample_bad()).empty());
        // Non-ordinary weight 3 form with slopes 1 and 1, generic line.
        const auto coh = modular_form(mf(3, R(3), R(-3), Normalization::Cohomological, {R(1), R(1)}));
        const auto fs = triangulordinary_filtrations(coh);
        REQUIRE(fs.size() == 2);
        CHECK(fs[0].flag.chain()[1] == Subspace::coordinate(Q3, 2, {0}));
        CHECK(fs[1].flag.chain()[1] == Subspace::coordinate(Q3, 2, {1}));
        for (const auto& f : fs) {
            CHECK(f.weights == std::vector<long>{-2, 0});
            CHECK_FALSE(is_ordinary(coh, f));
        }
        CHECK(triangulordinary_filtrations(abelian_scenario(3, HodgePosition::Generic)).empty());
    }

    TEST_CASE("ordinary and split-ordinary modular forms") {
        const auto coh = modular_form(mf(2, R(1), R(3), Normalization::Cohomological, {R(1), R(1)}));
        const auto fs = triangulordinary_filtrations(coh);
        const auto ord = std::count_if(fs.begin(), fs.end(), [&](const auto& f) { return is_ordinary(coh, f); });
        CHECK(ord == 1);
        CHECK(fs.size() == 2);
        // Hodge line on e_mu: the e_mu line no longer defines a filtration.
        const auto split = modular_form(mf(2, R(1), R(3), Normalization::Cohomological, {R(0), R(1)}));
        const auto only = triangulordinary_filtrations(split);
        REQUIRE(only.size() == 1);
        CHECK(only[0].flag.chain()[1] == Subspace::coordinate(Q3, 2, {0}));
        CHECK(is_ordinary(split, only[0]));
    }

    TEST_CASE("check_filtration rejects bad weights and flags") {
        const auto coh = modular_form(mf(3, R(3), R(-3), Normalization::Cohomological, {R(1), R(1)}));
        auto f = triangulordinary_filtrations(coh).front();
        CHECK_NOTHROW(check_filtration(coh, f));
        auto wrong = f;
        wrong.weights = {0, -2};
        CHECK_THROWS_AS(check_filtration(coh, wrong), Error);
        wrong.weights = {-2};
        CHECK_THROWS_AS(check_filtration(coh, wrong), Error);
        const auto bad = counterexample_bad();
        const IndexedFiltration trivial{Flag({Subspace::full(Q3, 2), Subspace::zero(Q3, 2)}), {0}};
        CHECK_THROWS_AS(check_filtration(bad, trivial), Error);
        CHECK_THROWS_AS(is_ordinary(bad, trivial), Error);
        CHECK_THROWS_AS(slope_hypothesis(bad, trivial), Error);
    }

    TEST_CASE("slope hypothesis") {
        for (long n = -2; n <= 0; ++n) {
            const auto c = cyclotomic(n, Normalization::Homological);
            CHECK(slope_hypothesis(c, triangulordinary_filtrations(c).front()).holds);
        }
        const auto hom = modular_form(mf(3, R(3), R(-3), Normalization::Homological, {R(1), R(1)}));
        const auto fs = triangulordinary_filtrations(hom);
        REQUIRE(fs.size() == 2);
        for (const auto& f : fs) {
            const auto h = slope_hypothesis(hom, f);
            CHECK_FALSE(h.holds);
            CHECK(h.offending == std::vector<long>{0});
        }
        const auto coh = modular_form(mf(3, R(3), R(-3), Normalization::Cohomological, {R(1), R(1)}));
        for (const auto& f : triangulordinary_filtrations(coh)) CHECK(slope_hypothesis(coh, f).holds);
    }

    TEST_CASE("filtration invariants on random modules") {
        std::mt19937 rng(43);
        for (int trial = 0; trial < 80; ++trial) {
            const auto d = testing::random_module(rng, {false, 4});
            for (const auto& f : triangulordinary_filtrations(d)) {
                CHECK_NOTHROW(check_filtration(d, f));
                CHECK(std::is_sorted(f.weights.begin(), f.weights.end()));
                std::vector<long> recovered;
                const auto gs = gradeds(d, f.flag);
                for (std::size_t j = 0; j < gs.size(); ++j) {
                    CHECK(is_crystalline(gs[j]));
                    recovered.insert(recovered.end(), gs[j].dim(), f.weights[j]);
                }
                CHECK(recovered == hodge_tate_weights(d));
                const auto v = judge(d, f);
                CHECK(v.theorem_applies == v.slope_hypothesis);
                if (v.is_ordinary) CHECK(v.slope_hypothesis);
                // Twisting by n shifts the weights and keeps the flag.
                const long n = testing::uniform(rng, -2, 2);
                const auto tw = triangulordinary_filtrations(twist(d, n));
                IndexedFiltration shifted = f;
                for (auto& w : shifted.weights) w += n;
                CHECK(std::find(tw.begin(), tw.end(), shifted) != tw.end());
            }
            CHECK(triangulordinary_filtrations(twist(d, 1)).size() == triangulordinary_filtrations(d).size());
        }
    }

    TEST_CASE("plus de Rham means F^1 = 0 in every filtration") {
        for (const auto& name : corpus_names()) {
            const auto e = corpus_entry(name);
            const auto r = classify(e.module);
            const auto w = hodge_tate_weights(e.module);
            CHECK(r.plus_de_rham == std::all_of(w.begin(), w.end(), [](long x) { return x <= 0; }));
            if (!r.triangulordinary) continue;
            for (const auto& v : *r.triangulordinary)
                if (r.plus_de_rham) CHECK(v.filtration.weights.back() <= 0);
            if (r.ordinary) {
                CHECK(std::any_of(r.triangulordinary->begin(), r.triangulordinary->end(),
                                  [&](const auto& v) { return v.filtration == r.ordinary->filtration; }));
                CHECK(r.ordinary->slope_hypothesis);
            }
        }
    }

    TEST_CASE("bloch kato comparison") {
        CHECK_FALSE(bloch_kato_fg(cyclotomic(1, Normalization::Homological)));
        CHECK(bloch_kato_fg(cyclotomic(0, Normalization::Homological)));
        CHECK(bloch_kato_fg(cyclotomic(2, Normalization::Homological)));
        CHECK_FALSE(bloch_kato_fg(counterexample_bad()));
    }

    TEST_CASE("classify reports") {
        const auto bad = classify(counterexample_bad());
        CHECK(bad.semistable);
        CHECK(bad.weakly_admissible == false);
        CHECK_FALSE(bad.crystalline);
        REQUIRE(bad.trianguline);
        CHECK(bad.trianguline->value);
        REQUIRE(bad.triangulordinary);
        CHECK(bad.triangulordinary->empty());
        CHECK_FALSE(bad.ordinary);
        CHECK(bad.complete);

        for (long n = -2; n <= 2; ++n) {
            const auto r = classify(cyclotomic(n, Normalization::Homological));
            CHECK(r.weakly_admissible == true);
            CHECK(r.crystalline);
            REQUIRE(r.ordinary);
            REQUIRE(r.triangulordinary);
            CHECK(r.triangulordinary->size() == 1);
            CHECK(r.triangulordinary->front().theorem_applies);
        }

        const auto guard = classify(abelian_scenario(1, HodgePosition::Generic), {1, 3});
        CHECK_FALSE(guard.complete);
        CHECK_FALSE(guard.weakly_admissible);
        CHECK_FALSE(guard.triangulordinary);
        CHECK_FALSE(guard.trianguline);
        CHECK_FALSE(guard.warnings.empty());
    }

    TEST_CASE("classify downgrades infeasible enumeration") {
        const auto r = classify(diag_module({R(2), R(2)}));
        CHECK_FALSE(r.complete);
        CHECK_FALSE(r.weakly_admissible);
        CHECK_FALSE(r.trianguline);
        REQUIRE_FALSE(r.warnings.empty());
        CHECK(r.warnings.front().find("ENUM_INFEASIBLE") != std::string::npos);
        CHECK(r.crystalline);
    }

    TEST_CASE("abelian scenario one") {
        const auto d = abelian_scenario(1, HodgePosition::Generic);
        const auto r = classify(d);
        REQUIRE(r.triangulordinary);
        CHECK_FALSE(r.triangulordinary->empty());
        CHECK_FALSE(r.ordinary);
        const Subspace e_minus1 = Subspace::coordinate(d.field(), 4, {0});
        for (const auto& v : *r.triangulordinary) {
            const Subspace& f1 = v.filtration.flag.chain()[1];
            CHECK(v.theorem_applies == f1.contains(e_minus1));
        }
    }
}
