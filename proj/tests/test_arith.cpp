#include <doctest.h>

#include <random>

#include "support/random_modules.hpp"
#include "tord/matrix.hpp"
#include "tord/polynomial.hpp"
#include "tord/scalar.hpp"

using namespace tord;

namespace {

const FieldSpec Q3{3, 1};
const FieldSpec E32{3, 2};
const FieldSpec E33{3, 3};

Scalar S(const char* text, FieldSpec f) { return Scalar::parse(text, f); }
Scalar R(long n, long d, FieldSpec f) { return Scalar(f, Rational(n, d)); }

Scalar random_scalar(std::mt19937& rng, FieldSpec f) {
    std::vector<Rational> c;
    for (long i = 0; i < f.ramification; ++i)
        c.emplace_back(testing::uniform(rng, -9, 9), testing::uniform(rng, 1, 9));
    return Scalar(f, c);
}

}  // namespace

TEST_SUITE("arith") {
    TEST_CASE("rational normal form") {
        CHECK(Rational(6, -4) == Rational(-3, 2));
        CHECK(Rational(6, -4).to_string() == "-3/2");
        CHECK(Rational::prime_power(3, -2) == Rational(1, 9));
        CHECK(Rational(18, 5).p_adic_valuation(3) == 2);
        CHECK(Rational(5, 27).p_adic_valuation(3) == -3);
        CHECK_THROWS_AS(Rational(1, 0), Error);
    }

    TEST_CASE("scalar literals") {
        CHECK(S("1", Q3) == Scalar::one(Q3));
        CHECK(S("p^-1", Q3) == R(1, 3, Q3));
        // u^-2 = u * u^-3 = u/3 when u^3 = 3
        CHECK(S("u^-2", E33) == Scalar(E33, {Rational(0), Rational(1, 3), Rational(0)}));
        CHECK(S(" 2 - 3/4 * u^1 ", E32) == Scalar(E32, {Rational(2), Rational(-3, 4)}));
        CHECK(S("u^2", Q3) == R(9, 1, Q3));
        CHECK(S("-2*p^2", Q3) == R(-18, 1, Q3));
        for (const char* bad : {"", "1/", "1/0", "u^", "2*", "1++2", "x", "1/-2"})
            CHECK_THROWS_AS(S(bad, Q3), Error);
    }

    TEST_CASE("field operations") {
        const Scalar u = S("u^1", E32);
        CHECK(u * u == R(3, 1, E32));
        CHECK(Scalar::one(E32) / u == Scalar(E32, {Rational(0), Rational(1, 3)}));
        CHECK((u + Scalar::one(E32)) * (u - Scalar::one(E32)) == R(2, 1, E32));
        CHECK_THROWS_AS(Scalar::one(E32) / Scalar::zero(E32), Error);
        CHECK_THROWS_AS(Scalar::one(E32) + Scalar::one(Q3), Error);
    }

    TEST_CASE("valuation") {
        CHECK_FALSE(Scalar::zero(Q3).valuation().has_value());
        CHECK(*R(1, 3, Q3).valuation() == Rational(-1));
        CHECK(*S("3 + u^1", E32).valuation() == Rational(1, 2));
        CHECK(*S("u^-2", E33).valuation() == Rational(-2, 3));
    }

    TEST_CASE("valuation is multiplicative and ultrametric") {
        std::mt19937 rng(11);
        for (int trial = 0; trial < 300; ++trial) {
            const FieldSpec f{trial % 2 ? 3 : 2, 1 + trial % 3};
            const Scalar a = random_scalar(rng, f), b = random_scalar(rng, f);
            if (a.is_zero() || b.is_zero()) continue;
            CHECK(*(a * b).valuation() == *a.valuation() + *b.valuation());
            if (!(a + b).is_zero()) CHECK(*(a + b).valuation() >= std::min(*a.valuation(), *b.valuation()));
            CHECK(a * a.inverse() == Scalar::one(f));
        }
    }

    TEST_CASE("print then parse is the identity") {
        std::mt19937 rng(12);
        for (int trial = 0; trial < 200; ++trial) {
            const FieldSpec f{5, 1 + trial % 3};
            const Scalar a = random_scalar(rng, f);
            CHECK(Scalar::parse(a.to_string(), f) == a);
        }
        CHECK(Scalar::zero(E32).to_string() == "0");
    }

    TEST_CASE("newton slopes") {
        const auto one = Scalar::one(Q3);
        CHECK(newton_slopes(Polynomial::linear(R(1, 3, Q3))) == SlopeMultiset({{Rational(-1), 1}}));
        const Polynomial x2_minus_p(Q3, {R(-3, 1, Q3), Scalar::zero(Q3), one});
        CHECK(newton_slopes(x2_minus_p) == SlopeMultiset({{Rational(1, 2), 2}}));
        const Scalar roots[] = {one, R(1, 3, Q3)};
        CHECK(newton_slopes(Polynomial::from_roots(Q3, roots)) ==
              SlopeMultiset({{Rational(-1), 1}, {Rational(0), 1}}));
        CHECK_THROWS_AS(newton_slopes(Polynomial(Q3, {one, R(2, 1, Q3)})), Error);
        CHECK_THROWS_AS(newton_slopes(Polynomial(Q3, {Scalar::zero(Q3), one})), Error);
    }

    TEST_CASE("slopes of a product are the union of slopes") {
        std::mt19937 rng(13);
        for (int trial = 0; trial < 100; ++trial) {
            const FieldSpec f{3, 1 + trial % 3};
            auto random_monic = [&] {
                std::vector<Scalar> c;
                const long deg = testing::uniform(rng, 1, 3);
                for (long i = 0; i < deg; ++i) c.push_back(random_scalar(rng, f));
                if (c[0].is_zero()) c[0] = Scalar::one(f);
                c.push_back(Scalar::one(f));
                return Polynomial(f, c);
            };
            const Polynomial a = random_monic(), b = random_monic();
            CHECK(newton_slopes(a * b) == newton_slopes(a).merged(newton_slopes(b)));
        }
    }

    TEST_CASE("charpoly slopes equal eigenvalue valuations for diagonal matrices") {
        std::mt19937 rng(14);
        for (int trial = 0; trial < 100; ++trial) {
            const FieldSpec f{2 + trial % 2, 1 + trial % 3};
            std::vector<Scalar> diag;
            std::vector<SlopeEntry> expected;
            const long n = testing::uniform(rng, 1, 4);
            for (long i = 0; i < n; ++i) {
                Scalar s;
                do s = random_scalar(rng, f);
                while (s.is_zero());
                diag.push_back(s);
                expected.push_back({*s.valuation(), 1});
            }
            SlopeMultiset want;
            for (const auto& e : expected) want = want.merged(SlopeMultiset({e}));
            CHECK(newton_slopes(charpoly(MatrixE::diagonal(f, diag))) == want);
        }
    }

    TEST_CASE("polynomial arithmetic") {
        const auto x = Polynomial(Q3, {Scalar::zero(Q3), Scalar::one(Q3)});
        const auto f = x * x - Polynomial::constant(R(1, 1, Q3));
        const auto [q, r] = f.divmod(Polynomial::linear(Scalar::one(Q3)));
        CHECK(q == Polynomial::linear(R(-1, 1, Q3)));
        CHECK(r.is_zero());
        CHECK(gcd(f, Polynomial::linear(Scalar::one(Q3))) == Polynomial::linear(Scalar::one(Q3)));
        CHECK(gcd(f, Polynomial::linear(R(2, 1, Q3))).degree() == 0);
        CHECK(f.evaluate(R(2, 1, Q3)) == R(3, 1, Q3));
    }
}
