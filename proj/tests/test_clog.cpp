#include <doctest.h>

#include <functional>
#include <random>

#include "contlog/clog.hpp"
#include "oracles.hpp"

using namespace contlog;

namespace {

Expansion ex(std::vector<std::uint64_t> t) { return Expansion{std::move(t)}; }

RationalPair pq(std::uint64_t p, std::uint64_t q) { return {Nat(p), Nat(q)}; }

}  // namespace

TEST_CASE("step") {
    StepResult s = step(pq(96, 7));
    CHECK(s.k == 3);
    REQUIRE(s.next);
    CHECK(*s.next == pq(56, 40));

    s = step(pq(56, 40));
    CHECK(s.k == 0);
    CHECK(*s.next == pq(40, 16));

    s = step(pq(8, 1));
    CHECK(s.k == 3);
    CHECK_FALSE(s.next.has_value());

    CHECK_THROWS_AS(step(pq(3, 4)), PreconditionError);
    CHECK_THROWS_AS(step(pq(3, 0)), PreconditionError);
}

TEST_CASE("expand examples") {
    CHECK(expand(Nat(96), Nat(7)) == ex({3, 0, 1, 2}));
    CHECK(expand(Nat(1), Nat(1)) == ex({0}));
    CHECK(expand(Nat(7), Nat(1)) == ex({2, 0, 1, 1}));
    CHECK(expand(Nat(10), Nat(4)) == ex({1, 2}));
    CHECK(expand(Nat(10), Nat(4), Reduce::off) == ex({1, 2}));
    CHECK_THROWS_AS(expand(Nat(2), Nat(3)), PreconditionError);
}

TEST_CASE("evaluate examples") {
    CHECK(evaluate(ex({3, 0, 1, 2})) == pq(96, 7));
    CHECK(evaluate(ex({5})) == pq(32, 1));
    CHECK(evaluate(ex({0})) == pq(1, 1));
    CHECK(evaluate(ex({1, 1})) == pq(3, 1));
    CHECK_THROWS_AS(evaluate(ex({})), PreconditionError);
}

TEST_CASE("measures") {
    CHECK(measure_L(Nat(96), Nat(7)) == 4);
    CHECK(measure_L(Nat(1), Nat(1)) == 1);
    CHECK(measure_L(Nat(31), Nat(1)) == 8);
    CHECK(measure_T(Nat(96), Nat(7)) == 6);
    CHECK(measure_T(Nat(2), Nat(1)) == 1);
    CHECK(measure_T(Nat(31), Nat(1)) == 11);
}

TEST_CASE("trace examples") {
    StepTrace t = trace(Nat(96), Nat(7), Reduce::off);
    REQUIRE(t.steps.size() == 4);
    CHECK(t.steps[0].k_emitted == 3);
    CHECK(*t.steps[0].after == pq(56, 40));
    CHECK(t.steps[1].k_emitted == 0);
    CHECK(*t.steps[1].after == pq(40, 16));
    CHECK(t.steps[2].k_emitted == 1);
    CHECK(*t.steps[2].after == pq(32, 8));
    CHECK(t.steps[3].k_emitted == 2);
    CHECK(t.steps[3].before == pq(32, 8));
    CHECK_FALSE(t.steps[3].after.has_value());
    CHECK(t.expansion == ex({3, 0, 1, 2}));
    CHECK(format_trace(t) ==
          "step 3 96 7 56 40\n"
          "step 0 56 40 40 16\n"
          "step 1 40 16 32 8\n"
          "step 2 32 8 32 0\n");

    t = trace(Nat(1), Nat(1));
    REQUIRE(t.steps.size() == 1);
    CHECK(t.steps[0].k_emitted == 0);
    CHECK_FALSE(t.steps[0].after.has_value());

    t = trace(Nat(7), Nat(1));
    CHECK(t.expansion == ex({2, 0, 1, 1}));
    CHECK(t.steps.size() == 4);

    // With reduction on, (56, 40) is stored as (7, 5).
    t = trace(Nat(96), Nat(7), Reduce::on);
    CHECK(*t.steps[0].after == pq(7, 5));
    CHECK(t.steps[0].reduced);
    CHECK(t.expansion == ex({3, 0, 1, 2}));
}

TEST_CASE("expand matches iteration of g on exact rationals") {
    for (std::uint64_t q = 1; q <= 150; ++q) {
        for (std::uint64_t p = q; p <= 300; ++p) {
            const auto want = oracle::expand_by_map(mpq_class(mpz_class(static_cast<unsigned long>(p)),
                                                              mpz_class(static_cast<unsigned long>(q))));
            REQUIRE(expand(Nat(p), Nat(q)).terms == want);
        }
    }
}

TEST_CASE("evaluate matches the nested form") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        std::vector<std::uint64_t> terms(1 + rng() % 12);
        for (auto& t : terms) {
            t = rng() % 40;
        }
        mpq_class x = oracle::evaluate_nested(terms);
        x.canonicalize();
        const RationalPair r = evaluate(Expansion{terms});
        REQUIRE(r.p.to_string() == x.get_num().get_str());
        REQUIRE(r.q.to_string() == x.get_den().get_str());
    }
}

TEST_CASE("expand(evaluate(e)) == e over canonical expansions, length <= 6, terms <= 4") {
    std::size_t count = 0;
    std::vector<std::uint64_t> terms;
    std::function<void()> rec = [&] {
        if (!terms.empty()) {
            const Expansion e{terms};
            if (e.is_canonical()) {
                const RationalPair r = evaluate(e);
                REQUIRE(expand(r.p, r.q) == e);
                ++count;
            }
        }
        if (terms.size() == 6) {
            return;
        }
        for (std::uint64_t k = 0; k <= 4; ++k) {
            terms.push_back(k);
            rec();
            terms.pop_back();
        }
    };
    rec();
    // 5 single-term + sum over n = 2..6 of 5^(n-1) * 4 last-term choices.
    CHECK(count == 5 + 4 * (5 + 25 + 125 + 625 + 3125));
}

TEST_CASE("evaluate(expand(p, q)) is (p, q) in lowest terms, reduction and canonicality") {
    for (std::uint64_t q = 1; q <= 512; ++q) {
        for (std::uint64_t p = q; p <= 512; ++p) {
            const Expansion on = expand(Nat(p), Nat(q), Reduce::on);
            const Expansion off = expand(Nat(p), Nat(q), Reduce::off);
            REQUIRE(on == off);
            REQUIRE(on.is_canonical());
            REQUIRE(evaluate(on) == reduce_full(Nat(p), Nat(q)));
        }
    }
}

TEST_CASE("scale invariance") {
    for (std::uint64_t c : {2, 3, 5}) {
        for (std::uint64_t q = 1; q <= 128; ++q) {
            for (std::uint64_t p = q; p <= 128; ++p) {
                REQUIRE(expand(Nat(c * p), Nat(c * q)) == expand(Nat(p), Nat(q)));
                REQUIRE(expand(Nat(c * p), Nat(c * q), Reduce::off) == expand(Nat(p), Nat(q)));
            }
        }
    }
}

TEST_CASE("every non-terminal step output satisfies p' > q' >= 1") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        mpz_class a = oracle::random_bits(rng, 2 + rng() % 200);
        mpz_class b = oracle::random_bits(rng, 1 + rng() % 200);
        if (a < b) {
            std::swap(a, b);
        }
        const StepTrace t = trace(oracle::to_nat(a), oracle::to_nat(b), Reduce::off);
        for (const auto& s : t.steps) {
            if (s.after) {
                REQUIRE(s.after->p > s.after->q);
                REQUIRE_FALSE(s.after->q.is_zero());
            }
        }
        REQUIRE(t.expansion.is_canonical());
        REQUIRE(t.expansion == expand(oracle::to_nat(a), oracle::to_nat(b)));
    }
}

TEST_CASE("word fast path agrees with the big-integer path") {
    for (std::uint64_t q = 1; q <= 300; ++q) {
        for (std::uint64_t p = q; p <= 600; ++p) {
            const Expansion e = expand(Nat(p), Nat(q));
            std::uint64_t T = 0;
            for (auto k : e.terms) {
                T += k;
            }
            REQUIRE(measure_word(p, q) == WordMeasure{static_cast<std::uint32_t>(e.terms.size()), T});
        }
    }
    std::mt19937_64 rng(3);
    for (int i = 0; i < 5000; ++i) {
        std::uint64_t p = rng();
        std::uint64_t q = rng() >> (rng() % 64);
        if (q == 0) {
            q = 1;
        }
        if (p < q) {
            std::swap(p, q);
        }
        REQUIRE(measure_word(p, q).L == measure_L(Nat(p), Nat(q)));
        REQUIRE(measure_word(p, q).T == measure_T(Nat(p), Nat(q)));
    }
    CHECK(measure_word(~std::uint64_t{0}, 1) == WordMeasure{126, 64 * 63 / 2 + 1});
    CHECK_THROWS_AS(measure_word(1, 2), PreconditionError);
}

TEST_CASE("expansion text format") {
    CHECK(format_expansion(ex({3, 0, 1, 2})) == "<3,0,1,2>");
    CHECK(parse_expansion("<3,0,1,2>") == ex({3, 0, 1, 2}));
    CHECK(parse_expansion(" < 3, 0 ,1,2 > ") == ex({3, 0, 1, 2}));
    CHECK(parse_expansion("<>").terms.empty());
    CHECK_THROWS_AS(parse_expansion("3,0"), PreconditionError);
    CHECK_THROWS_AS(parse_expansion("<3,,0>"), PreconditionError);
    CHECK_THROWS_AS(parse_expansion("<3,-1>"), PreconditionError);
    CHECK_THROWS_AS(parse_expansion("<99999999999999999999999>"), PreconditionError);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        std::vector<std::uint64_t> terms(1 + rng() % 10);
        for (auto& t : terms) {
            t = rng() >> (rng() % 64);
        }
        REQUIRE(parse_expansion(format_expansion(Expansion{terms})).terms == terms);
    }
}
