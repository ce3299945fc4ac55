#include <doctest.h>

#include <set>
#include <string>

#include "fibwg/errors.hpp"
#include "fibwg/words.hpp"

using namespace fibwg;
using namespace fibwg::words;

TEST_CASE("generate: seed and low generations") {
    CHECK(generate({1, 1}, 0).symbols == "A");
    CHECK(generate({1, 1}, 1).symbols == "AB");
    CHECK(generate({1, 1}, 2).symbols == "ABA");
    CHECK(generate({1, 1}, 3).symbols == "ABAAB");
    CHECK(generate({1, 2}, 2).symbols == "ABAA");
    CHECK(generate({2, 1}, 1).symbols == "AAB");
}

TEST_CASE("generate: length recurrence L_k = p L_{k-1} + q L_{k-2}") {
    for (auto rule : {SubstitutionRule{1, 1}, SubstitutionRule{1, 2},
                      SubstitutionRule{3, 2}, SubstitutionRule{2, 3}}) {
        std::size_t lkm2 = generate(rule, 0).size();
        std::size_t lkm1 = generate(rule, 1).size();
        CHECK(lkm2 == 1);
        CHECK(lkm1 == static_cast<std::size_t>(rule.p) + 1);
        for (int k = 2; k <= 8; ++k) {
            const std::size_t lk = generate(rule, k).size();
            CHECK(lk == static_cast<std::size_t>(rule.p) * lkm1 +
                            static_cast<std::size_t>(rule.q) * lkm2);
            lkm2 = lkm1;
            lkm1 = lk;
        }
    }
    // Fibonacci lengths for (1,1): 2, 3, 5, 8, 13, ...
    CHECK(generate({1, 1}, 4).size() == 8);
    CHECK(generate({1, 1}, 5).size() == 13);
    CHECK(generate({1, 1}, 6).size() == 21);
}

TEST_CASE("generate: prefix tower") {
    for (auto rule : {SubstitutionRule{1, 1}, SubstitutionRule{1, 2}, SubstitutionRule{3, 2}}) {
        for (int k = 0; k <= 9; ++k) {
            const auto w = generate(rule, k);
            const auto next = generate(rule, k + 1);
            CHECK(next.symbols.substr(0, w.size()) == w.symbols);
        }
    }
}

TEST_CASE("generate: determinism and validation") {
    CHECK(generate({1, 1}, 10).symbols == generate({1, 1}, 10).symbols);
    CHECK_THROWS_AS(generate({0, 1}, 3), std::invalid_argument);
    CHECK_THROWS_AS(generate({1, 0}, 3), std::invalid_argument);
    CHECK_THROWS_AS(generate({1, 1}, -1), std::invalid_argument);
    CHECK_THROWS_AS(generate({1, 1}, 60), Error);  // far past the length cap
    CHECK_THROWS_AS(generate({1, 1}, 10, /*max_length=*/50), Error);
}

TEST_CASE("generate_at_least: truncation to exact length") {
    CHECK(generate_at_least({1, 1}, 4).symbols == "ABAA");
    CHECK(generate_at_least({1, 1}, 5).symbols == "ABAAB");
    const auto w = generate_at_least({1, 1}, 1597);
    CHECK(w.size() == 1597);
    // and it is the prefix of the untruncated generation
    const auto full = generate({1, 1}, w.generation);
    CHECK(full.symbols.substr(0, 1597) == w.symbols);
    CHECK_THROWS_AS(generate_at_least({1, 1}, 0), std::invalid_argument);
    CHECK_THROWS_AS(generate_at_least({1, 1}, 100, /*max_length=*/50), Error);
}

TEST_CASE("subword_positions") {
    const SymbolWord w("ABAAB");
    CHECK(subword_positions(w, "AA") == std::vector<std::size_t>{2});
    CHECK(subword_positions(w, "A") == std::vector<std::size_t>{0, 2, 3});
    CHECK(subword_positions(w, "ABAAB") == std::vector<std::size_t>{0});
    CHECK_THROWS_AS(subword_positions(w, "ABAABA"), std::invalid_argument);
    CHECK_THROWS_AS(subword_positions(w, ""), std::invalid_argument);
}

TEST_CASE("forbidden factors of the Fibonacci word") {
    const auto w = generate({1, 1}, 10);
    CHECK(subword_positions(w, "BB").empty());
    CHECK(subword_positions(w, "AAA").empty());
    CHECK(subword_positions(w, "BABAB").empty());
    // at every generation k >= 2
    for (int k = 2; k <= 12; ++k) {
        const auto wk = generate({1, 1}, k);
        if (wk.size() >= 2) CHECK(subword_positions(wk, "BB").empty());
        if (wk.size() >= 3) CHECK(subword_positions(wk, "AAA").empty());
        if (wk.size() >= 5) CHECK(subword_positions(wk, "BABAB").empty());
    }
}

TEST_CASE("distinct_subwords and census stability") {
    const auto w = generate({1, 1}, 10);
    CHECK(distinct_subwords(w, 1) == std::set<std::string>{"A", "B"});
    CHECK(distinct_subwords(w, 2) == std::set<std::string>{"AA", "AB", "BA"});
    CHECK(distinct_subwords(w, 4) ==
          std::set<std::string>{"BAAB", "ABAA", "ABAB", "AABA", "BABA"});

    const auto census = stable_census({1, 1}, 4);
    CHECK(census.stable);
    CHECK(census.factors == distinct_subwords(w, 4));
    // Fibonacci word factor complexity is n + 1
    for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{3},
                          std::size_t{5}, std::size_t{6}}) {
        CHECK(stable_census({1, 1}, n).factors.size() == n + 1);
    }
    // cap too small to stabilize -> warning-level result
    const auto capped = stable_census({1, 1}, 4, /*max_length=*/8);
    CHECK_FALSE(capped.stable);
}

TEST_CASE("hopping sequence basics") {
    HoppingSequence seq(SymbolWord("ABA"), 1.0, 0.5);
    CHECK(seq.site_count() == 4);
    CHECK(seq.hopping(0) == 1.0);
    CHECK(seq.hopping(1) == 0.5);
    CHECK(seq.hopping(2) == 1.0);
    CHECK(seq.rho() == 0.5);
    CHECK_THROWS_AS(HoppingSequence(SymbolWord("ABA"), -1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(HoppingSequence(SymbolWord("ABA"), 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(HoppingSequence(SymbolWord(""), 1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(SymbolWord("ABC"), std::invalid_argument);
}

TEST_CASE("beta_count") {
    HoppingSequence seq(SymbolWord("ABA"), 1.0, 0.5);
    CHECK(beta_count(seq, 0, 3) == 1);
    CHECK(beta_count(seq, 1, 1) == 0);
    CHECK(beta_count(seq, 2, 2) == 0);

    const auto w12 = generate_at_least({1, 2}, 64);
    HoppingSequence seq12(w12, 1.0, 0.2);
    CHECK(beta_count(seq12, 0, 4) == 1);  // first four hoppings of ABAAABAB...

    // brute-force comparison across a sweep of (n, m)
    for (std::size_t n = 0; n <= 30; n += 3) {
        for (std::size_t m = n; m <= 60; m += 7) {
            std::size_t direct = 0;
            for (std::size_t j = n; j < m; ++j)
                if (seq12.is_b(j)) ++direct;
            CHECK(beta_count(seq12, n, m) == direct);
        }
    }

    CHECK_THROWS_AS(beta_count(seq, 0, 4), Error);  // m exceeds last site
    CHECK_THROWS_AS(beta_count(seq, 3, 2), Error);
}
