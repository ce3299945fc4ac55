// words.hpp -- (p,q)-Lucas substitution words and aperiodic hopping sequences.
#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace fibwg::words {

/// Default cap on generated word length; generation fails beyond this.
inline constexpr std::size_t kMaxWordLength = 10'000'000;

/// Two-letter substitution A -> A^p B, B -> A^q with p, q >= 1.
/// p = q = 1 is the Fibonacci rule; (1,2) is the first rule whose chain
/// carries a central spectral gap.
struct SubstitutionRule {
    int p = 1;
    int q = 1;
};

/// A finite word over {A, B}. `generation` counts rule applications to the
/// seed "A"; it is -1 for words not produced by a rule (periodic references
/// such as the uniform or alternating word).
struct SymbolWord {
    std::string symbols;
    int generation = -1;

    SymbolWord() = default;
    explicit SymbolWord(std::string s, int gen = -1);

    std::size_t size() const { return symbols.size(); }
    char at(std::size_t i) const { return symbols[i]; }
    bool is_b(std::size_t i) const { return symbols[i] == 'B'; }

    bool operator==(const SymbolWord& o) const { return symbols == o.symbols; }
};

/// k-fold application of the rule to the seed "A".
/// Word lengths obey L_k = p L_{k-1} + q L_{k-2} with L_0 = 1, L_1 = p + 1,
/// and each word is a prefix of the next.
SymbolWord generate(const SubstitutionRule& rule, int k,
                    std::size_t max_length = kMaxWordLength);

/// Smallest-generation word of length >= n_min, truncated to exactly n_min
/// symbols (safe: every generation is a prefix of the next).
SymbolWord generate_at_least(const SubstitutionRule& rule, std::size_t n_min,
                             std::size_t max_length = kMaxWordLength);

/// All start indices at which `pattern` occurs in `word`, ascending.
std::vector<std::size_t> subword_positions(const SymbolWord& word,
                                           const std::string& pattern);

/// Distinct factors of the given length witnessed in `word`.
std::set<std::string> distinct_subwords(const SymbolWord& word, std::size_t length);

struct CensusResult {
    std::set<std::string> factors;
    int generation = 0;   // generation at which the census was taken
    bool stable = false;  // census unchanged from generation to generation+1
};

/// Factor census of the infinite word: the census is grown generation by
/// generation until it is unchanged under one more substitution step. If the
/// length cap is reached first, the latest census is returned with
/// stable == false (a warning-level signal, not an error).
CensusResult stable_census(const SubstitutionRule& rule, std::size_t length,
                           std::size_t max_length = kMaxWordLength);

/// A word with bond energies attached: hopping n is t_a for 'A', t_b for 'B'.
/// A sequence of W hoppings serves an open chain of W + 1 sites; callers that
/// need a chain of N sites use the first N - 1 hoppings.
class HoppingSequence {
public:
    HoppingSequence(SymbolWord word, double t_a, double t_b);

    const SymbolWord& word() const { return word_; }
    double t_a() const { return t_a_; }
    double t_b() const { return t_b_; }
    double rho() const { return t_b_ / t_a_; }

    std::size_t hop_count() const { return word_.size(); }
    std::size_t site_count() const { return word_.size() + 1; }

    double hopping(std::size_t n) const;
    bool is_b(std::size_t n) const;

    /// Number of t_B bonds with hopping index in [n, m). Unchecked range.
    std::size_t b_count(std::size_t n, std::size_t m) const;

private:
    SymbolWord word_;
    double t_a_;
    double t_b_;
    std::vector<std::uint32_t> b_prefix_;  // b_prefix_[i] = #B in word[0..i)
};

/// Count of t_B hoppings linking site n to site m, i.e. bonds with index in
/// [n, m). Requires 0 <= n <= m <= N - 1 on a chain of N sites.
std::size_t beta_count(const HoppingSequence& seq, std::size_t n, std::size_t m);

}  // namespace fibwg::words
