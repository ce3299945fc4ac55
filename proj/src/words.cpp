// words.cpp
#include "fibwg/words.hpp"

#include <stdexcept>

#include "fibwg/errors.hpp"

namespace fibwg::words {

namespace {

void check_rule(const SubstitutionRule& rule) {
    if (rule.p < 1 || rule.q < 1)
        throw std::invalid_argument("substitution rule requires p >= 1 and q >= 1");
}

// Length of generation k, or max_length + 1 if the cap would be exceeded.
std::size_t forecast_length(const SubstitutionRule& rule, int k, std::size_t max_length) {
    // L_0 = 1 ("A"), and the image of B has length M_0 = 1 ("B").
    unsigned long long la = 1, lb = 1;
    for (int step = 0; step < k; ++step) {
        const unsigned long long na = static_cast<unsigned long long>(rule.p) * la + lb;
        const unsigned long long nb = static_cast<unsigned long long>(rule.q) * la;
        if (na > max_length) return max_length + 1;
        la = na;
        lb = nb;
    }
    return static_cast<std::size_t>(la);
}

}  // namespace

SymbolWord::SymbolWord(std::string s, int gen) : symbols(std::move(s)), generation(gen) {
    for (char c : symbols)
        if (c != 'A' && c != 'B')
            throw std::invalid_argument("word symbols must be 'A' or 'B'");
}

SymbolWord generate(const SubstitutionRule& rule, int k, std::size_t max_length) {
    check_rule(rule);
    if (k < 0) throw std::invalid_argument("generation count must be nonnegative");
    if (forecast_length(rule, k, max_length) > max_length)
        throw Error("generated word would exceed the configured maximum length");

    // sigma^k(A) = sigma^{k-1}(A)^p sigma^{k-1}(B),  sigma^k(B) = sigma^{k-1}(A)^q
    std::string a = "A", b = "B";
    for (int step = 0; step < k; ++step) {
        std::string na;
        na.reserve(static_cast<std::size_t>(rule.p) * a.size() + b.size());
        for (int i = 0; i < rule.p; ++i) na += a;
        na += b;
        std::string nb;
        nb.reserve(static_cast<std::size_t>(rule.q) * a.size());
        for (int i = 0; i < rule.q; ++i) nb += a;
        a = std::move(na);
        b = std::move(nb);
    }
    SymbolWord out;
    out.symbols = std::move(a);
    out.generation = k;
    return out;
}

SymbolWord generate_at_least(const SubstitutionRule& rule, std::size_t n_min,
                             std::size_t max_length) {
    check_rule(rule);
    if (n_min < 1) throw std::invalid_argument("requested length must be positive");
    if (n_min > max_length)
        throw Error("requested word length exceeds the configured maximum length");

    // forecast_length saturates at max_length + 1 >= n_min, so this terminates;
    // generate() re-checks the cap and throws if it was hit.
    int k = 0;
    while (forecast_length(rule, k, max_length) < n_min) ++k;
    SymbolWord w = generate(rule, k, max_length);
    w.symbols.resize(n_min);
    return w;
}

std::vector<std::size_t> subword_positions(const SymbolWord& word, const std::string& pattern) {
    if (pattern.empty()) throw std::invalid_argument("pattern must be nonempty");
    if (pattern.size() > word.size())
        throw std::invalid_argument("pattern longer than word");
    std::vector<std::size_t> hits;
    std::size_t pos = word.symbols.find(pattern);
    while (pos != std::string::npos) {
        hits.push_back(pos);
        pos = word.symbols.find(pattern, pos + 1);
    }
    return hits;
}

std::set<std::string> distinct_subwords(const SymbolWord& word, std::size_t length) {
    if (length < 1) throw std::invalid_argument("factor length must be positive");
    if (length > word.size())
        throw std::invalid_argument("factor length exceeds word length");
    std::set<std::string> census;
    for (std::size_t i = 0; i + length <= word.size(); ++i)
        census.insert(word.symbols.substr(i, length));
    return census;
}

CensusResult stable_census(const SubstitutionRule& rule, std::size_t length,
                           std::size_t max_length) {
    check_rule(rule);
    int k = 0;
    while (forecast_length(rule, k, max_length) < length) ++k;

    CensusResult result;
    std::set<std::string> prev = distinct_subwords(generate(rule, k, max_length), length);
    while (true) {
        if (forecast_length(rule, k + 1, max_length) > max_length) {
            result.factors = std::move(prev);
            result.generation = k;
            result.stable = false;
            return result;
        }
        std::set<std::string> next =
            distinct_subwords(generate(rule, k + 1, max_length), length);
        if (next == prev) {
            result.factors = std::move(prev);
            result.generation = k;
            result.stable = true;
            return result;
        }
        prev = std::move(next);
        ++k;
    }
}

HoppingSequence::HoppingSequence(SymbolWord word, double t_a, double t_b)
    : word_(std::move(word)), t_a_(t_a), t_b_(t_b) {
    if (word_.size() == 0)
        throw std::invalid_argument("hopping sequence requires at least one bond");
    if (!(t_a_ > 0.0) || !(t_b_ > 0.0))
        throw std::invalid_argument("hopping energies must be positive");
    b_prefix_.resize(word_.size() + 1, 0);
    for (std::size_t i = 0; i < word_.size(); ++i)
        b_prefix_[i + 1] = b_prefix_[i] + (word_.is_b(i) ? 1u : 0u);
}

double HoppingSequence::hopping(std::size_t n) const {
    return word_.is_b(n) ? t_b_ : t_a_;
}

bool HoppingSequence::is_b(std::size_t n) const { return word_.is_b(n); }

std::size_t HoppingSequence::b_count(std::size_t n, std::size_t m) const {
    return b_prefix_[m] - b_prefix_[n];
}

std::size_t beta_count(const HoppingSequence& seq, std::size_t n, std::size_t m) {
    const std::size_t last_site = seq.site_count() - 1;
    if (n > m || m > last_site)
        throw Error("beta_count: site indices out of range");
    return seq.b_count(n, m);
}

}  // namespace fibwg::words
