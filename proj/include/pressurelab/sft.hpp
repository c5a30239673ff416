#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pressurelab {

using Symbol = std::uint8_t;

/// Maximum alphabet size supported by the word encodings.
inline constexpr int kMaxAlphabet = 16;

/// A finite word over {0, ..., m-1}. Symbols are 0-based in memory and
/// 1-based in every textual representation.
struct Word {
    std::vector<Symbol> symbols;

    std::size_t size() const noexcept { return symbols.size(); }
    bool empty() const noexcept { return symbols.empty(); }
    Symbol operator[](std::size_t i) const { return symbols[i]; }
    Symbol back() const { return symbols.back(); }
    Symbol front() const { return symbols.front(); }

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;
};

Word concat(const Word& a, const Word& b);

/// Parses a 1-based word: "121" for alphabets up to 9 symbols, or a
/// dash-separated list ("10-2-3") for any alphabet.
Word parse_word(std::string_view text, int alphabet);
std::string format_word(const Word& w, int alphabet);
std::string format_word(const Symbol* symbols, std::size_t n, int alphabet);

/// One-sided subshift of finite type over m symbols.
class SubshiftSpec {
public:
    /// Row-major m x m 0/1 adjacency. Throws ErrorKind::input on
    /// dead symbols, non-binary entries or m outside [2, kMaxAlphabet].
    SubshiftSpec(int m, std::vector<std::uint8_t> adjacency);

    static SubshiftSpec full_shift(int m);

    int alphabet() const noexcept { return m_; }
    bool allowed(Symbol from, Symbol to) const noexcept { return adj_[from * m_ + to] != 0; }
    const std::vector<std::uint8_t>& adjacency() const noexcept { return adj_; }
    bool is_full_shift() const noexcept;

    /// Symbols that may follow `from`, increasing.
    const std::vector<Symbol>& successors(Symbol from) const { return succ_[from]; }

    friend bool operator==(const SubshiftSpec& a, const SubshiftSpec& b) {
        return a.m_ == b.m_ && a.adj_ == b.adj_;
    }

private:
    int m_;
    std::vector<std::uint8_t> adj_;
    std::vector<std::vector<Symbol>> succ_;
};

struct Primitivity {
    bool primitive = false;
    std::optional<int> exponent;  // least p with A^p > 0
};

/// Searches p up to the Wielandt bound (m-1)^2 + 1.
Primitivity is_primitive(const SubshiftSpec& spec);

/// Throws ErrorKind::input for out-of-range symbols.
bool is_admissible(const SubshiftSpec& spec, const Word& word);

/// |Sigma_{A,n}| = 1^t A^{n-1} 1, saturating at UINT64_MAX.
std::uint64_t count_words(const SubshiftSpec& spec, std::size_t n);

/// Restartable lexicographic stream over admissible words of length n,
/// optionally restricted to words starting with a given symbol.
class WordStream {
public:
    WordStream(const SubshiftSpec& spec, std::size_t n, std::optional<Symbol> first = std::nullopt);

    /// Writes the next word into `out`; returns false when exhausted.
    bool next(Word& out);
    void reset();

private:
    bool advance_from(std::size_t pos);

    const SubshiftSpec* spec_;
    std::size_t n_;
    std::optional<Symbol> first_;
    std::vector<std::size_t> choice_;  // index into successor lists
    Word current_;
    bool started_ = false;
    bool done_ = false;
};

std::vector<Word> enumerate_words(const SubshiftSpec& spec, std::size_t n);

/// All K with 1 <= |K| <= r such that iKj is admissible, by length then lexicographically.
std::vector<Word> bridges(const SubshiftSpec& spec, Symbol i, Symbol j, int r);

}  // namespace pressurelab
