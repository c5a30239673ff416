#include "pressurelab/sft.hpp"

#include <limits>

#include "pressurelab/error.hpp"

namespace pressurelab {

Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.symbols.insert(out.symbols.end(), b.symbols.begin(), b.symbols.end());
    return out;
}

Word parse_word(std::string_view text, int alphabet) {
    Word w;
    auto push = [&](int one_based) {
        if (one_based < 1 || one_based > alphabet)
            fail(ErrorKind::input, "symbol " + std::to_string(one_based) + " out of range 1.." +
                                       std::to_string(alphabet) + " in word '" + std::string(text) + "'");
        w.symbols.push_back(static_cast<Symbol>(one_based - 1));
    };
    if (text.find('-') != std::string_view::npos) {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            auto next = text.find('-', pos);
            auto piece = text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
            if (piece.empty()) fail(ErrorKind::input, "empty symbol in word '" + std::string(text) + "'");
            int v = 0;
            for (char c : piece) {
                if (c < '0' || c > '9') fail(ErrorKind::input, "bad character in word '" + std::string(text) + "'");
                v = v * 10 + (c - '0');
                if (v > 1000) break;
            }
            push(v);
            if (next == std::string_view::npos) break;
            pos = next + 1;
        }
    } else {
        for (char c : text) {
            if (c < '0' || c > '9') fail(ErrorKind::input, "bad character in word '" + std::string(text) + "'");
            push(c - '0');
        }
    }
    return w;
}

std::string format_word(const Symbol* symbols, std::size_t n, int alphabet) {
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
        if (alphabet > 9) {
            if (i) out.push_back('-');
            out += std::to_string(symbols[i] + 1);
        } else {
            out.push_back(static_cast<char>('1' + symbols[i]));
        }
    }
    return out;
}

std::string format_word(const Word& w, int alphabet) { return format_word(w.symbols.data(), w.size(), alphabet); }

SubshiftSpec::SubshiftSpec(int m, std::vector<std::uint8_t> adjacency) : m_(m), adj_(std::move(adjacency)) {
    if (m < 2 || m > kMaxAlphabet)
        fail(ErrorKind::input, "alphabet size must be in [2, " + std::to_string(kMaxAlphabet) + "], got " +
                                   std::to_string(m));
    if (adj_.size() != static_cast<std::size_t>(m) * m)
        fail(ErrorKind::input, "adjacency must have m*m entries");
    for (auto v : adj_)
        if (v > 1) fail(ErrorKind::input, "adjacency entries must be 0 or 1");
    succ_.resize(m);
    for (int i = 0; i < m; ++i) {
        bool row = false, col = false;
        for (int j = 0; j < m; ++j) {
            row = row || adj_[i * m + j];
            col = col || adj_[j * m + i];
            if (adj_[i * m + j]) succ_[i].push_back(static_cast<Symbol>(j));
        }
        if (!row) fail(ErrorKind::input, "adjacency row " + std::to_string(i + 1) + " is all zero");
        if (!col) fail(ErrorKind::input, "adjacency column " + std::to_string(i + 1) + " is all zero");
    }
}

SubshiftSpec SubshiftSpec::full_shift(int m) {
    return SubshiftSpec(m, std::vector<std::uint8_t>(static_cast<std::size_t>(m) * (m > 0 ? m : 0), 1));
}

bool SubshiftSpec::is_full_shift() const noexcept {
    for (auto v : adj_)
        if (!v) return false;
    return true;
}

Primitivity is_primitive(const SubshiftSpec& spec) {
    const int m = spec.alphabet();
    const auto& a = spec.adjacency();
    std::vector<std::uint8_t> power = a, next(a.size());
    const int limit = (m - 1) * (m - 1) + 1;
    for (int p = 1; p <= limit; ++p) {
        bool positive = true;
        for (auto v : power) positive = positive && v;
        if (positive) return {true, p};
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                std::uint8_t v = 0;
                for (int k = 0; k < m && !v; ++k) v = power[i * m + k] && a[k * m + j];
                next[i * m + j] = v;
            }
        power.swap(next);
    }
    return {false, std::nullopt};
}

bool is_admissible(const SubshiftSpec& spec, const Word& word) {
    for (auto s : word.symbols)
        if (s >= spec.alphabet())
            fail(ErrorKind::input, "symbol " + std::to_string(s + 1) + " out of range 1.." +
                                       std::to_string(spec.alphabet()));
    for (std::size_t t = 1; t < word.size(); ++t)
        if (!spec.allowed(word[t - 1], word[t])) return false;
    return true;
}

std::uint64_t count_words(const SubshiftSpec& spec, std::size_t n) {
    if (n == 0) fail(ErrorKind::input, "word length must be at least 1");
    const int m = spec.alphabet();
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    // v = A^{n-1} 1, saturating
    std::vector<std::uint64_t> v(m, 1), w(m);
    for (std::size_t step = 1; step < n; ++step) {
        for (int i = 0; i < m; ++i) {
            std::uint64_t acc = 0;
            for (auto j : spec.successors(static_cast<Symbol>(i)))
                acc = (kMax - acc < v[j]) ? kMax : acc + v[j];
            w[i] = acc;
        }
        v.swap(w);
    }
    std::uint64_t total = 0;
    for (auto x : v) total = (kMax - total < x) ? kMax : total + x;
    return total;
}

WordStream::WordStream(const SubshiftSpec& spec, std::size_t n, std::optional<Symbol> first)
    : spec_(&spec), n_(n), first_(first) {
    if (n == 0) fail(ErrorKind::input, "word length must be at least 1");
    if (first && *first >= spec.alphabet()) fail(ErrorKind::input, "first symbol out of range");
    reset();
}

void WordStream::reset() {
    started_ = false;
    done_ = false;
    choice_.assign(n_, 0);
    current_.symbols.assign(n_, 0);
}

// Fills positions pos..n-1 with the smallest admissible continuation given
// choice_[pos] for position pos (which must already be a valid index).
bool WordStream::advance_from(std::size_t pos) {
    for (std::size_t t = pos + 1; t < n_; ++t) {
        choice_[t] = 0;
        current_.symbols[t] = spec_->successors(current_.symbols[t - 1])[0];
    }
    return true;
}

bool WordStream::next(Word& out) {
    if (done_) return false;
    if (!started_) {
        started_ = true;
        current_.symbols[0] = first_ ? *first_ : 0;
        choice_[0] = current_.symbols[0];
        advance_from(0);
        out = current_;
        return true;
    }
    // increment the deepest position that still has an unused successor
    for (std::size_t t = n_; t-- > 0;) {
        if (t == 0) {
            if (first_ || choice_[0] + 1 >= static_cast<std::size_t>(spec_->alphabet())) break;
            ++choice_[0];
            current_.symbols[0] = static_cast<Symbol>(choice_[0]);
            advance_from(0);
            out = current_;
            return true;
        }
        const auto& succ = spec_->successors(current_.symbols[t - 1]);
        if (choice_[t] + 1 < succ.size()) {
            ++choice_[t];
            current_.symbols[t] = succ[choice_[t]];
            advance_from(t);
            out = current_;
            return true;
        }
    }
    done_ = true;
    return false;
}

std::vector<Word> enumerate_words(const SubshiftSpec& spec, std::size_t n) {
    std::vector<Word> out;
    WordStream stream(spec, n);
    Word w;
    while (stream.next(w)) out.push_back(w);
    return out;
}

std::vector<Word> bridges(const SubshiftSpec& spec, Symbol i, Symbol j, int r) {
    std::vector<Word> out;
    for (int k = 1; k <= r; ++k)
        for (auto& w : enumerate_words(spec, static_cast<std::size_t>(k)))
            if (spec.allowed(i, w.front()) && spec.allowed(w.back(), j)) out.push_back(std::move(w));
    return out;
}

}  // namespace pressurelab
