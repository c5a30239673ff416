#include "pressurelab/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "pressurelab/error.hpp"

namespace pressurelab {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

int compare_words(const Symbol* a, const Symbol* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

double quantile(const std::vector<double>& sorted, double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

double GibbsTable::total() const { return pairwise_sum(weights.data(), weights.size()); }

std::size_t GibbsTable::find(const Symbol* w) const {
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        const int c = compare_words(word(mid), w, n);
        if (c == 0) return mid;
        if (c < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    return npos;
}

RatioDiagnostics summarize(std::vector<double> ratios, std::string context, std::size_t excluded) {
    RatioDiagnostics d;
    d.context = std::move(context);
    d.count = ratios.size();
    d.excluded = excluded;
    if (ratios.empty()) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        d.min_ratio = d.q25 = d.median = d.q75 = d.max_ratio = nan;
        return d;
    }
    std::sort(ratios.begin(), ratios.end());
    d.min_ratio = ratios.front();
    d.max_ratio = ratios.back();
    d.q25 = quantile(ratios, 0.25);
    d.median = quantile(ratios, 0.5);
    d.q75 = quantile(ratios, 0.75);
    return d;
}

GibbsTable level_weights(const MatrixFamily& family, std::size_t n, double q, double p_hat, const Exec& exec) {
    const WordTable table = build_table(family, n, exec, true);
    std::vector<double> terms;
    terms.reserve(table.count);
    for (std::size_t i = 0; i < table.count; ++i)
        if (!table.zero[i]) terms.push_back(table.log_term(i, q));
    if (terms.empty()) fail(ErrorKind::degenerate, "every product of length " + std::to_string(n) + " vanishes");
    const double log_total = log_sum_exp(terms);

    GibbsTable g;
    g.n = n;
    g.q = q;
    g.source_level = n;
    g.p_hat = p_hat;
    g.alphabet = family.alphabet();
    const bool drop_zero = q < 0.0;
    g.weights.reserve(table.count);
    g.symbols.reserve(table.count * n);
    for (std::size_t i = 0; i < table.count; ++i) {
        if (table.zero[i] && drop_zero) continue;
        g.weights.push_back(table.zero[i] ? 0.0 : std::exp(table.log_term(i, q) - log_total));
        g.symbols.insert(g.symbols.end(), table.word(i), table.word(i) + n);
    }
    const double s = g.total();
    for (auto& w : g.weights) w /= s;
    return g;
}

GibbsTable marginalize(const GibbsTable& table, std::size_t n) {
    if (n == 0 || n > table.n) fail(ErrorKind::input, "marginal level must be in [1, table level]");
    GibbsTable cur = table;
    while (cur.n > n) {
        const std::size_t len = cur.n - 1;
        GibbsTable next;
        next.n = len;
        next.q = cur.q;
        next.source_level = cur.source_level;
        next.p_hat = cur.p_hat;
        next.alphabet = cur.alphabet;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            const Symbol* w = cur.word(i);
            if (!next.weights.empty() && compare_words(next.word(next.size() - 1), w, len) == 0) {
                next.weights.back() += cur.weights[i];
            } else {
                next.symbols.insert(next.symbols.end(), w, w + len);
                next.weights.push_back(cur.weights[i]);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

GibbsTable marginal_weights(const MatrixFamily& family, std::size_t n, std::size_t N, double q, const Exec& exec) {
    if (N <= n) fail(ErrorKind::input, "source level N must exceed n");
    auto table = marginalize(level_weights(family, N, q, 0.0, exec), n);
    table.source_level = N;
    return table;
}

RatioDiagnostics gibbs_ratio_diagnostics(const MatrixFamily& family, std::size_t n, std::size_t N, double q,
                                         double p_hat, const Exec& exec) {
    if (N < n + 4) fail(ErrorKind::input, "Gibbs diagnostics need N >= n + 4");
    const GibbsTable marginal = marginal_weights(family, n, N, q, exec);
    const WordTable level = build_table(family, n, exec, true);
    std::vector<double> ratios;
    std::size_t excluded = 0;
    const double shift = static_cast<double>(n) * p_hat;
    for (std::size_t i = 0; i < level.count; ++i) {
        const std::size_t k = marginal.find(level.word(i));
        if (level.zero[i] || k == GibbsTable::npos || !(marginal.weights[k] > 0.0)) {
            ++excluded;
            continue;
        }
        ratios.push_back(std::exp(std::log(marginal.weights[k]) + shift - level.log_term(i, q)));
    }
    return summarize(std::move(ratios), "gibbs n=" + std::to_string(n) + " N=" + std::to_string(N), excluded);
}

QuasiBernoulli quasi_bernoulli_diagnostics(const MatrixFamily& family, std::size_t n, std::size_t l, std::size_t N,
                                           double q, const Exec& exec) {
    if (n == 0 || l == 0) fail(ErrorKind::input, "word lengths must be at least 1");
    if (N < n + l + 2) fail(ErrorKind::input, "quasi-Bernoulli diagnostics need N >= n + l + 2");
    const GibbsTable joint = marginal_weights(family, n + l, N, q, exec);
    const GibbsTable head = marginalize(joint, n);
    const GibbsTable tail = marginalize(joint, l);
    std::vector<double> ratios, inverse;
    std::size_t excluded = 0;
    for (std::size_t i = 0; i < joint.size(); ++i) {
        const Symbol* w = joint.word(i);
        const std::size_t a = head.find(w);
        const std::size_t b = tail.find(w + n);
        const double wij = joint.weights[i];
        const double wi = a == GibbsTable::npos ? 0.0 : head.weights[a];
        const double wj = b == GibbsTable::npos ? 0.0 : tail.weights[b];
        if (!(wij > 0.0) || !(wi > 0.0) || !(wj > 0.0)) {
            ++excluded;
            continue;
        }
        const double r = wij / (wi * wj);
        ratios.push_back(r);
        inverse.push_back(1.0 / r);
    }
    const std::string tag = " n=" + std::to_string(n) + " l=" + std::to_string(l) + " N=" + std::to_string(N);
    return {summarize(std::move(ratios), "qb_upper" + tag, excluded),
            summarize(std::move(inverse), "qb_lower" + tag, excluded)};
}

double shift_invariance_defect(const MatrixFamily& family, std::size_t n, std::size_t N, double q,
                               const Exec& exec) {
    if (N < n + 2) fail(ErrorKind::input, "shift-invariance defect needs N >= n + 2");
    const GibbsTable next = marginal_weights(family, n + 1, N, q, exec);
    const GibbsTable cur = marginalize(next, n);
    std::vector<Symbol> buf(n + 1);
    double defect = 0.0;
    for (std::size_t i = 0; i < cur.size(); ++i) {
        std::copy(cur.word(i), cur.word(i) + n, buf.begin() + 1);
        double pre = 0.0;
        for (int j = 0; j < family.alphabet(); ++j) {
            buf[0] = static_cast<Symbol>(j);
            const std::size_t k = next.find(buf.data());
            if (k != GibbsTable::npos) pre += next.weights[k];
        }
        defect = std::max(defect, std::abs(pre - cur.weights[i]));
    }
    return defect;
}

std::vector<Word> sample_words(const GibbsTable& table, std::size_t count, std::uint64_t seed) {
    if (count == 0) fail(ErrorKind::input, "sample count must be at least 1");
    if (table.size() == 0) fail(ErrorKind::degenerate, "empty table");
    std::vector<double> cumulative(table.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < table.size(); ++i) cumulative[i] = acc += table.weights[i];
    std::mt19937_64 gen(seed);
    std::vector<Word> out;
    out.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53 * acc;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        if (it == cumulative.end()) --it;
        const std::size_t i = static_cast<std::size_t>(it - cumulative.begin());
        out.push_back(Word{std::vector<Symbol>(table.word(i), table.word(i) + table.n)});
    }
    return out;
}

std::vector<Word> sample_words(const MatrixFamily& family, std::size_t n, double q, std::size_t count,
                               std::uint64_t seed, const Exec& exec) {
    if (count == 0) fail(ErrorKind::input, "sample count must be at least 1");
    return sample_words(level_weights(family, n, q, 0.0, exec), count, seed);
}

LyapunovStats empirical_lyapunov(const MatrixFamily& family, const std::vector<Word>& words) {
    if (words.empty()) fail(ErrorKind::input, "no words supplied");
    const std::size_t n = words.front().size();
    LyapunovStats st;
    std::vector<double> values;
    values.reserve(words.size());
    for (const auto& w : words) {
        if (w.size() != n) fail(ErrorKind::input, "words must have equal lengths");
        const auto p = word_product(family, w);
        if (p.zero) {
            ++st.excluded;
            continue;
        }
        values.push_back(p.log_norm() / static_cast<double>(n));
    }
    st.count = values.size();
    if (values.empty()) fail(ErrorKind::degenerate, "every sampled product vanishes");
    st.mean = pairwise_sum(values.data(), values.size()) / static_cast<double>(values.size());
    if (values.size() > 1) {
        std::vector<double> sq(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) sq[i] = (values[i] - st.mean) * (values[i] - st.mean);
        st.stddev = std::sqrt(pairwise_sum(sq.data(), sq.size()) / static_cast<double>(values.size() - 1));
    }
    return st;
}

double exact_lyapunov_mean(const MatrixFamily& family, std::size_t n, double q, const Exec& exec) {
    const WordTable table = build_table(family, n, exec);
    std::vector<double> terms;
    for (std::size_t i = 0; i < table.count; ++i)
        if (!table.zero[i]) terms.push_back(table.log_term(i, q));
    if (terms.empty()) fail(ErrorKind::degenerate, "every product vanishes");
    const double log_total = log_sum_exp(terms);
    std::vector<double> contrib;
    contrib.reserve(terms.size());
    for (std::size_t i = 0; i < table.count; ++i)
        if (!table.zero[i])
            contrib.push_back(std::exp(table.log_term(i, q) - log_total) * table.log_sup[i] / static_cast<double>(n));
    return pairwise_sum(contrib.data(), contrib.size());
}

std::string gibbs_csv(const GibbsTable& table) {
    std::string out = "word,weight\n";
    for (std::size_t i = 0; i < table.size(); ++i)
        out += format_word(table.word(i), table.n, table.alphabet) + ',' + fmt(table.weights[i]) + '\n';
    out += "total," + fmt(table.total()) + '\n';
    return out;
}

std::string diagnostics_csv(const std::vector<RatioDiagnostics>& rows) {
    std::string out = "context,min,q25,median,q75,max,count\n";
    for (const auto& d : rows)
        out += d.context + ',' + fmt(d.min_ratio) + ',' + fmt(d.q25) + ',' + fmt(d.median) + ',' + fmt(d.q75) + ',' +
               fmt(d.max_ratio) + ',' + std::to_string(d.count) + '\n';
    return out;
}

}  // namespace pressurelab
