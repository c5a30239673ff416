#include "pressurelab/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "pressurelab/error.hpp"

namespace pressurelab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();

struct Partial {
    std::vector<Symbol> symbols;
    std::vector<double> log_sup;
    std::vector<double> log_inf;
    std::vector<std::uint8_t> zero;
};

// Products carried as (log scale, unit-norm matrix), one per prefix position.
struct Frame {
    double log_scale = 0.0;
    Matrix normalized;
    bool zero = false;
};

class Walker {
public:
    Walker(const MatrixFamily& family, std::size_t n, bool keep_words, Partial& out)
        : family_(family),
          n_(n),
          k_(static_cast<std::size_t>(family.depth())),
          total_(n + family.depth() - 1),
          keep_(keep_words),
          out_(out),
          buf_(total_),
          frames_(n) {}

    void run(const std::vector<Symbol>& prefix) {
        prefix_ = &prefix;
        buf_[0] = prefix[0];
        visit(0);
    }

private:
    void visit(std::size_t pos) {
        if (pos + 1 >= k_) {
            const std::size_t t = pos + 1 - k_;
            if (t < n_) push_factor(t);
        }
        if (pos + 1 == n_) {
            group_max_ = kNegInf;
            group_min_ = kPosInf;
        }
        if (pos + 1 == total_) {
            const Frame& f = frames_[n_ - 1];
            if (!f.zero) {
                const double ln = f.log_scale + std::log(f.normalized.sum());
                group_max_ = std::max(group_max_, ln);
                group_min_ = std::min(group_min_, ln);
            }
        } else if (pos + 1 < prefix_->size()) {
            buf_[pos + 1] = (*prefix_)[pos + 1];
            visit(pos + 1);
        } else {
            for (auto s : family_.spec().successors(buf_[pos])) {
                buf_[pos + 1] = s;
                visit(pos + 1);
            }
        }
        if (pos + 1 == n_) emit();
    }

    void push_factor(std::size_t t) {
        const Matrix& factor = family_.at(&buf_[t]);
        Frame& f = frames_[t];
        if (t == 0) {
            const double s = factor.sum();
            f.normalized = factor / s;
            f.log_scale = std::log(s);
            f.zero = false;
            return;
        }
        const Frame& prev = frames_[t - 1];
        if (prev.zero) {
            f.zero = true;
            return;
        }
        f.normalized.noalias() = prev.normalized * factor;
        const double s = f.normalized.sum();
        if (!(s > 0.0)) {
            f.zero = true;
            return;
        }
        f.zero = false;
        f.normalized /= s;
        f.log_scale = prev.log_scale + std::log(s);
    }

    void emit() {
        const bool zero = group_max_ == kNegInf;
        if (keep_) out_.symbols.insert(out_.symbols.end(), buf_.begin(), buf_.begin() + n_);
        out_.log_sup.push_back(group_max_);
        if (k_ > 1) out_.log_inf.push_back(zero ? kNegInf : group_min_);
        out_.zero.push_back(zero ? 1 : 0);
    }

    const MatrixFamily& family_;
    std::size_t n_, k_, total_;
    bool keep_;
    Partial& out_;
    std::vector<Symbol> buf_;
    std::vector<Frame> frames_;
    const std::vector<Symbol>* prefix_ = nullptr;
    double group_max_ = kNegInf, group_min_ = kPosInf;
};

}  // namespace

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t, std::size_t)>& body) {
    if (count == 0) return;
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (threads == 1) {
        body(0, count);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) body(i, i + 1);
        });
    for (auto& t : pool) t.join();
}

double pairwise_sum(const double* values, std::size_t count) {
    if (count <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < count; ++i) s += values[i];
        return s;
    }
    const std::size_t half = count / 2;
    return pairwise_sum(values, half) + pairwise_sum(values + half, count - half);
}

double log_sum_exp(const std::vector<double>& x) {
    double mx = kNegInf;
    for (double v : x) mx = std::max(mx, v);
    if (mx == kNegInf) return kNegInf;
    std::vector<double> shifted(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) shifted[i] = std::exp(x[i] - mx);
    return mx + std::log(pairwise_sum(shifted.data(), shifted.size()));
}

WordTable build_table(const MatrixFamily& family, std::size_t n, const Exec& exec, bool keep_words) {
    if (n == 0) fail(ErrorKind::input, "word length must be at least 1");
    const auto& spec = family.spec();
    const std::uint64_t count = count_words(spec, n);
    if (count > exec.word_budget)
        fail(ErrorKind::size, "level " + std::to_string(n) + " has " + std::to_string(count) +
                                  " admissible words, above the enumeration budget of " +
                                  std::to_string(exec.word_budget));

    // prefixes: the shortest length giving enough independent work items
    std::size_t p = 1;
    const std::uint64_t want = 8ull * std::max(1u, exec.threads);
    while (p < n && count_words(spec, p) < want) ++p;
    std::vector<std::vector<Symbol>> prefixes;
    {
        WordStream stream(spec, p);
        Word w;
        while (stream.next(w)) prefixes.push_back(w.symbols);
    }

    std::vector<Partial> parts(prefixes.size());
    parallel_for(prefixes.size(), exec.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            Walker walker(family, n, keep_words, parts[i]);
            walker.run(prefixes[i]);
        }
    });

    WordTable table;
    table.length = n;
    table.alphabet = spec.alphabet();
    table.count = static_cast<std::size_t>(count);
    table.log_sup.reserve(table.count);
    table.zero.reserve(table.count);
    if (family.depth() > 1) table.log_inf.reserve(table.count);
    if (keep_words) table.symbols.reserve(table.count * n);
    for (auto& part : parts) {
        table.log_sup.insert(table.log_sup.end(), part.log_sup.begin(), part.log_sup.end());
        table.log_inf.insert(table.log_inf.end(), part.log_inf.begin(), part.log_inf.end());
        table.zero.insert(table.zero.end(), part.zero.begin(), part.zero.end());
        table.symbols.insert(table.symbols.end(), part.symbols.begin(), part.symbols.end());
        part = Partial{};
    }
    if (table.log_sup.size() != table.count) fail(ErrorKind::internal, "enumeration count mismatch");
    for (auto z : table.zero) table.zero_count += z;
    return table;
}

}  // namespace pressurelab
