#include "zsum/engine.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <memory>
#include <ostream>
#include <string>
#include <thread>

namespace zsum {

namespace {

constexpr int kMaxGround = 64;

struct BinomialTable {
    // c[n][k], n,k in [0, 64]; C(64,32) still fits in 64 bits
    std::array<std::array<std::uint64_t, kMaxGround + 1>, kMaxGround + 1> c{};

    BinomialTable() {
        for (int n = 0; n <= kMaxGround; ++n) {
            c[n][0] = 1;
            for (int k = 1; k <= n; ++k) {
                c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
            }
        }
    }
};

const BinomialTable& pascal() {
    static const BinomialTable table;
    return table;
}

std::uint64_t low_bits(int b) {
    return b >= 64 ? ~0ull : (1ull << b) - 1;
}

}  // namespace

std::uint64_t binomial(int n, int k) {
    if (n < 0 || n > kMaxGround || k < 0 || k > n) return 0;
    return pascal().c[n][k];
}

std::uint64_t colex_rank(std::span<const int> elems) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        r += binomial(elems[i], static_cast<int>(i) + 1);
    }
    return r;
}

std::vector<int> colex_unrank(std::uint64_t rank, int k, int n) {
    if (rank >= binomial(n, k)) {
        throw domain_error("subset rank " + std::to_string(rank) + " out of range for C(" +
                           std::to_string(n) + "," + std::to_string(k) + ")");
    }
    std::vector<int> elems(k);
    int c = n - 1;
    for (int i = k; i >= 1; --i) {
        while (binomial(c, i) > rank) --c;
        elems[i - 1] = c;
        rank -= binomial(c, i);
        --c;
    }
    return elems;
}

std::uint64_t rank_subset(const SubsetBitmap& subset) {
    std::vector<int> elems;
    std::uint64_t m = subset.bits;
    while (m) {
        elems.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return colex_rank(elems);
}

SubsetBitmap unrank_subset(const GroupSpec& g, int k, std::uint64_t rank) {
    if (g.order() > kMaxGround) {
        throw resource_error("group order exceeds the 64-element engine limit");
    }
    SubsetBitmap b{g, 0};
    for (int e : colex_unrank(rank, k, static_cast<int>(g.order()))) b.bits |= 1ull << e;
    return b;
}

LevelSet::LevelSet(int n, int k) : n_(n), k_(k), total_(binomial(n, k)) {
    words_.assign(total_ / 64 + 1, 0);
}

void LevelSet::set(std::uint64_t rank) {
    std::uint64_t& w = words_[rank >> 6];
    std::uint64_t m = 1ull << (rank & 63);
    std::atomic_ref<std::uint64_t> aw(w);
    if (!(aw.load(std::memory_order_relaxed) & m)) {
        aw.fetch_or(m, std::memory_order_relaxed);
    }
}

std::uint64_t LevelSet::popcount() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
}

namespace {

// Walks the k-subsets of [0, n) in colex (= rank) order while maintaining
// what the inner loops need in amortized O(1) per step:
//   elems   ascending members c_0 < ... < c_{k-1}
//   mask    membership bitmask
//   rank    colex rank (increments by one per step)
//   usuf    usuf[j] = sum_{i >= j} C(c_i, i+1)   (rank suffix)
//   bsuf    bsuf[j] = sum_{i >= j} C(c_i, i+2)   (suffix re-ranked for insertion)
//   sum     group-sum index of the members (only when a group is attached)
// Inserting a new element e below t members costs O(1):
//   rank' = (rank - usuf[t]) + C(e, t+1) + bsuf[t].
class SubsetCursor {
  public:
    SubsetCursor(int n, int k) : n_(n), k_(k) {}

    void attach_group(const std::vector<std::uint8_t>* add_table,
                      const std::vector<std::uint8_t>* prefix_sums) {
        add_table_ = add_table;
        prefix_sums_ = prefix_sums;
    }

    void seek(std::uint64_t rank) {
        rank_ = rank;
        auto elems = colex_unrank(rank, k_, n_);
        std::copy(elems.begin(), elems.end(), c_.begin());
        rebuild();
    }

    // Successor in colex order: bump the lowest element that can move,
    // reset everything below it to 0..i-1.
    void advance() {
        int i = 0;
        while (i + 1 < k_ && c_[i] + 1 == c_[i + 1]) ++i;
        int old = c_[i];  // positions 0..i hold the contiguous run [old-i, old]
        if (add_table_) {
            sum_ = sub_idx(sum_, range_sum(old - i, old + 1));
            sum_ = add_idx(sum_, (*prefix_sums_)[i]);
            sum_ = add_idx(sum_, old + 1);
        }
        mask_ &= ~(low_bits(old + 1) ^ low_bits(old - i));
        mask_ |= low_bits(i) | (1ull << (old + 1));
        for (int j = 0; j < i; ++j) c_[j] = j;
        c_[i] = old + 1;
        ++rank_;
        for (int j = i; j >= 0; --j) {
            usuf_[j] = usuf_[j + 1] + binomial(c_[j], j + 1);
            bsuf_[j] = bsuf_[j + 1] + binomial(c_[j], j + 2);
        }
    }

    std::uint64_t rank() const { return rank_; }
    std::uint64_t mask() const { return mask_; }
    std::span<const int> elems() const { return {c_.data(), static_cast<std::size_t>(k_)}; }
    int sum_index() const { return sum_; }

    /// Rank of the (k+1)-subset obtained by inserting non-member e.
    std::uint64_t insert_rank(int e) const {
        int t = std::popcount(mask_ & low_bits(e));
        return (rank_ - usuf_[t]) + binomial(e, t + 1) + bsuf_[t];
    }

  private:
    int add_idx(int a, int b) const { return (*add_table_)[static_cast<std::size_t>(a) * n_ + b]; }
    int sub_idx(int a, int b) const {
        int nb = (*prefix_sums_)[n_ + 1 + b];  // negation table
        return add_idx(a, nb);
    }
    // group-sum index of the ground elements [lo, hi)
    int range_sum(int lo, int hi) const {
        return sub_idx((*prefix_sums_)[hi], (*prefix_sums_)[lo]);
    }

    void rebuild() {
        mask_ = 0;
        for (int i = 0; i < k_; ++i) mask_ |= 1ull << c_[i];
        usuf_[k_] = 0;
        bsuf_[k_] = 0;
        for (int j = k_ - 1; j >= 0; --j) {
            usuf_[j] = usuf_[j + 1] + binomial(c_[j], j + 1);
            bsuf_[j] = bsuf_[j + 1] + binomial(c_[j], j + 2);
        }
        if (add_table_) {
            sum_ = 0;
            for (int i = 0; i < k_; ++i) sum_ = add_idx(sum_, c_[i]);
        }
    }

    int n_, k_;
    std::uint64_t rank_ = 0;
    std::uint64_t mask_ = 0;
    int sum_ = 0;
    std::array<int, kMaxGround + 1> c_{};
    std::array<std::uint64_t, kMaxGround + 2> usuf_{};
    std::array<std::uint64_t, kMaxGround + 2> bsuf_{};
    const std::vector<std::uint8_t>* add_table_ = nullptr;
    const std::vector<std::uint8_t>* prefix_sums_ = nullptr;
};

struct EngineContext {
    const GroupSpec& group;
    int n;
    int e;
    int threads;
    // add_table[a*n + b] = index of (element a + element b)
    std::vector<std::uint8_t> add_table;
    // prefix_sums[j] = group-sum index of elements 0..j-1 for j in [0, n],
    // followed by the negation table: prefix_sums[n+1+b] = index of -b
    std::vector<std::uint8_t> prefix_sums;

    EngineContext(const GroupSpec& g, int threads_opt) : group(g) {
        if (g.order() > kMaxGround) {
            throw resource_error("group order " + std::to_string(g.order()) +
                                 " exceeds the 64-element engine limit");
        }
        n = static_cast<int>(g.order());
        e = g.exponent();
        threads = threads_opt > 0 ? threads_opt
                                  : std::max(1u, std::thread::hardware_concurrency());
        auto elements = enumerate_elements(g);
        add_table.resize(static_cast<std::size_t>(n) * n);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                add_table[static_cast<std::size_t>(a) * n + b] =
                    static_cast<std::uint8_t>(index_of(add(elements[a], elements[b], g), g));
            }
        }
        prefix_sums.resize(static_cast<std::size_t>(n) + 1 + n);
        GroupElement acc = zero_element(g);
        prefix_sums[0] = 0;
        for (int j = 0; j < n; ++j) {
            acc = add(acc, elements[j], g);
            prefix_sums[j + 1] = static_cast<std::uint8_t>(index_of(acc, g));
        }
        for (int b = 0; b < n; ++b) {
            prefix_sums[n + 1 + b] = static_cast<std::uint8_t>(index_of(neg(elements[b], g), g));
        }
    }

    int neg_index(int b) const { return prefix_sums[n + 1 + b]; }
};

// Runs fn over a partition of [0, total) on a small pool. All writes behind
// fn are idempotent bit sets, so the resulting level is bit-identical for
// every thread count and schedule.
void parallel_ranks(std::uint64_t total, int threads,
                    const std::function<void(std::uint64_t, std::uint64_t)>& fn) {
    if (total == 0) return;
    int nthreads = std::max(1, threads);
    if (nthreads == 1) {
        fn(0, total);
        return;
    }
    std::uint64_t nchunks = std::min<std::uint64_t>(total, static_cast<std::uint64_t>(nthreads) * 16);
    std::uint64_t base = total / nchunks;
    std::uint64_t rem = total % nchunks;
    auto chunk_begin = [&](std::uint64_t i) { return i * base + std::min(i, rem); };
    std::atomic<std::uint64_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::uint64_t chunk = next.fetch_add(1, std::memory_order_relaxed);
            if (chunk >= nchunks) return;
            fn(chunk_begin(chunk), chunk_begin(chunk + 1));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

// Z(e): browse the (e-1)-subsets, complete each with the negated sum of its
// members when that element is not already present. Every zero-sum e-subset
// is produced once per omitted element; the level bitset deduplicates.
void seed_level(const EngineContext& ctx, LevelSet& level) {
    int e = ctx.e;
    if (e == 1) {
        level.set(0);  // the singleton {0}
        return;
    }
    std::uint64_t total = binomial(ctx.n, e - 1);
    parallel_ranks(total, ctx.threads, [&](std::uint64_t begin, std::uint64_t end) {
        SubsetCursor cur(ctx.n, e - 1);
        cur.attach_group(&ctx.add_table, &ctx.prefix_sums);
        cur.seek(begin);
        for (std::uint64_t r = begin; r < end; ++r) {
            int missing = ctx.neg_index(cur.sum_index());
            if (!((cur.mask() >> missing) & 1u)) level.set(cur.insert_rank(missing));
            if (r + 1 < end) cur.advance();
        }
    });
}

// Z(k) -> Z(k+1): forward extension, each member generates its n-k supersets.
void extend_level(const EngineContext& ctx, const LevelSet& src, LevelSet& dst) {
    int k = src.k();
    std::uint64_t ground = low_bits(ctx.n);
    parallel_ranks(src.total(), ctx.threads, [&](std::uint64_t begin, std::uint64_t end) {
        SubsetCursor cur(ctx.n, k);
        cur.seek(begin);
        for (std::uint64_t r = begin; r < end; ++r) {
            if (src.test(r)) {
                std::uint64_t absent = ~cur.mask() & ground;
                while (absent) {
                    int e = std::countr_zero(absent);
                    absent &= absent - 1;
                    dst.set(cur.insert_rank(e));
                }
            }
            if (r + 1 < end) cur.advance();
        }
    });
}

struct LevelBudget {
    std::uint64_t cap;
    std::uint64_t live = 0;
    std::uint64_t peak = 0;

    void charge(int k, std::uint64_t bytes) {
        if (live + bytes > cap) {
            throw resource_error("level " + std::to_string(k) + " needs " +
                                 std::to_string(bytes) + " bytes of level bitsets (" +
                                 std::to_string(live) + " already live), over the cap of " +
                                 std::to_string(cap) + " bytes");
        }
        live += bytes;
        peak = std::max(peak, live);
    }
    void release(std::uint64_t bytes) { live -= bytes; }
};

// A cap below physical memory keeps failures predictable, but a level can
// still exceed what the machine will hand out; surface that as the same
// resource error instead of std::bad_alloc.
std::unique_ptr<LevelSet> allocate_level(int n, int k, LevelBudget& budget) {
    std::uint64_t bytes = (binomial(n, k) / 64 + 1) * 8;  // mirrors LevelSet layout
    budget.charge(k, bytes);
    try {
        return std::make_unique<LevelSet>(n, k);
    } catch (const std::bad_alloc&) {
        budget.release(bytes);
        throw resource_error("level " + std::to_string(k) + " needs " + std::to_string(bytes) +
                             " bytes of level bitsets, which the system could not allocate");
    }
}

void stream_complement(const EngineContext& ctx, const LevelSet& level,
                       const ExtremalSink& sink) {
    std::uint64_t count = level.total() - level.popcount();
    if (sink.begin) sink.begin(ctx.n, level.k(), count);
    if (!sink.emit || count == 0) return;
    SubsetCursor cur(ctx.n, level.k());
    cur.seek(0);
    for (std::uint64_t r = 0; r < level.total(); ++r) {
        if (!level.test(r)) sink.emit(cur.elems());
        if (r + 1 < level.total()) cur.advance();
    }
}

void stream_all_subsets(const EngineContext& ctx, int k, const ExtremalSink& sink) {
    std::uint64_t total = binomial(ctx.n, k);
    if (sink.begin) sink.begin(ctx.n, k, total);
    if (!sink.emit) return;
    SubsetCursor cur(ctx.n, k);
    cur.seek(0);
    for (std::uint64_t r = 0; r < total; ++r) {
        sink.emit(cur.elems());
        if (r + 1 < total) cur.advance();
    }
}

constexpr int kLevelBeforeG = -1;  // extremal level resolved as g-1 at termination

HarborthResult run_bfs(const GroupSpec& g, const EngineOptions& opts,
                       std::optional<int> extremal_level, const ExtremalSink* sink) {
    EngineContext ctx(g, opts.threads);
    LevelBudget budget{opts.memory_cap_bytes};
    HarborthResult result;

    auto note_level = [&](const LevelSet& level, std::uint64_t good) {
        result.levels.push_back({level.k(), good, level.total()});
        if (opts.level_hook) opts.level_hook(level);
    };
    auto stream_if_requested = [&](const LevelSet& level, bool is_before_g) {
        if (!sink || !extremal_level) return;
        if (*extremal_level == level.k() ||
            (*extremal_level == kLevelBeforeG && is_before_g)) {
            stream_complement(ctx, level, *sink);
        }
    };

    auto cur = allocate_level(ctx.n, ctx.e, budget);
    seed_level(ctx, *cur);
    std::uint64_t good = cur->popcount();
    note_level(*cur, good);

    if (good == cur->total()) {
        // the seed level is already full: g = exp(G), and every subset one
        // below the exponent is vacuously extremal
        result.g = ctx.e;
        result.extremal_count = binomial(ctx.n, ctx.e - 1);
        if (sink && extremal_level && *extremal_level == kLevelBeforeG) {
            stream_all_subsets(ctx, ctx.e - 1, *sink);
        }
        result.peak_level_bytes = budget.peak;
        return result;
    }

    for (;;) {
        if (cur->k() == ctx.n) {
            // the full set itself is not good: the vacuous case g = |G|+1
            stream_if_requested(*cur, true);
            result.g = ctx.n + 1;
            result.extremal_count = cur->total() - good;
            break;
        }
        auto next = allocate_level(ctx.n, cur->k() + 1, budget);
        extend_level(ctx, *cur, *next);
        std::uint64_t next_good = next->popcount();
        note_level(*next, next_good);
        if (next_good == next->total()) {
            // g found; cur is the extremal level g-1 and is still alive
            stream_if_requested(*cur, true);
            result.g = next->k();
            result.extremal_count = cur->total() - good;
            break;
        }
        stream_if_requested(*cur, false);
        budget.release(cur->byte_size());
        cur = std::move(next);
        good = next_good;
    }
    result.peak_level_bytes = budget.peak;
    return result;
}

}  // namespace

HarborthResult harborth_bfs(const GroupSpec& g, const EngineOptions& opts) {
    return run_bfs(g, opts, std::nullopt, nullptr);
}

HarborthResult extremal_sets(const GroupSpec& g, std::optional<int> level,
                             const ExtremalSink& sink, const EngineOptions& opts) {
    EngineContext ctx(g, 1);  // validates the group size up front
    if (!level) {
        return run_bfs(g, opts, kLevelBeforeG, &sink);
    }
    if (*level < 0 || *level > ctx.n) {
        throw domain_error("extremal level " + std::to_string(*level) + " out of range [0, " +
                           std::to_string(ctx.n) + "]");
    }
    if (*level < ctx.e) {
        // below the exponent nothing contains a zero-sum exp-subset
        HarborthResult result = run_bfs(g, opts, std::nullopt, nullptr);
        stream_all_subsets(ctx, *level, sink);
        return result;
    }
    HarborthResult result = run_bfs(g, opts, *level, &sink);
    if (result.g <= *level) {
        // the closure is full at (or before) the requested level
        if (sink.begin) sink.begin(ctx.n, *level, 0);
    }
    return result;
}

HarborthResult harborth_direct(const GroupSpec& g, std::uint64_t order_cap) {
    if (g.order() > order_cap) {
        throw resource_error("group order " + std::to_string(g.order()) +
                             " exceeds the direct-scan cap of " + std::to_string(order_cap));
    }
    EngineContext ctx(g, 1);
    HarborthResult result;
    int n = ctx.n;
    int e = ctx.e;
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(e) + 1);
    for (int k = e; k <= n; ++k) {
        std::uint64_t total = binomial(n, k);
        std::uint64_t good = 0;
        SubsetCursor cur(n, k);
        cur.seek(0);
        for (std::uint64_t r = 0; r < total; ++r) {
            // membership test by the sequence DP over the subset's members
            std::fill(rows.begin(), rows.end(), 0);
            rows[0] = 1;
            bool hit = false;
            int processed = 0;
            for (int m : cur.elems()) {
                const std::uint8_t* add_row =
                    ctx.add_table.data() + static_cast<std::size_t>(m) * n;
                for (int c = std::min(processed, e - 1); c >= 0; --c) {
                    std::uint64_t w = rows[c];
                    std::uint64_t& out = rows[c + 1];
                    while (w) {
                        int b = std::countr_zero(w);
                        w &= w - 1;
                        out |= 1ull << add_row[b];
                    }
                }
                ++processed;
                if (rows[e] & 1u) {
                    hit = true;
                    break;
                }
            }
            good += hit ? 1 : 0;
            if (r + 1 < total) cur.advance();
        }
        result.levels.push_back({k, good, total});
        if (good == total) {
            result.g = k;
            if (k > e) {
                const LevelStats& prev = result.levels[result.levels.size() - 2];
                result.extremal_count = prev.total - prev.good;
            } else {
                result.extremal_count = binomial(n, e - 1);
            }
            return result;
        }
    }
    result.g = n + 1;
    if (!result.levels.empty()) {
        result.extremal_count = result.levels.back().total - result.levels.back().good;
    }
    return result;
}

void write_level_dump_header(std::ostream& out, int n, int k, std::uint64_t count) {
    out << n << ' ' << k << ' ' << count << '\n';
}

void write_level_dump_line(std::ostream& out, std::span<const int> elems) {
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (i) out << ' ';
        out << elems[i];
    }
    out << '\n';
}

}  // namespace zsum
