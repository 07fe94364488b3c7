#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "zsum/group.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

/// C(n, k) for 0 <= n <= 64 (0 outside that range or for k outside [0, n]).
/// All values fit in 64 bits.
std::uint64_t binomial(int n, int k);

/// Rank of a k-subset of [0, n) in the combinatorial number system with
/// colexicographic order: rank = sum_i C(c_i, i+1) over the ascending
/// elements c_0 < ... < c_{k-1}. Subsets of each cardinality are numbered
/// 0 .. C(n,k)-1, so the global numbering (cardinality, rank) never places
/// a subset after one of larger cardinality.
std::uint64_t colex_rank(std::span<const int> elems);
std::vector<int> colex_unrank(std::uint64_t rank, int k, int n);

std::uint64_t rank_subset(const SubsetBitmap& subset);
SubsetBitmap unrank_subset(const GroupSpec& g, int k, std::uint64_t rank);

/// The collection Z(k): one bit per k-subset rank.
class LevelSet {
  public:
    LevelSet(int n, int k);

    int n() const { return n_; }
    int k() const { return k_; }
    std::uint64_t total() const { return total_; }  // C(n, k)
    std::uint64_t byte_size() const { return words_.size() * 8; }

    bool test(std::uint64_t rank) const {
        return (words_[rank >> 6] >> (rank & 63)) & 1u;
    }
    void set(std::uint64_t rank);         // thread-safe, idempotent
    std::uint64_t popcount() const;

    const std::vector<std::uint64_t>& words() const { return words_; }

  private:
    int n_, k_;
    std::uint64_t total_;
    std::vector<std::uint64_t> words_;
};

struct LevelStats {
    int k;
    std::uint64_t good;   // |Z(k)|
    std::uint64_t total;  // C(n, k)

    bool operator==(const LevelStats&) const = default;
};

struct HarborthResult {
    int g = 0;
    std::vector<LevelStats> levels;
    std::optional<std::uint64_t> extremal_count;  // at level g-1
    std::uint64_t peak_level_bytes = 0;
};

struct EngineOptions {
    int threads = 0;  // 0 = hardware concurrency
    std::uint64_t memory_cap_bytes = 4ull << 30;
    /// Observer called after each level is fully computed (levels are
    /// dropped afterwards; at most two are ever alive).
    std::function<void(const LevelSet&)> level_hook;
};

/// Sink for streaming the k-subsets NOT in Z(k), in rank order.
struct ExtremalSink {
    std::function<void(int n, int k, std::uint64_t count)> begin;
    std::function<void(std::span<const int> elems)> emit;  // ascending indices
};

/// Level-by-level upward closure over the subset lattice: seed Z(exp(G)),
/// extend until some Z(k) holds every k-subset; that k is g(G). If the top
/// level Z(|G|) is not full the constant is |G|+1 (vacuous case).
HarborthResult harborth_bfs(const GroupSpec& g, const EngineOptions& opts = {});

/// Independent direct scan: decides every k-subset with the sequence DP
/// and returns the first k where all pass. Cross-validation oracle for
/// harborth_bfs; capped to small groups.
HarborthResult harborth_direct(const GroupSpec& g, std::uint64_t order_cap = 18);

/// Runs the closure and streams the extremal sets at the given level
/// (nullopt = level g-1). Levels below exp(G) are vacuously extremal and
/// are streamed in full. Returns the run result.
HarborthResult extremal_sets(const GroupSpec& g, std::optional<int> level,
                             const ExtremalSink& sink, const EngineOptions& opts = {});

/// Level-dump format: header "n k count", then one subset per line as
/// ascending space-separated element indices, in rank order.
void write_level_dump_header(std::ostream& out, int n, int k, std::uint64_t count);
void write_level_dump_line(std::ostream& out, std::span<const int> elems);

}  // namespace zsum
