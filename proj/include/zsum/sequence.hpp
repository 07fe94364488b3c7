#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "zsum/group.hpp"

namespace zsum {

/// A sequence (multiset) over a group: a multiplicity per element index.
/// Squarefree sequences (all multiplicities <= 1) double as subsets.
class Sequence {
  public:
    Sequence() : Sequence(GroupSpec{}) {}  // empty sequence over the trivial group
    explicit Sequence(GroupSpec group);
    Sequence(GroupSpec group, const std::vector<GroupElement>& terms);

    const GroupSpec& group() const { return group_; }
    std::uint32_t multiplicity(ElementIndex i) const { return mult_[i]; }

    void push(const GroupElement& g, std::uint32_t count = 1);
    void push_index(ElementIndex i, std::uint32_t count = 1);

    std::uint64_t length() const;           // |S|
    bool is_squarefree() const;
    std::vector<GroupElement> support() const;
    std::vector<GroupElement> terms() const;  // expanded, in element-index order

    bool operator==(const Sequence&) const = default;

  private:
    GroupSpec group_;
    std::vector<std::uint32_t> mult_;  // indexed by ElementIndex
};

/// The full group as a squarefree sequence.
Sequence full_set_sequence(const GroupSpec& g);

/// sigma(S): the sum of all terms.
GroupElement sigma(const Sequence& s);

/// g + S: every term shifted by g.
Sequence translate(const GroupElement& g, const Sequence& s);

/// The set of h-term subsums. h outside [0, |S|] yields the empty set.
std::vector<GroupElement> subsums_of_length(const Sequence& s, long long h);

/// True iff 0 is an h-term subsum for h = len. Boolean table of shape
/// (len+1) x |G| scanned once over the terms, multiplicity-aware.
bool has_zero_sum_subsequence_of_length(const Sequence& s, long long len);

/// True iff S has no nonempty zero-sum subsequence.
bool is_zero_sum_free(const Sequence& s);

/// Oracle for the subsequence/complement correspondence: for squarefree S of
/// length k and 0 <= r <= k, a length-r subsequence with sum sigma(S) exists
/// iff a zero-sum subsequence of length k-r exists. Returns whether the two
/// sides agree, which must always be true.
bool complement_equivalence_check(const Sequence& s, long long r);

/// Sequence literal: semicolon-separated terms, each a coordinate tuple with
/// an optional multiplicity, e.g. "0,0;1,2;1,2" or "(0,0);(1,2)^2".
Sequence parse_sequence(const GroupSpec& g, std::string_view literal);
std::string format_sequence(const Sequence& s);  // canonical: "(0,0);(1,2)^2"

/// A squarefree sequence as a |G|-bit membership mask (group order <= 64).
struct SubsetBitmap {
    GroupSpec group;
    std::uint64_t bits = 0;

    int cardinality() const;
    bool contains(ElementIndex i) const { return (bits >> i) & 1u; }

    bool operator==(const SubsetBitmap&) const = default;
};

SubsetBitmap to_bitmap(const Sequence& s);  // requires squarefree and order <= 64
Sequence to_sequence(const SubsetBitmap& b);

}  // namespace zsum
