#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "zsum/errors.hpp"

namespace zsum {

bool is_prime(int n);  // deterministic trial division

/// A subset of the integers mod p, p prime, as a bitmask. Primality is
/// enforced at construction so the addition-theorem oracles cannot be
/// called outside their hypotheses.
class PrimeCyclicSet {
  public:
    explicit PrimeCyclicSet(int p);
    PrimeCyclicSet(int p, std::uint64_t bits);
    PrimeCyclicSet(int p, std::initializer_list<int> elems);

    int modulus() const { return p_; }
    std::uint64_t mask() const { return bits_; }
    int size() const;
    bool empty() const { return bits_ == 0; }
    bool contains(int x) const { return (bits_ >> x) & 1u; }
    void insert(int x);

    std::vector<int> elements() const;

    bool operator==(const PrimeCyclicSet&) const = default;

  private:
    int p_;
    std::uint64_t bits_;
};

PrimeCyclicSet full_set(int p);

/// A + B = {a + b : a in A, b in B}.
PrimeCyclicSet sumset(const PrimeCyclicSet& a, const PrimeCyclicSet& b);

/// A +^ B = {a + b : a in A, b in B, a != b}. Note A +^ A = Sigma_2(A).
PrimeCyclicSet restricted_sumset(const PrimeCyclicSet& a, const PrimeCyclicSet& b);

/// Sigma_h(A) over distinct elements of the set A.
PrimeCyclicSet h_fold_subsums(const PrimeCyclicSet& a, int h);

/// |A+B| >= min{p, |A|+|B|-1} for non-empty A, B. Always true; exists as a
/// test oracle. Empty input is a precondition error.
bool cauchy_davenport_holds(const PrimeCyclicSet& a, const PrimeCyclicSet& b);

/// |Sigma_h(A)| >= min{p, h(|A|-h)+1} for 1 <= h <= |A|. Always true.
bool dsh_holds(const PrimeCyclicSet& a, int h);

/// |A_1 + ... + A_h| >= min{p, sum|A_i| - (h-1)}. Always true.
bool iterated_sumset_bound_holds(std::span<const PrimeCyclicSet> sets);

/// One representation of a set as an arithmetic progression
/// {first + i*difference : i in [0, length-1]}.
struct ApWitness {
    int first;
    int difference;
    int length;

    bool operator==(const ApWitness&) const = default;
};

/// All AP representations of A; empty if A is not an arithmetic progression.
/// Requires 2 <= |A| <= p-2. When non-empty the witnessed differences are
/// exactly {d, -d} for a single d.
std::vector<ApWitness> ap_detect(const PrimeCyclicSet& a);

/// Inverse oracle for critical pairs (|A+B| = |A|+|B|-1, |A|,|B| >= 2):
/// for |A+B| <= p-2 checks that A and B are APs with a common difference;
/// for |A+B| = p-1 checks that A = {c - x : x not in B} for some c.
/// |A+B| = p is outside the theorem and is a precondition error.
bool vosper_inverse_check(const PrimeCyclicSet& a, const PrimeCyclicSet& b);

}  // namespace zsum
