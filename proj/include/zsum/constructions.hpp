#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "zsum/group.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

/// A settled (or, when requested, conjectural) value of the constant for a
/// recognized group shape.
struct KnownValue {
    int value;
    std::string provenance;
    bool conjectural = false;
};

/// Table of known values: cyclic groups, elementary 2-groups, C2 x C2n,
/// Cp x Cp in the settled range, C4 x C4, C3 x C3n for prime n and n in
/// {3, 4}, and C6 x C6. The Gao--Thangadurai conjecture for Cn x Cn is
/// returned only when include_conjectures is set.
std::optional<KnownValue> known_value(const GroupSpec& g, bool include_conjectures = false);

/// Exact Davenport constant by depth-first search for a longest zero-sum
/// free sequence (multiplicities allowed); returns that length + 1.
int davenport(const GroupSpec& g, std::uint64_t order_cap = 32);

/// Verification record for a lower-bound construction. Every verdict is
/// recomputed with the sequence DP, never assumed.
struct ConstructionReport {
    GroupSpec group;
    Sequence sequence;
    std::uint64_t claimed_length = 0;
    bool squarefree = false;
    bool zero_sum_free_at_exp = false;  // no zero-sum subsequence of length exp(G)
    GroupElement sigma_value;
    bool accepted = false;
    std::vector<std::string> failures;
};

std::string format_report(const ConstructionReport& report);

/// Witness of length g(C_n) - 1 over the cyclic group: the full set when n
/// is even (its sum is (n/2)e != 0), the full set minus one non-zero
/// element when n is odd (vacuous).
Sequence extremal_cyclic_witness(int n);

/// Product construction over G1 (+) G2: S1 a squarefree sequence over G1
/// with no zero-sum subsequence of length exp(G1), S2prime a zero-sum free
/// sequence over G2, exp(G2) | exp(G1). Terms of S2prime with multiplicity
/// v become v distinct terms g + h_i with h_1, h_2, ... distinct elements
/// of G1. Precondition violations yield a rejected report.
ConstructionReport composite_construction(const GroupSpec& g1, const GroupSpec& g2,
                                          const Sequence& s1, const Sequence& s2prime);

/// The squarefree sequence of length 3n+2 over C3 x C3n with no zero-sum
/// subsequence of length 3n, for odd n >= 5. For n in {2, 3} the defining
/// terms collide and for even n the verification argument needs 3n odd, so
/// those n are rejected.
ConstructionReport kiefer_construction(int n);

/// The length-12 squarefree sequence over C3 x C9 with sum 6e2 and no
/// zero-sum subsequence of length 9.
ConstructionReport c3c9_construction();

/// A sufficient condition for a squarefree sequence of length 3p+3 over
/// C3 x C3p (p >= 5 prime) to contain a zero-sum subsequence of length 3p,
/// found by scanning the fibers of the projection onto the exponent-3 part:
///   (1) distinct x,y,z with x+y+z = pi1(sigma(S)) and |Sx|+|Sy|+|Sz|-2 >= p
///   (2) distinct x,y with 2x+y = pi1(sigma(S)), |Sx|>=2, |Sy|>=1, and
///       2|Sx|+|Sy|-4 >= p
///   (3) x with 3x = pi1(sigma(S)), |Sx| >= 3, and 3|Sx|-8 >= p
struct LemmaWitness {
    int condition;  // 1, 2 or 3
    GroupElement x, y, z;  // y/z meaningful for conditions 1-2 / 1 only
};

std::optional<LemmaWitness> lemma_sufficient_condition(const Sequence& s);

}  // namespace zsum
