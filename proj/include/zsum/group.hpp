#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zsum/errors.hpp"

namespace zsum {

using ElementIndex = std::uint64_t;

/// A finite abelian group presented by its invariant factors
/// n1 | n2 | ... | nr (each >= 2). The trivial group has rank 0.
class GroupSpec {
  public:
    GroupSpec() = default;
    explicit GroupSpec(std::vector<int> factors);

    static GroupSpec cyclic(int n);  // n >= 1; n == 1 gives the trivial group

    int rank() const { return static_cast<int>(factors_.size()); }
    std::uint64_t order() const { return order_; }
    int exponent() const { return factors_.empty() ? 1 : factors_.back(); }
    const std::vector<int>& factors() const { return factors_; }

    bool operator==(const GroupSpec&) const = default;

  private:
    std::vector<int> factors_;
    std::uint64_t order_ = 1;
};

/// A group element as a tuple of residues, coords[i] in [0, factors[i]).
struct GroupElement {
    std::vector<int> coords;

    bool operator==(const GroupElement&) const = default;
    bool operator<(const GroupElement& o) const { return coords < o.coords; }
};

GroupElement zero_element(const GroupSpec& g);
GroupElement make_element(const GroupSpec& g, std::vector<int> coords);  // reduces mod factors

GroupElement add(const GroupElement& a, const GroupElement& b, const GroupSpec& g);
GroupElement neg(const GroupElement& a, const GroupSpec& g);
GroupElement sub(const GroupElement& a, const GroupElement& b, const GroupSpec& g);
GroupElement scalar_mul(long long k, const GroupElement& a, const GroupSpec& g);

/// Mixed-radix encoding with coordinate 0 varying fastest:
/// idx = sum_i coords[i] * prod_{j<i} factors[j]. Fixes the canonical
/// enumeration order used by every bitmap in the toolkit.
ElementIndex index_of(const GroupElement& a, const GroupSpec& g);
GroupElement element_of(ElementIndex idx, const GroupSpec& g);

/// All elements in ElementIndex order.
std::vector<GroupElement> enumerate_elements(const GroupSpec& g);

int element_order(const GroupElement& a, const GroupSpec& g);

std::string format_element(const GroupElement& a);  // "(1,5)"; rank 0 gives "()"

/// Group notation parser: factors separated by 'x' or ',' ("3x9", "2,2,4").
/// "1" denotes the trivial group; factors equal to 1 are dropped.
/// Rejects lists violating the divisibility chain unless normalize is set,
/// in which case the list is folded into invariant factors first.
GroupSpec parse_group(std::string_view text, bool normalize = false);
std::string format_group(const GroupSpec& g);  // "3x9"; trivial group gives "1"

/// Invariant factors of the direct sum of cyclic groups with the given
/// moduli (order-insensitive; prime-power folding).
std::vector<int> normalized_invariant_factors(const std::vector<int>& moduli);

/// G1 (+) G2 presented by invariant factors, together with the two
/// coordinate-subgroup embeddings. embed_a/embed_b are injective
/// homomorphisms with complementary images.
class DirectSum {
  public:
    DirectSum(const GroupSpec& a, const GroupSpec& b);

    const GroupSpec& group() const { return group_; }
    GroupElement embed_a(const GroupElement& x) const;
    GroupElement embed_b(const GroupElement& x) const;

  private:
    GroupSpec group_;
    std::vector<GroupElement> gen_images_a_;  // image of each unit generator
    std::vector<GroupElement> gen_images_b_;
};

/// Decomposition of G = C3 (+) C3p with gcd(3, p) = 1 into
/// H1 = elements of order dividing 3 and H2 = elements of order dividing p.
/// Both projections are scalar multiplications by CRT idempotents, so they
/// are group homomorphisms with pi1(g) + pi2(g) = g.
class CrtSplit {
  public:
    explicit CrtSplit(const GroupSpec& g);  // throws unsupported_group on shape mismatch

    const GroupSpec& group() const { return group_; }
    int p() const { return p_; }

    GroupElement pi1(const GroupElement& x) const;
    GroupElement pi2(const GroupElement& x) const;

    /// The 9 elements of H1 in ElementIndex order.
    std::vector<GroupElement> h1_elements() const;

  private:
    GroupSpec group_;
    int p_ = 0;
    long long mult1_ = 0;  // == 1 mod 3, == 0 mod p
    long long mult2_ = 0;  // == 0 mod 3, == 1 mod p
};

}  // namespace zsum
