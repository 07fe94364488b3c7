#include "doctest.h"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <set>

#include "zsum/sequence.hpp"

using namespace zsum;

namespace {

// Independent oracle: h-term subsums by explicit enumeration over instance
// bitmasks. Only usable for short sequences; the DP is checked against it.
std::set<std::vector<int>> brute_subsums(const Sequence& s, long long h) {
    std::vector<GroupElement> inst = s.terms();
    std::set<std::vector<int>> out;
    if (h < 0 || h > static_cast<long long>(inst.size())) return out;
    REQUIRE(inst.size() <= 20);
    for (std::uint64_t m = 0; m < (1ull << inst.size()); ++m) {
        if (std::popcount(m) != h) continue;
        GroupElement acc = zero_element(s.group());
        for (std::size_t i = 0; i < inst.size(); ++i) {
            if ((m >> i) & 1u) acc = add(acc, inst[i], s.group());
        }
        out.insert(acc.coords);
    }
    return out;
}

bool brute_has_zero_sum(const Sequence& s, long long len) {
    auto sums = brute_subsums(s, len);
    return sums.count(zero_element(s.group()).coords) > 0;
}

std::set<std::vector<int>> as_set(const std::vector<GroupElement>& v) {
    std::set<std::vector<int>> out;
    for (const auto& e : v) out.insert(e.coords);
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("seqset");

TEST_CASE("sigma basics") {
    GroupSpec g({3, 9});
    CHECK(sigma(Sequence(g)) == zero_element(g));

    Sequence r(g);
    for (int j : {0, 3, 6}) r.push(make_element(g, {0, j}));
    CHECK(sigma(r) == zero_element(g));  // 0 + 3 + 6 = 9 = 0 in C9

    // sum of the full cyclic group: 0 for odd order, (m/2)e for even order
    for (int m = 1; m <= 12; ++m) {
        GroupSpec c = GroupSpec::cyclic(m);
        GroupElement expect = m % 2 == 1 ? zero_element(c) : make_element(c, {m / 2});
        CHECK(sigma(full_set_sequence(c)) == expect);
    }
}

TEST_CASE("translate") {
    GroupSpec g({2, 4});
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Sequence s(g);
        for (ElementIndex i = 0; i < g.order(); ++i) s.push_index(i, rng() % 3);
        GroupElement t = element_of(rng() % g.order(), g);
        Sequence shifted = translate(t, s);
        CHECK(shifted.length() == s.length());
        CHECK(translate(neg(t, g), shifted) == s);
        // sigma(g + S) = sigma(S) + |S| g
        CHECK(sigma(shifted) ==
              add(sigma(s), scalar_mul(static_cast<long long>(s.length()), t, g), g));
        CHECK(translate(zero_element(g), s) == s);
    }

    Sequence sf(g);
    for (int i : {0, 3, 5}) sf.push_index(i);
    for (const auto& t : enumerate_elements(g)) {
        CHECK(translate(t, sf).is_squarefree());
    }
}

TEST_CASE("subsums examples") {
    GroupSpec c7 = GroupSpec::cyclic(7);
    Sequence s(c7);
    for (int x : {0, 1, 2}) s.push(make_element(c7, {x}));
    auto sums2 = as_set(subsums_of_length(s, 2));
    CHECK(sums2 == std::set<std::vector<int>>{{1}, {2}, {3}});

    CHECK(as_set(subsums_of_length(s, 3)) == std::set<std::vector<int>>{sigma(s).coords});
    CHECK(as_set(subsums_of_length(s, 0)) == std::set<std::vector<int>>{{0}});
    CHECK(subsums_of_length(s, 4).empty());  // h > |S|: degenerate contract
    CHECK(subsums_of_length(s, -1).empty());
}

TEST_CASE("zero-sum subsequence examples") {
    GroupSpec c5 = GroupSpec::cyclic(5);
    Sequence zero_only(c5);
    zero_only.push(zero_element(c5));
    CHECK(has_zero_sum_subsequence_of_length(zero_only, 1));
    CHECK(has_zero_sum_subsequence_of_length(full_set_sequence(c5), 5));
    CHECK_FALSE(has_zero_sum_subsequence_of_length(full_set_sequence(c5), 6));
    CHECK(has_zero_sum_subsequence_of_length(Sequence(c5), 0));
    CHECK_THROWS_AS(has_zero_sum_subsequence_of_length(Sequence(c5), -1), domain_error);
}

TEST_CASE("DP agrees with brute force") {
    std::mt19937_64 rng(12345);
    std::vector<GroupSpec> groups = {GroupSpec::cyclic(4), GroupSpec::cyclic(5),
                                     GroupSpec({2, 2}),    GroupSpec::cyclic(12),
                                     GroupSpec({2, 8}),    GroupSpec({4, 4}),
                                     GroupSpec({2, 2, 4})};

    // exhaustive: every squarefree sequence over C4 and C2 x C2, every length
    for (const GroupSpec& g : {GroupSpec::cyclic(4), GroupSpec({2, 2})}) {
        for (std::uint64_t m = 0; m < (1ull << g.order()); ++m) {
            Sequence s(g);
            for (ElementIndex i = 0; i < g.order(); ++i) {
                if ((m >> i) & 1u) s.push_index(i);
            }
            for (long long len = 0; len <= static_cast<long long>(s.length()) + 1; ++len) {
                CHECK(has_zero_sum_subsequence_of_length(s, len) == brute_has_zero_sum(s, len));
            }
        }
    }

    // randomized squarefree sequences with |S| <= 14 over groups of order <= 16
    for (int trial = 0; trial < 300; ++trial) {
        const GroupSpec& g = groups[rng() % groups.size()];
        Sequence s(g);
        std::vector<ElementIndex> idx(g.order());
        std::iota(idx.begin(), idx.end(), 0);
        std::shuffle(idx.begin(), idx.end(), rng);
        std::size_t take = rng() % std::min<std::size_t>(g.order() + 1, 15);
        for (std::size_t i = 0; i < take; ++i) s.push_index(idx[i]);
        long long len = static_cast<long long>(rng() % (take + 2));
        CHECK(has_zero_sum_subsequence_of_length(s, len) == brute_has_zero_sum(s, len));
        CHECK(as_set(subsums_of_length(s, len)) == brute_subsums(s, len));
    }

    // multiplicity-aware: random multisets
    for (int trial = 0; trial < 100; ++trial) {
        const GroupSpec& g = groups[rng() % groups.size()];
        Sequence s(g);
        for (int t = 0; t < 10; ++t) s.push_index(rng() % g.order());
        long long len = static_cast<long long>(rng() % 12);
        CHECK(has_zero_sum_subsequence_of_length(s, len) == brute_has_zero_sum(s, len));
        CHECK(as_set(subsums_of_length(s, len)) == brute_subsums(s, len));
    }
}

TEST_CASE("translation invariance at the exponent") {
    std::mt19937_64 rng(99);
    for (const GroupSpec& g : {GroupSpec({2, 4}), GroupSpec({3, 3}), GroupSpec::cyclic(9)}) {
        int e = g.exponent();
        for (int trial = 0; trial < 40; ++trial) {
            Sequence s(g);
            for (ElementIndex i = 0; i < g.order(); ++i) {
                if (rng() & 1u) s.push_index(i);
            }
            bool base = has_zero_sum_subsequence_of_length(s, e);
            for (const auto& t : enumerate_elements(g)) {
                CHECK(has_zero_sum_subsequence_of_length(translate(t, s), e) == base);
            }
        }
    }
}

TEST_CASE("isomorphism invariance") {
    std::mt19937_64 rng(5);

    // unit-multiplication automorphisms of C15
    GroupSpec c15 = GroupSpec::cyclic(15);
    for (int trial = 0; trial < 60; ++trial) {
        Sequence s(c15);
        for (ElementIndex i = 0; i < 15; ++i) {
            if (rng() & 1u) s.push_index(i);
        }
        for (int unit : {2, 4, 7, 11}) {
            Sequence relabeled(c15);
            for (ElementIndex i = 0; i < 15; ++i) {
                if (s.multiplicity(i)) {
                    relabeled.push(scalar_mul(unit, element_of(i, c15), c15), s.multiplicity(i));
                }
            }
            for (long long len : {3, 5, 15}) {
                CHECK(has_zero_sum_subsequence_of_length(relabeled, len) ==
                      has_zero_sum_subsequence_of_length(s, len));
            }
        }
    }

    // transport through the verified isomorphism C3 (+) C5 = C15
    DirectSum ds(GroupSpec::cyclic(3), GroupSpec::cyclic(5));
    REQUIRE(ds.group() == c15);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::pair<GroupElement, GroupElement>> pairs;
        for (const auto& u : enumerate_elements(GroupSpec::cyclic(3))) {
            for (const auto& v : enumerate_elements(GroupSpec::cyclic(5))) {
                if (rng() & 1u) pairs.emplace_back(u, v);
            }
        }
        // image sequence and a relabeled copy through the automorphism
        // (u, v) -> (u, 2v) of the pair group
        Sequence img(c15), relab(c15);
        for (const auto& [u, v] : pairs) {
            img.push(add(ds.embed_a(u), ds.embed_b(v), c15), 1);
            GroupElement v2 = scalar_mul(2, v, GroupSpec::cyclic(5));
            relab.push(add(ds.embed_a(u), ds.embed_b(v2), c15), 1);
        }
        for (long long len : {3, 15}) {
            CHECK(has_zero_sum_subsequence_of_length(img, len) ==
                  has_zero_sum_subsequence_of_length(relab, len));
        }
    }

    // coordinate-swap automorphism of C6 x C6
    GroupSpec sq({6, 6});
    std::mt19937_64 rng2(6);
    for (int trial = 0; trial < 20; ++trial) {
        Sequence s(sq);
        for (ElementIndex i = 0; i < sq.order(); ++i) {
            if (rng2() % 3 == 0) s.push_index(i);
        }
        Sequence swapped(sq);
        for (ElementIndex i = 0; i < sq.order(); ++i) {
            if (s.multiplicity(i)) {
                GroupElement e = element_of(i, sq);
                std::swap(e.coords[0], e.coords[1]);
                swapped.push(e, s.multiplicity(i));
            }
        }
        for (long long len : {2, 6}) {
            CHECK(has_zero_sum_subsequence_of_length(swapped, len) ==
                  has_zero_sum_subsequence_of_length(s, len));
        }
    }
}

TEST_CASE("complement equivalence") {
    GroupSpec g({3, 9});

    // r = |S|: both sides hold with R = S and T empty
    Sequence s(g);
    for (int j : {0, 1, 5, 11, 17}) s.push_index(j);
    CHECK(complement_equivalence_check(s, static_cast<long long>(s.length())));

    CHECK_THROWS_AS(complement_equivalence_check(s, -1), domain_error);
    CHECK_THROWS_AS(complement_equivalence_check(s, 6), domain_error);

    std::mt19937_64 rng(2024);
    std::vector<GroupSpec> groups = {GroupSpec::cyclic(12), GroupSpec({2, 6}),
                                     GroupSpec({3, 9}),     GroupSpec::cyclic(7)};
    for (int trial = 0; trial < 500; ++trial) {
        const GroupSpec& gg = groups[rng() % groups.size()];
        Sequence r(gg);
        for (ElementIndex i = 0; i < gg.order(); ++i) {
            if (rng() & 1u) r.push_index(i);
        }
        long long rr = static_cast<long long>(rng() % (r.length() + 1));
        CHECK(complement_equivalence_check(r, rr));
    }
}

TEST_CASE("zero-sum free detector") {
    GroupSpec c3 = GroupSpec::cyclic(3);
    Sequence s(c3);
    s.push(make_element(c3, {1}), 2);
    CHECK(is_zero_sum_free(s));
    s.push(make_element(c3, {1}));
    CHECK_FALSE(is_zero_sum_free(s));
    CHECK(is_zero_sum_free(Sequence(c3)));
    Sequence z(c3);
    z.push(zero_element(c3));
    CHECK_FALSE(is_zero_sum_free(z));
}

TEST_CASE("sequence literals") {
    GroupSpec g({3, 9});
    Sequence a = parse_sequence(g, "0,0;1,2;1,2");
    Sequence b = parse_sequence(g, "(0,0);(1,2)^2");
    CHECK(a == b);
    CHECK(a.length() == 3);
    CHECK(format_sequence(a) == "(0,0);(1,2)^2");
    CHECK(parse_sequence(g, format_sequence(a)) == a);
    CHECK(format_sequence(Sequence(g)).empty());
    CHECK(parse_sequence(g, "") == Sequence(g));
    CHECK(parse_sequence(g, " (2,8) ; (0,3) ").length() == 2);
    CHECK(parse_sequence(g, "0,-1").multiplicity(index_of(make_element(g, {0, 8}), g)) == 1);

    CHECK_THROWS_AS(parse_sequence(g, "0,0;;1,2"), parse_error);
    CHECK_THROWS_AS(parse_sequence(g, "0"), parse_error);        // rank mismatch
    CHECK_THROWS_AS(parse_sequence(g, "(0,0)^0"), parse_error);  // multiplicity < 1
    CHECK_THROWS_AS(parse_sequence(g, "(0,0"), parse_error);

    // round-trip property over random multisets
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        Sequence s2(g);
        for (int t = 0; t < 8; ++t) s2.push_index(rng() % g.order(), rng() % 3);
        CHECK(parse_sequence(g, format_sequence(s2)) == s2);
    }

    // trivial group literal
    GroupSpec trivial;
    Sequence t = parse_sequence(trivial, "()^2");
    CHECK(t.length() == 2);
    CHECK(format_sequence(t) == "()^2");
}

TEST_CASE("subset bitmaps") {
    GroupSpec g({3, 9});
    Sequence s(g);
    for (int j : {0, 4, 22}) s.push_index(j);
    SubsetBitmap b = to_bitmap(s);
    CHECK(b.cardinality() == 3);
    CHECK(b.contains(4));
    CHECK_FALSE(b.contains(5));
    CHECK(to_sequence(b) == s);

    Sequence multi(g);
    multi.push_index(1, 2);
    CHECK_THROWS_AS(to_bitmap(multi), domain_error);
}

TEST_SUITE_END();
