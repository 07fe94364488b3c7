#include "zsum/constructions.hpp"

#include <algorithm>
#include <bit>

#include "zsum/prime_sets.hpp"

namespace zsum {

std::optional<KnownValue> known_value(const GroupSpec& g, bool include_conjectures) {
    const auto& f = g.factors();
    if (g.rank() <= 1) {
        int n = g.rank() == 0 ? 1 : f[0];
        return KnownValue{n % 2 == 1 ? n : n + 1, "cyclic formula"};
    }
    if (g.exponent() == 2) {
        return KnownValue{static_cast<int>(g.order()) + 1, "elementary 2-group"};
    }
    if (g.rank() == 2) {
        int a = f[0], b = f[1];
        if (a == 2) {
            int n = b / 2;
            return KnownValue{n % 2 == 1 ? 2 * n + 3 : 2 * n + 2, "C2 x C2n formula"};
        }
        if (a == b) {
            if (is_prime(a) && (a == 3 || a == 5 || a == 7 || a >= 47)) {
                return KnownValue{2 * a - 1, "Kemnitz / Gao-Thangadurai (Cp x Cp)"};
            }
            if (a == 4) return KnownValue{9, "Gao-Thangadurai (C4 x C4)"};
            if (a == 6) return KnownValue{13, "computed (C6 x C6)"};
            if (include_conjectures) {
                return KnownValue{a % 2 == 1 ? 2 * a - 1 : 2 * a + 1,
                                  "Gao-Thangadurai conjecture", true};
            }
            return std::nullopt;
        }
        if (a == 3 && b % 3 == 0) {
            int n = b / 3;
            if (n == 3) return KnownValue{13, "computed (C3 x C9)"};
            if (n == 4) return KnownValue{15, "computed (C3 x C12)"};
            if (is_prime(n)) return KnownValue{3 * n + 3, "C3 x C3p formula (p prime)"};
            return std::nullopt;
        }
    }
    return std::nullopt;
}

namespace {

struct DavenportSearch {
    int n;
    std::vector<std::uint8_t> add_table;
    int best = 0;

    explicit DavenportSearch(const GroupSpec& g) : n(static_cast<int>(g.order())) {
        auto elements = enumerate_elements(g);
        add_table.resize(static_cast<std::size_t>(n) * n);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                add_table[static_cast<std::size_t>(a) * n + b] =
                    static_cast<std::uint8_t>(index_of(add(elements[a], elements[b], g), g));
            }
        }
    }

    // sums: bitmask of all nonempty subsums so far. Terms are chosen with
    // non-decreasing element index to kill permutation symmetry.
    void dfs(int start, std::uint64_t sums, int len) {
        best = std::max(best, len);
        for (int g = start; g < n; ++g) {
            std::uint64_t with = sums | (1ull << g);
            std::uint64_t m = sums;
            const std::uint8_t* row = add_table.data() + static_cast<std::size_t>(g) * n;
            while (m) {
                int b = std::countr_zero(m);
                m &= m - 1;
                with |= 1ull << row[b];
            }
            if (!(with & 1u)) dfs(g, with, len + 1);
        }
    }
};

}  // namespace

int davenport(const GroupSpec& g, std::uint64_t order_cap) {
    if (g.order() > order_cap) {
        throw resource_error("group order " + std::to_string(g.order()) +
                             " exceeds the Davenport search cap of " + std::to_string(order_cap));
    }
    if (g.order() > 64) throw resource_error("Davenport search supports order <= 64");
    DavenportSearch search(g);
    search.dfs(1, 0, 0);  // element 0 alone is a zero-sum; start from index 1
    return search.best + 1;
}

namespace {

void verify_report(ConstructionReport& report) {
    report.claimed_length = report.sequence.length();
    report.squarefree = report.sequence.is_squarefree();
    report.sigma_value = sigma(report.sequence);
    report.zero_sum_free_at_exp =
        !has_zero_sum_subsequence_of_length(report.sequence, report.group.exponent());
    if (!report.squarefree) report.failures.push_back("sequence is not squarefree");
    if (!report.zero_sum_free_at_exp) {
        report.failures.push_back("sequence has a zero-sum subsequence of length exp(G)");
    }
    report.accepted = report.failures.empty();
}

}  // namespace

std::string format_report(const ConstructionReport& report) {
    std::string out;
    out += "group: " + format_group(report.group) + "\n";
    out += "length: " + std::to_string(report.claimed_length) + "\n";
    out += "sequence: " + format_sequence(report.sequence) + "\n";
    out += "sigma: " + format_element(report.sigma_value) + "\n";
    out += std::string("squarefree: ") + (report.squarefree ? "true" : "false") + "\n";
    out += std::string("zero_sum_free_at_exp: ") +
           (report.zero_sum_free_at_exp ? "true" : "false") + "\n";
    out += std::string("accepted: ") + (report.accepted ? "true" : "false") + "\n";
    for (const std::string& f : report.failures) out += "failure: " + f + "\n";
    return out;
}

Sequence extremal_cyclic_witness(int n) {
    if (n < 1) throw domain_error("cyclic order must be >= 1");
    GroupSpec g = GroupSpec::cyclic(n);
    Sequence s = full_set_sequence(g);
    if (n % 2 == 1) {
        // drop one non-zero element (the only element for n = 1)
        Sequence trimmed(g);
        for (ElementIndex i = 0; i + 1 < g.order(); ++i) trimmed.push_index(i);
        return trimmed;
    }
    return s;
}

ConstructionReport composite_construction(const GroupSpec& g1, const GroupSpec& g2,
                                          const Sequence& s1, const Sequence& s2prime) {
    DirectSum ds(g1, g2);
    ConstructionReport report;
    report.group = ds.group();
    report.sequence = Sequence(ds.group());
    report.sigma_value = zero_element(ds.group());

    if (g1.exponent() % g2.exponent() != 0) {
        report.failures.push_back("exp(G2) does not divide exp(G1)");
    }
    if (s1.group() != g1 || s2prime.group() != g2) {
        report.failures.push_back("sequence defined over the wrong group");
    }
    if (report.failures.empty()) {
        if (!s1.is_squarefree()) report.failures.push_back("S1 is not squarefree");
        if (has_zero_sum_subsequence_of_length(s1, g1.exponent())) {
            report.failures.push_back("S1 has a zero-sum subsequence of length exp(G1)");
        }
        if (!is_zero_sum_free(s2prime)) {
            report.failures.push_back("S2' has a nonempty zero-sum subsequence");
        }
        for (ElementIndex i = 0; i < g2.order(); ++i) {
            if (s2prime.multiplicity(i) >= static_cast<std::uint32_t>(g2.exponent())) {
                report.failures.push_back("S2' has a multiplicity >= exp(G2)");
                break;
            }
        }
    }
    if (!report.failures.empty()) {
        report.accepted = false;
        return report;
    }

    auto h = enumerate_elements(g1);  // distinct translates for repeated terms
    Sequence combined(ds.group());
    for (ElementIndex i = 0; i < g1.order(); ++i) {
        if (s1.multiplicity(i)) combined.push(ds.embed_a(element_of(i, g1)));
    }
    for (ElementIndex i = 0; i < g2.order(); ++i) {
        std::uint32_t v = s2prime.multiplicity(i);
        GroupElement base = ds.embed_b(element_of(i, g2));
        for (std::uint32_t rep = 0; rep < v; ++rep) {
            combined.push(add(base, ds.embed_a(h[rep]), ds.group()), 1);
        }
    }
    report.sequence = std::move(combined);
    verify_report(report);
    return report;
}

ConstructionReport kiefer_construction(int n) {
    if (n < 2) throw domain_error("construction requires n >= 2");
    if (n == 2) {
        throw domain_error("n = 2 rejected: -6*e2 collides with 0 in C6");
    }
    if (n == 3) {
        throw domain_error("n = 3 rejected: -6*e2 collides with 3*e2 in C9");
    }
    if (n % 2 == 0) {
        throw domain_error("even n rejected: the verification needs the order 3n to be odd");
    }
    int m = 3 * n;
    GroupSpec g({3, m});
    Sequence s(g);
    // (e1 + h) for every h in <e2> other than 0, e2, -e2
    for (int j = 0; j < m; ++j) {
        if (j == 0 || j == 1 || j == m - 1) continue;
        s.push(make_element(g, {1, j}));
    }
    // 0, e2, 2e2, 3e2, -6e2
    for (int j : {0, 1, 2, 3, m - 6}) s.push(make_element(g, {0, j}));

    ConstructionReport report;
    report.group = g;
    report.sequence = std::move(s);
    verify_report(report);
    if (report.claimed_length != static_cast<std::uint64_t>(m + 2)) {
        report.failures.push_back("unexpected length");
        report.accepted = false;
    }
    return report;
}

ConstructionReport c3c9_construction() {
    GroupSpec g({3, 9});
    Sequence s(g);
    // R (e1+R) (e2+R) (e1+e2+R) with R = 0 (3e2) (6e2)
    for (int a : {0, 1}) {
        for (int b : {0, 1}) {
            for (int j : {0, 3, 6}) {
                s.push(make_element(g, {a, j + b}));
            }
        }
    }
    ConstructionReport report;
    report.group = g;
    report.sequence = std::move(s);
    verify_report(report);
    if (report.claimed_length != 12) {
        report.failures.push_back("unexpected length");
        report.accepted = false;
    }
    if (!(report.sigma_value == make_element(g, {0, 6}))) {
        report.failures.push_back("sigma is not 6*e2");
        report.accepted = false;
    }
    return report;
}

std::optional<LemmaWitness> lemma_sufficient_condition(const Sequence& s) {
    CrtSplit split(s.group());
    int p = split.p();
    if (p < 5 || !is_prime(p)) {
        throw domain_error("the sufficient condition requires C3 x C3p with p >= 5 prime");
    }
    if (!s.is_squarefree()) throw domain_error("sequence must be squarefree");
    if (s.length() != static_cast<std::uint64_t>(3 * p + 3)) {
        throw domain_error("sequence must have length 3p+3 = " + std::to_string(3 * p + 3));
    }

    auto h1 = split.h1_elements();
    const GroupSpec& g = s.group();
    std::vector<int> fiber(h1.size(), 0);
    GroupElement total = zero_element(g);
    for (ElementIndex i = 0; i < g.order(); ++i) {
        if (!s.multiplicity(i)) continue;
        GroupElement e = element_of(i, g);
        total = add(total, e, g);
        GroupElement h = split.pi1(e);
        for (std::size_t t = 0; t < h1.size(); ++t) {
            if (h1[t] == h) {
                fiber[t] += static_cast<int>(s.multiplicity(i));
                break;
            }
        }
    }
    GroupElement target = split.pi1(total);

    std::size_t m = h1.size();
    for (std::size_t x = 0; x < m; ++x) {
        for (std::size_t y = x + 1; y < m; ++y) {
            for (std::size_t z = y + 1; z < m; ++z) {
                if (fiber[x] == 0 || fiber[y] == 0 || fiber[z] == 0) continue;
                if (fiber[x] + fiber[y] + fiber[z] - 2 < p) continue;
                GroupElement sum3 = add(add(h1[x], h1[y], g), h1[z], g);
                if (sum3 == target) return LemmaWitness{1, h1[x], h1[y], h1[z]};
            }
        }
    }
    for (std::size_t x = 0; x < m; ++x) {
        for (std::size_t y = 0; y < m; ++y) {
            if (x == y || fiber[x] < 2 || fiber[y] < 1) continue;
            if (2 * fiber[x] + fiber[y] - 4 < p) continue;
            GroupElement sum2 = add(scalar_mul(2, h1[x], g), h1[y], g);
            if (sum2 == target) return LemmaWitness{2, h1[x], h1[y], zero_element(g)};
        }
    }
    for (std::size_t x = 0; x < m; ++x) {
        if (fiber[x] < 3 || 3 * fiber[x] - 8 < p) continue;
        if (scalar_mul(3, h1[x], g) == target) {
            return LemmaWitness{3, h1[x], zero_element(g), zero_element(g)};
        }
    }
    return std::nullopt;
}

}  // namespace zsum
