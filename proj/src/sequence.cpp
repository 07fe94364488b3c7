#include "zsum/sequence.hpp"

#include <algorithm>
#include <bit>

namespace zsum {

Sequence::Sequence(GroupSpec group) : group_(std::move(group)), mult_(group_.order(), 0) {}

Sequence::Sequence(GroupSpec group, const std::vector<GroupElement>& terms)
    : Sequence(std::move(group)) {
    for (const GroupElement& t : terms) push(t);
}

void Sequence::push(const GroupElement& g, std::uint32_t count) {
    push_index(index_of(g, group_), count);
}

void Sequence::push_index(ElementIndex i, std::uint32_t count) {
    if (i >= group_.order()) throw invalid_element("sequence term index out of range");
    mult_[i] += count;
}

std::uint64_t Sequence::length() const {
    std::uint64_t n = 0;
    for (std::uint32_t v : mult_) n += v;
    return n;
}

bool Sequence::is_squarefree() const {
    return std::all_of(mult_.begin(), mult_.end(), [](std::uint32_t v) { return v <= 1; });
}

std::vector<GroupElement> Sequence::support() const {
    std::vector<GroupElement> out;
    for (ElementIndex i = 0; i < mult_.size(); ++i) {
        if (mult_[i] > 0) out.push_back(element_of(i, group_));
    }
    return out;
}

std::vector<GroupElement> Sequence::terms() const {
    std::vector<GroupElement> out;
    for (ElementIndex i = 0; i < mult_.size(); ++i) {
        for (std::uint32_t c = 0; c < mult_[i]; ++c) out.push_back(element_of(i, group_));
    }
    return out;
}

Sequence full_set_sequence(const GroupSpec& g) {
    Sequence s(g);
    for (ElementIndex i = 0; i < g.order(); ++i) s.push_index(i);
    return s;
}

GroupElement sigma(const Sequence& s) {
    GroupElement acc = zero_element(s.group());
    for (ElementIndex i = 0; i < s.group().order(); ++i) {
        std::uint32_t v = s.multiplicity(i);
        if (v == 0) continue;
        acc = add(acc, scalar_mul(v, element_of(i, s.group()), s.group()), s.group());
    }
    return acc;
}

Sequence translate(const GroupElement& g, const Sequence& s) {
    Sequence out(s.group());
    for (ElementIndex i = 0; i < s.group().order(); ++i) {
        std::uint32_t v = s.multiplicity(i);
        if (v == 0) continue;
        out.push(add(g, element_of(i, s.group()), s.group()), v);
    }
    return out;
}

namespace {

// Rows of one bit per group element; row c holds the sums reachable with
// subsequences of length exactly c.
struct SumTable {
    std::size_t words;
    std::vector<std::uint64_t> rows;  // (len+1) x words

    SumTable(long long len, std::uint64_t order)
        : words((order + 63) / 64), rows(static_cast<std::size_t>(len + 1) * words, 0) {
        row(0)[0] = 1;  // empty subsequence sums to the identity (index 0)
    }
    std::uint64_t* row(long long c) { return rows.data() + static_cast<std::size_t>(c) * words; }
};

// dst |= src permuted by "+ g" (table of index sums for one g).
void or_shifted(std::uint64_t* dst, const std::uint64_t* src, std::size_t words,
                const std::vector<ElementIndex>& perm) {
    for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t m = src[w];
        while (m) {
            int b = std::countr_zero(m);
            m &= m - 1;
            ElementIndex t = perm[w * 64 + static_cast<std::size_t>(b)];
            dst[t >> 6] |= 1ull << (t & 63);
        }
    }
}

std::vector<ElementIndex> add_permutation(const GroupSpec& g, ElementIndex gi) {
    GroupElement ge = element_of(gi, g);
    std::vector<ElementIndex> perm(g.order());
    for (ElementIndex i = 0; i < g.order(); ++i) {
        perm[i] = index_of(add(element_of(i, g), ge, g), g);
    }
    return perm;
}

SumTable run_subsum_table(const Sequence& s, long long len) {
    SumTable table(len, s.group().order());
    long long processed = 0;
    for (ElementIndex i = 0; i < s.group().order(); ++i) {
        std::uint32_t v = s.multiplicity(i);
        if (v == 0) continue;
        auto perm = add_permutation(s.group(), i);
        for (std::uint32_t rep = 0; rep < v; ++rep) {
            // bounded knapsack unrolled as unit steps
            long long top = std::min<long long>(processed, len - 1);
            for (long long c = top; c >= 0; --c) {
                or_shifted(table.row(c + 1), table.row(c), table.words, perm);
            }
            ++processed;
        }
    }
    return table;
}

}  // namespace

std::vector<GroupElement> subsums_of_length(const Sequence& s, long long h) {
    if (h < 0 || static_cast<std::uint64_t>(h) > s.length()) return {};  // degenerate contract
    SumTable table = run_subsum_table(s, h);
    std::vector<GroupElement> out;
    const std::uint64_t* row = table.row(h);
    for (ElementIndex i = 0; i < s.group().order(); ++i) {
        if ((row[i >> 6] >> (i & 63)) & 1u) out.push_back(element_of(i, s.group()));
    }
    return out;
}

bool has_zero_sum_subsequence_of_length(const Sequence& s, long long len) {
    if (len < 0) throw domain_error("subsequence length must be >= 0");
    if (static_cast<std::uint64_t>(len) > s.length()) return false;
    SumTable table = run_subsum_table(s, len);
    return table.row(len)[0] & 1u;
}

bool is_zero_sum_free(const Sequence& s) {
    // One-row variant: all nonempty subsums.
    std::size_t words = (s.group().order() + 63) / 64;
    std::vector<std::uint64_t> sums(words, 0);
    for (ElementIndex i = 0; i < s.group().order(); ++i) {
        std::uint32_t v = s.multiplicity(i);
        if (v == 0) continue;
        auto perm = add_permutation(s.group(), i);
        for (std::uint32_t rep = 0; rep < v; ++rep) {
            std::vector<std::uint64_t> shifted(words, 0);
            or_shifted(shifted.data(), sums.data(), words, perm);
            for (std::size_t w = 0; w < words; ++w) sums[w] |= shifted[w];
            sums[perm[0] >> 6] |= 1ull << (perm[0] & 63);  // the singleton {g}
            if (sums[0] & 1u) return false;
        }
    }
    return !(sums[0] & 1u);
}

bool complement_equivalence_check(const Sequence& s, long long r) {
    if (!s.is_squarefree()) throw domain_error("complement_equivalence_check requires a squarefree sequence");
    long long k = static_cast<long long>(s.length());
    if (r < 0 || r > k) throw domain_error("r out of range [0, |S|]");
    GroupElement total = sigma(s);
    bool has_r_with_total = false;
    for (const GroupElement& e : subsums_of_length(s, r)) {
        if (e == total) {
            has_r_with_total = true;
            break;
        }
    }
    bool has_complement_zero = has_zero_sum_subsequence_of_length(s, k - r);
    return has_r_with_total == has_complement_zero;
}

namespace {

std::vector<int> parse_tuple(std::string_view text) {
    std::vector<int> coords;
    std::string token;
    bool any = false;
    auto flush = [&]() {
        if (token.empty()) throw parse_error("empty coordinate in sequence literal");
        std::size_t pos = 0;
        int v;
        try {
            v = std::stoi(token, &pos);
        } catch (const std::exception&) {
            throw parse_error("invalid coordinate '" + token + "'");
        }
        if (pos != token.size()) throw parse_error("invalid coordinate '" + token + "'");
        coords.push_back(v);
        token.clear();
    };
    for (char ch : text) {
        if (ch == ',') {
            flush();
        } else if (ch == ' ' || ch == '\t') {
            continue;
        } else {
            token += ch;
            any = true;
        }
    }
    if (!token.empty()) flush();
    if (!any && !coords.empty()) throw parse_error("malformed tuple");
    return coords;
}

}  // namespace

Sequence parse_sequence(const GroupSpec& g, std::string_view literal) {
    Sequence s(g);
    std::size_t start = 0;
    while (start <= literal.size()) {
        std::size_t end = literal.find(';', start);
        if (end == std::string_view::npos) end = literal.size();
        std::string_view term = literal.substr(start, end - start);
        start = end + 1;

        // trim
        while (!term.empty() && (term.front() == ' ' || term.front() == '\t')) term.remove_prefix(1);
        while (!term.empty() && (term.back() == ' ' || term.back() == '\t')) term.remove_suffix(1);
        if (term.empty()) {
            if (end == literal.size()) break;
            throw parse_error("empty term in sequence literal");
        }

        std::uint32_t count = 1;
        std::size_t caret = term.rfind('^');
        if (caret != std::string_view::npos) {
            std::string mult_str(term.substr(caret + 1));
            std::size_t pos = 0;
            long long m;
            try {
                m = std::stoll(mult_str, &pos);
            } catch (const std::exception&) {
                throw parse_error("invalid multiplicity '" + mult_str + "'");
            }
            if (pos != mult_str.size() || m < 1) {
                throw parse_error("invalid multiplicity '" + mult_str + "'");
            }
            count = static_cast<std::uint32_t>(m);
            term = term.substr(0, caret);
        }
        if (!term.empty() && term.front() == '(') {
            if (term.back() != ')') throw parse_error("unbalanced parentheses in term");
            term = term.substr(1, term.size() - 2);
        }
        std::vector<int> coords = parse_tuple(term);
        if (static_cast<int>(coords.size()) != g.rank()) {
            throw parse_error("term rank " + std::to_string(coords.size()) +
                              " does not match group rank " + std::to_string(g.rank()));
        }
        s.push(make_element(g, std::move(coords)), count);
        if (end == literal.size()) break;
    }
    return s;
}

std::string format_sequence(const Sequence& s) {
    std::string out;
    for (ElementIndex i = 0; i < s.group().order(); ++i) {
        std::uint32_t v = s.multiplicity(i);
        if (v == 0) continue;
        if (!out.empty()) out += ';';
        out += format_element(element_of(i, s.group()));
        if (v > 1) {
            out += '^';
            out += std::to_string(v);
        }
    }
    return out;
}

int SubsetBitmap::cardinality() const {
    return std::popcount(bits);
}

SubsetBitmap to_bitmap(const Sequence& s) {
    if (s.group().order() > 64) {
        throw resource_error("SubsetBitmap supports groups of order <= 64");
    }
    if (!s.is_squarefree()) throw domain_error("to_bitmap requires a squarefree sequence");
    SubsetBitmap b{s.group(), 0};
    for (ElementIndex i = 0; i < s.group().order(); ++i) {
        if (s.multiplicity(i)) b.bits |= 1ull << i;
    }
    return b;
}

Sequence to_sequence(const SubsetBitmap& b) {
    Sequence s(b.group);
    for (ElementIndex i = 0; i < b.group.order(); ++i) {
        if (b.contains(i)) s.push_index(i);
    }
    return s;
}

}  // namespace zsum
