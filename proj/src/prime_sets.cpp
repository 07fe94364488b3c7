#include "zsum/prime_sets.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace zsum {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

PrimeCyclicSet::PrimeCyclicSet(int p) : p_(p), bits_(0) {
    if (p < 2 || p > 61 || !is_prime(p)) {
        throw domain_error("PrimeCyclicSet requires a prime modulus <= 61, got " +
                           std::to_string(p));
    }
}

PrimeCyclicSet::PrimeCyclicSet(int p, std::uint64_t bits) : PrimeCyclicSet(p) {
    if (p < 64 && (bits >> p) != 0) throw domain_error("set bits outside [0, p)");
    bits_ = bits;
}

PrimeCyclicSet::PrimeCyclicSet(int p, std::initializer_list<int> elems) : PrimeCyclicSet(p) {
    for (int x : elems) insert(x);
}

int PrimeCyclicSet::size() const {
    return std::popcount(bits_);
}

void PrimeCyclicSet::insert(int x) {
    if (x < 0 || x >= p_) throw domain_error("element out of range [0, p)");
    bits_ |= 1ull << x;
}

std::vector<int> PrimeCyclicSet::elements() const {
    std::vector<int> out;
    std::uint64_t m = bits_;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

PrimeCyclicSet full_set(int p) {
    PrimeCyclicSet s(p);
    for (int x = 0; x < p; ++x) s.insert(x);
    return s;
}

namespace {

void check_same_modulus(const PrimeCyclicSet& a, const PrimeCyclicSet& b) {
    if (a.modulus() != b.modulus()) throw domain_error("modulus mismatch between sets");
}

std::uint64_t rotate_mod(std::uint64_t bits, int shift, int p) {
    // bits over [0, p); rotate left by shift positions mod p
    shift %= p;
    if (shift == 0) return bits;
    std::uint64_t lo = bits << shift;
    std::uint64_t hi = bits >> (p - shift);
    std::uint64_t mask = (p == 64) ? ~0ull : ((1ull << p) - 1);
    return (lo | hi) & mask;
}

}  // namespace

PrimeCyclicSet sumset(const PrimeCyclicSet& a, const PrimeCyclicSet& b) {
    check_same_modulus(a, b);
    int p = a.modulus();
    std::uint64_t out = 0;
    for (int x : b.elements()) out |= rotate_mod(a.mask(), x, p);
    return PrimeCyclicSet(p, out);
}

PrimeCyclicSet restricted_sumset(const PrimeCyclicSet& a, const PrimeCyclicSet& b) {
    check_same_modulus(a, b);
    int p = a.modulus();
    PrimeCyclicSet out(p);
    for (int x : a.elements()) {
        for (int y : b.elements()) {
            if (x != y) out.insert((x + y) % p);
        }
    }
    return out;
}

PrimeCyclicSet h_fold_subsums(const PrimeCyclicSet& a, int h) {
    int p = a.modulus();
    if (h < 0 || h > a.size()) return PrimeCyclicSet(p);
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(h) + 1, 0);
    rows[0] = 1;  // the empty sum
    int processed = 0;
    for (int x : a.elements()) {
        for (int c = std::min(processed, h - 1); c >= 0; --c) {
            rows[c + 1] |= rotate_mod(rows[c], x, p);
        }
        ++processed;
    }
    return PrimeCyclicSet(p, rows[h]);
}

bool cauchy_davenport_holds(const PrimeCyclicSet& a, const PrimeCyclicSet& b) {
    check_same_modulus(a, b);
    if (a.empty() || b.empty()) throw domain_error("Cauchy-Davenport requires non-empty sets");
    int p = a.modulus();
    return sumset(a, b).size() >= std::min(p, a.size() + b.size() - 1);
}

bool dsh_holds(const PrimeCyclicSet& a, int h) {
    if (h < 1 || h > a.size()) throw domain_error("h out of range [1, |A|]");
    int p = a.modulus();
    return h_fold_subsums(a, h).size() >= std::min(p, h * (a.size() - h) + 1);
}

bool iterated_sumset_bound_holds(std::span<const PrimeCyclicSet> sets) {
    if (sets.empty()) throw domain_error("iterated sumset needs at least one set");
    int p = sets.front().modulus();
    int size_sum = 0;
    PrimeCyclicSet acc = sets.front();
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (sets[i].empty()) throw domain_error("iterated sumset requires non-empty sets");
        check_same_modulus(sets.front(), sets[i]);
        size_sum += sets[i].size();
        if (i > 0) acc = sumset(acc, sets[i]);
    }
    int h = static_cast<int>(sets.size());
    return acc.size() >= std::min(p, size_sum - (h - 1));
}

std::vector<ApWitness> ap_detect(const PrimeCyclicSet& a) {
    int p = a.modulus();
    int k = a.size();
    if (k < 2 || k > p - 2) {
        throw domain_error("ap_detect requires 2 <= |A| <= p-2");
    }
    std::vector<ApWitness> out;
    for (int d = 1; d < p; ++d) {
        // a progression start is the unique member whose predecessor is absent
        for (int s : a.elements()) {
            if (a.contains((s - d % p + p) % p)) continue;
            std::uint64_t run = 0;
            int x = s;
            for (int i = 0; i < k; ++i) {
                run |= 1ull << x;
                x = (x + d) % p;
            }
            if (run == a.mask()) out.push_back(ApWitness{s, d, k});
        }
    }
    return out;
}

bool vosper_inverse_check(const PrimeCyclicSet& a, const PrimeCyclicSet& b) {
    check_same_modulus(a, b);
    int p = a.modulus();
    if (a.size() < 2 || b.size() < 2) {
        throw domain_error("Vosper inverse check requires |A|, |B| >= 2");
    }
    PrimeCyclicSet sum = sumset(a, b);
    if (sum.size() != a.size() + b.size() - 1) {
        throw domain_error("Vosper inverse check requires |A+B| = |A|+|B|-1");
    }
    if (sum.size() == p) {
        throw domain_error("|A+B| = p is outside the Vosper inverse theorem");
    }
    if (sum.size() <= p - 2) {
        auto wa = ap_detect(a);
        auto wb = ap_detect(b);
        for (const ApWitness& x : wa) {
            for (const ApWitness& y : wb) {
                if (x.difference == y.difference) return true;
            }
        }
        return false;
    }
    // |A+B| = p-1: A must be {c - x : x not in B} for some c
    std::vector<int> missing;
    for (int x = 0; x < p; ++x) {
        if (!b.contains(x)) missing.push_back(x);
    }
    for (int c = 0; c < p; ++c) {
        PrimeCyclicSet cand(p);
        for (int x : missing) cand.insert(((c - x) % p + p) % p);
        if (cand == a) return true;
    }
    return false;
}

}  // namespace zsum
