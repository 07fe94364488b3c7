#include "zsum/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace zsum {

GroupSpec::GroupSpec(std::vector<int> factors) : factors_(std::move(factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] < 2) {
            throw parse_error("invariant factor must be >= 2, got " + std::to_string(factors_[i]));
        }
        if (i > 0 && factors_[i] % factors_[i - 1] != 0) {
            throw parse_error("factors violate the divisibility chain: " +
                              std::to_string(factors_[i - 1]) + " does not divide " +
                              std::to_string(factors_[i]));
        }
    }
    order_ = 1;
    for (int f : factors_) order_ *= static_cast<std::uint64_t>(f);
}

GroupSpec GroupSpec::cyclic(int n) {
    if (n < 1) throw parse_error("cyclic group order must be >= 1");
    if (n == 1) return GroupSpec{};
    return GroupSpec{{n}};
}

namespace {

int mod_reduce(long long v, int m) {
    long long r = v % m;
    if (r < 0) r += m;
    return static_cast<int>(r);
}

void check_element(const GroupElement& a, const GroupSpec& g, const char* op) {
    if (static_cast<int>(a.coords.size()) != g.rank()) {
        throw invalid_element(std::string(op) + ": element rank " +
                              std::to_string(a.coords.size()) + " does not match group rank " +
                              std::to_string(g.rank()));
    }
}

}  // namespace

GroupElement zero_element(const GroupSpec& g) {
    return GroupElement{std::vector<int>(g.rank(), 0)};
}

GroupElement make_element(const GroupSpec& g, std::vector<int> coords) {
    GroupElement e{std::move(coords)};
    check_element(e, g, "make_element");
    for (int i = 0; i < g.rank(); ++i) e.coords[i] = mod_reduce(e.coords[i], g.factors()[i]);
    return e;
}

GroupElement add(const GroupElement& a, const GroupElement& b, const GroupSpec& g) {
    check_element(a, g, "add");
    check_element(b, g, "add");
    GroupElement r = a;
    for (int i = 0; i < g.rank(); ++i) {
        r.coords[i] = mod_reduce(static_cast<long long>(a.coords[i]) + b.coords[i], g.factors()[i]);
    }
    return r;
}

GroupElement neg(const GroupElement& a, const GroupSpec& g) {
    check_element(a, g, "neg");
    GroupElement r = a;
    for (int i = 0; i < g.rank(); ++i) r.coords[i] = mod_reduce(-a.coords[i], g.factors()[i]);
    return r;
}

GroupElement sub(const GroupElement& a, const GroupElement& b, const GroupSpec& g) {
    return add(a, neg(b, g), g);
}

GroupElement scalar_mul(long long k, const GroupElement& a, const GroupSpec& g) {
    check_element(a, g, "scalar_mul");
    GroupElement r = a;
    for (int i = 0; i < g.rank(); ++i) {
        int m = g.factors()[i];
        r.coords[i] = mod_reduce((k % m) * a.coords[i], m);
    }
    return r;
}

ElementIndex index_of(const GroupElement& a, const GroupSpec& g) {
    check_element(a, g, "index_of");
    ElementIndex idx = 0;
    std::uint64_t radix = 1;
    for (int i = 0; i < g.rank(); ++i) {
        int c = a.coords[i];
        if (c < 0 || c >= g.factors()[i]) {
            throw invalid_element("index_of: coordinate " + std::to_string(c) +
                                  " out of range for factor " + std::to_string(g.factors()[i]));
        }
        idx += static_cast<std::uint64_t>(c) * radix;
        radix *= static_cast<std::uint64_t>(g.factors()[i]);
    }
    return idx;
}

GroupElement element_of(ElementIndex idx, const GroupSpec& g) {
    if (idx >= g.order()) {
        throw invalid_element("element_of: index " + std::to_string(idx) +
                              " out of range for group of order " + std::to_string(g.order()));
    }
    GroupElement e = zero_element(g);
    for (int i = 0; i < g.rank(); ++i) {
        e.coords[i] = static_cast<int>(idx % static_cast<std::uint64_t>(g.factors()[i]));
        idx /= static_cast<std::uint64_t>(g.factors()[i]);
    }
    return e;
}

std::vector<GroupElement> enumerate_elements(const GroupSpec& g) {
    std::vector<GroupElement> out;
    out.reserve(g.order());
    for (ElementIndex i = 0; i < g.order(); ++i) out.push_back(element_of(i, g));
    return out;
}

int element_order(const GroupElement& a, const GroupSpec& g) {
    check_element(a, g, "element_order");
    long long ord = 1;
    for (int i = 0; i < g.rank(); ++i) {
        int m = g.factors()[i];
        int o = m / std::gcd(a.coords[i], m);  // order of the residue in C_m
        ord = std::lcm(ord, static_cast<long long>(o));
    }
    return static_cast<int>(ord);
}

std::string format_element(const GroupElement& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.coords.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(a.coords[i]);
    }
    s += ')';
    return s;
}

std::vector<int> normalized_invariant_factors(const std::vector<int>& moduli) {
    // Collect prime-power components, then rebuild the chain by taking the
    // t-th largest power of each prime into the t-th largest factor.
    std::map<int, std::vector<int>> powers_by_prime;
    for (int m : moduli) {
        if (m < 1) throw parse_error("modulus must be >= 1, got " + std::to_string(m));
        int rest = m;
        for (int p = 2; static_cast<long long>(p) * p <= rest; ++p) {
            if (rest % p != 0) continue;
            int q = 1;
            while (rest % p == 0) {
                rest /= p;
                q *= p;
            }
            powers_by_prime[p].push_back(q);
        }
        if (rest > 1) powers_by_prime[rest].push_back(rest);
    }
    std::size_t slots = 0;
    for (auto& [p, qs] : powers_by_prime) {
        std::sort(qs.begin(), qs.end(), std::greater<int>());
        slots = std::max(slots, qs.size());
    }
    std::vector<int> chain(slots, 1);  // chain[0] = largest factor
    for (auto& [p, qs] : powers_by_prime) {
        for (std::size_t t = 0; t < qs.size(); ++t) chain[t] *= qs[t];
    }
    std::reverse(chain.begin(), chain.end());  // ascending
    return chain;
}

GroupSpec parse_group(std::string_view text, bool normalize) {
    std::vector<int> factors;
    std::string token;
    auto flush = [&]() {
        if (token.empty()) throw parse_error("empty factor in group spec");
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(token, &pos);
        } catch (const std::exception&) {
            throw parse_error("invalid factor '" + token + "' in group spec");
        }
        if (pos != token.size()) throw parse_error("invalid factor '" + token + "' in group spec");
        if (v < 1) throw parse_error("factor must be >= 1, got " + token);
        if (v > 1) factors.push_back(v);
        token.clear();
    };
    for (char ch : text) {
        if (ch == 'x' || ch == 'X' || ch == ',') {
            flush();
        } else if (ch == ' ' || ch == '\t') {
            continue;
        } else {
            token += ch;
        }
    }
    if (token.empty() && factors.empty() && text.empty()) {
        throw parse_error("empty group spec");
    }
    flush();

    std::sort(factors.begin(), factors.end());
    if (normalize) {
        factors = normalized_invariant_factors(factors);
    } else {
        for (std::size_t i = 1; i < factors.size(); ++i) {
            if (factors[i] % factors[i - 1] != 0) {
                std::vector<int> chain = normalized_invariant_factors(factors);
                std::string hint;
                for (std::size_t j = 0; j < chain.size(); ++j) {
                    if (j) hint += 'x';
                    hint += std::to_string(chain[j]);
                }
                if (chain.empty()) hint = "1";
                throw parse_error("factors are not a divisibility chain; the isomorphic "
                                  "invariant-factor form is " +
                                  hint + " (pass it directly or use --normalize)");
            }
        }
    }
    return GroupSpec{factors};
}

std::string format_group(const GroupSpec& g) {
    if (g.rank() == 0) return "1";
    std::string s;
    for (int i = 0; i < g.rank(); ++i) {
        if (i) s += 'x';
        s += std::to_string(g.factors()[i]);
    }
    return s;
}

namespace {

struct PrimaryPart {
    int prime_power;  // p^e
    int cofactor;     // m / p^e
    int idempotent;   // == 1 mod p^e, == 0 mod cofactor
    int slot;         // 0 = largest chain factor
};

int crt_idempotent(int q, int cof) {
    // u == 1 mod q, u == 0 mod cof (q and cof coprime)
    if (cof == 1) return 1 % q;
    for (int k = 0; k < q; ++k) {
        long long u = static_cast<long long>(k) * cof;
        if (u % q == 1) return static_cast<int>(u);
    }
    throw domain_error("crt_idempotent: moduli not coprime");
}

std::vector<std::pair<int, int>> prime_power_parts(int m) {
    std::vector<std::pair<int, int>> parts;  // (prime, p^e)
    int rest = m;
    for (int p = 2; static_cast<long long>(p) * p <= rest; ++p) {
        if (rest % p != 0) continue;
        int q = 1;
        while (rest % p == 0) {
            rest /= p;
            q *= p;
        }
        parts.emplace_back(p, q);
    }
    if (rest > 1) parts.emplace_back(rest, rest);
    return parts;
}

}  // namespace

DirectSum::DirectSum(const GroupSpec& a, const GroupSpec& b) {
    struct Comp {
        int source;  // 0 = a, 1 = b
        int coord;
        int prime;
        int prime_power;
        int modulus;
        int slot = -1;
    };
    std::vector<Comp> comps;
    auto gather = [&](const GroupSpec& g, int source) {
        for (int i = 0; i < g.rank(); ++i) {
            for (auto [p, q] : prime_power_parts(g.factors()[i])) {
                comps.push_back({source, i, p, q, g.factors()[i]});
            }
        }
    };
    gather(a, 0);
    gather(b, 1);

    // Per prime, the t-th largest power lands in the t-th largest chain factor.
    std::map<int, std::vector<int>> by_prime;  // prime -> indices into comps
    for (std::size_t i = 0; i < comps.size(); ++i) by_prime[comps[i].prime].push_back(i);
    std::size_t slots = 0;
    for (auto& [p, idxs] : by_prime) {
        std::sort(idxs.begin(), idxs.end(), [&](int x, int y) {
            return comps[x].prime_power > comps[y].prime_power;
        });
        for (std::size_t t = 0; t < idxs.size(); ++t) comps[idxs[t]].slot = static_cast<int>(t);
        slots = std::max(slots, idxs.size());
    }
    std::vector<int> chain(slots, 1);
    for (const Comp& c : comps) chain[c.slot] *= c.prime_power;
    std::vector<int> ascending(chain.rbegin(), chain.rend());
    group_ = GroupSpec{ascending};

    auto build_images = [&](const GroupSpec& g, int source) {
        std::vector<GroupElement> images(g.rank(), zero_element(group_));
        for (const Comp& c : comps) {
            if (c.source != source) continue;
            int u = (c.modulus == c.prime_power)
                        ? 1
                        : crt_idempotent(c.prime_power, c.modulus / c.prime_power);
            // unit generator of the source coordinate, p-part u, mapped onto the
            // order-p^e subgroup of the target chain factor
            int coord_idx = static_cast<int>(slots) - 1 - c.slot;
            int target_mod = group_.factors()[coord_idx];
            long long img = (static_cast<long long>(u) % c.modulus) % c.prime_power;
            img = img * (target_mod / c.prime_power) % target_mod;
            images[c.coord].coords[coord_idx] =
                static_cast<int>((images[c.coord].coords[coord_idx] + img) % target_mod);
        }
        return images;
    };
    gen_images_a_ = build_images(a, 0);
    gen_images_b_ = build_images(b, 1);
}

namespace {

GroupElement embed_via(const GroupElement& x, const std::vector<GroupElement>& images,
                       const GroupSpec& target) {
    if (x.coords.size() != images.size()) {
        throw invalid_element("direct sum embedding: element rank mismatch");
    }
    GroupElement r = zero_element(target);
    for (std::size_t i = 0; i < images.size(); ++i) {
        r = add(r, scalar_mul(x.coords[i], images[i], target), target);
    }
    return r;
}

}  // namespace

GroupElement DirectSum::embed_a(const GroupElement& x) const {
    return embed_via(x, gen_images_a_, group_);
}

GroupElement DirectSum::embed_b(const GroupElement& x) const {
    return embed_via(x, gen_images_b_, group_);
}

CrtSplit::CrtSplit(const GroupSpec& g) : group_(g) {
    if (g.rank() != 2 || g.factors()[0] != 3 || g.factors()[1] % 3 != 0) {
        throw unsupported_group("crt_split requires a group of shape 3x3p, got " +
                                format_group(g));
    }
    p_ = g.factors()[1] / 3;
    if (p_ % 3 == 0) {
        throw unsupported_group("crt_split requires gcd(3, p) = 1, got p = " +
                                std::to_string(p_));
    }
    int m = g.factors()[1];
    // mult1 == 1 mod 3, == 0 mod p: scalar action fixing H1 and killing H2.
    if (p_ == 1) {
        mult1_ = 1;
        mult2_ = 0;
    } else {
        for (int k = 1; k < 3 * p_; ++k) {
            if (k % 3 == 1 && k % p_ == 0) {
                mult1_ = k;
                break;
            }
        }
        mult2_ = (m + 1 - mult1_) % m;
    }
}

GroupElement CrtSplit::pi1(const GroupElement& x) const {
    return scalar_mul(mult1_, x, group_);
}

GroupElement CrtSplit::pi2(const GroupElement& x) const {
    return scalar_mul(mult2_, x, group_);
}

std::vector<GroupElement> CrtSplit::h1_elements() const {
    std::vector<GroupElement> out;
    for (ElementIndex i = 0; i < group_.order(); ++i) {
        GroupElement e = element_of(i, group_);
        if (index_of(scalar_mul(3, e, group_), group_) == 0) out.push_back(e);
    }
    return out;
}

}  // namespace zsum
