#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <string>
#include <vector>

#include "fgr/error.hpp"
#include "fgr/numeric.hpp"
#include "fgr/perm.hpp"

namespace fgr {

// p_k^lambda(n): for a fixed D of cycle type lambda |- n, the number of n-cycles s such
// that pi = D^-1 o s has k cycles (equivalently, cyclic plane permutations with diagonal D
// and k pi-cycles).

/// Exact counts p_k^lambda(n) for one lambda, keyed by k (zero entries omitted).
struct PkTable {
    CycleType lambda;
    std::map<int, BigInt> counts;

    int n() const { return lambda.size(); }

    /// n + 1 - l(lambda): the largest k that can occur.
    int max_k() const { return n() + 1 - lambda.length(); }

    BigInt at(int k) const {
        const auto it = counts.find(k);
        return it == counts.end() ? BigInt(0) : it->second;
    }

    BigInt total() const {
        BigInt t = 0;
        for (const auto& [k, c] : counts)
            t += c;
        return t;
    }

    /// Sum is (n-1)!, support within k <= max_k and of max_k's parity, top entry positive.
    void check_invariants() const {
        if (total() != factorial(n() - 1))
            throw ConsistencyError("p_k" + lambda.str() + " does not sum to (n-1)!");
        for (const auto& [k, c] : counts) {
            if (c <= 0)
                throw ConsistencyError("p_k table stores a non-positive entry");
            if (k < 1 || k > max_k() || (max_k() - k) % 2 != 0)
                throw ConsistencyError("p_k" + lambda.str() + " has support outside the admissible k");
        }
        if (at(max_k()) <= 0)
            throw ConsistencyError("p_k" + lambda.str() + " misses its maximal k");
    }

    friend bool operator==(const PkTable&, const PkTable&) = default;
};

/// Number of permutations of cycle type lambda: n! / prod_i (i^{a_i} a_i!).
inline BigInt q_lambda(const CycleType& lambda) {
    BigInt z = 1;
    const std::vector<int> a = lambda.multiplicities();
    for (std::size_t i = 1; i < a.size(); ++i) {
        for (int j = 0; j < a[i]; ++j)
            z *= static_cast<long>(i);
        z *= factorial(a[i]);
    }
    return factorial(lambda.size()) / z;
}

/// Every mu obtained from eta by splitting one block into `parts` positive parts.
inline std::vector<CycleType> splits(const CycleType& eta, int parts) {
    if (parts % 2 == 0)
        throw InputError("splits: the number of parts must be odd");
    if (parts < 3)
        throw InputError("splits: the number of parts must be at least 3");
    std::vector<CycleType> out;
    std::vector<int> distinct = eta.parts();
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int block : distinct) {
        if (block < parts)
            continue;
        std::vector<int> rest = eta.parts();
        rest.erase(std::find(rest.begin(), rest.end(), block));
        for (const CycleType& piece : partitions_of(block)) {
            if (piece.length() != parts)
                continue;
            std::vector<int> mu = rest;
            mu.insert(mu.end(), piece.parts().begin(), piece.parts().end());
            out.emplace_back(std::move(mu));
        }
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// kappa(mu, eta): ways to merge l(mu) - l(eta) + 1 blocks of mu into one so that eta
/// results. Blocks of equal size are distinguishable, so a merge set taking m_j of the
/// a_j(mu) blocks of size j contributes prod_j C(a_j(mu), m_j).
inline BigInt kappa(const CycleType& mu, const CycleType& eta) {
    const int take = mu.length() - eta.length() + 1;
    if (take < 2 || mu.size() != eta.size())
        return 0;
    const std::vector<int> a = mu.multiplicities();
    std::vector<int> e = eta.multiplicities();
    e.resize(std::max(a.size(), e.size()), 0);
    BigInt total = 0;
    // The merged block has some size b in eta; the merged parts are then mu - (eta - {b}).
    for (std::size_t b = 1; b < e.size(); ++b) {
        if (e[b] == 0)
            continue;
        BigInt ways = 1;
        int count = 0;
        for (std::size_t j = 1; j < e.size(); ++j) {
            const int kept = e[j] - (j == b ? 1 : 0);
            const int have = j < a.size() ? a[j] : 0;
            if (have < kept) {
                ways = 0;
                break;
            }
            count += have - kept;
            ways *= binomial(have, have - kept);
        }
        if (ways != 0 && count == take)
            total += ways;
    }
    return total;
}

/// Default and hard limits on n for brute-force enumeration of all (n-1)! n-cycles.
struct OracleCap {
    static constexpr int kDefault = 10;
    static constexpr int kMaximum = 12;
};

namespace detail {

inline void check_oracle_cap(int n, int cap) {
    if (cap > OracleCap::kMaximum)
        throw CapExceeded("oracle cap " + std::to_string(cap) + " is above the hard maximum " +
                          std::to_string(OracleCap::kMaximum));
    if (n > cap)
        throw CapExceeded("n = " + std::to_string(n) + " exceeds the oracle cap " + std::to_string(cap));
}

/// D^-1 for the canonical D of type lambda (cycles on consecutive integers), 0-based.
inline std::vector<std::uint8_t> canonical_diagonal_inverse(const CycleType& lambda) {
    std::vector<std::uint8_t> inv(static_cast<std::size_t>(lambda.size()));
    int start = 0;
    for (int part : lambda.parts()) {
        for (int j = 0; j < part; ++j)
            inv[static_cast<std::size_t>(start + (j + 1) % part)] = static_cast<std::uint8_t>(start + j);
        start += part;
    }
    return inv;
}

/// Calls fn(C(D^-1 o c)) for every n-cycle c.
template <class Fn>
void for_each_factorization(const CycleType& lambda, Fn&& fn) {
    const auto n = static_cast<std::size_t>(lambda.size());
    const std::vector<std::uint8_t> dinv = canonical_diagonal_inverse(lambda);
    std::vector<std::uint8_t> seq(n), c(n), pi(n), seen(n);
    std::iota(seq.begin(), seq.end(), std::uint8_t{0});
    do {
        for (std::size_t i = 0; i < n; ++i)
            c[seq[i]] = seq[(i + 1) % n];
        for (std::size_t x = 0; x < n; ++x)
            pi[x] = dinv[c[x]];
        std::fill(seen.begin(), seen.end(), std::uint8_t{0});
        int k = 0;
        for (std::size_t x = 0; x < n; ++x) {
            if (seen[x])
                continue;
            ++k;
            for (std::size_t y = x; !seen[y]; y = pi[y])
                seen[y] = 1;
        }
        fn(k);
    } while (std::next_permutation(seq.begin() + 1, seq.end()));
}

} // namespace detail

/// Brute force: enumerate all (n-1)! n-cycles c and tally C(D^-1 o c).
inline PkTable pk_oracle(const CycleType& lambda, int cap = OracleCap::kDefault) {
    const int n = lambda.size();
    if (n < 1)
        throw InputError("empty partition");
    detail::check_oracle_cap(n, cap);
    std::vector<std::uint64_t> tally(static_cast<std::size_t>(n) + 2, 0);
    detail::for_each_factorization(lambda, [&](int k) { ++tally[static_cast<std::size_t>(k)]; });
    PkTable t{lambda, {}};
    for (int k = 1; k <= n; ++k)
        if (tally[static_cast<std::size_t>(k)])
            t.counts[k] = tally[static_cast<std::size_t>(k)];
    return t;
}

/// Brute force restricted to the top entry p_{n+1-l}^lambda(n).
inline BigInt pk_max_oracle(const CycleType& lambda, int cap = OracleCap::kDefault) {
    const int n = lambda.size();
    detail::check_oracle_cap(n, cap);
    const int top = n + 1 - lambda.length();
    std::uint64_t count = 0;
    detail::for_each_factorization(lambda, [&](int k) { count += (k == top); });
    return count;
}

/// Closed form for the top entry (genus-0 factorizations, counted as cacti):
/// p_{m}^lambda(n) = (l-1)! * prod(lambda_i) * C(n-1, m-1) / m with m = n + 1 - l.
inline BigInt pk_max_closed_form(const CycleType& lambda) {
    const int n = lambda.size();
    const int l = lambda.length();
    const int m = n + 1 - l;
    BigInt r = factorial(l - 1);
    for (int part : lambda.parts())
        r *= part;
    r *= binomial(n - 1, m - 1);
    if (r % m != 0)
        throw ConsistencyError("top-entry closed form is not an integer");
    return r / m;
}

/// Supplies p_{n+1-l(mu)}^mu(n) for the recurrence.
using BaseProvider = std::function<BigInt(const CycleType&)>;

/// Fills in a whole table from the top entries of lambda and of every refinement reached
/// by odd splits:
///
///   p_k^l = [ sum_{i>=1} C(k+2i, k-1) p_{k+2i}^l q^l
///           + sum_{i>=1} sum_{mu split_{2i+1} l} kappa(mu,l) p_k^mu q^mu ] / (q^l (n+1-k-l(l)))
///
/// `refined` returns the complete table of a finer partition (memoized by the caller).
inline PkTable pk_recurrence(const CycleType& lambda, const BaseProvider& base,
                             const std::function<PkTable(const CycleType&)>& refined) {
    const int n = lambda.size();
    const int l = lambda.length();
    const int top = n + 1 - l;
    PkTable t{lambda, {}};
    const BigInt top_value = base(lambda);
    if (top_value <= 0)
        throw ConsistencyError("base value for " + lambda.str() + " is not positive");
    t.counts[top] = top_value;
    const BigInt q = q_lambda(lambda);

    std::vector<std::pair<CycleType, BigInt>> finer;  // (mu, kappa * q^mu)
    for (int i = 1; 2 * i + 1 <= n - l + 1; ++i)
        for (CycleType& mu : splits(lambda, 2 * i + 1))
            finer.emplace_back(mu, kappa(mu, lambda) * q_lambda(mu));
    std::vector<PkTable> finer_tables;
    for (const auto& [mu, w] : finer)
        finer_tables.push_back(refined(mu));

    for (int k = top - 2; k >= 1; k -= 2) {
        BigInt num = 0;
        for (int i = 1; k + 2 * i <= top; ++i)
            num += binomial(k + 2 * i, k - 1) * t.at(k + 2 * i) * q;
        for (std::size_t j = 0; j < finer.size(); ++j)
            num += finer[j].second * finer_tables[j].at(k);
        const BigInt den = q * (n + 1 - k - l);
        if (num % den != 0)
            throw ConsistencyError("recurrence division is inexact for " + lambda.str() + ", k = " +
                                   std::to_string(k));
        const BigInt value = num / den;
        if (value != 0)
            t.counts[k] = value;
    }
    return t;
}

/// Stanley's formula for p_1^lambda(k), evaluated in exact rationals:
///   sum_{i=0}^{k-1} i!(k-1-i)!/k * sum_{r : sum j r_j = i} C(a_1-1, r_1) C(a_2, r_2)...C(a_i, r_i)
///   * (-1)^{r_2 + r_4 + ...}
/// with C(-1, r) = (-1)^r when a_1 = 0.
inline BigInt p1_stanley(const CycleType& lambda) {
    const int k = lambda.size();
    const std::vector<int> a = lambda.multiplicities();
    auto mult = [&](int j) { return j < static_cast<int>(a.size()) ? a[static_cast<std::size_t>(j)] : 0; };
    Rational total = 0;
    for (int i = 0; i < k; ++i) {
        BigInt inner = 0;
        // r_j for j = 1..i with sum j r_j = i
        std::vector<int> r(static_cast<std::size_t>(i) + 1, 0);
        auto rec = [&](auto&& self, int j, int remaining) -> void {
            if (remaining == 0) {
                BigInt term = 1;
                int sign_exp = 0;
                for (int jj = 1; jj <= i; ++jj) {
                    const int rj = r[static_cast<std::size_t>(jj)];
                    if (jj == 1) {
                        const int top = mult(1) - 1;
                        if (top < 0)
                            term *= (rj % 2 ? -1 : 1);
                        else
                            term *= binomial(top, rj);
                    } else {
                        term *= binomial(mult(jj), rj);
                        if (jj % 2 == 0)
                            sign_exp += rj;
                    }
                }
                inner += (sign_exp % 2 ? -term : term);
                return;
            }
            if (j > i)
                return;
            for (int rj = remaining / j; rj >= 0; --rj) {
                r[static_cast<std::size_t>(j)] = rj;
                self(self, j + 1, remaining - j * rj);
            }
            r[static_cast<std::size_t>(j)] = 0;
        };
        rec(rec, 1, i);
        total += Rational(factorial(i) * factorial(k - 1 - i) * inner, BigInt(k));
    }
    if (boost::multiprecision::denominator(total) != 1)
        throw ConsistencyError("Stanley's formula gave a non-integer for " + lambda.str());
    return boost::multiprecision::numerator(total);
}

/// One-face reembedding count when the localization is the reversed rotation
/// pi_nu = (v_1, v_d, ..., v_2) of s_nu = (v_1 ... v_d):
///   d odd         2(d-1)!/(d+1)
///   4 | d         2(d-1)!/(d+1) * (1 - 1/C(d, d/2))
///   d = 2 mod 4   2(d-1)!/(d+1) * (1 + 1/C(d, d/2))
inline BigInt r_nu_closed_form(int d) {
    if (d < 3)
        throw InputError("the reversed-rotation closed form needs d >= 3");
    Rational r(2 * factorial(d - 1), BigInt(d + 1));
    if (d % 2 == 0) {
        const Rational correction(BigInt(1), binomial(d, d / 2));
        r *= (d % 4 == 0) ? Rational(1) - correction : Rational(1) + correction;
    }
    if (boost::multiprecision::denominator(r) != 1)
        throw ConsistencyError("reversed-rotation closed form is not an integer for d = " + std::to_string(d));
    return boost::multiprecision::numerator(r);
}

struct RationalBound {
    Rational lower;
    Rational upper;

    bool contains(const Rational& x) const { return lower <= x && x <= upper; }
};

/// 2(k-1)!/(k-a_1+2) <= p_1^lambda(k) <= 2(k-1)!/(k-a_1+19/29), lambda |- k.
inline RationalBound zagier_bounds(const CycleType& lambda) {
    const int k = lambda.size();
    if (!lambda.is_even())
        throw InputError("p_1 vanishes for " + lambda.str() + " (odd permutation); the bounds do not apply");
    const int a1 = lambda.multiplicity(1);
    const BigInt twice = 2 * factorial(k - 1);
    const Rational lower = Rational(twice) / Rational(k - a1 + 2);
    const Rational upper = Rational(twice) / (Rational(k - a1) + Rational(19, 29));
    return {lower, upper};
}

enum class BaseSource {
    /// Restricted oracle up to the oracle cap, closed form above it.
    Auto,
    RestrictedOracle,
    ClosedForm,
};

/// Memoized p_k tables computed by the recurrence. Safe for concurrent use: readers share
/// the cache, writers are serialized.
class PkEngine {
public:
    explicit PkEngine(BaseSource source = BaseSource::Auto, int oracle_cap = OracleCap::kDefault)
        : source_(source), oracle_cap_(oracle_cap) {}

    PkTable table(const CycleType& lambda) {
        {
            std::shared_lock lock(mutex_);
            if (const auto it = cache_.find(lambda); it != cache_.end())
                return it->second;
        }
        PkTable t = pk_recurrence(
            lambda, [this](const CycleType& mu) { return base(mu); },
            [this](const CycleType& mu) { return table(mu); });
        std::unique_lock lock(mutex_);
        return cache_.emplace(lambda, std::move(t)).first->second;
    }

    BigInt p(const CycleType& lambda, int k) { return table(lambda).at(k); }

    BigInt base(const CycleType& lambda) const {
        switch (source_) {
        case BaseSource::RestrictedOracle:
            return pk_max_oracle(lambda, oracle_cap_);
        case BaseSource::ClosedForm:
            return pk_max_closed_form(lambda);
        case BaseSource::Auto:
            break;
        }
        return lambda.size() <= oracle_cap_ ? pk_max_oracle(lambda, oracle_cap_) : pk_max_closed_form(lambda);
    }

private:
    BaseSource source_;
    int oracle_cap_;
    mutable std::shared_mutex mutex_;
    std::map<CycleType, PkTable> cache_;
};

} // namespace fgr
