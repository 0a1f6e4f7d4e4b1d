#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fgr/counting.hpp"
#include "fgr/embedding.hpp"
#include "fgr/error.hpp"
#include "fgr/numeric.hpp"
#include "fgr/perm.hpp"
#include "fgr/plane_permutation.hpp"

namespace fgr {

// Local genus analysis at a vertex nu of degree d, incident to q distinct faces, whose
// localization has diagonal D_nu of cycle type lambda. Rotating nu turns the q incident
// faces into q' faces (q' = q mod 2) and leaves every other face alone, so the genus moves
// by (q - q') / 2. The number of rotations reaching q' faces is p_{q'}^lambda(d).

enum class Method { Oracle, Formula, Both };

inline std::string to_string(Method m) {
    switch (m) {
    case Method::Oracle:
        return "oracle";
    case Method::Formula:
        return "formula";
    case Method::Both:
        return "both";
    }
    return "?";
}

/// What a vertex looks like from its localization.
struct VertexLocal {
    std::string name;
    int degree;
    /// Distinct incident faces.
    int q;
    /// Cycle type of D_nu.
    CycleType lambda;
};

inline VertexLocal vertex_local(const Hypermap& h, std::string_view name) {
    const Vertex& v = h.vertex(name);
    const Localization loc = localize(to_plane_permutation(h), v.rotation);
    return {v.name, static_cast<int>(v.rotation.size()), static_cast<int>(loc.q), cycle_type(loc.d_nu)};
}

struct GenusDistribution {
    std::string vertex;
    int degree;
    int q;
    CycleType lambda;
    /// g(epsilon) of the embedding being reembedded.
    int genus;
    /// genus change -> number of rotations of the vertex producing it
    std::map<int, BigInt> dist;
    Method method;

    BigInt total() const {
        BigInt t = 0;
        for (const auto& [dg, c] : dist)
            t += c;
        return t;
    }
};

namespace detail {

/// Genus after giving vertex `idx` each of its rotations, tallied as genus changes.
inline std::map<int, BigInt> oracle_distribution(const Hypermap& h, std::size_t idx) {
    const long n = static_cast<long>(h.size());
    const long ca = static_cast<long>(num_cycles(h.alpha()));
    const long cb = static_cast<long>(num_cycles(h.beta()));
    const int g0 = genus(h);
    std::vector<Label> beta(h.beta().images().begin(), h.beta().images().end());
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1);
    std::map<int, std::uint64_t> tally;
    for_each_rotation(h.vertices()[idx].rotation, [&](const std::vector<Label>& order) {
        for (std::size_t j = 0; j < order.size(); ++j)
            beta[order[j] - 1] = order[(j + 1) % order.size()];
        std::fill(seen.begin(), seen.end(), false);
        long faces = 0;
        for (Label x = 1; x <= static_cast<Label>(n); ++x) {
            if (seen[x])
                continue;
            ++faces;
            for (Label y = x; !seen[y]; y = h.alpha()(beta[y - 1]))
                seen[y] = true;
        }
        const long chi = ca + cb + faces - n;
        ++tally[static_cast<int>((2 - chi) / 2) - g0];
    });
    std::map<int, BigInt> out;
    for (const auto& [dg, c] : tally)
        out[dg] = c;
    return out;
}

inline std::map<int, BigInt> formula_distribution(const VertexLocal& local, PkEngine& engine) {
    std::map<int, BigInt> out;
    for (const auto& [k, count] : engine.table(local.lambda).counts) {
        if ((local.q - k) % 2 != 0)
            throw ConsistencyError("incident face count and p_k support have different parity at vertex " +
                                   local.name);
        out[(local.q - k) / 2] = count;
    }
    return out;
}

} // namespace detail

/// R_nu(dg) for every genus change dg reachable by rotating `name`.
inline GenusDistribution local_distribution(const Hypermap& h, std::string_view name, Method method,
                                            PkEngine& engine, int degree_cap = Caps{}.degree) {
    const std::size_t idx = h.vertex_index(name);
    const VertexLocal local = vertex_local(h, name);
    GenusDistribution out{local.name, local.degree, local.q, local.lambda, genus(h), {}, method};
    if (method != Method::Formula && local.degree > degree_cap)
        throw CapExceeded("vertex '" + local.name + "' has degree " + std::to_string(local.degree) +
                          ", above the oracle cap " + std::to_string(degree_cap));
    if (method == Method::Formula) {
        out.dist = detail::formula_distribution(local, engine);
    } else if (method == Method::Oracle) {
        out.dist = detail::oracle_distribution(h, idx);
    } else {
        out.dist = detail::oracle_distribution(h, idx);
        if (detail::formula_distribution(local, engine) != out.dist)
            throw ConsistencyError("oracle and formula distributions disagree at vertex " + local.name);
    }
    return out;
}

struct GenusRange {
    int min;
    int max;

    friend bool operator==(const GenusRange&, const GenusRange&) = default;
};

/// -floor((d + 1 - l - q) / 2) <= dg <= floor((q - 1) / 2)
inline GenusRange local_genus_range(const VertexLocal& v) {
    return {-((v.degree + 1 - v.lambda.length() - v.q) / 2), (v.q - 1) / 2};
}

inline GenusRange local_genus_range(const Hypermap& h, std::string_view name) {
    return local_genus_range(vertex_local(h, name));
}

struct MinGenusRow {
    std::string vertex;
    int ell;
    int q;
    int degree;
    bool pass;
};

struct MinGenusReport {
    std::vector<MinGenusRow> rows;
    /// False proves that a lower-genus embedding exists.
    bool satisfied;
};

/// Necessary condition for minimum genus: l(lambda(D_nu)) + q_nu = deg(nu) + 1 everywhere.
inline MinGenusReport min_genus_check(const Hypermap& h) {
    MinGenusReport r{{}, true};
    for (const Vertex& v : h.vertices()) {
        const VertexLocal loc = vertex_local(h, v.name);
        const bool pass = loc.lambda.length() + loc.q == loc.degree + 1;
        r.rows.push_back({v.name, loc.lambda.length(), loc.q, loc.degree, pass});
        r.satisfied = r.satisfied && pass;
    }
    return r;
}

struct MaxGenusRow {
    std::string vertex;
    int q;
    bool pass;
};

struct MaxGenusReport {
    std::vector<MaxGenusRow> rows;
    /// False proves that a higher-genus embedding exists.
    bool satisfied;
};

/// Necessary condition for maximum genus: every vertex meets at most 2 faces.
inline MaxGenusReport max_genus_check(const Hypermap& h) {
    MaxGenusReport r{{}, true};
    for (const Vertex& v : h.vertices()) {
        const int q = static_cast<int>(faces_at(h, v.name).q);
        r.rows.push_back({v.name, q, q <= 2});
        r.satisfied = r.satisfied && q <= 2;
    }
    return r;
}

struct OneFaceProbability {
    /// R_nu / (d-1)!
    Rational probability;
    /// Zagier's bounds divided by (d-1)!: [2/(d-a_1+2), 2/(d-a_1+19/29)].
    RationalBound bounds;
    /// 2/(d+2)
    Rational universal;
    BigInt one_face_rotations;

    bool within_bounds() const { return bounds.contains(probability); }
    bool above_universal() const { return probability >= universal; }
};

/// Probability that a uniformly random rotation of `name` keeps a one-face embedding one-face.
inline OneFaceProbability one_face_probability(const Hypermap& h, std::string_view name, PkEngine& engine) {
    if (h.num_faces() != 1)
        throw InputError("one-face probability needs a one-face embedding (this one has " +
                         std::to_string(h.num_faces()) + " faces)");
    const VertexLocal v = vertex_local(h, name);
    const BigInt rotations = factorial(v.degree - 1);
    const BigInt r = engine.p(v.lambda, 1);
    const RationalBound raw = zagier_bounds(v.lambda);
    OneFaceProbability out{Rational(r, rotations),
                           {raw.lower / Rational(rotations), raw.upper / Rational(rotations)},
                           Rational(2, v.degree + 2),
                           r};
    return out;
}

/// prod over vertices of 2/(deg + 2).
inline Rational one_face_lower_bound(const UnderlyingGraph& g) {
    Rational r = 1;
    for (const Vertex& v : g.vertices)
        r *= Rational(2, static_cast<long>(v.rotation.size()) + 2);
    return r;
}

struct OneFaceCount {
    BigInt count;
    BigInt total;
    /// Vertices of degree >= 4.
    int m;

    /// count >= 2^m whenever some one-face embedding exists.
    bool bound_holds() const { return count == 0 || count >= (BigInt(1) << m); }
};

inline OneFaceCount count_one_face_embeddings(const UnderlyingGraph& g, std::uint64_t cap = Caps{}.embeddings) {
    OneFaceCount out{0, 0, 0};
    for (const Vertex& v : g.vertices)
        out.m += v.rotation.size() >= 4 ? 1 : 0;
    all_embeddings(
        g,
        [&](const Hypermap& h) {
            ++out.total;
            if (h.num_faces() == 1)
                ++out.count;
        },
        cap);
    if (!out.bound_holds())
        throw ConsistencyError("fewer than 2^m one-face embeddings");
    return out;
}

/// Summed local ranges of vertices that pairwise share no incident face.
inline GenusRange face_disjoint_range(const Hypermap& h, const std::vector<std::string>& names) {
    std::vector<std::vector<Label>> supports;
    for (const std::string& name : names) {
        std::vector<Label> s;
        for (const Face& f : faces_at(h, name).faces)
            s.insert(s.end(), f.half_edges.begin(), f.half_edges.end());
        std::sort(s.begin(), s.end());
        supports.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j) {
            std::vector<Label> common;
            std::set_intersection(supports[i].begin(), supports[i].end(), supports[j].begin(), supports[j].end(),
                                  std::back_inserter(common));
            if (!common.empty() || names[i] == names[j])
                throw InputError("vertices '" + names[i] + "' and '" + names[j] + "' share an incident face");
        }
    GenusRange total{0, 0};
    for (const std::string& name : names) {
        const GenusRange r = local_genus_range(h, name);
        total.min += r.min;
        total.max += r.max;
    }
    return total;
}

/// In a one-face embedding every vertex of degree >= 4 has a second genus-preserving rotation.
inline bool theorem32_check(const Hypermap& h, std::string_view name, PkEngine& engine) {
    if (h.num_faces() != 1)
        throw InputError("needs a one-face embedding");
    const VertexLocal v = vertex_local(h, name);
    if (v.degree < 4)
        throw InputError("needs a vertex of degree at least 4");
    return engine.p(v.lambda, 1) >= 2;
}

/// Outcome of checking every vertex of every embedding of one graph.
struct SweepStats {
    std::uint64_t embeddings = 0;
    std::uint64_t checks = 0;
    std::vector<std::string> failures;
};

/// For each vertex of each rotation system of `g`: the oracle distribution (genus of every
/// rotation of that vertex with the others held fixed) must equal the formula distribution,
/// and its support must be exactly the closed local genus range.
///
/// Embeddings that differ only at one vertex share that vertex's oracle histogram, so each
/// embedding's genus is computed once.
inline SweepStats cross_validate_graph(const UnderlyingGraph& g, PkEngine& engine,
                                       std::uint64_t cap = Caps{}.embeddings) {
    SweepStats stats;
    const std::uint64_t total = embedding_count(g);
    if (total > cap)
        throw CapExceeded(std::to_string(total) + " embeddings exceed the enumeration cap " + std::to_string(cap));
    const std::size_t nv = g.vertices.size();
    const std::size_t n = g.num_half_edges();

    std::vector<std::vector<std::vector<Label>>> rotations(nv);
    for (std::size_t i = 0; i < nv; ++i)
        for_each_rotation(g.vertices[i].rotation,
                          [&](const std::vector<Label>& order) { rotations[i].push_back(order); });
    // Mixed radix: the last vertex varies fastest.
    std::vector<std::uint64_t> stride(nv, 1);
    for (std::size_t i = nv; i-- > 1;)
        stride[i - 1] = stride[i] * rotations[i].size();

    const long ca = static_cast<long>(num_cycles(g.alpha));
    const long cb = static_cast<long>(nv);
    auto beta_of = [&](std::uint64_t index) {
        std::vector<Label> beta(n);
        for (std::size_t i = 0; i < nv; ++i) {
            const auto& order = rotations[i][(index / stride[i]) % rotations[i].size()];
            for (std::size_t j = 0; j < order.size(); ++j)
                beta[order[j] - 1] = order[(j + 1) % order.size()];
        }
        return Permutation::from_images(std::move(beta));
    };

    std::vector<int> genera(total);
    for (std::uint64_t e = 0; e < total; ++e) {
        const long faces = static_cast<long>(num_cycles(compose(g.alpha, beta_of(e))));
        genera[e] = static_cast<int>((2 - (ca + cb + faces - static_cast<long>(n))) / 2);
    }
    stats.embeddings = total;

    std::map<std::pair<CycleType, int>, std::map<int, BigInt>> formula_cache;
    for (std::size_t vi = 0; vi < nv; ++vi) {
        const std::uint64_t radix = rotations[vi].size();
        for (std::uint64_t group = 0; group < total; ++group) {
            if ((group / stride[vi]) % radix != 0)
                continue;
            std::map<int, std::uint64_t> histogram;
            for (std::uint64_t j = 0; j < radix; ++j)
                ++histogram[genera[group + j * stride[vi]]];

            for (std::uint64_t j = 0; j < radix; ++j) {
                const std::uint64_t e = group + j * stride[vi];
                std::map<int, BigInt> oracle;
                for (const auto& [g1, c] : histogram)
                    oracle[g1 - genera[e]] = c;

                const Permutation beta = beta_of(e);
                const PlanePermutation p(compose(g.alpha, beta), beta);
                const Localization loc = localize(p, g.vertices[vi].rotation);
                const VertexLocal local{g.vertices[vi].name, static_cast<int>(loc.degree()), static_cast<int>(loc.q),
                                        cycle_type(loc.d_nu)};
                auto key = std::make_pair(local.lambda, local.q);
                auto it = formula_cache.find(key);
                if (it == formula_cache.end())
                    it = formula_cache.emplace(key, detail::formula_distribution(local, engine)).first;
                ++stats.checks;

                const GenusRange range = local_genus_range(local);
                const bool support_ok = oracle.begin()->first == range.min && oracle.rbegin()->first == range.max &&
                                        static_cast<int>(oracle.size()) == range.max - range.min + 1;
                if ((it->second != oracle || !support_ok) && stats.failures.size() < 20)
                    stats.failures.push_back("embedding #" + std::to_string(e) + ", vertex " + local.name +
                                             (support_ok ? ": formula != oracle" : ": support != local range"));
            }
        }
    }
    return stats;
}

} // namespace fgr
