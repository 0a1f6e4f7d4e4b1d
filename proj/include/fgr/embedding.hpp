#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fgr/error.hpp"
#include "fgr/numeric.hpp"
#include "fgr/perm.hpp"
#include "fgr/plane_permutation.hpp"

namespace fgr {

/// A named vertex and the counterclockwise cyclic order of its half-edges.
struct Vertex {
    std::string name;
    std::vector<Label> rotation;

    friend bool operator==(const Vertex&, const Vertex&) = default;
};

enum class EdgeKind {
    /// alpha must be a fixed-point-free involution (ordinary edges, loops allowed).
    Map,
    /// alpha is arbitrary; its cycles are hyperedges.
    Hypermap,
};

/// A graph without its rotations: alpha plus the vertex blocks (half-edges sorted).
struct UnderlyingGraph {
    Permutation alpha;
    std::vector<Vertex> vertices;

    std::size_t num_half_edges() const { return alpha.size(); }
};

/// An orientable embedding as a permutation triple (alpha, beta, gamma), gamma = alpha o beta.
///
/// alpha pairs the half-edges of each edge (or cycles those of a hyperedge), the beta-cycles
/// are the vertex rotations and the gamma-cycles are the faces. The underlying structure is
/// always connected.
class Hypermap {
public:
    static Hypermap from_rotation_system(std::vector<Vertex> vertices, Permutation alpha,
                                         EdgeKind kind = EdgeKind::Map) {
        const std::size_t n = alpha.size();
        std::vector<Label> beta(n, 0);
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            const Vertex& v = vertices[i];
            if (v.name.empty())
                throw InputError("vertex with an empty name");
            for (std::size_t j = 0; j < i; ++j)
                if (vertices[j].name == v.name)
                    throw InputError("duplicate vertex name '" + v.name + "'");
            if (v.rotation.empty())
                throw InputError("vertex '" + v.name + "' has no half-edges");
            for (std::size_t j = 0; j < v.rotation.size(); ++j) {
                const Label x = v.rotation[j];
                if (x < 1 || x > n)
                    throw InputError("half-edge " + std::to_string(x) + " outside 1.." + std::to_string(n));
                if (beta[x - 1] != 0)
                    throw InputError("half-edge " + std::to_string(x) + " listed twice");
                beta[x - 1] = v.rotation[(j + 1) % v.rotation.size()];
            }
        }
        for (std::size_t x = 1; x <= n; ++x)
            if (beta[x - 1] == 0)
                throw InputError("half-edge " + std::to_string(x) + " belongs to no vertex");
        if (kind == EdgeKind::Map && (!alpha.is_involution() || alpha.has_fixed_point()))
            throw InputError("edges must pair every half-edge with a different one");
        return Hypermap(std::move(vertices), std::move(alpha), Permutation::from_images(std::move(beta)));
    }

    const Permutation& alpha() const noexcept { return alpha_; }
    const Permutation& beta() const noexcept { return beta_; }
    const Permutation& gamma() const noexcept { return gamma_; }

    /// n, the number of half-edges.
    std::size_t size() const noexcept { return alpha_.size(); }

    /// alpha is a fixed-point-free involution.
    bool is_map() const { return alpha_.is_involution() && !alpha_.has_fixed_point(); }

    /// Vertices in construction order; each rotation starts at its smallest half-edge.
    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }

    std::size_t vertex_index(std::string_view name) const {
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (vertices_[i].name == name)
                return i;
        throw InputError("unknown vertex '" + std::string(name) + "'");
    }

    const Vertex& vertex(std::string_view name) const { return vertices_[vertex_index(name)]; }

    std::size_t num_vertices() const noexcept { return vertices_.size(); }
    std::size_t num_edges() const { return num_cycles(alpha_); }
    std::size_t num_faces() const { return num_cycles(gamma_); }

    UnderlyingGraph underlying_graph() const {
        UnderlyingGraph g{alpha_, vertices_};
        for (Vertex& v : g.vertices)
            std::sort(v.rotation.begin(), v.rotation.end());
        return g;
    }

    /// Same alpha and names, new rotations (each vertex's half-edge set must not change).
    Hypermap with_rotations(std::vector<Vertex> vertices) const {
        return from_rotation_system(std::move(vertices), alpha_, EdgeKind::Hypermap);
    }

    /// Same permutations and the same named vertices, in any listing order.
    friend bool operator==(const Hypermap& a, const Hypermap& b) {
        if (a.alpha_ != b.alpha_ || a.beta_ != b.beta_ || a.vertices_.size() != b.vertices_.size())
            return false;
        for (const Vertex& v : a.vertices_) {
            const auto it = std::find_if(b.vertices_.begin(), b.vertices_.end(),
                                         [&](const Vertex& w) { return w.name == v.name; });
            if (it == b.vertices_.end() || *it != v)
                return false;
        }
        return true;
    }

private:
    Hypermap(std::vector<Vertex> vertices, Permutation alpha, Permutation beta)
        : alpha_(std::move(alpha)), beta_(std::move(beta)), gamma_(compose(alpha_, beta_)),
          vertices_(std::move(vertices)) {
        for (Vertex& v : vertices_)
            std::rotate(v.rotation.begin(), std::min_element(v.rotation.begin(), v.rotation.end()),
                        v.rotation.end());
        check_connected();
    }

    void check_connected() const {
        const std::size_t n = size();
        std::vector<bool> seen(n + 1, false);
        std::vector<Label> stack{1};
        seen[1] = true;
        std::size_t reached = 1;
        while (!stack.empty()) {
            const Label x = stack.back();
            stack.pop_back();
            // Forward images suffice: orbits of a finite permutation group are closed under them.
            for (Label y : {alpha_(x), beta_(x)}) {
                if (!seen[y]) {
                    seen[y] = true;
                    ++reached;
                    stack.push_back(y);
                }
            }
        }
        if (reached != n)
            throw InputError("embedding is disconnected");
    }

    Permutation alpha_;
    Permutation beta_;
    Permutation gamma_;
    std::vector<Vertex> vertices_;
};

/// Genus from C(alpha) + C(beta) + C(gamma) - n = 2 - 2g. For maps the edge/vertex/face
/// form C(beta) - C(alpha) + C(gamma) = 2 - 2g is evaluated too and must agree.
inline int genus(const Hypermap& h) {
    const auto ca = static_cast<long>(num_cycles(h.alpha()));
    const auto cb = static_cast<long>(num_cycles(h.beta()));
    const auto cg = static_cast<long>(num_cycles(h.gamma()));
    const auto n = static_cast<long>(h.size());
    const long chi = ca + cb + cg - n;
    if (chi % 2 != 0 || chi > 2)
        throw ConsistencyError("Euler characteristic " + std::to_string(chi) + " does not give a genus");
    const long g = (2 - chi) / 2;
    if (h.is_map() && cb - ca + cg != chi)
        throw ConsistencyError("map genus formulas disagree");
    return static_cast<int>(g);
}

/// beta(G) = e - v + 1, hyperedges counted as alpha-cycles.
inline int betti(const Hypermap& h) {
    return static_cast<int>(h.num_edges()) - static_cast<int>(h.num_vertices()) + 1;
}

struct Face {
    Cycle cycle;
    std::vector<Label> half_edges;

    friend bool operator==(const Face&, const Face&) = default;
};

inline std::vector<Face> faces(const Hypermap& h) {
    std::vector<Face> out;
    for (Cycle& c : cycles(h.gamma())) {
        std::vector<Label> support = c;
        std::sort(support.begin(), support.end());
        out.push_back({std::move(c), std::move(support)});
    }
    return out;
}

struct FaceIncidence {
    /// Distinct faces meeting the vertex.
    std::size_t q;
    std::vector<Face> faces;
};

inline FaceIncidence faces_at(const Hypermap& h, std::string_view vertex_name) {
    const Vertex& v = h.vertex(vertex_name);
    FaceIncidence out{0, {}};
    for (Face& f : faces(h)) {
        const bool incident = std::any_of(v.rotation.begin(), v.rotation.end(), [&](Label x) {
            return std::binary_search(f.half_edges.begin(), f.half_edges.end(), x);
        });
        if (incident)
            out.faces.push_back(std::move(f));
    }
    out.q = out.faces.size();
    return out;
}

/// (gamma, beta): faces as s-cycles, vertices as pi-cycles, diagonal alpha.
inline PlanePermutation to_plane_permutation(const Hypermap& h) { return PlanePermutation(h.gamma(), h.beta()); }

/// Replaces the rotation of one vertex; alpha and every other rotation stay as they are.
inline Hypermap set_rotation(const Hypermap& h, std::string_view vertex_name, std::vector<Label> order) {
    const std::size_t idx = h.vertex_index(vertex_name);
    std::vector<Label> want = h.vertices()[idx].rotation;
    std::vector<Label> got = order;
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (want != got)
        throw InputError("new rotation of '" + std::string(vertex_name) + "' must use exactly its half-edges");
    std::vector<Vertex> vs = h.vertices();
    vs[idx].rotation = std::move(order);
    return h.with_rotations(std::move(vs));
}

/// Default limits for exhaustive enumeration.
struct Caps {
    /// Largest vertex degree whose (d-1)! rotations may be enumerated.
    int degree = 12;
    /// Largest number of embeddings of a whole graph that may be enumerated.
    std::uint64_t embeddings = 10'000'000;
};

inline std::uint64_t rotation_count(std::size_t degree) {
    std::uint64_t r = 1;
    for (std::size_t i = 2; i < degree; ++i)
        r *= i;
    return r;
}

/// Calls fn(order) for each of the (d-1)! cyclic orders of `half_edges`; the smallest
/// half-edge is always first, so every rotation is produced exactly once.
template <class Fn>
void for_each_rotation(std::span<const Label> half_edges, Fn&& fn) {
    std::vector<Label> order(half_edges.begin(), half_edges.end());
    if (order.empty())
        return;
    std::sort(order.begin(), order.end());
    do {
        fn(static_cast<const std::vector<Label>&>(order));
    } while (std::next_permutation(order.begin() + 1, order.end()));
}

/// All cyclic orders of positions 0..d-1 with 0 first.
inline std::vector<std::vector<std::size_t>> enumerate_rotations(std::size_t degree, int cap = Caps{}.degree) {
    if (degree < 1)
        throw InputError("degree must be at least 1");
    if (degree > static_cast<std::size_t>(cap))
        throw CapExceeded("degree " + std::to_string(degree) + " exceeds the rotation cap " + std::to_string(cap));
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> order(degree);
    std::iota(order.begin(), order.end(), std::size_t{0});
    do {
        out.push_back(order);
    } while (std::next_permutation(order.begin() + 1, order.end()));
    return out;
}

/// prod (d_v - 1)!, saturating at UINT64_MAX.
inline std::uint64_t embedding_count(const UnderlyingGraph& g) {
    BigInt total = 1;
    for (const Vertex& v : g.vertices)
        total *= factorial(static_cast<std::int64_t>(v.rotation.size()) - 1);
    if (total > BigInt(UINT64_MAX))
        return UINT64_MAX;
    return static_cast<std::uint64_t>(total);
}

/// Calls fn(hypermap) once for every rotation system of `g`; the last vertex varies fastest.
template <class Fn>
void all_embeddings(const UnderlyingGraph& g, Fn&& fn, std::uint64_t cap = Caps{}.embeddings) {
    const std::uint64_t total = embedding_count(g);
    if (total > cap)
        throw CapExceeded(std::to_string(total) + " embeddings exceed the enumeration cap " + std::to_string(cap));
    std::vector<Vertex> vs = g.vertices;
    for (Vertex& v : vs)
        std::sort(v.rotation.begin(), v.rotation.end());
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == vs.size()) {
            fn(Hypermap::from_rotation_system(vs, g.alpha, EdgeKind::Hypermap));
            return;
        }
        auto& rot = vs[i].rotation;
        std::sort(rot.begin(), rot.end());
        do {
            self(self, i + 1);
        } while (std::next_permutation(rot.begin() + 1, rot.end()));
        std::sort(rot.begin(), rot.end());
    };
    rec(rec, 0);
}

} // namespace fgr
