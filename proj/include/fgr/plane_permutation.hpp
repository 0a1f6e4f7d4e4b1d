#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fgr/error.hpp"
#include "fgr/perm.hpp"

namespace fgr {

/// A pair (s, pi) of permutations on the same ground set. Its diagonal is
/// D = s o pi^-1; it is cyclic when s is a single cycle.
///
/// For an embedding (alpha, beta, gamma) the pair (gamma, beta) is a plane permutation
/// whose diagonal is alpha: s-cycles are faces, pi-cycles are vertices.
class PlanePermutation {
public:
    PlanePermutation(Permutation s, Permutation pi)
        : s_(std::move(s)), pi_(std::move(pi)), k_(0) {
        if (s_.size() != pi_.size())
            throw InputError("plane permutation: s and pi act on different ground sets");
        k_ = num_cycles(s_);
    }

    const Permutation& s() const noexcept { return s_; }
    const Permutation& pi() const noexcept { return pi_; }
    std::size_t size() const noexcept { return s_.size(); }

    /// k = C(s)
    std::size_t num_s_cycles() const noexcept { return k_; }
    bool is_cyclic() const noexcept { return k_ == 1; }

    friend bool operator==(const PlanePermutation& a, const PlanePermutation& b) {
        return a.s_ == b.s_ && a.pi_ == b.pi_;
    }

private:
    Permutation s_;
    Permutation pi_;
    std::size_t k_;
};

inline Permutation diagonal(const PlanePermutation& p) { return compose(p.s(), inverse(p.pi())); }

struct Column {
    Label top;
    Label bottom;

    friend bool operator==(const Column&, const Column&) = default;
};

/// Two-line presentation: one run of columns per s-cycle, tops in s-order,
/// bottom = pi(top). The first top and the last bottom of each run are its corners.
struct TwoLine {
    std::vector<std::vector<Column>> cycles;

    std::size_t num_columns() const {
        std::size_t n = 0;
        for (const auto& c : cycles)
            n += c.size();
        return n;
    }

    std::vector<Label> tops() const {
        std::vector<Label> out;
        for (const auto& c : cycles)
            for (const Column& col : c)
                out.push_back(col.top);
        return out;
    }

    std::vector<Label> bottoms() const {
        std::vector<Label> out;
        for (const auto& c : cycles)
            for (const Column& col : c)
                out.push_back(col.bottom);
        return out;
    }

    friend bool operator==(const TwoLine&, const TwoLine&) = default;
};

/// Canonical two-line form: each s-cycle starts at its smallest element, runs ordered by it.
inline TwoLine two_line(const PlanePermutation& p) {
    TwoLine t;
    for (const Cycle& c : cycles(p.s())) {
        std::vector<Column> run;
        run.reserve(c.size());
        for (Label x : c)
            run.push_back({x, p.pi()(x)});
        t.cycles.push_back(std::move(run));
    }
    return t;
}

/// Rebuilds (s, pi) from runs of columns; labels must be exactly 1..n on each row.
inline PlanePermutation from_two_line(const TwoLine& t) {
    const std::size_t n = t.num_columns();
    if (n == 0)
        throw InputError("two-line form has no columns");
    std::vector<Label> s(n, 0), pi(n, 0);
    for (const auto& run : t.cycles) {
        if (run.empty())
            throw InputError("two-line form has an empty cycle");
        for (std::size_t j = 0; j < run.size(); ++j) {
            const Label top = run[j].top;
            if (top < 1 || top > n || s[top - 1] != 0)
                throw InputError("two-line tops are not a bijection of 1.." + std::to_string(n));
            s[top - 1] = run[(j + 1) % run.size()].top;
            pi[top - 1] = run[j].bottom;
        }
    }
    try {
        return PlanePermutation(Permutation::from_images(std::move(s)), Permutation::from_images(std::move(pi)));
    } catch (const InputError&) {
        throw InputError("two-line bottoms are not a bijection of the tops");
    }
}

/// The diagonal read off the diagonal pairs: the bottom of each column maps to the
/// top of the next column of its run (cyclically). Independent of compose/inverse.
inline Permutation diagonal_from_two_line(const TwoLine& t) {
    std::vector<Label> d(t.num_columns(), 0);
    for (const auto& run : t.cycles)
        for (std::size_t j = 0; j < run.size(); ++j)
            d[run[j].bottom - 1] = run[(j + 1) % run.size()].top;
    return Permutation::from_images(std::move(d));
}

/// Text rendering: tops on the first line, bottoms on the second; columns right-aligned
/// to a common width, runs separated by " | ", each run's first top and last bottom
/// boxed as "[x]".
inline std::string render(const TwoLine& t) {
    std::string top_line, bottom_line;
    for (std::size_t r = 0; r < t.cycles.size(); ++r) {
        const auto& run = t.cycles[r];
        if (r) {
            top_line += " | ";
            bottom_line += " | ";
        }
        for (std::size_t j = 0; j < run.size(); ++j) {
            std::string a = std::to_string(run[j].top);
            std::string b = std::to_string(run[j].bottom);
            if (j == 0)
                a = "[" + a + "]";
            if (j + 1 == run.size())
                b = "[" + b + "]";
            const std::size_t w = std::max(a.size(), b.size());
            if (j) {
                top_line += ' ';
                bottom_line += ' ';
            }
            top_line += std::string(w - a.size(), ' ') + a;
            bottom_line += std::string(w - b.size(), ' ') + b;
        }
    }
    return top_line + "\n" + bottom_line + "\n";
}

/// A run of consecutive diagonal pairs, named <lower_left, upper_right>.
/// bottoms[0] == lower_left, tops.back() == upper_right, and bottoms[i] pairs with tops[i].
struct DiagonalBlock {
    Label lower_left;
    Label upper_right;
    std::vector<Label> tops;
    std::vector<Label> bottoms;

    friend bool operator==(const DiagonalBlock&, const DiagonalBlock&) = default;
};

/// The block whose corners are the bottom entry `lower_left` and the top entry
/// `upper_right`; both must lie in the same s-cycle.
inline DiagonalBlock diagonal_block(const PlanePermutation& p, Label lower_left, Label upper_right) {
    const std::size_t n = p.size();
    if (lower_left < 1 || lower_left > n || upper_right < 1 || upper_right > n)
        throw InputError("diagonal block corner outside the ground set");
    const Permutation d = diagonal(p);
    DiagonalBlock block{lower_left, upper_right, {}, {lower_left}};
    Label top = d(lower_left);
    block.tops.push_back(top);
    while (top != upper_right) {
        if (block.tops.size() >= n)
            throw InputError("no diagonal block <" + std::to_string(lower_left) + "," +
                             std::to_string(upper_right) + ">");
        const Label bottom = p.pi()(top);
        block.bottoms.push_back(bottom);
        top = d(bottom);
        block.tops.push_back(top);
    }
    return block;
}

namespace detail {

inline std::vector<Label> checked_vertex(const PlanePermutation& p, std::span<const Label> vertex) {
    std::vector<Label> v(vertex.begin(), vertex.end());
    std::sort(v.begin(), v.end());
    if (v.empty())
        throw InputError("empty vertex");
    if (std::adjacent_find(v.begin(), v.end()) != v.end())
        throw InputError("vertex lists a half-edge twice");
    if (v.front() < 1 || v.back() > p.size())
        throw InputError("vertex half-edge outside the ground set");
    std::vector<Label> orbit;
    Label x = v.front();
    do {
        orbit.push_back(x);
        x = p.pi()(x);
    } while (x != v.front());
    std::sort(orbit.begin(), orbit.end());
    if (orbit != v)
        throw InputError("half-edge set is not a cycle of pi");
    return v;
}

inline bool contains(const std::vector<Label>& sorted, Label x) {
    return std::binary_search(sorted.begin(), sorted.end(), x);
}

} // namespace detail

/// The |nu| blocks cut out by the columns of `vertex`, in two-line order: one block per
/// kept column, from its bottom to the top of the next kept column of the same run.
inline std::vector<DiagonalBlock> diagonal_blocks(const PlanePermutation& p, std::span<const Label> vertex) {
    const std::vector<Label> nu = detail::checked_vertex(p, vertex);
    const Permutation d = diagonal(p);
    std::vector<DiagonalBlock> out;
    for (const auto& run : two_line(p).cycles) {
        for (const Column& col : run) {
            if (!detail::contains(nu, col.top))
                continue;
            DiagonalBlock block{col.bottom, 0, {}, {col.bottom}};
            Label top = d(col.bottom);
            block.tops.push_back(top);
            while (!detail::contains(nu, top)) {
                const Label bottom = p.pi()(top);
                block.bottoms.push_back(bottom);
                top = d(bottom);
                block.tops.push_back(top);
            }
            block.upper_right = top;
            out.push_back(std::move(block));
        }
    }
    return out;
}

/// The plane permutation seen from one pi-cycle nu: every column without a half-edge
/// of nu is deleted, keeping the remaining columns in their run order.
///
/// The local plane permutation is relabeled to 1..|nu| in column order (runs ordered by
/// their smallest half-edge), so `labels[i]` is the half-edge behind local point i + 1
/// and the canonical two-line form of `local` is the inherited column order.
struct Localization {
    PlanePermutation local;
    std::vector<Label> labels;
    /// D_nu = s_nu o pi_nu^-1, on local labels.
    Permutation d_nu;
    /// C(s_nu): the number of distinct s-cycles meeting nu.
    std::size_t q;

    std::size_t degree() const noexcept { return labels.size(); }

    /// Half-edges of nu, ascending.
    std::vector<Label> vertex() const {
        std::vector<Label> v = labels;
        std::sort(v.begin(), v.end());
        return v;
    }

    Label to_global(Label local_label) const { return labels[local_label - 1]; }

    Label to_local(Label half_edge) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == half_edge)
                return static_cast<Label>(i + 1);
        throw InputError("half-edge " + std::to_string(half_edge) + " is not in the localized vertex");
    }

    /// A local two-line form printed with the original half-edge labels.
    TwoLine to_global(const TwoLine& local_form) const {
        TwoLine out = local_form;
        for (auto& run : out.cycles)
            for (Column& col : run)
                col = {to_global(col.top), to_global(col.bottom)};
        return out;
    }

    TwoLine global_two_line() const { return to_global(two_line(local)); }
};

inline Localization localize(const PlanePermutation& p, std::span<const Label> vertex) {
    const std::vector<Label> nu = detail::checked_vertex(p, vertex);

    std::vector<std::vector<Column>> runs;
    for (const auto& run : two_line(p).cycles) {
        std::vector<Column> kept;
        for (const Column& col : run) {
            if (!detail::contains(nu, col.top))
                continue;
            // nu is pi-invariant, so a kept top always has a kept bottom.
            if (!detail::contains(nu, col.bottom))
                throw ConsistencyError("localize: pi does not preserve the vertex");
            kept.push_back(col);
        }
        if (!kept.empty())
            runs.push_back(std::move(kept));
    }
    auto smallest = [](const std::vector<Column>& run) {
        Label m = run.front().top;
        for (const Column& c : run)
            m = std::min(m, c.top);
        return m;
    };
    std::sort(runs.begin(), runs.end(),
              [&](const auto& a, const auto& b) { return smallest(a) < smallest(b); });

    std::vector<Label> labels;
    std::map<Label, Label> local_of;
    for (const auto& run : runs)
        for (const Column& col : run) {
            labels.push_back(col.top);
            local_of[col.top] = static_cast<Label>(labels.size());
        }

    const std::size_t d = labels.size();
    std::vector<Label> s(d), pi(d);
    for (const auto& run : runs)
        for (std::size_t j = 0; j < run.size(); ++j) {
            const Label here = local_of.at(run[j].top);
            s[here - 1] = local_of.at(run[(j + 1) % run.size()].top);
            pi[here - 1] = local_of.at(run[j].bottom);
        }
    PlanePermutation local(Permutation::from_images(std::move(s)), Permutation::from_images(std::move(pi)));
    Permutation d_nu = diagonal(local);
    const std::size_t q = local.num_s_cycles();
    return Localization{std::move(local), std::move(labels), std::move(d_nu), q};
}

/// The h-action on a cyclic plane permutation: s^h = (s_0, s_{h_1}, ..., s_{h_{n-1}})
/// over the canonical column order (s_0 the smallest label), and pi^h = D^-1 o s^h.
/// `h` is a permutation of the column indices 1..n-1. The diagonal is preserved.
inline PlanePermutation act(const PlanePermutation& p, std::span<const std::size_t> h) {
    if (!p.is_cyclic())
        throw InputError("the h-action is defined for cyclic plane permutations only");
    const std::size_t n = p.size();
    if (h.size() + 1 != n)
        throw InputError("h must list n-1 = " + std::to_string(n - 1) + " column indices");
    std::vector<bool> seen(n, false);
    for (std::size_t idx : h) {
        if (idx < 1 || idx >= n || seen[idx])
            throw InputError("h is not a permutation of 1..n-1");
        seen[idx] = true;
    }
    const std::vector<Label> seq = two_line(p).tops();
    Cycle moved{seq[0]};
    for (std::size_t idx : h)
        moved.push_back(seq[idx]);
    const Permutation s_h = Permutation::from_cycles(n, {moved});
    const Permutation pi_h = compose(inverse(diagonal(p)), s_h);
    return PlanePermutation(s_h, pi_h);
}

/// Re-expands a rearranged localization into a plane permutation on the full ground set:
/// every diagonal pair of `rearranged` is replaced by the diagonal block of `base` with
/// those corners, and the s-cycles of `base` that miss the vertex are carried over.
///
/// `rearranged` is on the local labels of `at` (which must be localize(base, nu)); its pi
/// must be a single cycle and its diagonal must equal at.d_nu.
inline PlanePermutation inflate(const PlanePermutation& base, const Localization& at,
                                const PlanePermutation& rearranged) {
    const std::vector<Label> nu = detail::checked_vertex(base, at.labels);
    if (rearranged.size() != at.degree())
        throw InputError("rearranged localization has the wrong size");
    if (num_cycles(rearranged.pi()) != 1)
        throw InputError("rearranged localization must keep the vertex a single pi-cycle");
    if (diagonal(rearranged) != at.d_nu)
        throw InputError("rearranged localization does not have the vertex's diagonal D_nu");

    std::map<Label, DiagonalBlock> block_at;
    for (DiagonalBlock& b : diagonal_blocks(base, nu))
        block_at.emplace(b.lower_left, std::move(b));

    const std::size_t n = base.size();
    std::vector<Label> s(n, 0), pi(n, 0);
    for (const Cycle& local_run : cycles(rearranged.s())) {
        std::vector<Column> run;
        for (Label t : local_run) {
            const Label top = at.to_global(t);
            const Label bottom = at.to_global(rearranged.pi()(t));
            run.push_back({top, bottom});
            const DiagonalBlock& block = block_at.at(bottom);
            // Interior columns of the block; its last top is the next nu-column.
            for (std::size_t i = 0; i + 1 < block.tops.size(); ++i)
                run.push_back({block.tops[i], block.bottoms[i + 1]});
        }
        for (std::size_t j = 0; j < run.size(); ++j) {
            s[run[j].top - 1] = run[(j + 1) % run.size()].top;
            pi[run[j].top - 1] = run[j].bottom;
        }
    }
    for (const Cycle& c : cycles(base.s())) {
        if (std::any_of(c.begin(), c.end(), [&](Label x) { return detail::contains(nu, x); }))
            continue;
        for (std::size_t j = 0; j < c.size(); ++j) {
            s[c[j] - 1] = c[(j + 1) % c.size()];
            pi[c[j] - 1] = base.pi()(c[j]);
        }
    }
    return PlanePermutation(Permutation::from_images(std::move(s)), Permutation::from_images(std::move(pi)));
}

} // namespace fgr
