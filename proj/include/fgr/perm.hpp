#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fgr/error.hpp"

namespace fgr {

/// A point of the ground set {1..n}. Half-edges are labels.
using Label = std::uint32_t;
using Cycle = std::vector<Label>;

/// Bijection on {1..n}, n >= 1, stored as its image table.
///
/// Composition is right-to-left: compose(p, q)(x) == p(q(x)). A cycle (a b c)
/// sends a to b, b to c and c to a.
class Permutation {
public:
    static Permutation identity(std::size_t n) {
        if (n == 0)
            throw InputError("permutation on an empty ground set");
        std::vector<Label> images(n);
        std::iota(images.begin(), images.end(), Label{1});
        return Permutation(std::move(images), Unchecked{});
    }

    /// images[i] is the image of i + 1.
    static Permutation from_images(std::vector<Label> images) {
        if (images.empty())
            throw InputError("permutation on an empty ground set");
        std::vector<bool> seen(images.size() + 1, false);
        for (Label v : images) {
            if (v < 1 || v > images.size())
                throw InputError("image " + std::to_string(v) + " outside 1.." + std::to_string(images.size()));
            if (seen[v])
                throw InputError("image " + std::to_string(v) + " appears twice");
            seen[v] = true;
        }
        return Permutation(std::move(images), Unchecked{});
    }

    /// Builds the product of disjoint cycles on {1..n}; omitted points are fixed.
    static Permutation from_cycles(std::size_t n, const std::vector<Cycle>& cycles) {
        if (n == 0)
            throw InputError("permutation on an empty ground set");
        std::vector<Label> images(n, 0);
        for (const Cycle& c : cycles) {
            for (std::size_t i = 0; i < c.size(); ++i) {
                const Label x = c[i];
                if (x < 1 || x > n)
                    throw InputError("label " + std::to_string(x) + " outside 1.." + std::to_string(n));
                if (images[x - 1] != 0)
                    throw InputError("duplicate label " + std::to_string(x));
                images[x - 1] = c[(i + 1) % c.size()];
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            if (images[i] == 0)
                images[i] = static_cast<Label>(i + 1);
        return Permutation(std::move(images), Unchecked{});
    }

    std::size_t size() const noexcept { return images_.size(); }

    Label operator()(Label x) const { return images_[x - 1]; }

    std::span<const Label> images() const noexcept { return images_; }

    bool is_identity() const {
        for (std::size_t i = 0; i < images_.size(); ++i)
            if (images_[i] != i + 1)
                return false;
        return true;
    }

    bool is_involution() const {
        for (std::size_t i = 0; i < images_.size(); ++i)
            if (images_[images_[i] - 1] != i + 1)
                return false;
        return true;
    }

    bool has_fixed_point() const {
        for (std::size_t i = 0; i < images_.size(); ++i)
            if (images_[i] == i + 1)
                return true;
        return false;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    struct Unchecked {};
    Permutation(std::vector<Label> images, Unchecked) : images_(std::move(images)) {}

    std::vector<Label> images_;
};

inline Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.size() != q.size())
        throw InputError("compose: ground-set sizes differ (" + std::to_string(p.size()) + " vs " +
                         std::to_string(q.size()) + ")");
    std::vector<Label> images(p.size());
    for (Label x = 1; x <= p.size(); ++x)
        images[x - 1] = p(q(x));
    return Permutation::from_images(std::move(images));
}

inline Permutation inverse(const Permutation& p) {
    std::vector<Label> images(p.size());
    for (Label x = 1; x <= p.size(); ++x)
        images[p(x) - 1] = x;
    return Permutation::from_images(std::move(images));
}

/// Canonical cycle list: every cycle starts at its minimum, cycles sorted by minimum.
inline std::vector<Cycle> cycles(const Permutation& p) {
    std::vector<Cycle> out;
    std::vector<bool> seen(p.size() + 1, false);
    for (Label start = 1; start <= p.size(); ++start) {
        if (seen[start])
            continue;
        Cycle c;
        for (Label x = start; !seen[x]; x = p(x)) {
            seen[x] = true;
            c.push_back(x);
        }
        out.push_back(std::move(c));
    }
    return out;
}

/// C(p): the number of cycles, fixed points included.
inline std::size_t num_cycles(const Permutation& p) {
    std::vector<bool> seen(p.size() + 1, false);
    std::size_t count = 0;
    for (Label start = 1; start <= p.size(); ++start) {
        if (seen[start])
            continue;
        ++count;
        for (Label x = start; !seen[x]; x = p(x))
            seen[x] = true;
    }
    return count;
}

/// Integer partition, used for cycle types. Parts are kept non-increasing.
class CycleType {
public:
    CycleType() = default;

    explicit CycleType(std::vector<int> parts) : parts_(std::move(parts)) {
        for (int x : parts_)
            if (x <= 0)
                throw InputError("partition parts must be positive");
        std::sort(parts_.begin(), parts_.end(), std::greater<>());
    }

    /// 1^n
    static CycleType ones(int n) { return CycleType(std::vector<int>(static_cast<std::size_t>(n), 1)); }

    /// Comma-separated parts in any order, e.g. "3,1".
    static CycleType parse(std::string_view text) {
        std::vector<int> parts;
        std::size_t i = 0;
        while (i < text.size()) {
            while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
                ++i;
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            if (j == i)
                throw InputError("malformed partition '" + std::string(text) + "'");
            if (j - i > 6)
                throw InputError("partition part too large in '" + std::string(text) + "'");
            parts.push_back(std::stoi(std::string(text.substr(i, j - i))));
            i = j;
            while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
                ++i;
            if (i < text.size()) {
                if (text[i] != ',')
                    throw InputError("malformed partition '" + std::string(text) + "'");
                ++i;
                if (i == text.size())
                    throw InputError("malformed partition '" + std::string(text) + "'");
            }
        }
        if (parts.empty())
            throw InputError("empty partition");
        return CycleType(std::move(parts));
    }

    const std::vector<int>& parts() const noexcept { return parts_; }

    /// n, the sum of the parts.
    int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

    /// l(lambda), the number of parts.
    int length() const noexcept { return static_cast<int>(parts_.size()); }

    /// a_i, the number of parts equal to i.
    int multiplicity(int i) const { return static_cast<int>(std::count(parts_.begin(), parts_.end(), i)); }

    /// (a_1, ..., a_n), index 0 unused.
    std::vector<int> multiplicities() const {
        std::vector<int> a(static_cast<std::size_t>(size()) + 1, 0);
        for (int x : parts_)
            ++a[static_cast<std::size_t>(x)];
        return a;
    }

    /// Type of an even permutation: n - l even.
    bool is_even() const { return (size() - length()) % 2 == 0; }

    std::string str() const {
        std::string out = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i)
                out += ',';
            out += std::to_string(parts_[i]);
        }
        return out + ")";
    }

    friend bool operator==(const CycleType&, const CycleType&) = default;
    friend auto operator<=>(const CycleType&, const CycleType&) = default;

private:
    std::vector<int> parts_;
};

inline CycleType cycle_type(const Permutation& p) {
    std::vector<int> parts;
    for (const Cycle& c : cycles(p))
        parts.push_back(static_cast<int>(c.size()));
    return CycleType(std::move(parts));
}

/// All partitions of n, in reverse lexicographic order ((n) first, 1^n last).
inline std::vector<CycleType> partitions_of(int n) {
    std::vector<CycleType> out;
    std::vector<int> current;
    auto rec = [&](auto&& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            out.emplace_back(current);
            return;
        }
        for (int part = std::min(remaining, max_part); part >= 1; --part) {
            current.push_back(part);
            self(self, remaining - part, part);
            current.pop_back();
        }
    };
    if (n > 0)
        rec(rec, n, n);
    return out;
}

/// Disjoint blocks covering {1..n}; each block sorted, blocks sorted by minimum.
class SetPartition {
public:
    explicit SetPartition(std::vector<std::vector<Label>> blocks) : blocks_(std::move(blocks)) {
        std::size_t total = 0;
        Label max_label = 0;
        for (auto& b : blocks_) {
            if (b.empty())
                throw InputError("empty block in set partition");
            std::sort(b.begin(), b.end());
            total += b.size();
            max_label = std::max(max_label, b.back());
        }
        std::sort(blocks_.begin(), blocks_.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
        std::vector<bool> seen(max_label + 1, false);
        for (const auto& b : blocks_)
            for (Label x : b) {
                if (x == 0 || seen[x])
                    throw InputError("set partition blocks overlap or contain 0");
                seen[x] = true;
            }
        if (total != max_label)
            throw InputError("set partition does not cover 1..n");
    }

    const std::vector<std::vector<Label>>& blocks() const noexcept { return blocks_; }
    std::size_t size() const noexcept { return blocks_.size(); }

    /// Index of the block containing x.
    std::size_t block_of(Label x) const {
        for (std::size_t i = 0; i < blocks_.size(); ++i)
            if (std::binary_search(blocks_[i].begin(), blocks_[i].end(), x))
                return i;
        throw InputError("label " + std::to_string(x) + " not in partition");
    }

    friend bool operator==(const SetPartition&, const SetPartition&) = default;

private:
    std::vector<std::vector<Label>> blocks_;
};

/// Par_p: the blocks are the cycle supports.
inline SetPartition partition_of(const Permutation& p) { return SetPartition(cycles(p)); }

namespace detail {

inline std::vector<Cycle> parse_cycle_list(std::string_view text) {
    std::vector<Cycle> out;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
    };
    skip_ws();
    while (i < text.size()) {
        if (text[i] != '(')
            throw ParseError(0, "expected '(' at offset " + std::to_string(i));
        ++i;
        Cycle c;
        for (;;) {
            while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
                ++i;
            if (i == text.size())
                throw ParseError(0, "unterminated cycle");
            if (text[i] == ')') {
                ++i;
                break;
            }
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            if (j == i)
                throw ParseError(0, "unexpected character '" + std::string(1, text[i]) + "' in cycle");
            if (j - i > 9)
                throw ParseError(0, "label too large");
            c.push_back(static_cast<Label>(std::stoul(std::string(text.substr(i, j - i)))));
            i = j;
        }
        if (c.empty())
            throw ParseError(0, "empty cycle '()'");
        out.push_back(std::move(c));
        skip_ws();
    }
    return out;
}

} // namespace detail

/// Parses "(a b c)(d e)" (commas between labels are accepted too). With n given, labels
/// must lie in 1..n and fixed points may be omitted; without n, every label 1..max must
/// appear.
inline Permutation parse_cycles(std::string_view text, std::optional<std::size_t> n = std::nullopt) {
    const std::vector<Cycle> cs = detail::parse_cycle_list(text);
    Label max_label = 0;
    std::size_t count = 0;
    for (const Cycle& c : cs)
        for (Label x : c) {
            if (x == 0)
                throw InputError("labels must be 1..n, got 0");
            max_label = std::max(max_label, x);
            ++count;
        }
    const std::size_t size = n.value_or(max_label);
    if (size == 0)
        throw InputError("empty permutation text");
    if (!n && count != max_label) {
        // Either a duplicate or a missing label; from_cycles names duplicates precisely.
        Permutation::from_cycles(size, cs);
        throw InputError("labels are not contiguous 1.." + std::to_string(max_label) +
                         " (fixed points may be omitted only when n is given)");
    }
    return Permutation::from_cycles(size, cs);
}

/// A permutation on an arbitrary finite label set, relabeled to 1..m through `labels`
/// (labels[i] is the external name of internal point i + 1; sorted ascending).
struct LabeledPermutation {
    Permutation perm;
    std::vector<Label> labels;
};

inline LabeledPermutation parse_labeled_cycles(std::string_view text) {
    const std::vector<Cycle> cs = detail::parse_cycle_list(text);
    std::vector<Label> labels;
    for (const Cycle& c : cs)
        labels.insert(labels.end(), c.begin(), c.end());
    std::sort(labels.begin(), labels.end());
    if (labels.empty())
        throw InputError("empty permutation text");
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
        throw InputError("duplicate label " + std::to_string(*std::adjacent_find(labels.begin(), labels.end())));
    std::vector<Cycle> local = cs;
    for (Cycle& c : local)
        for (Label& x : c)
            x = static_cast<Label>(std::lower_bound(labels.begin(), labels.end(), x) - labels.begin() + 1);
    return {Permutation::from_cycles(labels.size(), local), std::move(labels)};
}

/// Canonical cycle notation, fixed points included: "(1 2)(3)". When `labels` is given,
/// internal point i + 1 prints as labels[i].
inline std::string format_cycles(const Permutation& p, std::span<const Label> labels = {}) {
    std::vector<Cycle> cs = cycles(p);
    if (!labels.empty()) {
        for (Cycle& c : cs) {
            for (Label& x : c)
                x = labels[x - 1];
            std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
        }
        std::sort(cs.begin(), cs.end(), [](const Cycle& a, const Cycle& b) { return a.front() < b.front(); });
    }
    std::string out;
    for (const Cycle& c : cs) {
        out += '(';
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i)
                out += ' ';
            out += std::to_string(c[i]);
        }
        out += ')';
    }
    return out;
}

} // namespace fgr
