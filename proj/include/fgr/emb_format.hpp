#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fgr/embedding.hpp"
#include "fgr/error.hpp"
#include "fgr/perm.hpp"

namespace fgr {

// .emb text format
//
//   # comment
//   vertices:
//   A: 1
//   B: 2 6 4 8          (counterclockwise rotation)
//   edges:              (map mode: one "a b" pair per line)
//   1 2
//
// or, in place of the edges section, hypermap mode:
//
//   alpha:
//   (1 2 3)(4 5)
//
// Labels are positive integers covering 1..n exactly once across the vertex lines.

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

inline std::vector<Label> parse_labels(std::string_view text, std::size_t line) {
    std::vector<Label> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
            ++j;
        if (j == i)
            throw ParseError(line, "expected a half-edge label, got '" + std::string(text.substr(i)) + "'");
        if (j - i > 9)
            throw ParseError(line, "label too large");
        const auto v = static_cast<Label>(std::stoul(std::string(text.substr(i, j - i))));
        if (v == 0)
            throw ParseError(line, "labels must be 1..n, got 0");
        out.push_back(v);
        i = j;
    }
    return out;
}

inline bool valid_name(std::string_view name) {
    return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    });
}

} // namespace detail

inline Hypermap parse_emb(std::string_view text) {
    enum class Section { None, Vertices, Edges, Alpha };
    Section section = Section::None;
    std::vector<Vertex> vertices;
    std::vector<std::pair<std::size_t, std::vector<Label>>> edge_lines;
    std::optional<std::pair<std::size_t, std::string>> alpha_line;
    bool saw_edges = false, saw_alpha = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty())
            continue;

        if (line == "vertices:") {
            if (section != Section::None)
                throw ParseError(line_no, "'vertices:' must be the first section");
            section = Section::Vertices;
            continue;
        }
        if (line == "edges:" || line == "alpha:") {
            if (section != Section::Vertices)
                throw ParseError(line_no, "'" + std::string(line) + "' must follow the vertices section");
            if (vertices.empty())
                throw ParseError(line_no, "no vertices listed");
            section = line == "edges:" ? Section::Edges : Section::Alpha;
            (line == "edges:" ? saw_edges : saw_alpha) = true;
            continue;
        }
        switch (section) {
        case Section::None:
            throw ParseError(line_no, "expected 'vertices:'");
        case Section::Vertices: {
            const auto colon = line.find(':');
            if (colon == std::string_view::npos)
                throw ParseError(line_no, "expected 'NAME: labels...'");
            const std::string name(detail::trim(line.substr(0, colon)));
            if (!detail::valid_name(name))
                throw ParseError(line_no, "invalid vertex name '" + name + "'");
            for (const Vertex& v : vertices)
                if (v.name == name)
                    throw ParseError(line_no, "duplicate vertex name '" + name + "'");
            std::vector<Label> rot = detail::parse_labels(line.substr(colon + 1), line_no);
            if (rot.empty())
                throw ParseError(line_no, "vertex '" + name + "' has no half-edges");
            vertices.push_back({name, std::move(rot)});
            break;
        }
        case Section::Edges: {
            std::vector<Label> pair = detail::parse_labels(line, line_no);
            if (pair.size() != 2)
                throw ParseError(line_no, "an edge line needs exactly two labels");
            edge_lines.emplace_back(line_no, std::move(pair));
            break;
        }
        case Section::Alpha:
            if (alpha_line)
                throw ParseError(line_no, "the alpha section holds a single line of cycles");
            alpha_line.emplace(line_no, std::string(line));
            break;
        }
    }
    if (section == Section::None || section == Section::Vertices)
        throw ParseError(0, "missing 'edges:' or 'alpha:' section");
    if (saw_edges && saw_alpha)
        throw ParseError(0, "use either 'edges:' or 'alpha:', not both");

    // Labels must cover 1..n with n the number listed.
    std::size_t n = 0;
    Label max_label = 0;
    for (const Vertex& v : vertices) {
        n += v.rotation.size();
        for (Label x : v.rotation)
            max_label = std::max(max_label, x);
    }
    std::vector<bool> used(std::max<std::size_t>(n, max_label) + 1, false);
    for (const Vertex& v : vertices)
        for (Label x : v.rotation) {
            if (used[x])
                throw ParseError(0, "half-edge " + std::to_string(x) + " appears at two vertex positions");
            used[x] = true;
        }
    if (max_label != n)
        throw ParseError(0, "half-edge labels must be contiguous 1.." + std::to_string(n));

    if (saw_edges) {
        std::vector<Label> images(n, 0);
        for (const auto& [ln, pair] : edge_lines) {
            const Label a = pair[0], b = pair[1];
            if (a > n || b > n)
                throw ParseError(ln, "edge label outside 1.." + std::to_string(n));
            if (a == b)
                throw ParseError(ln, "an edge joins two different half-edges");
            if (images[a - 1] != 0 || images[b - 1] != 0)
                throw ParseError(ln, "half-edge used by two edges");
            images[a - 1] = b;
            images[b - 1] = a;
        }
        for (std::size_t x = 1; x <= n; ++x)
            if (images[x - 1] == 0)
                throw ParseError(0, "half-edge " + std::to_string(x) + " is on no edge");
        return Hypermap::from_rotation_system(std::move(vertices), Permutation::from_images(std::move(images)),
                                              EdgeKind::Map);
    }
    if (!alpha_line)
        throw ParseError(0, "empty alpha section");
    try {
        Permutation alpha = parse_cycles(alpha_line->second, n);
        return Hypermap::from_rotation_system(std::move(vertices), std::move(alpha), EdgeKind::Hypermap);
    } catch (const ParseError& e) {
        throw ParseError(alpha_line->first, e.what());
    } catch (const InputError& e) {
        throw ParseError(alpha_line->first, e.what());
    }
}

/// Canonical text: vertices sorted by name with rotations starting at their smallest
/// half-edge, then edges sorted by smaller endpoint (maps) or alpha in cycle notation.
inline std::string write_emb(const Hypermap& h) {
    std::vector<Vertex> vs = h.vertices();
    std::sort(vs.begin(), vs.end(), [](const Vertex& a, const Vertex& b) { return a.name < b.name; });
    for (Vertex& v : vs)
        std::rotate(v.rotation.begin(), std::min_element(v.rotation.begin(), v.rotation.end()), v.rotation.end());
    std::ostringstream out;
    out << "vertices:\n";
    for (const Vertex& v : vs) {
        out << v.name << ':';
        for (Label x : v.rotation)
            out << ' ' << x;
        out << '\n';
    }
    if (h.is_map()) {
        out << "edges:\n";
        for (Label x = 1; x <= h.size(); ++x)
            if (x < h.alpha()(x))
                out << x << ' ' << h.alpha()(x) << '\n';
    } else {
        out << "alpha:\n" << format_cycles(h.alpha()) << '\n';
    }
    return out.str();
}

} // namespace fgr
