#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "fgr/emb_format.hpp"
#include "fgr/embedding.hpp"
#include "fgr/graph_corpus.hpp"

using namespace fgr;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(FGR_DATA_DIR) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Hypermap bouquet(std::vector<Label> rotation) {
    return Hypermap::from_rotation_system({{"v", std::move(rotation)}}, parse_cycles("(1 2)(3 4)"));
}

Hypermap fig1() {
    return Hypermap::from_rotation_system({{"A", {1}}, {"B", {2, 6, 4, 8}}, {"C", {3, 7, 5}}},
                                          parse_cycles("(1 2)(3 6)(4 7)(5 8)"));
}

} // namespace

TEST(Embedding, LoopOnSphere) {
    const Hypermap h = Hypermap::from_rotation_system({{"v", {1, 2}}}, parse_cycles("(1 2)"));
    EXPECT_TRUE(h.gamma().is_identity());
    EXPECT_EQ(h.num_faces(), 2u);
    EXPECT_EQ(genus(h), 0);
    EXPECT_EQ(faces_at(h, "v").q, 2u);
    EXPECT_EQ(to_plane_permutation(h).num_s_cycles(), 2u);
}

TEST(Embedding, InterleavedBouquet) {
    const Hypermap h = bouquet({1, 3, 2, 4});
    EXPECT_EQ(format_cycles(h.gamma()), "(1 4 2 3)");
    EXPECT_EQ(h.num_faces(), 1u);
    EXPECT_EQ(genus(h), 1);
    EXPECT_EQ(betti(h), 2);
    const PlanePermutation p = to_plane_permutation(h);
    EXPECT_TRUE(p.is_cyclic());
    EXPECT_EQ(format_cycles(diagonal(p)), "(1 2)(3 4)");

    const Hypermap flat = set_rotation(h, "v", {1, 2, 3, 4});
    EXPECT_EQ(flat.num_faces(), 3u);
    EXPECT_EQ(genus(flat), 0);
    EXPECT_EQ(faces_at(flat, "v").q, 3u);
}

TEST(Embedding, Fig1) {
    const Hypermap h = fig1();
    EXPECT_EQ(h.num_faces(), 1u);
    EXPECT_EQ(genus(h), 1);
    EXPECT_EQ(betti(h), 2);
    EXPECT_EQ(2 * genus(h), betti(h) + 1 - static_cast<int>(h.num_faces()));
    for (const char* v : {"A", "B", "C"})
        EXPECT_EQ(faces_at(h, v).q, 1u);

    const PlanePermutation p = to_plane_permutation(h);
    const TwoLine t = two_line(p);
    EXPECT_EQ(t.tops(), (std::vector<Label>{1, 2, 3, 4, 5, 6, 7, 8}));
    EXPECT_EQ(t.bottoms(), (std::vector<Label>{1, 6, 7, 8, 3, 4, 5, 2}));
    EXPECT_EQ(diagonal(p), h.alpha());

    const Hypermap r = set_rotation(h, "B", {2, 6, 8, 4});
    EXPECT_TRUE(r.num_faces() == 1 || r.num_faces() == 3);
    EXPECT_EQ(set_rotation(h, "B", {6, 4, 8, 2}), h);
}

TEST(Embedding, TreeBetti) {
    const Hypermap h = Hypermap::from_rotation_system({{"a", {1}}, {"b", {2}}}, parse_cycles("(1 2)"));
    EXPECT_EQ(betti(h), 0);
    EXPECT_EQ(genus(h), 0);
    EXPECT_EQ(h.num_faces(), 1u);
}

TEST(Embedding, ConstructionErrors) {
    const Permutation a = parse_cycles("(1 2)(3 4)");
    EXPECT_THROW(Hypermap::from_rotation_system({{"v", {1, 2, 3}}}, a), InputError);
    EXPECT_THROW(Hypermap::from_rotation_system({{"v", {1, 2, 3, 3}}}, a), InputError);
    EXPECT_THROW(Hypermap::from_rotation_system({{"v", {1, 2}}, {"v", {3, 4}}}, a), InputError);
    EXPECT_THROW(Hypermap::from_rotation_system({{"v", {1, 2, 3, 5}}}, a), InputError);
    // Two components.
    EXPECT_THROW(Hypermap::from_rotation_system({{"u", {1, 2}}, {"w", {3, 4}}}, a), InputError);
    // Not an involution in map mode, accepted as a hypermap.
    const Permutation tri = parse_cycles("(1 2 3)");
    EXPECT_THROW(Hypermap::from_rotation_system({{"v", {1, 2, 3}}}, tri), InputError);
    const Hypermap hyper = Hypermap::from_rotation_system({{"v", {1, 2, 3}}}, tri, EdgeKind::Hypermap);
    EXPECT_FALSE(hyper.is_map());
    EXPECT_GE(genus(hyper), 0);

    EXPECT_THROW(set_rotation(fig1(), "B", {2, 6, 4}), InputError);
    EXPECT_THROW(set_rotation(fig1(), "Z", {1}), InputError);
    EXPECT_THROW(faces_at(fig1(), "Z"), InputError);
}

TEST(Embedding, RotationEnumeration) {
    EXPECT_EQ(enumerate_rotations(1).size(), 1u);
    EXPECT_EQ(enumerate_rotations(4).size(), 6u);
    EXPECT_EQ(enumerate_rotations(6).size(), 120u);
    EXPECT_THROW(enumerate_rotations(13), CapExceeded);
    EXPECT_EQ(enumerate_rotations(5, 5).size(), 24u);
    EXPECT_THROW(enumerate_rotations(0), InputError);

    std::set<std::vector<Label>> seen;
    const std::vector<Label> half{7, 3, 5, 9};
    for_each_rotation(half, [&](const std::vector<Label>& r) {
        EXPECT_EQ(r.front(), 3u);
        seen.insert(r);
    });
    EXPECT_EQ(seen.size(), 6u);
}

TEST(Embedding, AllEmbeddingsCounts) {
    std::size_t count = 0;
    std::map<int, int> by_genus;
    all_embeddings(bouquet({1, 2, 3, 4}).underlying_graph(), [&](const Hypermap& h) {
        ++count;
        ++by_genus[genus(h)];
    });
    EXPECT_EQ(count, 6u);
    EXPECT_EQ(by_genus, (std::map<int, int>{{0, 4}, {1, 2}}));

    count = 0;
    all_embeddings(fig1().underlying_graph(), [&](const Hypermap&) { ++count; });
    EXPECT_EQ(count, 12u);
    EXPECT_EQ(embedding_count(fig1().underlying_graph()), 12u);

    count = 0;
    all_embeddings(graph_from_edges(2, {{0, 1}}), [&](const Hypermap&) { ++count; });
    EXPECT_EQ(count, 1u);

    EXPECT_THROW(all_embeddings(fig1().underlying_graph(), [](const Hypermap&) {}, 11), CapExceeded);
}

TEST(Embedding, InvariantsOverSmallGraphs) {
    // gamma = alpha beta, the three genus formulas agree, and reembedding one vertex keeps
    // every non-incident face, the support of the incident faces, and q mod 2.
    std::size_t embeddings = 0;
    for (const UnderlyingGraph& g : graph_corpus(4)) {
        all_embeddings(g, [&](const Hypermap& h) {
            ++embeddings;
            ASSERT_EQ(h.gamma(), compose(h.alpha(), h.beta()));
            const int gen = genus(h);
            ASSERT_GE(gen, 0);
            ASSERT_EQ(2 * gen, betti(h) + 1 - static_cast<int>(h.num_faces()));
            ASSERT_EQ(diagonal(to_plane_permutation(h)), h.alpha());

            for (const Vertex& v : h.vertices()) {
                std::vector<Label> sorted = v.rotation;
                std::sort(sorted.begin(), sorted.end());
                const Hypermap other = set_rotation(h, v.name, sorted);
                const FaceIncidence a = faces_at(h, v.name), b = faces_at(other, v.name);
                ASSERT_EQ(a.q % 2, b.q % 2);

                std::vector<Label> ua, ub;
                for (const Face& f : a.faces)
                    ua.insert(ua.end(), f.half_edges.begin(), f.half_edges.end());
                for (const Face& f : b.faces)
                    ub.insert(ub.end(), f.half_edges.begin(), f.half_edges.end());
                std::sort(ua.begin(), ua.end());
                std::sort(ub.begin(), ub.end());
                ASSERT_EQ(ua, ub);

                auto untouched = [&](const Hypermap& x, const FaceIncidence& inc) {
                    std::set<Cycle> out;
                    for (const Face& f : faces(x))
                        if (std::find(inc.faces.begin(), inc.faces.end(), f) == inc.faces.end())
                            out.insert(f.cycle);
                    return out;
                };
                ASSERT_EQ(untouched(h, a), untouched(other, b));
            }
        });
    }
    EXPECT_GT(embeddings, 1000u);
}

TEST(EmbFormat, ParsesDataFiles) {
    const Hypermap f = parse_emb(slurp("fig1.emb"));
    EXPECT_EQ(f, fig1());
    EXPECT_EQ(parse_emb(slurp("b2.emb")), bouquet({1, 3, 2, 4}));
    EXPECT_EQ(genus(parse_emb(slurp("fig1_planar.emb"))), 0);
    const Hypermap hyper = parse_emb(slurp("hypermap.emb"));
    EXPECT_FALSE(hyper.is_map());
    EXPECT_EQ(format_cycles(hyper.alpha()), "(1 2 3)");
}

TEST(EmbFormat, WriteRoundTrip) {
    for (const char* name : {"fig1.emb", "fig1_planar.emb", "b2.emb", "b2_planar.emb", "loop.emb", "tree.emb",
                             "hypermap.emb"}) {
        const Hypermap h = parse_emb(slurp(name));
        const std::string text = write_emb(h);
        EXPECT_EQ(parse_emb(text), h) << name;
        EXPECT_EQ(write_emb(parse_emb(text)), text) << name;
    }
    EXPECT_EQ(write_emb(fig1()), "vertices:\nA: 1\nB: 2 6 4 8\nC: 3 7 5\nedges:\n1 2\n3 6\n4 7\n5 8\n");
    EXPECT_EQ(write_emb(parse_emb(slurp("hypermap.emb"))), "vertices:\nx: 1 2\ny: 3\nalpha:\n(1 2 3)\n");
}

TEST(EmbFormat, Errors) {
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            parse_emb(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 999;
    };
    EXPECT_THROW(parse_emb("vertices:\nv: 0 1\nedges:\n0 1\n"), ParseError);
    EXPECT_EQ(line_of("vertices:\nv: 1 2\nedges:\n1 2 3\n"), 4u);
    EXPECT_EQ(line_of("# c\nv: 1 2\n"), 2u);
    EXPECT_EQ(line_of("vertices:\nv 1 2\nedges:\n1 2\n"), 2u);
    EXPECT_EQ(line_of("vertices:\nv: 1 x\nedges:\n1 2\n"), 2u);
    EXPECT_EQ(line_of("vertices:\nv: 1 2\nv: 3 4\nedges:\n1 2\n3 4\n"), 3u);
    EXPECT_EQ(line_of("vertices:\nv: 1 2 3\nalpha:\n(1 2 4)\n"), 4u);
    EXPECT_THROW(parse_emb("vertices:\nv: 1 3\nedges:\n1 3\n"), ParseError);
    EXPECT_THROW(parse_emb("vertices:\nv: 1 2\n"), ParseError);
    EXPECT_THROW(parse_emb("vertices:\nv: 1 2 3 4\nedges:\n1 2\n"), ParseError);
    EXPECT_THROW(parse_emb("vertices:\nv: 1 2\nedges:\n1 1\n"), ParseError);
    EXPECT_THROW(parse_emb("vertices:\nu: 1 2\nw: 3 4\nedges:\n1 2\n3 4\n"), InputError);
    EXPECT_THROW(parse_emb(""), ParseError);
    // Comments and blank lines anywhere.
    EXPECT_EQ(genus(parse_emb("\n# x\nvertices: # sec\n v : 1 2 # loop\n\nedges:\n 1 2\n")), 0);
}
