#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fgr/plane_permutation.hpp"

using namespace fgr;

namespace {

Permutation from_columns(const std::vector<Label>& tops, const std::vector<Label>& bottoms) {
    std::vector<Label> img(tops.size());
    for (std::size_t i = 0; i < tops.size(); ++i)
        img[tops[i] - 1] = bottoms[i];
    return Permutation::from_images(img);
}

Permutation cyclic_s(const std::vector<Label>& order) {
    return Permutation::from_cycles(order.size(), {Cycle(order.begin(), order.end())});
}

// The 12-point worked example: one face, vertex {2,3,6,8,9,11,12}.
PlanePermutation worked_example() {
    const std::vector<Label> tops{1, 3, 2, 5, 7, 4, 6, 9, 8, 10, 11, 12};
    const std::vector<Label> bottoms{5, 8, 3, 4, 7, 10, 12, 2, 6, 1, 9, 11};
    return PlanePermutation(cyclic_s(tops), from_columns(tops, bottoms));
}

PlanePermutation fig1() {
    return PlanePermutation(cyclic_s({1, 2, 3, 4, 5, 6, 7, 8}),
                            Permutation::from_images({1, 6, 7, 8, 3, 4, 5, 2}));
}

const std::vector<Label> kNu{2, 3, 6, 8, 9, 11, 12};

template <class Fn>
void for_all_perms(std::size_t n, Fn fn) {
    std::vector<Label> img(n);
    std::iota(img.begin(), img.end(), 1);
    do
        fn(Permutation::from_images(img));
    while (std::next_permutation(img.begin(), img.end()));
}

} // namespace

TEST(PlanePerm, DiagonalOfFig1IsFixedPointFreeInvolution) {
    const Permutation d = diagonal(fig1());
    EXPECT_EQ(format_cycles(d), "(1 2)(3 6)(4 7)(5 8)");
    EXPECT_TRUE(d.is_involution());
    EXPECT_FALSE(d.has_fixed_point());
    EXPECT_EQ(diagonal_from_two_line(two_line(fig1())), d);
}

TEST(PlanePerm, DiagonalOfEqualPairIsIdentity) {
    const Permutation s = cyclic_s({1, 3, 2, 4});
    EXPECT_TRUE(diagonal(PlanePermutation(s, s)).is_identity());
}

TEST(PlanePerm, WorkedExampleDiagonalPairs) {
    const PlanePermutation p = worked_example();
    const Permutation d = diagonal(p);
    EXPECT_EQ(d(5), 3u);
    EXPECT_EQ(d(8), 2u);
    EXPECT_EQ(d(3), 5u);
    EXPECT_EQ(d, diagonal_from_two_line(two_line(p)));
    // D(pi(s_{i-1})) = s_i along the cycle.
    const std::vector<Label> tops = two_line(p).tops();
    for (std::size_t i = 0; i < tops.size(); ++i)
        EXPECT_EQ(d(p.pi()(tops[i])), tops[(i + 1) % tops.size()]);
}

TEST(PlanePerm, TwoLineRoundTrip) {
    const PlanePermutation p = worked_example();
    const TwoLine t = two_line(p);
    EXPECT_EQ(t.tops(), (std::vector<Label>{1, 3, 2, 5, 7, 4, 6, 9, 8, 10, 11, 12}));
    EXPECT_EQ(t.bottoms(), (std::vector<Label>{5, 8, 3, 4, 7, 10, 12, 2, 6, 1, 9, 11}));
    const PlanePermutation back = from_two_line(t);
    EXPECT_EQ(back.s(), p.s());
    EXPECT_EQ(back.pi(), p.pi());

    const PlanePermutation id(Permutation::identity(3), Permutation::identity(3));
    const TwoLine ti = two_line(id);
    EXPECT_EQ(ti.cycles.size(), 3u);
    EXPECT_EQ(ti.tops(), ti.bottoms());
    EXPECT_FALSE(id.is_cyclic());
    EXPECT_EQ(id.num_s_cycles(), 3u);

    TwoLine bad = t;
    bad.cycles[0][0].bottom = bad.cycles[0][1].bottom;
    EXPECT_THROW(from_two_line(bad), InputError);
}

TEST(PlanePerm, RenderFig1) {
    EXPECT_EQ(render(two_line(fig1())), "[1] 2 3 4 5 6 7   8\n"
                                        "  1 6 7 8 3 4 5 [2]\n");
}

TEST(PlanePerm, RenderMultiCycle) {
    const PlanePermutation p(parse_cycles("(1 2)(3)"), parse_cycles("(1 2)(3)"));
    EXPECT_EQ(render(two_line(p)), "[1]   2 | [3]\n"
                                   "  2 [1] | [3]\n");
}

TEST(PlanePerm, LocalizeWorkedExample) {
    const Localization loc = localize(worked_example(), kNu);
    const TwoLine t = loc.global_two_line();
    EXPECT_EQ(t.tops(), (std::vector<Label>{3, 2, 6, 9, 8, 11, 12}));
    EXPECT_EQ(t.bottoms(), (std::vector<Label>{8, 3, 12, 2, 6, 9, 11}));
    EXPECT_EQ(format_cycles(loc.d_nu, loc.labels), "(2 8)(3 6 11)(9 12)");
    EXPECT_EQ(cycle_type(loc.d_nu).str(), "(3,2,2)");
    EXPECT_EQ(loc.q, 1u);
    EXPECT_EQ(loc.vertex(), kNu);
    EXPECT_EQ(loc.to_local(3), 1u);
    EXPECT_THROW(loc.to_local(1), InputError);
}

TEST(PlanePerm, LocalizeFig1) {
    const std::vector<Label> nu{2, 4, 6, 8};
    const Localization loc = localize(fig1(), nu);
    const TwoLine t = loc.global_two_line();
    EXPECT_EQ(t.tops(), (std::vector<Label>{2, 4, 6, 8}));
    EXPECT_EQ(t.bottoms(), (std::vector<Label>{6, 8, 4, 2}));
    EXPECT_EQ(cycle_type(loc.d_nu).str(), "(3,1)");
    EXPECT_EQ(loc.q, 1u);
    EXPECT_EQ(diagonal_blocks(fig1(), nu).size(), 4u);
}

TEST(PlanePerm, LocalizeDegreeOne) {
    const std::vector<Label> nu{1};
    const Localization loc = localize(fig1(), nu);
    EXPECT_EQ(loc.degree(), 1u);
    EXPECT_TRUE(loc.d_nu.is_identity());
    EXPECT_EQ(loc.q, 1u);
}

TEST(PlanePerm, LocalizeRejectsNonBlock) {
    const std::vector<Label> half{2, 6};
    EXPECT_THROW(localize(fig1(), half), InputError);
    const std::vector<Label> outside{2, 4, 6, 8, 9};
    EXPECT_THROW(localize(fig1(), outside), InputError);
}

TEST(PlanePerm, DiagonalBlockCorners) {
    const DiagonalBlock b = diagonal_block(worked_example(), 8, 4);
    EXPECT_EQ(b.tops, (std::vector<Label>{2, 5, 7, 4}));
    EXPECT_EQ(b.bottoms.front(), 8u);
    EXPECT_THROW(diagonal_block(worked_example(), 8, 13), InputError);

    // One vertex holding everything: unit blocks.
    const PlanePermutation single(cyclic_s({1, 2, 3}), cyclic_s({1, 3, 2}));
    const std::vector<Label> all{1, 2, 3};
    const auto blocks = diagonal_blocks(single, all);
    ASSERT_EQ(blocks.size(), 3u);
    for (const DiagonalBlock& blk : blocks)
        EXPECT_EQ(blk.tops.size(), 1u);
}

TEST(PlanePerm, ActAndInflateWorkedExample) {
    const PlanePermutation p = worked_example();
    const Localization loc = localize(p, kNu);
    const std::vector<std::size_t> h{3, 4, 5, 1, 2, 6};
    const PlanePermutation moved = act(loc.local, h);
    const TwoLine local_form = loc.to_global(two_line(moved));
    EXPECT_EQ(local_form.tops(), (std::vector<Label>{3, 9, 8, 11, 2, 6, 12}));
    EXPECT_EQ(local_form.bottoms(), (std::vector<Label>{12, 2, 6, 8, 3, 9, 11}));
    EXPECT_EQ(diagonal(moved), loc.d_nu);

    const PlanePermutation inflated = inflate(p, loc, moved);
    const TwoLine t = two_line(inflated);
    EXPECT_EQ(t.tops(), (std::vector<Label>{1, 3, 9, 8, 10, 11, 2, 5, 7, 4, 6, 12}));
    EXPECT_EQ(t.bottoms(), (std::vector<Label>{5, 12, 2, 6, 1, 8, 3, 4, 7, 10, 9, 11}));
    EXPECT_EQ(diagonal(inflated), diagonal(p));
    EXPECT_EQ(partition_of(inflated.pi()), partition_of(p.pi()));
}

TEST(PlanePerm, ActIdentityAndErrors) {
    const PlanePermutation p = worked_example();
    std::vector<std::size_t> id(11);
    std::iota(id.begin(), id.end(), 1);
    const PlanePermutation same = act(p, id);
    EXPECT_EQ(same.s(), p.s());
    EXPECT_EQ(same.pi(), p.pi());

    std::vector<std::size_t> dup = id;
    dup[0] = 2;
    EXPECT_THROW(act(p, dup), InputError);
    EXPECT_THROW(act(p, std::vector<std::size_t>{1, 2}), InputError);
    const PlanePermutation two_cycles(parse_cycles("(1 2)(3)"), parse_cycles("(1 2)(3)"));
    EXPECT_THROW(act(two_cycles, std::vector<std::size_t>{1, 2}), InputError);
}

TEST(PlanePerm, InflateRejectsWrongDiagonal) {
    const std::vector<Label> nu{2, 4, 6, 8};
    const Localization loc = localize(fig1(), nu);
    const PlanePermutation other(cyclic_s({1, 2, 3, 4}), cyclic_s({1, 2, 3, 4}));
    EXPECT_THROW(inflate(fig1(), loc, other), InputError);
}

TEST(PlanePerm, InflateOfFig1ReversedRotation) {
    // Reversing the rotation at {2,4,6,8} splits the single face into three.
    const PlanePermutation p = fig1();
    const Permutation d = diagonal(p);
    const Permutation beta = parse_cycles("(1)(2 8 4 6)(3 7 5)");
    EXPECT_EQ(num_cycles(compose(d, beta)), 3u);
}

TEST(PlanePerm, DiagonalInvariantUnderAction) {
    // Exhaustive over pi for s = (1..n), n <= 6, and every h.
    for (std::size_t n = 2; n <= 6; ++n) {
        std::vector<Label> order(n);
        std::iota(order.begin(), order.end(), 1);
        const Permutation s = cyclic_s(order);
        std::vector<std::size_t> h(n - 1);
        for_all_perms(n, [&](const Permutation& pi) {
            const PlanePermutation p(s, pi);
            const Permutation d = diagonal(p);
            std::iota(h.begin(), h.end(), 1);
            do
                ASSERT_EQ(diagonal(act(p, h)), d);
            while (std::next_permutation(h.begin(), h.end()));
        });
    }
}

TEST(PlanePerm, InflateOfLocalizeIsIdentity) {
    // Exhaustive over pi and every pi-cycle for s = (1..n), n <= 7; random s as well.
    std::mt19937 rng(11);
    for (std::size_t n = 1; n <= 7; ++n) {
        std::vector<Label> order(n);
        std::iota(order.begin(), order.end(), 1);
        for_all_perms(n, [&](const Permutation& pi) {
            std::shuffle(order.begin() + 1, order.end(), rng);
            const PlanePermutation p(cyclic_s(order), pi);
            for (const Cycle& c : cycles(pi)) {
                const Localization loc = localize(p, c);
                ASSERT_EQ(loc.q, 1u);
                const PlanePermutation back = inflate(p, loc, loc.local);
                ASSERT_EQ(back.s(), p.s());
                ASSERT_EQ(back.pi(), p.pi());
                ASSERT_EQ(diagonal_blocks(p, c).size(), c.size());
            }
        });
    }
}

TEST(PlanePerm, KeptColumnsStayInVertexForMultiCycleS) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + rng() % 10;
        std::vector<Label> a(n), b(n);
        std::iota(a.begin(), a.end(), 1);
        std::iota(b.begin(), b.end(), 1);
        std::shuffle(a.begin(), a.end(), rng);
        std::shuffle(b.begin(), b.end(), rng);
        const PlanePermutation p(Permutation::from_images(a), Permutation::from_images(b));
        for (const Cycle& c : cycles(p.pi())) {
            const Localization loc = localize(p, c);
            const std::vector<Label> nu = loc.vertex();
            for (const auto& run : loc.global_two_line().cycles)
                for (const Column& col : run) {
                    ASSERT_TRUE(std::binary_search(nu.begin(), nu.end(), col.top));
                    ASSERT_TRUE(std::binary_search(nu.begin(), nu.end(), col.bottom));
                }
            std::set<std::size_t> touched;
            const std::vector<Cycle> s_cycles = cycles(p.s());
            for (Label x : c)
                for (std::size_t i = 0; i < s_cycles.size(); ++i) {
                    const Cycle& sc = s_cycles[i];
                    if (std::find(sc.begin(), sc.end(), x) != sc.end())
                        touched.insert(i);
                }
            ASSERT_EQ(loc.q, touched.size());
            ASSERT_EQ(diagonal(loc.local), loc.d_nu);
            ASSERT_EQ(num_cycles(loc.local.pi()), 1u);
        }
    }
}

TEST(PlanePerm, LocalizationBijectionWithOneFaceReembeddings) {
    // For one-face p and vertex nu: inflating every single-cycle local rearrangement gives
    // exactly the rotations of nu that keep one face.
    std::mt19937 rng(3);
    for (std::size_t n = 2; n <= 8; ++n) {
        std::vector<Label> order(n);
        std::iota(order.begin(), order.end(), 1);
        const Permutation s = cyclic_s(order);
        const int trials = n <= 5 ? 60 : 25;
        for (int trial = 0; trial < trials; ++trial) {
            std::vector<Label> img(n);
            std::iota(img.begin(), img.end(), 1);
            std::shuffle(img.begin(), img.end(), rng);
            const PlanePermutation p(s, Permutation::from_images(img));
            const Permutation d = diagonal(p);
            for (const Cycle& c : cycles(p.pi())) {
                const Localization loc = localize(p, c);
                const std::size_t deg = c.size();

                std::set<std::vector<Label>> via_inflation;
                std::vector<std::size_t> h(deg - 1);
                std::iota(h.begin(), h.end(), 1);
                do {
                    const PlanePermutation local = act(loc.local, h);
                    if (num_cycles(local.pi()) != 1)
                        continue;
                    const PlanePermutation g = inflate(p, loc, local);
                    ASSERT_TRUE(g.is_cyclic());
                    ASSERT_EQ(diagonal(g), d);
                    via_inflation.insert({g.pi().images().begin(), g.pi().images().end()});
                } while (std::next_permutation(h.begin(), h.end()));

                std::set<std::vector<Label>> via_rotation;
                Cycle rot = c;
                std::sort(rot.begin() + 1, rot.end());
                do {
                    std::vector<Label> beta(p.pi().images().begin(), p.pi().images().end());
                    for (std::size_t i = 0; i < deg; ++i)
                        beta[rot[i] - 1] = rot[(i + 1) % deg];
                    const Permutation b = Permutation::from_images(beta);
                    if (num_cycles(compose(d, b)) == 1)
                        via_rotation.insert(beta);
                } while (std::next_permutation(rot.begin() + 1, rot.end()));

                ASSERT_EQ(via_inflation, via_rotation);
            }
        }
    }
}
