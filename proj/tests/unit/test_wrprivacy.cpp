/*
 * Copyright 2026 The nashpriv Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "nashpriv/buchi.hpp"
#include "nashpriv/errors.hpp"
#include "nashpriv/wrprivacy.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <random>

namespace nashpriv {
namespace {

NodeSet solver_region(const GridGame& grid, ThresholdSet qplus, Player protagonist)
{
    const ProductGame& pg = grid.product();
    const ObjectiveSet obj = objective_sets_from_closure(pg, protagonist, 0, qplus);
    const Regions r = solve(objective_game(pg, obj));
    NodeSet out(pg.size(), false);
    for (NodeId v = 0; v < pg.size(); ++v) out[v] = !pg.terminated(v) && r.wins(v);
    return out;
}

NodeSet bit0(const GridGame& grid, NodeSet s)
{
    for (NodeId v = 0; v < s.size(); ++v)
        if (grid.product().terminated(v)) s[v] = false;
    return s;
}

TEST(GridGame, Layout)
{
    const GridGame g(3);
    EXPECT_EQ(g.locations(), 9u);
    EXPECT_EQ(g.product().size(), 9u * 2 * 2);
    EXPECT_EQ(g.product().automaton().state_name(g.location(1, 2)), "r1c2");
    const NodeId v = g.node(1, 2, Player::Two, false);
    EXPECT_EQ(g.product().semi(v), g.location(1, 2));
    EXPECT_EQ(g.product().arena().owner(v), Player::Two);
    EXPECT_FALSE(g.product().terminated(v));
}

TEST(GridRegion, AllSubsetsOnTwoByTwo)
{
    const GridGame g(2);
    for (ThresholdSet s = 0; s < 16; ++s) {
        for (Player p : {Player::One, Player::Two}) {
            EXPECT_EQ(bit0(g, grid_region_from_thresholds(g, s, p)), solver_region(g, s, p)) << s;
        }
    }
}

TEST(GridRegion, RandomSubsetsOnThreeByThree)
{
    const GridGame g(3);
    std::mt19937_64 rng(41);
    for (int t = 0; t < 200; ++t) {
        const ThresholdSet s = rng() & 0x1FF;
        for (Player p : {Player::One, Player::Two}) {
            EXPECT_EQ(bit0(g, grid_region_from_thresholds(g, s, p)), solver_region(g, s, p)) << s;
        }
    }
}

TEST(ThresholdOrder, SizeThenLexicographic)
{
    const auto& order = threshold_order(4);
    ASSERT_EQ(order.size(), 16u);
    EXPECT_EQ(order.front(), 0u);
    auto ids = [](ThresholdSet s) {
        std::vector<int> out;
        for (int i = 0; i < 4; ++i)
            if ((s >> i) & 1U) out.push_back(i);
        return out;
    };
    for (std::size_t i = 1; i < order.size(); ++i) {
        const int a = std::popcount(order[i - 1]);
        const int b = std::popcount(order[i]);
        EXPECT_LE(a, b);
        if (a == b) EXPECT_LT(ids(order[i - 1]), ids(order[i]));
    }
    EXPECT_THROW(threshold_order(21), TooLarge);
}

TEST(GenerateThresholds, EveryCandidateReproducesTheRegion)
{
    const GridGame g(3);
    std::mt19937_64 rng(42);
    for (int t = 0; t < 30; ++t) {
        const ThresholdSet truth = rng() & 0x1FF;
        const NodeSet target = grid_region_from_thresholds(g, truth, Player::One);
        const auto cands = generate_thresholds(target, g, 64, Player::One);
        EXPECT_LE(cands.size(), 64u);
        EXPECT_FALSE(cands.empty());
        for (ThresholdSet c : cands) EXPECT_EQ(grid_region_from_thresholds(g, c, Player::One), target);
        std::size_t matching = 0;
        for (ThresholdSet s = 0; s < 512; ++s) matching += grid_region_from_thresholds(g, s, Player::One) == target;
        EXPECT_EQ(cands.size(), std::min<std::size_t>(64, matching));
    }
}

TEST(GenKPrefsWr, AssumptionConditions)
{
    auto g = std::make_shared<const GridGame>(2);
    const ProductGame& pg = g->product();
    RegionOracle oracle(g->shared_product());
    WinningRegionGenerator cached(g, 64, Player::One);
    std::mt19937_64 rng(43);
    for (int t = 0; t < 60; ++t) {
        const Preorder e = testing::random_preorder(4, rng);
        const Secret s = Secret::strict_pair(0, 1);
        std::vector<QState> qs{0, 1, 2, 3};
        std::shuffle(qs.begin(), qs.end(), rng);
        qs.resize(1 + rng() % 4);
        const std::size_t K = 1 + rng() % 5;
        const Flag f = rng() % 2 ? Flag::P : Flag::R;
        const PrefSets out = gen_k_prefs_wr(*g, e, qs, s, K, f);
        const PrefSets again = cached.generate(e, qs, s, K, f);
        EXPECT_EQ(out.plus, again.plus);
        EXPECT_EQ(out.minus, again.minus);
        EXPECT_LE(out.plus.size(), K);
        EXPECT_LE(out.minus.size(), K);
        for (const auto* side : {&out.plus, &out.minus}) {
            for (const Preorder& p : *side) {
                EXPECT_EQ(s.contains(p), side == &out.plus);
                for (QState q : qs) {
                    EXPECT_EQ(oracle.losing_region(Player::One, q, p.strict_upper_closure(q)),
                              oracle.losing_region(Player::One, q, e.strict_upper_closure(q)));
                }
                if (f == Flag::P) EXPECT_EQ(p.strict_upper_closure(qs.back()), e.strict_upper_closure(qs.back()));
            }
        }
        (void)pg;
    }
}

TEST(GenKPrefsWr, AtLeastAsManyCandidatesAsUpperClosure)
{
    auto g = std::make_shared<const GridGame>(2);
    std::mt19937_64 rng(44);
    for (int t = 0; t < 40; ++t) {
        const Preorder e = testing::random_preorder(4, rng);
        const Secret s = Secret::strict_pair(0, 3);
        const std::vector<QState> qs{static_cast<QState>(rng() % 4)};
        const PrefSets uc = gen_k_prefs_uc(e, qs, s, 400, Flag::R);
        const PrefSets wr = gen_k_prefs_wr(*g, e, qs, s, 400, Flag::R);
        EXPECT_GE(wr.plus.size(), uc.plus.size());
        EXPECT_GE(wr.minus.size(), uc.minus.size());
    }
}

// Sessions on the 2×2 grid with winning-region privacy leave both witnesses.
TEST(WrPrivacy, AuditFindsWitnesses)
{
    auto g = std::make_shared<const GridGame>(2);
    const auto all = enumerate_preorders(4);
    std::mt19937_64 rng(45);
    const Secret s = Secret::strict_pair(0, 1);
    ResponderConfig base{Player::One, Preorder::empty(4), s, std::make_shared<const RegionOracle>(g->shared_product()),
                         std::make_shared<const WinningRegionGenerator>(g, 64, Player::One)};
    for (int t = 0; t < 40; ++t) {
        ResponderConfig cfg = base;
        cfg.preference = all[rng() % all.size()];
        std::vector<QState> order{0, 1, 2, 3};
        std::shuffle(order.begin(), order.end(), rng);
        Responder r(cfg);
        Transcript tr;
        for (QState q : order) {
            const Response resp = r.respond(Query{q, Flag::R});
            tr.session.push_back(Exchange{Player::One, Query{q, Flag::R}, resp});
            if (is_stop(resp)) break;
        }
        EXPECT_TRUE(std::holds_alternative<PrivacyWitnesses>(audit_privacy(tr, Player::One, cfg, all))) << t;
    }
}

} // namespace
} // namespace nashpriv
