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

#include "nashpriv/errors.hpp"
#include "nashpriv/game.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace nashpriv {
namespace {

GameGraph two_cycle()
{
    GameGraph g({"alpha", "beta"});
    const StateId a = g.add_state("a", Player::One, 0b01);
    const StateId b = g.add_state("b", Player::Two, 0b10);
    const ActionId x = g.add_action("x", Player::One);
    const ActionId y = g.add_action("y", Player::Two);
    g.add_transition(a, x, b);
    g.add_transition(b, y, a);
    g.set_initial(a);
    return g;
}

TEST(GameGraph, RejectsForeignAction)
{
    GameGraph g({"p"});
    const StateId a = g.add_state("a", Player::One);
    const ActionId y = g.add_action("y", Player::Two);
    EXPECT_THROW(g.add_transition(a, y, a), InputError);
}

TEST(GameGraph, RejectsDuplicateNamesAndNondeterminism)
{
    GameGraph g({"p"});
    const StateId a = g.add_state("a", Player::One);
    EXPECT_THROW(g.add_state("a", Player::Two), InputError);
    const ActionId x = g.add_action("x", Player::One);
    EXPECT_THROW(g.add_action("x", Player::One), InputError);
    g.add_transition(a, x, a);
    EXPECT_THROW(g.add_transition(a, x, a), InputError);
}

TEST(GameGraph, ValidateRequiresEnabledActions)
{
    GameGraph g({"p"});
    g.add_state("a", Player::One);
    g.set_initial(0);
    EXPECT_THROW(g.validate(), InputError);
}

TEST(GameGraph, LabelMustUseKnownProps)
{
    GameGraph g({"p"});
    EXPECT_THROW(g.add_state("a", Player::One, 0b10), InputError);
}

TEST(TerminatingGame, DoublesStatesAndAddsTau)
{
    const TerminatingGame tg(two_cycle());
    const Arena& arena = tg.arena();
    ASSERT_EQ(arena.size(), 4u);
    EXPECT_EQ(tg.node(1, true), 3u);
    EXPECT_EQ(*arena.successor(tg.node(0, false), kTerminate), tg.node(0, true));
    EXPECT_EQ(*arena.successor(tg.node(0, true), kTerminate), tg.node(0, true));
    EXPECT_EQ(arena.out(tg.node(0, true)).size(), 1u);
    EXPECT_TRUE(arena.terminated(3));
    EXPECT_EQ(arena.owner(3), Player::Two);
    EXPECT_EQ(tg.node_name(3), "(b,1)");
}

TEST(Simulate, TerminatesWhenOnePlayerTerminates)
{
    const TerminatingGame tg(two_cycle());
    const auto stop = terminate_everywhere(Player::Two, tg.arena());
    MemorylessStrategy go(Player::One, tg.arena().size());
    go.set(0, 0);
    const auto r = simulate(tg.arena(), tg.initial(), go, stop);
    const auto* path = std::get_if<Path>(&r);
    ASSERT_NE(path, nullptr);
    EXPECT_EQ(path->nodes, (std::vector<NodeId>{0, 2, 3}));
    EXPECT_EQ(path->last(), 3u);
    EXPECT_EQ(trace(tg, *path), (std::vector<Label>{0b01, 0b10}));
}

TEST(Simulate, ReportsCycles)
{
    const TerminatingGame tg(two_cycle());
    MemorylessStrategy go1(Player::One, 4);
    go1.set(0, 0);
    MemorylessStrategy go2(Player::Two, 4);
    go2.set(2, 1);
    const auto r = simulate(tg.arena(), tg.initial(), go1, go2);
    EXPECT_TRUE(std::holds_alternative<NonTerminating>(r));
    EXPECT_FALSE(is_proper_memoryless(go1, tg.arena(), tg.initial()));
}

TEST(Simulate, UndefinedChoiceThrows)
{
    const TerminatingGame tg(two_cycle());
    MemorylessStrategy none(Player::One, 4);
    EXPECT_THROW(simulate(tg.arena(), 0, none, none), UndefinedChoice);
}

TEST(Trace, RequiresTerminatingPath)
{
    const TerminatingGame tg(two_cycle());
    EXPECT_THROW(trace(tg, Path{{0, 2}, false}), NonTerminatingInput);
}

// A pair of proper memoryless strategies always terminates within 2|V|+1 steps.
TEST(Properness, ProperPairsTerminateWithinBound)
{
    std::mt19937_64 rng(11);
    std::size_t pairs = 0;
    while (pairs < 500) {
        const TerminatingGame tg(testing::random_game(2 + rng() % 5, 2, 3, rng));
        const Arena& arena = tg.arena();
        MemorylessStrategy s[2] = {MemorylessStrategy(Player::One, arena.size()),
                                   MemorylessStrategy(Player::Two, arena.size())};
        for (NodeId v = 0; v < arena.size(); ++v) {
            if (arena.terminated(v)) continue;
            const auto out = arena.out(v);
            s[player_index(arena.owner(v))].set(v, out[rng() % out.size()].action);
        }
        if (!is_proper_memoryless(s[0], arena, tg.initial()) || !is_proper_memoryless(s[1], arena, tg.initial())) continue;
        ++pairs;
        const auto r = simulate(arena, tg.initial(), s[0], s[1], default_max_steps(arena));
        ASSERT_TRUE(std::holds_alternative<Path>(r));
        EXPECT_LE(std::get<Path>(r).nodes.size(), arena.size() + 1);
    }
}

} // namespace
} // namespace nashpriv
