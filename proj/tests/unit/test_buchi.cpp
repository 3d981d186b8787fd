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
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <memory>
#include <random>

namespace nashpriv {
namespace {

BuchiGame random_buchi(std::size_t n, std::mt19937_64& rng)
{
    auto arena = std::make_shared<const Arena>(testing::random_arena(n, 3, rng));
    return BuchiGame{arena, testing::random_set(n, 0.25, rng), rng() % 2 ? Player::One : Player::Two};
}

TEST(Attractor, RanksAreLayers)
{
    Arena a;
    for (int i = 0; i < 4; ++i) a.add_node(i == 1 ? Player::Two : Player::One);
    a.add_edge(0, 0, 1);
    a.add_edge(1, 0, 2);
    a.add_edge(1, 1, 3);
    a.add_edge(2, 0, 2);
    a.add_edge(3, 0, 3);
    NodeSet target{false, false, true, false};
    const auto r = attractor(a, Player::One, target, NodeSet(4, true));
    EXPECT_EQ(r.set, (NodeSet{false, false, true, false}));
    target[3] = true;
    const auto r2 = attractor(a, Player::One, target, NodeSet(4, true));
    EXPECT_EQ(r2.set, NodeSet(4, true));
    EXPECT_EQ(r2.rank, (std::vector<int>{2, 1, 0, 0}));
}

TEST(Solve, MatchesNaiveFixpoint)
{
    std::mt19937_64 rng(21);
    for (int t = 0; t < 200; ++t) {
        const BuchiGame bg = random_buchi(1 + rng() % 30, rng);
        const Regions fast = solve(bg);
        const Regions slow = solve_naive(bg);
        ASSERT_EQ(fast.winning, slow.winning) << "trial " << t;
    }
}

TEST(Solve, MatchesStrategyEnumeration)
{
    std::mt19937_64 rng(22);
    for (int t = 0; t < 150; ++t) {
        const BuchiGame bg = random_buchi(1 + rng() % 8, rng);
        EXPECT_EQ(solve(bg).winning, testing::oracle_buchi_winning(*bg.arena, bg.target, bg.protagonist)) << t;
    }
}

TEST(Solve, StrategiesAreWinning)
{
    std::mt19937_64 rng(23);
    for (int t = 0; t < 100; ++t) {
        const BuchiGame bg = random_buchi(1 + rng() % 20, rng);
        EXPECT_TRUE(verify_winning(bg, solve(bg), 5, rng)) << t;
        EXPECT_TRUE(verify_winning(bg, solve_naive(bg), 5, rng)) << t;
    }
}

TEST(Solve, CounterStrategyPunishes)
{
    std::mt19937_64 rng(24);
    for (int t = 0; t < 100; ++t) {
        const BuchiGame bg = random_buchi(1 + rng() % 20, rng);
        const Regions r = solve(bg);
        std::vector<NodeId> losing;
        for (NodeId v = 0; v < bg.size(); ++v)
            if (!r.wins(v)) losing.push_back(v);
        EXPECT_TRUE(punishment_holds(bg, r.counter_strategy, losing)) << t;
    }
}

TEST(Solve, EmptyTargetLosesEverywhere)
{
    std::mt19937_64 rng(25);
    auto arena = std::make_shared<const Arena>(testing::random_arena(10, 2, rng));
    const Regions r = solve(BuchiGame{arena, NodeSet(10, false), Player::One});
    EXPECT_EQ(r.winning, NodeSet(10, false));
    const Regions all = solve(BuchiGame{arena, NodeSet(10, true), Player::Two});
    EXPECT_EQ(all.winning, NodeSet(10, true));
}

} // namespace
} // namespace nashpriv
