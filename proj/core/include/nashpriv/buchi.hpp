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

#pragma once

#include "nashpriv/game.hpp"
#include "nashpriv/product.hpp"

#include <memory>
#include <random>
#include <span>

namespace nashpriv {

/// Büchi game on an arena: the protagonist wants `target` visited infinitely often.
struct BuchiGame {
    std::shared_ptr<const Arena> arena;
    NodeSet target;
    Player protagonist = Player::One;

    std::size_t size() const { return arena->size(); }
};

/// B_i(q) on a product game with player i as protagonist.
BuchiGame objective_game(const ProductGame& pg, const ObjectiveSet& obj);

/**
 * Solution of a Büchi game.
 *
 * `strategy` is the protagonist's memoryless winning strategy, defined on
 * protagonist nodes of `winning`. `counter_strategy` is the opponent's
 * memoryless strategy that keeps the target finitely visited, defined on
 * opponent nodes of the losing region. Other entries hold kNoAction.
 */
struct Regions {
    NodeSet winning;
    MemorylessStrategy strategy;
    MemorylessStrategy counter_strategy;

    NodeSet losing() const;
    bool wins(NodeId v) const { return winning[v]; }
};

struct AttractorResult {
    NodeSet set;
    /// Layer index of each member; -1 outside the set.
    std::vector<int> rank;
};

/// Attractor of `player` to `target` inside the subarena `within`.
AttractorResult attractor(const Arena& arena, Player player, const NodeSet& target, const NodeSet& within);

/// Attractor-elimination solver, O(m·|V|).
Regions solve(const BuchiGame& bg);

/// Nested fixpoint νZ.μY.(Cpre(Y) ∪ (F ∩ Cpre(Z))), used as a test oracle.
Regions solve_naive(const BuchiGame& bg);

/**
 * Plays the region strategies against `trials` random memoryless adversaries
 * from every node. From winning nodes the lasso cycle must meet the target;
 * from losing nodes the counter-strategy must keep the cycle off the target.
 */
bool verify_winning(const BuchiGame& bg, const Regions& regions, std::size_t trials, std::mt19937_64& rng);

/**
 * Exact check that `punisher` (owned by the protagonist's opponent) keeps the
 * target finitely visited: with the punisher fixed, no cycle reachable from
 * `starts` contains a target node. False if the punisher has no decision at
 * a reachable node it owns.
 */
bool punishment_holds(const BuchiGame& bg, const MemorylessStrategy& punisher, std::span<const NodeId> starts);

} // namespace nashpriv
