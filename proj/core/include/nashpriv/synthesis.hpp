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

#include "nashpriv/buchi.hpp"
#include "nashpriv/game.hpp"
#include "nashpriv/product.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace nashpriv {

/// Product path (v0,0)…(w,1) together with the actions that produce it.
struct NominalPath {
    std::vector<NodeId> nodes;
    std::vector<ActionId> actions;
    QState q = 0;

    NodeId terminal() const { return nodes.back(); }
};

/**
 * C_i(u, σ̂): follows the nominal path while the history is a prefix of it,
 * then plays the punishment strategy, and plays τ once an owner bit-0 node
 * repeats after the deviation. Proper by construction.
 */
class CombinedStrategy final : public Strategy {
  public:
    CombinedStrategy(Player owner, std::shared_ptr<const Arena> arena, NominalPath nominal, MemorylessStrategy punish);

    Player owner() const override { return owner_; }
    ActionId choose(std::span<const NodeId> history) const override;

    const NominalPath& nominal() const { return nominal_; }
    const MemorylessStrategy& punishment() const { return punish_; }

  private:
    Player owner_;
    std::shared_ptr<const Arena> arena_;
    NominalPath nominal_;
    MemorylessStrategy punish_;
};

struct Equilibrium {
    NominalPath nominal;
    /// σ̂_{-2}: player 1's punishment of player 2.
    MemorylessStrategy punish_by_1;
    /// σ̂_{-1}: player 2's punishment of player 1.
    MemorylessStrategy punish_by_2;
    std::shared_ptr<const Arena> arena;

    QState q() const { return nominal.q; }
    NodeId terminal() const { return nominal.terminal(); }
    CombinedStrategy strategy(Player p) const;
};

struct NoneExists {};

struct Stopped {
    Player by = Player::One;
    /// 1-based position of the stopped query in that player's session.
    std::size_t query = 0;
};

using EquilibriumResult = std::variant<Equilibrium, NoneExists, Stopped>;

struct SynthesisStats {
    std::size_t states_tried = 0;
    std::size_t buchi_games_solved = 0;
};

/// M_i: τ at the punisher's bit-0 nodes in V_i⁻(q), σ elsewhere.
MemorylessStrategy punishment_transform(const Arena& arena, const MemorylessStrategy& sigma, const NodeSet& v_minus);

/// BFS-shortest path from the initial node to a terminated node with semi
/// state q, staying inside `allowed`. Successors are expanded by ascending id.
std::optional<NominalPath> find_nominal_path(const ProductGame& pg, const NodeSet& allowed, QState q);

/// Equilibrium search with q visited in `order` (ascending ids when empty).
EquilibriumResult synthesize_ne(const ProductGame& pg, const Preorder& e1, const Preorder& e2,
                                std::span<const QState> order = {}, SynthesisStats* stats = nullptr);

/// Default order of synthesize_ne: 0, 1, …, |Q|-1.
std::vector<QState> ascending_order(std::size_t n);

/**
 * Checks a returned pair from first principles using solve_naive: the nominal
 * path is a valid play inside U1(q) ∩ U2(q), each punishment keeps the
 * opponent's objective finitely visited from every nominal node, and the
 * combined strategies replay the nominal path. Throws MalformedResult unless
 * `result` holds an Equilibrium.
 */
bool verify_ne(const ProductGame& pg, const Preorder& e1, const Preorder& e2, const EquilibriumResult& result);

/**
 * Exhaustive oracle: no memoryless deviation by either player whose play
 * against the other's strategy terminates yields an outcome the deviator
 * strictly prefers. Such a play is also produced by the proper strategy that
 * follows it and then terminates. A non-terminating play of (p1, p2) counts
 * as a failure. Throws TooLarge when a player has more than `bound`
 * memoryless strategies.
 */
bool brute_force_deviation_check(const ProductGame& pg, const Preorder& e1, const Preorder& e2, const Strategy& p1,
                                 const Strategy& p2, std::size_t bound = 1'000'000);
bool brute_force_deviation_check(const ProductGame& pg, const Preorder& e1, const Preorder& e2, const Equilibrium& eq,
                                 std::size_t bound = 1'000'000);

/// Calls `visit` on every memoryless strategy of `owner` over the arena's
/// non-terminated owner nodes until it returns false. Throws TooLarge past
/// `bound` strategies before visiting any.
void for_each_memoryless(const Arena& arena, Player owner, std::size_t bound,
                         const std::function<bool(const MemorylessStrategy&)>& visit);

} // namespace nashpriv
