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

#include "nashpriv/synthesis.hpp"

#include "nashpriv/errors.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace nashpriv {

CombinedStrategy::CombinedStrategy(Player owner, std::shared_ptr<const Arena> arena, NominalPath nominal,
                                   MemorylessStrategy punish)
    : owner_(owner), arena_(std::move(arena)), nominal_(std::move(nominal)), punish_(std::move(punish))
{
}

ActionId CombinedStrategy::choose(std::span<const NodeId> history) const
{
    const auto& u = nominal_.nodes;
    std::size_t common = 0;
    while (common < history.size() && common < u.size() && history[common] == u[common]) ++common;
    if (common == history.size() && common < u.size()) return nominal_.actions[common - 1];

    // After the deviation: punish, unless an owner bit-0 node has repeated.
    std::vector<NodeId> seen;
    for (std::size_t i = common; i < history.size(); ++i) {
        const NodeId v = history[i];
        if (arena_->owner(v) != owner_ || arena_->terminated(v)) continue;
        if (std::find(seen.begin(), seen.end(), v) != seen.end()) return kTerminate;
        seen.push_back(v);
    }
    const ActionId a = punish_.at(history.back());
    return a == kNoAction ? kTerminate : a;
}

CombinedStrategy Equilibrium::strategy(Player p) const
{
    return CombinedStrategy(p, arena, nominal, p == Player::One ? punish_by_1 : punish_by_2);
}

MemorylessStrategy punishment_transform(const Arena& arena, const MemorylessStrategy& sigma, const NodeSet& v_minus)
{
    MemorylessStrategy out = sigma;
    for (NodeId v = 0; v < arena.size(); ++v) {
        if (arena.owner(v) == sigma.owner() && !arena.terminated(v) && v_minus[v]) out.set(v, kTerminate);
    }
    return out;
}

std::optional<NominalPath> find_nominal_path(const ProductGame& pg, const NodeSet& allowed, QState q)
{
    const Arena& arena = pg.arena();
    const NodeId start = pg.initial();
    if (!allowed[start]) return std::nullopt;

    constexpr NodeId kUnseen = static_cast<NodeId>(-1);
    std::vector<NodeId> parent(pg.size(), kUnseen);
    std::vector<ActionId> via(pg.size(), kNoAction);
    parent[start] = start;
    std::deque<NodeId> queue{start};
    std::vector<Edge> edges;
    while (!queue.empty()) {
        const NodeId v = queue.front();
        queue.pop_front();
        if (arena.terminated(v)) {
            if (pg.semi(v) != q) continue;
            NominalPath path;
            path.q = q;
            for (NodeId w = v; w != start; w = parent[w]) {
                path.nodes.push_back(w);
                path.actions.push_back(via[w]);
            }
            path.nodes.push_back(start);
            std::reverse(path.nodes.begin(), path.nodes.end());
            std::reverse(path.actions.begin(), path.actions.end());
            return path;
        }
        const auto out = arena.out(v);
        edges.assign(out.begin(), out.end());
        std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.to < b.to; });
        for (const Edge& e : edges) {
            if (!allowed[e.to] || parent[e.to] != kUnseen) continue;
            parent[e.to] = v;
            via[e.to] = e.action;
            queue.push_back(e.to);
        }
    }
    return std::nullopt;
}

std::vector<QState> ascending_order(std::size_t n)
{
    std::vector<QState> order(n);
    std::iota(order.begin(), order.end(), QState{0});
    return order;
}

EquilibriumResult synthesize_ne(const ProductGame& pg, const Preorder& e1, const Preorder& e2,
                                std::span<const QState> order, SynthesisStats* stats)
{
    const std::vector<QState> fallback = ascending_order(pg.num_semi_states());
    if (order.empty()) order = fallback;

    for (QState q : order) {
        const ObjectiveSet obj1 = objective_sets(pg, Player::One, e1, q);
        const ObjectiveSet obj2 = objective_sets(pg, Player::Two, e2, q);
        const Regions r1 = solve(objective_game(pg, obj1));
        const Regions r2 = solve(objective_game(pg, obj2));
        if (stats) {
            ++stats->states_tried;
            stats->buchi_games_solved += 2;
        }

        NodeSet allowed(pg.size());
        for (NodeId v = 0; v < pg.size(); ++v) allowed[v] = !r1.winning[v] && !r2.winning[v];
        auto path = find_nominal_path(pg, allowed, q);
        if (!path) continue;

        Equilibrium eq;
        eq.nominal = std::move(*path);
        eq.arena = pg.shared_arena();
        eq.punish_by_1 = punishment_transform(pg.arena(), r2.counter_strategy, obj2.lower());
        eq.punish_by_2 = punishment_transform(pg.arena(), r1.counter_strategy, obj1.lower());
        return eq;
    }
    return NoneExists{};
}

namespace {

bool nominal_is_play(const ProductGame& pg, const NominalPath& u)
{
    const Arena& arena = pg.arena();
    if (u.nodes.empty() || u.nodes.front() != pg.initial() || u.actions.size() + 1 != u.nodes.size()) return false;
    for (std::size_t i = 0; i + 1 < u.nodes.size(); ++i) {
        if (arena.terminated(u.nodes[i])) return false;
        if (arena.successor(u.nodes[i], u.actions[i]) != u.nodes[i + 1]) return false;
    }
    return arena.terminated(u.terminal()) && pg.semi(u.terminal()) == u.q;
}

} // namespace

bool verify_ne(const ProductGame& pg, const Preorder& e1, const Preorder& e2, const EquilibriumResult& result)
{
    const auto* eq = std::get_if<Equilibrium>(&result);
    if (!eq) throw MalformedResult("verify_ne needs an equilibrium");
    const NominalPath& u = eq->nominal;
    if (!nominal_is_play(pg, u)) return false;
    if (eq->punish_by_1.owner() != Player::One || eq->punish_by_2.owner() != Player::Two) return false;

    const BuchiGame bg1 = objective_game(pg, objective_sets(pg, Player::One, e1, u.q));
    const BuchiGame bg2 = objective_game(pg, objective_sets(pg, Player::Two, e2, u.q));
    const Regions r1 = solve_naive(bg1);
    const Regions r2 = solve_naive(bg2);
    for (NodeId v : u.nodes) {
        if (r1.winning[v] || r2.winning[v]) return false;
    }
    if (!punishment_holds(bg2, eq->punish_by_1, u.nodes)) return false;
    if (!punishment_holds(bg1, eq->punish_by_2, u.nodes)) return false;

    const CombinedStrategy c1 = eq->strategy(Player::One);
    const CombinedStrategy c2 = eq->strategy(Player::Two);
    const SimulationResult play = simulate(pg.arena(), pg.initial(), c1, c2);
    const auto* path = std::get_if<Path>(&play);
    return path && path->nodes == u.nodes;
}

void for_each_memoryless(const Arena& arena, Player owner, std::size_t bound,
                         const std::function<bool(const MemorylessStrategy&)>& visit)
{
    std::vector<NodeId> nodes;
    std::size_t total = 1;
    for (NodeId v = 0; v < arena.size(); ++v) {
        if (arena.owner(v) != owner || arena.terminated(v)) continue;
        nodes.push_back(v);
        const std::size_t d = arena.out(v).size();
        if (total > bound / d) throw TooLarge("more than " + std::to_string(bound) + " memoryless strategies");
        total *= d;
    }

    std::vector<std::size_t> digit(nodes.size(), 0);
    MemorylessStrategy s(owner, arena.size());
    for (NodeId v : nodes) s.set(v, arena.out(v)[0].action);
    while (true) {
        if (!visit(s)) return;
        std::size_t i = nodes.size();
        while (i > 0) {
            --i;
            const NodeId v = nodes[i];
            if (++digit[i] < arena.out(v).size()) {
                s.set(v, arena.out(v)[digit[i]].action);
                break;
            }
            digit[i] = 0;
            s.set(v, arena.out(v)[0].action);
            if (i == 0) return;
        }
        if (nodes.empty()) return;
    }
}

bool brute_force_deviation_check(const ProductGame& pg, const Preorder& e1, const Preorder& e2, const Strategy& p1,
                                 const Strategy& p2, std::size_t bound)
{
    const Arena& arena = pg.arena();
    const SimulationResult base = simulate(arena, pg.initial(), p1, p2);
    const auto* base_path = std::get_if<Path>(&base);
    if (!base_path) return false;
    const QState outcome = pg.semi(base_path->last());

    for (Player dev : {Player::One, Player::Two}) {
        const Preorder& e = dev == Player::One ? e1 : e2;
        bool stable = true;
        for_each_memoryless(arena, dev, bound, [&](const MemorylessStrategy& s) {
            const SimulationResult r = dev == Player::One ? simulate(arena, pg.initial(), s, p2)
                                                          : simulate(arena, pg.initial(), p1, s);
            const auto* path = std::get_if<Path>(&r);
            stable = !path || !e.strictly_prefers(pg.semi(path->last()), outcome);
            return stable;
        });
        if (!stable) return false;
    }
    return true;
}

bool brute_force_deviation_check(const ProductGame& pg, const Preorder& e1, const Preorder& e2, const Equilibrium& eq,
                                 std::size_t bound)
{
    return brute_force_deviation_check(pg, e1, e2, eq.strategy(Player::One), eq.strategy(Player::Two), bound);
}

} // namespace nashpriv
