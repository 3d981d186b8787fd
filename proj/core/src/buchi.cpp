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

#include <algorithm>
#include <limits>

namespace nashpriv {

namespace {

constexpr NodeId kNone = std::numeric_limits<NodeId>::max();

/// Action of the lowest-id successor accepted by `ok`, kNoAction if none.
template <class Pred>
ActionId lowest_edge(const Arena& arena, NodeId v, Pred ok)
{
    NodeId best = kNone;
    ActionId action = kNoAction;
    for (const Edge& e : arena.out(v)) {
        if (ok(e.to) && e.to < best) {
            best = e.to;
            action = e.action;
        }
    }
    return action;
}

NodeSet intersect(const NodeSet& a, const NodeSet& b)
{
    NodeSet out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
    return out;
}

bool any(const NodeSet& s)
{
    return std::find(s.begin(), s.end(), true) != s.end();
}

} // namespace

BuchiGame objective_game(const ProductGame& pg, const ObjectiveSet& obj)
{
    return BuchiGame{pg.shared_arena(), obj.target, obj.player};
}

NodeSet Regions::losing() const
{
    NodeSet out(winning.size());
    for (std::size_t v = 0; v < winning.size(); ++v) out[v] = !winning[v];
    return out;
}

AttractorResult attractor(const Arena& arena, Player player, const NodeSet& target, const NodeSet& within)
{
    const std::size_t n = arena.size();
    AttractorResult res{NodeSet(n), std::vector<int>(n, -1)};
    std::vector<std::size_t> pending(n, 0);
    for (NodeId v = 0; v < n; ++v) {
        if (!within[v] || arena.owner(v) == player) continue;
        for (const Edge& e : arena.out(v)) pending[v] += within[e.to] ? 1 : 0;
    }

    std::vector<NodeId> frontier;
    for (NodeId v = 0; v < n; ++v) {
        if (within[v] && target[v]) {
            res.set[v] = true;
            res.rank[v] = 0;
            frontier.push_back(v);
        }
    }
    // Whole layers are settled before the next one starts, so every member
    // outside the target has all its forcing successors on strictly lower layers.
    for (int layer = 1; !frontier.empty(); ++layer) {
        std::vector<NodeId> next;
        for (NodeId u : frontier) {
            for (NodeId p : arena.in(u)) {
                if (!within[p] || res.set[p]) continue;
                if (arena.owner(p) == player || --pending[p] == 0) {
                    res.set[p] = true;
                    res.rank[p] = layer;
                    next.push_back(p);
                }
            }
        }
        frontier = std::move(next);
    }
    return res;
}

Regions solve(const BuchiGame& bg)
{
    const Arena& arena = *bg.arena;
    const std::size_t n = arena.size();
    const Player pro = bg.protagonist;
    const Player opp = opponent(pro);

    Regions out{NodeSet(n), MemorylessStrategy(pro, n), MemorylessStrategy(opp, n)};
    NodeSet current(n, true);
    while (true) {
        const AttractorResult reach = attractor(arena, pro, intersect(bg.target, current), current);
        NodeSet trap(n);
        for (NodeId v = 0; v < n; ++v) trap[v] = current[v] && !reach.set[v];
        if (!any(trap)) {
            for (NodeId v = 0; v < n; ++v) {
                if (!current[v]) continue;
                out.winning[v] = true;
                if (arena.owner(v) != pro) continue;
                if (reach.rank[v] == 0) {
                    out.strategy.set(v, lowest_edge(arena, v, [&](NodeId w) { return current[w]; }));
                } else {
                    const int r = reach.rank[v];
                    out.strategy.set(v, lowest_edge(arena, v, [&](NodeId w) { return current[w] && reach.rank[w] >= 0 && reach.rank[w] < r; }));
                }
            }
            return out;
        }

        const AttractorResult removed = attractor(arena, opp, trap, current);
        for (NodeId v = 0; v < n; ++v) {
            if (!removed.set[v] || arena.owner(v) != opp) continue;
            if (trap[v]) {
                out.counter_strategy.set(v, lowest_edge(arena, v, [&](NodeId w) { return trap[w]; }));
            } else {
                const int r = removed.rank[v];
                out.counter_strategy.set(v, lowest_edge(arena, v, [&](NodeId w) { return removed.rank[w] >= 0 && removed.rank[w] < r; }));
            }
        }
        for (NodeId v = 0; v < n; ++v) {
            if (removed.set[v]) current[v] = false;
        }
    }
}

namespace {

/// Controllable predecessor of X for `player`.
NodeSet cpre(const Arena& arena, Player player, const NodeSet& x)
{
    const std::size_t n = arena.size();
    NodeSet out(n);
    for (NodeId v = 0; v < n; ++v) {
        const auto edges = arena.out(v);
        if (arena.owner(v) == player) {
            out[v] = std::any_of(edges.begin(), edges.end(), [&](const Edge& e) { return x[e.to]; });
        } else {
            out[v] = std::all_of(edges.begin(), edges.end(), [&](const Edge& e) { return x[e.to]; });
        }
    }
    return out;
}

} // namespace

Regions solve_naive(const BuchiGame& bg)
{
    const Arena& arena = *bg.arena;
    const std::size_t n = arena.size();
    const Player pro = bg.protagonist;
    const Player opp = opponent(pro);

    constexpr int kNever = std::numeric_limits<int>::max();
    std::vector<int> removed_at(n, kNever);
    NodeSet z(n, true);
    std::vector<NodeSet> layers;
    for (int stage = 0;; ++stage) {
        const NodeSet f_cpre_z = intersect(bg.target, cpre(arena, pro, z));
        NodeSet y(n);
        layers.assign(1, y);
        while (true) {
            NodeSet next = cpre(arena, pro, y);
            for (NodeId v = 0; v < n; ++v) next[v] = next[v] || f_cpre_z[v];
            if (next == y) break;
            y = std::move(next);
            layers.push_back(y);
        }
        if (y == z) break;
        for (NodeId v = 0; v < n; ++v) {
            if (z[v] && !y[v]) removed_at[v] = stage;
        }
        z = std::move(y);
    }

    Regions out{z, MemorylessStrategy(pro, n), MemorylessStrategy(opp, n)};
    for (NodeId v = 0; v < n; ++v) {
        if (arena.owner(v) == pro && z[v]) {
            if (bg.target[v]) {
                out.strategy.set(v, lowest_edge(arena, v, [&](NodeId w) { return z[w]; }));
                continue;
            }
            std::size_t k = 1;
            while (!layers[k][v]) ++k;
            const NodeSet& below = layers[k - 1];
            out.strategy.set(v, lowest_edge(arena, v, [&](NodeId w) { return below[w]; }));
        } else if (arena.owner(v) == opp && !z[v]) {
            // Removed at stage t: leave Z_{t+1}, and leave Z_t from a target node.
            const int t = removed_at[v];
            const int bound = bg.target[v] ? t : t + 1;
            out.counter_strategy.set(v, lowest_edge(arena, v, [&](NodeId w) { return removed_at[w] < bound; }));
        }
    }
    return out;
}

namespace {

/// Node sequence of the lasso from `start`; returns the index where the cycle begins.
std::size_t lasso(const Arena& arena, NodeId start, const std::vector<ActionId>& choice, std::vector<NodeId>& seq)
{
    std::vector<std::size_t> seen(arena.size(), std::numeric_limits<std::size_t>::max());
    seq.clear();
    NodeId v = start;
    while (seen[v] == std::numeric_limits<std::size_t>::max()) {
        seen[v] = seq.size();
        seq.push_back(v);
        auto next = arena.successor(v, choice[v]);
        if (!next) return std::numeric_limits<std::size_t>::max();
        v = *next;
    }
    return seen[v];
}

} // namespace

bool verify_winning(const BuchiGame& bg, const Regions& regions, std::size_t trials, std::mt19937_64& rng)
{
    const Arena& arena = *bg.arena;
    const std::size_t n = arena.size();
    std::vector<ActionId> choice(n);
    std::vector<NodeId> seq;
    for (std::size_t t = 0; t < trials; ++t) {
        for (NodeId v = 0; v < n; ++v) {
            const auto edges = arena.out(v);
            std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
            const ActionId random = edges[pick(rng)].action;
            const bool pro = arena.owner(v) == bg.protagonist;
            if (regions.winning[v]) {
                choice[v] = pro ? regions.strategy.at(v) : random;
            } else {
                choice[v] = pro ? random : regions.counter_strategy.at(v);
            }
        }
        for (NodeId s = 0; s < n; ++s) {
            const std::size_t loop = lasso(arena, s, choice, seq);
            if (loop == std::numeric_limits<std::size_t>::max()) return false;
            bool hits = false;
            for (std::size_t i = loop; i < seq.size(); ++i) hits = hits || bg.target[seq[i]];
            if (hits != regions.winning[s]) return false;
        }
    }
    return true;
}

bool punishment_holds(const BuchiGame& bg, const MemorylessStrategy& punisher, std::span<const NodeId> starts)
{
    const Arena& arena = *bg.arena;
    const std::size_t n = arena.size();
    auto successors = [&](NodeId v, std::vector<NodeId>& out) {
        out.clear();
        if (arena.owner(v) == punisher.owner()) {
            auto w = arena.successor(v, punisher.at(v));
            if (!w) return false;
            out.push_back(*w);
            return true;
        }
        for (const Edge& e : arena.out(v)) out.push_back(e.to);
        return true;
    };

    NodeSet reach(n);
    std::vector<NodeId> stack(starts.begin(), starts.end());
    std::vector<NodeId> succ;
    for (NodeId s : starts) reach[s] = true;
    while (!stack.empty()) {
        const NodeId v = stack.back();
        stack.pop_back();
        if (!successors(v, succ)) return false;
        for (NodeId w : succ) {
            if (!reach[w]) {
                reach[w] = true;
                stack.push_back(w);
            }
        }
    }

    for (NodeId f = 0; f < n; ++f) {
        if (!reach[f] || !bg.target[f]) continue;
        NodeSet seen(n);
        stack.assign(1, f);
        while (!stack.empty()) {
            const NodeId v = stack.back();
            stack.pop_back();
            successors(v, succ);
            for (NodeId w : succ) {
                if (w == f) return false;
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
    }
    return true;
}

} // namespace nashpriv
