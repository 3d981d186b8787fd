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

#include "nashpriv/game.hpp"

#include "nashpriv/errors.hpp"

#include <algorithm>
#include <utility>

namespace nashpriv {

std::string to_string(Player p) { return p == Player::One ? "1" : "2"; }

NodeId Arena::add_node(Player owner, bool terminated)
{
    owner_.push_back(owner);
    terminated_.push_back(terminated ? 1 : 0);
    out_.emplace_back();
    in_.emplace_back();
    return static_cast<NodeId>(owner_.size() - 1);
}

void Arena::add_edge(NodeId from, ActionId action, NodeId to)
{
    out_.at(from).push_back(Edge{action, to});
    in_.at(to).push_back(from);
    ++edges_;
}

std::optional<NodeId> Arena::successor(NodeId v, ActionId a) const
{
    for (const Edge& e : out_[v]) {
        if (e.action == a) return e.to;
    }
    return std::nullopt;
}

GameGraph::GameGraph(std::vector<std::string> atomic_props) : atomic_props_(std::move(atomic_props))
{
    if (atomic_props_.size() > kMaxAtomicProps) {
        throw InputError("at most 64 atomic propositions are supported");
    }
}

StateId GameGraph::add_state(std::string name, Player owner, Label label)
{
    if (atomic_props_.size() < kMaxAtomicProps && (label >> atomic_props_.size()) != 0) {
        throw InputError("label of state '" + name + "' uses an unknown atomic proposition");
    }
    if (find_state(name)) throw InputError("duplicate state '" + name + "'");
    states_.push_back(StateInfo{std::move(name), owner, label});
    transitions_.emplace_back();
    return static_cast<StateId>(states_.size() - 1);
}

ActionId GameGraph::add_action(std::string name, Player owner)
{
    if (find_action(name)) throw InputError("duplicate action '" + name + "'");
    actions_.push_back(ActionInfo{std::move(name), owner});
    return static_cast<ActionId>(actions_.size() - 1);
}

void GameGraph::add_transition(StateId from, ActionId action, StateId to)
{
    if (from >= states_.size() || to >= states_.size()) throw InputError("transition references an unknown state");
    if (action < 0 || static_cast<std::size_t>(action) >= actions_.size()) {
        throw InputError("transition references an unknown action");
    }
    const auto& src = states_[from];
    if (actions_[static_cast<std::size_t>(action)].owner != src.owner) {
        throw InputError("action '" + actions_[static_cast<std::size_t>(action)].name + "' is not owned by the owner of state '" +
                         src.name + "'");
    }
    for (const auto& t : transitions_[from]) {
        if (t.action == action) {
            throw InputError("state '" + src.name + "' already has a transition for action '" +
                             actions_[static_cast<std::size_t>(action)].name + "'");
        }
    }
    transitions_[from].push_back(Transition{action, to});
}

void GameGraph::set_initial(StateId s)
{
    if (s >= states_.size()) throw InputError("initial state out of range");
    initial_ = s;
}

void GameGraph::validate() const
{
    if (states_.empty()) throw InputError("game has no states");
    if (!initial_) throw InputError("game has no initial state");
    for (const auto& s : states_) {
        if (transitions_[static_cast<std::size_t>(&s - states_.data())].empty()) {
            throw InputError("state '" + s.name + "' has no enabled action");
        }
    }
}

std::size_t GameGraph::num_transitions() const
{
    std::size_t n = 0;
    for (const auto& t : transitions_) n += t.size();
    return n;
}

std::optional<StateId> GameGraph::step(StateId s, ActionId a) const
{
    for (const auto& t : transitions_[s]) {
        if (t.action == a) return t.to;
    }
    return std::nullopt;
}

std::optional<StateId> GameGraph::find_state(std::string_view name) const
{
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (states_[i].name == name) return static_cast<StateId>(i);
    }
    return std::nullopt;
}

std::optional<ActionId> GameGraph::find_action(std::string_view name) const
{
    for (std::size_t i = 0; i < actions_.size(); ++i) {
        if (actions_[i].name == name) return static_cast<ActionId>(i);
    }
    return std::nullopt;
}

std::optional<std::size_t> GameGraph::find_prop(std::string_view name) const
{
    auto it = std::find(atomic_props_.begin(), atomic_props_.end(), name);
    if (it == atomic_props_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - atomic_props_.begin());
}

std::vector<std::string> GameGraph::label_names(Label label) const
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < atomic_props_.size(); ++i) {
        if ((label >> i) & 1U) out.push_back(atomic_props_[i]);
    }
    return out;
}

TerminatingGame::TerminatingGame(GameGraph base) : base_(std::move(base))
{
    base_.validate();
    const auto n = base_.num_states();
    for (StateId s = 0; s < n; ++s) {
        arena_.add_node(base_.state(s).owner, false);
        arena_.add_node(base_.state(s).owner, true);
    }
    for (StateId s = 0; s < n; ++s) {
        for (const auto& t : base_.transitions(s)) arena_.add_edge(node(s, false), t.action, node(t.to, false));
        arena_.add_edge(node(s, false), kTerminate, node(s, true));
        arena_.add_edge(node(s, true), kTerminate, node(s, true));
    }
}

std::string TerminatingGame::node_name(NodeId v) const
{
    return "(" + base_.state(state_of(v)).name + "," + (is_terminated(v) ? "1" : "0") + ")";
}

TerminatingGame augment_terminating(GameGraph g) { return TerminatingGame(std::move(g)); }

std::size_t default_max_steps(const Arena& arena) { return 2 * arena.size() + 1; }

MemorylessStrategy::MemorylessStrategy(Player owner, std::size_t num_nodes)
    : owner_(owner), table_(num_nodes, kNoAction)
{
}

MemorylessStrategy::MemorylessStrategy(Player owner, std::vector<ActionId> table)
    : owner_(owner), table_(std::move(table))
{
}

ActionId MemorylessStrategy::choose(std::span<const NodeId> history) const
{
    if (history.empty()) return kNoAction;
    return at(history.back());
}

MemorylessStrategy terminate_everywhere(Player owner, const Arena& arena)
{
    MemorylessStrategy s(owner, arena.size());
    for (NodeId v = 0; v < arena.size(); ++v) {
        if (arena.owner(v) == owner && !arena.terminated(v)) s.set(v, kTerminate);
    }
    return s;
}

SimulationResult simulate(const Arena& arena, NodeId start, const Strategy& p1, const Strategy& p2,
                          std::optional<std::size_t> max_steps)
{
    const std::size_t bound = max_steps.value_or(default_max_steps(arena));
    std::vector<NodeId> history{start};
    for (std::size_t step = 0;; ++step) {
        const NodeId cur = history.back();
        if (arena.terminated(cur)) return Path{std::move(history), true};
        if (step >= bound) return NonTerminating{std::move(history)};
        const Strategy& s = arena.owner(cur) == Player::One ? p1 : p2;
        const ActionId a = s.choose(history);
        if (a == kNoAction) {
            throw UndefinedChoice("strategy of player " + to_string(arena.owner(cur)) + " has no decision at node " +
                                  std::to_string(cur));
        }
        auto next = arena.successor(cur, a);
        if (!next) {
            throw UndefinedChoice("action " + std::to_string(a) + " is not enabled at node " + std::to_string(cur));
        }
        history.push_back(*next);
    }
}

std::vector<Label> trace(const TerminatingGame& game, const Path& path)
{
    if (!path.terminating) throw NonTerminatingInput("trace requires a terminating path");
    std::vector<Label> word;
    for (NodeId v : path.nodes) {
        if (game.is_terminated(v)) break;
        word.push_back(game.base().state(game.state_of(v)).label);
    }
    return word;
}

bool is_proper_memoryless(const MemorylessStrategy& s, const Arena& arena, NodeId start)
{
    const Player owner = s.owner();
    auto successors = [&](NodeId v, std::vector<NodeId>& out) {
        out.clear();
        if (arena.owner(v) == owner && !arena.terminated(v)) {
            const ActionId a = s.at(v);
            if (a == kNoAction) throw UndefinedChoice("strategy has no decision at reachable node " + std::to_string(v));
            auto next = arena.successor(v, a);
            if (!next) throw UndefinedChoice("strategy picks a disabled action at node " + std::to_string(v));
            out.push_back(*next);
        } else {
            for (const Edge& e : arena.out(v)) out.push_back(e.to);
        }
    };

    std::vector<char> reachable(arena.size(), 0);
    std::vector<NodeId> stack{start}, succ;
    reachable[start] = 1;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        successors(v, succ);
        for (NodeId w : succ) {
            if (!reachable[w]) {
                reachable[w] = 1;
                stack.push_back(w);
            }
        }
    }

    // A reachable owner node that reaches itself witnesses an improper cycle.
    std::vector<char> seen(arena.size());
    for (NodeId v = 0; v < arena.size(); ++v) {
        if (!reachable[v] || arena.owner(v) != owner || arena.terminated(v)) continue;
        std::fill(seen.begin(), seen.end(), 0);
        successors(v, succ);
        stack.assign(succ.begin(), succ.end());
        while (!stack.empty()) {
            NodeId w = stack.back();
            stack.pop_back();
            if (w == v) return false;
            if (seen[w]) continue;
            seen[w] = 1;
            std::vector<NodeId> next;
            successors(w, next);
            stack.insert(stack.end(), next.begin(), next.end());
        }
    }
    return true;
}

} // namespace nashpriv
