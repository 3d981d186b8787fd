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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nashpriv {

enum class Player : std::uint8_t { One = 0, Two = 1 };

constexpr Player opponent(Player p) { return p == Player::One ? Player::Two : Player::One; }
constexpr int player_index(Player p) { return static_cast<int>(p); }
constexpr int player_number(Player p) { return static_cast<int>(p) + 1; }
std::string to_string(Player p);

using StateId = std::uint32_t;
using NodeId = std::uint32_t;
using ActionId = std::int32_t;

/// The termination action τ.
inline constexpr ActionId kTerminate = -1;
/// Marks "no decision" in strategy tables.
inline constexpr ActionId kNoAction = -2;

/// Atomic-proposition valuations are bitmasks over an ordered AP list (at most 64 props).
using Label = std::uint64_t;
inline constexpr std::size_t kMaxAtomicProps = 64;

struct Edge {
    ActionId action;
    NodeId to;
    friend bool operator==(const Edge&, const Edge&) = default;
};

/**
 * Explicit turn-based arena. Every node has an owner and a termination bit;
 * edges are labelled by the action that produces them. Terminated nodes carry
 * a single τ self-loop when built from a game, but the solvers accept any
 * arena in which every node has at least one outgoing edge.
 */
class Arena {
  public:
    NodeId add_node(Player owner, bool terminated = false);
    void add_edge(NodeId from, ActionId action, NodeId to);

    std::size_t size() const { return owner_.size(); }
    std::size_t edge_count() const { return edges_; }
    Player owner(NodeId v) const { return owner_[v]; }
    bool terminated(NodeId v) const { return terminated_[v] != 0; }
    std::span<const Edge> out(NodeId v) const { return out_[v]; }
    /// One entry per incoming edge, so parallel edges appear more than once.
    std::span<const NodeId> in(NodeId v) const { return in_[v]; }
    std::optional<NodeId> successor(NodeId v, ActionId a) const;

  private:
    std::vector<Player> owner_;
    std::vector<char> terminated_;
    std::vector<std::vector<Edge>> out_;
    std::vector<std::vector<NodeId>> in_;
    std::size_t edges_ = 0;
};

struct StateInfo {
    std::string name;
    Player owner;
    Label label;
};

struct ActionInfo {
    std::string name;
    Player owner;
};

struct Transition {
    ActionId action;
    StateId to;
    friend bool operator==(const Transition&, const Transition&) = default;
};

/**
 * Deterministic two-player turn-based game ⟨S = S1 ∪ S2, s0, A, T, AP, L⟩.
 *
 * States and actions are dense ids with display names. Transitions may only
 * use actions owned by the source state's owner, at most one target per
 * (state, action), and validate() requires every state to enable an action.
 */
class GameGraph {
  public:
    GameGraph() = default;
    explicit GameGraph(std::vector<std::string> atomic_props);

    StateId add_state(std::string name, Player owner, Label label = 0);
    ActionId add_action(std::string name, Player owner);
    void add_transition(StateId from, ActionId action, StateId to);
    void set_initial(StateId s);

    /// Throws InputError if some state has no enabled action or the initial state is unset.
    void validate() const;

    std::size_t num_states() const { return states_.size(); }
    std::size_t num_actions() const { return actions_.size(); }
    std::size_t num_transitions() const;
    StateId initial() const { return initial_.value_or(0); }
    bool has_initial() const { return initial_.has_value(); }

    const StateInfo& state(StateId s) const { return states_[s]; }
    const ActionInfo& action(ActionId a) const { return actions_[static_cast<std::size_t>(a)]; }
    std::span<const Transition> transitions(StateId s) const { return transitions_[s]; }
    std::optional<StateId> step(StateId s, ActionId a) const;

    const std::vector<std::string>& atomic_props() const { return atomic_props_; }
    std::optional<StateId> find_state(std::string_view name) const;
    std::optional<ActionId> find_action(std::string_view name) const;
    std::optional<std::size_t> find_prop(std::string_view name) const;
    /// Names of the propositions set in `label`, in AP order.
    std::vector<std::string> label_names(Label label) const;

  private:
    std::vector<std::string> atomic_props_;
    std::vector<StateInfo> states_;
    std::vector<ActionInfo> actions_;
    std::vector<std::vector<Transition>> transitions_;
    std::optional<StateId> initial_;
};

/**
 * G_τ: the game with a termination bit. Node (s, j) has id 2·s + j.
 * (s,0) keeps the base transitions plus τ to (s,1); (s,1) is absorbing.
 */
class TerminatingGame {
  public:
    explicit TerminatingGame(GameGraph base);

    const GameGraph& base() const { return base_; }
    const Arena& arena() const { return arena_; }
    NodeId node(StateId s, bool terminated) const { return 2 * s + (terminated ? 1U : 0U); }
    StateId state_of(NodeId v) const { return v / 2; }
    bool is_terminated(NodeId v) const { return (v & 1U) != 0; }
    NodeId initial() const { return node(base_.initial(), false); }
    std::string node_name(NodeId v) const;

  private:
    GameGraph base_;
    Arena arena_;
};

TerminatingGame augment_terminating(GameGraph g);

/// Default simulation bound: a memoryless play that has not terminated after
/// 2·|nodes| + 1 steps is cycling.
std::size_t default_max_steps(const Arena& arena);

class Strategy {
  public:
    virtual ~Strategy() = default;
    virtual Player owner() const = 0;
    /// Decision at history.back(), which is a non-terminated node of owner().
    /// Returns kNoAction when the strategy has no decision there.
    virtual ActionId choose(std::span<const NodeId> history) const = 0;
};

class MemorylessStrategy final : public Strategy {
  public:
    MemorylessStrategy() = default;
    MemorylessStrategy(Player owner, std::size_t num_nodes);
    MemorylessStrategy(Player owner, std::vector<ActionId> table);

    Player owner() const override { return owner_; }
    ActionId choose(std::span<const NodeId> history) const override;

    ActionId at(NodeId v) const { return v < table_.size() ? table_[v] : kNoAction; }
    void set(NodeId v, ActionId a) { table_.at(v) = a; }
    const std::vector<ActionId>& table() const { return table_; }

    friend bool operator==(const MemorylessStrategy& a, const MemorylessStrategy& b)
    {
        return a.owner_ == b.owner_ && a.table_ == b.table_;
    }

  private:
    Player owner_ = Player::One;
    std::vector<ActionId> table_;
};

/// A memoryless strategy that terminates everywhere.
MemorylessStrategy terminate_everywhere(Player owner, const Arena& arena);

struct Path {
    std::vector<NodeId> nodes;
    bool terminating = false;

    /// First terminated node. Requires `terminating`.
    NodeId last() const { return nodes.back(); }
    std::set<NodeId> occ() const { return {nodes.begin(), nodes.end()}; }
};

struct NonTerminating {
    std::vector<NodeId> prefix;
};

using SimulationResult = std::variant<Path, NonTerminating>;

/**
 * Plays `p1` against `p2` from `start` until the first terminated node.
 * Throws UndefinedChoice if a strategy returns kNoAction or an action with
 * no edge at the current node.
 */
SimulationResult simulate(const Arena& arena, NodeId start, const Strategy& p1, const Strategy& p2,
                          std::optional<std::size_t> max_steps = std::nullopt);

/// L(ρ): labels of the base states strictly before the terminating state.
std::vector<Label> trace(const TerminatingGame& game, const Path& path);

/**
 * Properness of a memoryless strategy. With the owner restricted to its
 * choices and the opponent keeping every edge, no cycle reachable from
 * `start` may pass through a non-terminated owner node.
 */
bool is_proper_memoryless(const MemorylessStrategy& s, const Arena& arena, NodeId start);

} // namespace nashpriv
