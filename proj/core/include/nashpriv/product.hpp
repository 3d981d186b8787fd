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
#include "nashpriv/preference.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace nashpriv {

/// Membership vector over arena nodes.
using NodeSet = std::vector<bool>;

struct ProductNode {
    StateId state;
    QState semi;
    bool terminated;
    friend auto operator<=>(const ProductNode&, const ProductNode&) = default;
};

/**
 * Terminating product game H_τ of a terminating game and a semi-automaton.
 *
 * Only nodes reachable from (v0, 0) are stored; ids follow the
 * lexicographic order of (state, semi state, bit). The semi component is
 * updated with the label of the state being entered and is frozen by τ.
 */
class ProductGame {
  public:
    const TerminatingGame& game() const { return *game_; }
    const SemiAutomaton& automaton() const { return *automaton_; }
    const Arena& arena() const { return *arena_; }
    std::shared_ptr<const Arena> shared_arena() const { return arena_; }

    std::size_t size() const { return nodes_.size(); }
    std::size_t num_semi_states() const { return automaton_->num_states(); }
    NodeId initial() const { return initial_; }
    const ProductNode& node(NodeId v) const { return nodes_[v]; }
    QState semi(NodeId v) const { return nodes_[v].semi; }
    bool terminated(NodeId v) const { return nodes_[v].terminated; }
    std::optional<NodeId> find(const ProductNode& n) const;
    std::string node_name(NodeId v) const;

    /// V_r ∩ (V × {0}), ascending.
    std::vector<NodeId> reachable_unterminated() const;

    friend ProductGame build_product(std::shared_ptr<const TerminatingGame> game,
                                     std::shared_ptr<const SemiAutomaton> automaton);

  private:
    std::shared_ptr<const TerminatingGame> game_;
    std::shared_ptr<const SemiAutomaton> automaton_;
    std::shared_ptr<Arena> arena_;
    std::vector<ProductNode> nodes_;
    NodeId initial_ = 0;
};

/// Throws AlphabetMismatch when the automaton reads propositions the game lacks.
ProductGame build_product(std::shared_ptr<const TerminatingGame> game, std::shared_ptr<const SemiAutomaton> automaton);
ProductGame build_product(const TerminatingGame& game, const SemiAutomaton& automaton);

/// Preorder on product nodes induced through Semi.
class LiftedPreorder {
  public:
    LiftedPreorder(const Preorder& e, const ProductGame& pg) : e_(&e), pg_(&pg) {}
    bool weakly(NodeId v, NodeId w) const { return e_->weakly_prefers(pg_->semi(v), pg_->semi(w)); }
    bool strictly(NodeId v, NodeId w) const { return e_->strictly_prefers(pg_->semi(v), pg_->semi(w)); }

  private:
    const Preorder* e_;
    const ProductGame* pg_;
};

LiftedPreorder lift_preorder(const Preorder& e, const ProductGame& pg);

/**
 * V_i⁺(q), V_i⁻(q) and the Büchi target B_i(q) = V_i⁺(q) × {0,1}, all over
 * product nodes. Depends on the preorder only through {q}↑.
 */
struct ObjectiveSet {
    Player player = Player::One;
    QState q = 0;
    QMask upper = 0;
    NodeSet target;

    bool in_upper(NodeId v) const { return target[v]; }
    NodeSet lower() const;
};

ObjectiveSet objective_sets(const ProductGame& pg, Player player, const Preorder& e, QState q);
ObjectiveSet objective_sets_from_closure(const ProductGame& pg, Player player, QState q, QMask upper);

enum class Comparison { StrictlyPreferred, Equally, Incomparable, StrictlyWorse };

/// Compares the outcomes Semi(Last(ρ1)) and Semi(Last(ρ2)) of two terminating product paths.
Comparison trace_preference(const ProductGame& pg, const Path& rho1, const Path& rho2, const Preorder& e);

} // namespace nashpriv
