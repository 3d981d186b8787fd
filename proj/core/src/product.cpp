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

#include "nashpriv/product.hpp"

#include "nashpriv/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace nashpriv {

namespace {

/// Projects game labels onto the automaton alphabet.
class LabelTranslator {
  public:
    LabelTranslator(const GameGraph& game, const SemiAutomaton& automaton)
    {
        const auto& props = automaton.atomic_props();
        for (std::size_t j = 0; j < props.size(); ++j) {
            auto i = game.find_prop(props[j]);
            if (!i) throw AlphabetMismatch("semi-automaton proposition '" + props[j] + "' is not a game proposition");
            pairs_.emplace_back(*i, j);
        }
    }

    Symbol operator()(Label l) const
    {
        Symbol s = 0;
        for (auto [i, j] : pairs_) {
            if ((l >> i) & 1U) s |= Symbol{1} << j;
        }
        return s;
    }

  private:
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

} // namespace

std::optional<NodeId> ProductGame::find(const ProductNode& n) const
{
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), n);
    if (it == nodes_.end() || *it != n) return std::nullopt;
    return static_cast<NodeId>(it - nodes_.begin());
}

std::string ProductGame::node_name(NodeId v) const
{
    const auto& n = nodes_[v];
    return "(" + game_->base().state(n.state).name + "," + automaton_->state_name(n.semi) + "," +
           (n.terminated ? "1" : "0") + ")";
}

std::vector<NodeId> ProductGame::reachable_unterminated() const
{
    std::vector<NodeId> out;
    for (NodeId v = 0; v < nodes_.size(); ++v) {
        if (!nodes_[v].terminated) out.push_back(v);
    }
    return out;
}

ProductGame build_product(std::shared_ptr<const TerminatingGame> game, std::shared_ptr<const SemiAutomaton> automaton)
{
    const GameGraph& base = game->base();
    const LabelTranslator symbol_of(base, *automaton);
    auto delta_into = [&](QState q, StateId s) { return automaton->step(q, symbol_of(base.state(s).label)); };

    const ProductNode start{base.initial(), delta_into(automaton->initial(), base.initial()), false};
    std::set<ProductNode> seen{start};
    std::deque<ProductNode> queue{start};
    while (!queue.empty()) {
        const ProductNode n = queue.front();
        queue.pop_front();
        auto visit = [&](ProductNode m) {
            if (seen.insert(m).second) queue.push_back(m);
        };
        if (n.terminated) continue;
        for (const auto& t : base.transitions(n.state)) visit({t.to, delta_into(n.semi, t.to), false});
        visit({n.state, n.semi, true});
    }

    ProductGame pg;
    pg.game_ = game;
    pg.automaton_ = automaton;
    pg.arena_ = std::make_shared<Arena>();
    pg.nodes_.assign(seen.begin(), seen.end());
    for (const auto& n : pg.nodes_) pg.arena_->add_node(base.state(n.state).owner, n.terminated);
    for (NodeId v = 0; v < pg.nodes_.size(); ++v) {
        const ProductNode& n = pg.nodes_[v];
        if (n.terminated) {
            pg.arena_->add_edge(v, kTerminate, v);
            continue;
        }
        for (const auto& t : base.transitions(n.state)) {
            pg.arena_->add_edge(v, t.action, *pg.find({t.to, delta_into(n.semi, t.to), false}));
        }
        pg.arena_->add_edge(v, kTerminate, *pg.find({n.state, n.semi, true}));
    }
    pg.initial_ = *pg.find(start);
    return pg;
}

ProductGame build_product(const TerminatingGame& game, const SemiAutomaton& automaton)
{
    return build_product(std::make_shared<const TerminatingGame>(game), std::make_shared<const SemiAutomaton>(automaton));
}

LiftedPreorder lift_preorder(const Preorder& e, const ProductGame& pg)
{
    if (e.size() != pg.num_semi_states()) throw InputError("preorder size does not match the semi-automaton");
    return LiftedPreorder(e, pg);
}

NodeSet ObjectiveSet::lower() const
{
    NodeSet out(target.size());
    for (std::size_t v = 0; v < target.size(); ++v) out[v] = !target[v];
    return out;
}

ObjectiveSet objective_sets_from_closure(const ProductGame& pg, Player player, QState q, QMask upper)
{
    ObjectiveSet obj{player, q, upper, NodeSet(pg.size())};
    for (NodeId v = 0; v < pg.size(); ++v) obj.target[v] = mask_has(upper, pg.semi(v));
    return obj;
}

ObjectiveSet objective_sets(const ProductGame& pg, Player player, const Preorder& e, QState q)
{
    if (e.size() != pg.num_semi_states()) throw InputError("preorder size does not match the semi-automaton");
    return objective_sets_from_closure(pg, player, q, e.strict_upper_closure(q));
}

Comparison trace_preference(const ProductGame& pg, const Path& rho1, const Path& rho2, const Preorder& e)
{
    if (!rho1.terminating || !rho2.terminating) throw NonTerminatingInput("trace_preference needs terminating paths");
    const QState a = pg.semi(rho1.last());
    const QState b = pg.semi(rho2.last());
    const bool ab = e.weakly_prefers(a, b);
    const bool ba = e.weakly_prefers(b, a);
    if (ab && ba) return Comparison::Equally;
    if (ab) return Comparison::StrictlyPreferred;
    if (ba) return Comparison::StrictlyWorse;
    return Comparison::Incomparable;
}

} // namespace nashpriv
