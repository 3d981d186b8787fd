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

#include "nashpriv/delivery.hpp"

#include "nashpriv/errors.hpp"

#include <algorithm>
#include <numeric>

namespace nashpriv {

std::optional<std::size_t> Network::find(std::string_view name) const
{
    auto it = std::find(nodes.begin(), nodes.end(), name);
    if (it == nodes.end()) return std::nullopt;
    return static_cast<std::size_t>(it - nodes.begin());
}

namespace {

bool same_edge(const Network::EdgeRef& a, const Network::EdgeRef& b)
{
    return a == b || (a.first == b.second && a.second == b.first);
}

} // namespace

void Network::validate() const
{
    if (nodes.empty()) throw InputError("network has no nodes", "/nodes");
    if (nodes.size() > kMaxAtomicProps) throw InputError("network has more than 64 nodes", "/nodes");
    auto check = [&](const EdgeRef& e, const std::string& where) {
        if (e.first >= nodes.size() || e.second >= nodes.size()) throw InputError("edge endpoint out of range", where);
    };
    for (std::size_t i = 0; i < edges.size(); ++i) check(edges[i], "/edges/" + std::to_string(i));
    auto subset = [&](const std::vector<EdgeRef>& f, const std::string& key) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            check(f[i], "/" + key + "/" + std::to_string(i));
            if (std::none_of(edges.begin(), edges.end(), [&](const EdgeRef& e) { return same_edge(e, f[i]); })) {
                throw InputError("edge is not in the network", "/" + key + "/" + std::to_string(i));
            }
        }
    };
    subset(f1, "f1");
    subset(f2, "f2");
    for (std::size_t i = 0; i < destinations.size(); ++i) {
        if (destinations[i] >= nodes.size()) {
            throw InputError("destination out of range", "/destinations/" + std::to_string(i));
        }
    }
    if (initial >= nodes.size()) throw InputError("initial node out of range", "/initial");
}

namespace {

std::vector<std::vector<std::size_t>> neighbours(std::size_t n, const std::vector<Network::EdgeRef>& edges)
{
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        if (a != b) adj[b].push_back(a);
    }
    for (auto& row : adj) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return adj;
}

bool connected(const Network& net)
{
    const auto adj = neighbours(net.nodes.size(), net.edges);
    std::vector<bool> seen(net.nodes.size());
    std::vector<std::size_t> stack{net.initial};
    seen[net.initial] = true;
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w : adj[v]) {
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

} // namespace

DeliveryModel build_delivery_game(const Network& net)
{
    net.validate();
    const std::size_t n = net.nodes.size();
    DeliveryModel model;
    if (!connected(net)) model.warnings.push_back("network is disconnected");

    GameGraph g(net.nodes);
    const Player holders[2] = {Player::One, Player::Two};
    for (std::size_t t = 0; t < n; ++t) {
        for (Player p : holders) {
            g.add_state("(" + net.nodes[t] + ",p" + std::to_string(player_number(p)) + ")", p, Label{1} << t);
        }
    }
    std::vector<ActionId> go[2];
    ActionId exchange[2];
    for (Player p : holders) {
        const std::string prefix = "p" + std::to_string(player_number(p));
        for (std::size_t t = 0; t < n; ++t) go[player_index(p)].push_back(g.add_action(prefix + "_to_" + net.nodes[t], p));
        exchange[player_index(p)] = g.add_action(prefix + "_exchange", p);
    }
    for (Player p : holders) {
        const int i = player_index(p);
        const auto adj = neighbours(n, i == 0 ? net.f1 : net.f2);
        for (std::size_t t = 0; t < n; ++t) {
            const auto s = static_cast<StateId>(2 * t + static_cast<std::size_t>(i));
            for (std::size_t to : adj[t]) g.add_transition(s, go[i][to], static_cast<StateId>(2 * to + static_cast<std::size_t>(i)));
            g.add_transition(s, exchange[i], static_cast<StateId>(2 * t + static_cast<std::size_t>(1 - i)));
        }
    }
    g.set_initial(static_cast<StateId>(2 * net.initial + static_cast<std::size_t>(player_index(net.initial_holder))));
    g.validate();

    std::vector<bool> is_dest(n);
    for (std::size_t d : net.destinations) is_dest[d] = true;
    std::vector<std::string> qnames;
    std::vector<QState> q_of(n);
    for (std::size_t d : net.destinations) {
        if (std::find(qnames.begin(), qnames.end(), net.nodes[d]) != qnames.end()) continue;
        q_of[d] = static_cast<QState>(qnames.size());
        qnames.push_back(net.nodes[d]);
    }
    const bool has_top = std::find(is_dest.begin(), is_dest.end(), false) != is_dest.end();
    const auto top = static_cast<QState>(qnames.size());
    if (has_top) qnames.emplace_back(kTopState);
    const QState q0 = has_top ? top : q_of[net.initial];

    auto sa = std::make_shared<SemiAutomaton>(qnames, net.nodes, q0);
    for (QState q = 0; q < qnames.size(); ++q) {
        for (std::size_t t = 0; t < n; ++t) sa->add_transition(q, Symbol{1} << t, is_dest[t] ? q_of[t] : top);
        sa->set_default(q, has_top ? top : q);
    }

    model.game = std::make_shared<const TerminatingGame>(augment_terminating(std::move(g)));
    model.automaton = std::move(sa);
    return model;
}

Network grid_network(std::size_t k, std::size_t init_row, std::size_t init_col, Player holder)
{
    if (k == 0 || k * k > kMaxAtomicProps) throw InputError("grid side must be between 1 and 8");
    if (init_row >= k || init_col >= k) throw InputError("initial grid location out of range");
    Network net;
    auto id = [k](std::size_t i, std::size_t j) { return i * k + j; };
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) net.nodes.push_back("r" + std::to_string(i) + "c" + std::to_string(j));
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const std::size_t v = id(i, j);
            net.edges.emplace_back(v, v);
            net.f1.emplace_back(v, v);
            net.f2.emplace_back(v, v);
            if (j + 1 < k) {
                net.edges.emplace_back(v, id(i, j + 1));
                net.f1.emplace_back(v, id(i, j + 1));
            }
            if (i + 1 < k) {
                net.edges.emplace_back(v, id(i + 1, j));
                net.f2.emplace_back(v, id(i + 1, j));
            }
        }
    }
    net.destinations.resize(k * k);
    std::iota(net.destinations.begin(), net.destinations.end(), std::size_t{0});
    net.initial = id(init_row, init_col);
    net.initial_holder = holder;
    return net;
}

Network grid_network(std::size_t k)
{
    return grid_network(k, k / 2, k / 2, Player::One);
}

} // namespace nashpriv
