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

#include "nashpriv/io.hpp"

#include "nashpriv/errors.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace nashpriv {

namespace {

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

void expect_object(const Json& j, const std::string& path, std::initializer_list<const char*> allowed)
{
    if (!j.is_object()) throw InputError("expected an object", path.empty() ? "/" : path);
    for (const auto& item : j.items()) {
        const std::string& key = item.key();
        if (key == "name" || key == "description" || key == "comment") continue;
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
            throw InputError("unknown field '" + key + "'", at(path, key));
        }
    }
}

const Json& field(const Json& j, const char* key, const std::string& path)
{
    auto it = j.find(key);
    if (it == j.end()) throw InputError(std::string("missing field '") + key + "'", path.empty() ? "/" : path);
    return *it;
}

const Json& array(const Json& j, const std::string& path)
{
    if (!j.is_array()) throw InputError("expected an array", path);
    return j;
}

std::string text(const Json& j, const std::string& path)
{
    if (!j.is_string()) throw InputError("expected a string", path);
    return j.get<std::string>();
}

Player owner_of(const Json& j, const std::string& path)
{
    if (j.is_number_integer()) {
        const auto v = j.get<long long>();
        if (v == 1) return Player::One;
        if (v == 2) return Player::Two;
    } else if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "1" || s == "p1") return Player::One;
        if (s == "2" || s == "p2") return Player::Two;
    }
    throw InputError("owner must be 1 or 2", path);
}

template <class F>
auto located(const std::string& path, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const InputError& e) {
        if (!e.where().empty()) throw;
        throw InputError(e.what(), path);
    }
}

std::pair<std::size_t, std::size_t> line_column(const std::string& textv, std::size_t byte)
{
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < textv.size(); ++i) {
        if (textv[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

} // namespace

Json parse_json(const std::string& src, const std::string& source)
{
    try {
        return Json::parse(src);
    } catch (const Json::parse_error& e) {
        auto [line, col] = line_column(src, e.byte == 0 ? 0 : e.byte - 1);
        throw InputError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col), source);
    }
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file", path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path);
}

void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << content;
    if (!out) throw Error("failed writing " + path);
}

GameGraph game_from_json(const Json& j)
{
    expect_object(j, "", {"states", "initial", "actions", "transitions", "atomic_props"});
    const Json& states = array(field(j, "states", ""), "/states");

    std::vector<std::string> props;
    if (j.contains("atomic_props")) {
        const Json& aps = array(j["atomic_props"], "/atomic_props");
        for (std::size_t i = 0; i < aps.size(); ++i) props.push_back(text(aps[i], at("/atomic_props", i)));
    } else {
        for (std::size_t i = 0; i < states.size(); ++i) {
            if (!states[i].is_object() || !states[i].contains("label")) continue;
            const Json& label = array(states[i]["label"], at(at("/states", i), "label"));
            for (std::size_t k = 0; k < label.size(); ++k) {
                auto ap = text(label[k], at(at(at("/states", i), "label"), k));
                if (std::find(props.begin(), props.end(), ap) == props.end()) props.push_back(ap);
            }
        }
    }

    GameGraph g = located("/atomic_props", [&] { return GameGraph(props); });
    for (std::size_t i = 0; i < states.size(); ++i) {
        const std::string p = at("/states", i);
        expect_object(states[i], p, {"id", "owner", "label"});
        const std::string id = text(field(states[i], "id", p), at(p, "id"));
        const Player owner = owner_of(field(states[i], "owner", p), at(p, "owner"));
        Label label = 0;
        if (states[i].contains("label")) {
            const Json& l = array(states[i]["label"], at(p, "label"));
            for (std::size_t k = 0; k < l.size(); ++k) {
                const std::string lp = at(at(p, "label"), k);
                auto ap = g.find_prop(text(l[k], lp));
                if (!ap) throw InputError("unknown atomic proposition", lp);
                label |= Label{1} << *ap;
            }
        }
        located(at(p, "id"), [&] { return g.add_state(id, owner, label); });
    }

    const Json& actions = array(field(j, "actions", ""), "/actions");
    for (std::size_t i = 0; i < actions.size(); ++i) {
        const std::string p = at("/actions", i);
        expect_object(actions[i], p, {"id", "owner"});
        const std::string id = text(field(actions[i], "id", p), at(p, "id"));
        if (id == "tau") throw InputError("'tau' is reserved for termination", at(p, "id"));
        const Player owner = owner_of(field(actions[i], "owner", p), at(p, "owner"));
        located(at(p, "id"), [&] { return g.add_action(id, owner); });
    }

    const Json& transitions = array(field(j, "transitions", ""), "/transitions");
    for (std::size_t i = 0; i < transitions.size(); ++i) {
        const std::string p = at("/transitions", i);
        expect_object(transitions[i], p, {"from", "action", "to"});
        auto from = g.find_state(text(field(transitions[i], "from", p), at(p, "from")));
        if (!from) throw InputError("unknown state", at(p, "from"));
        auto action = g.find_action(text(field(transitions[i], "action", p), at(p, "action")));
        if (!action) throw InputError("unknown action", at(p, "action"));
        auto to = g.find_state(text(field(transitions[i], "to", p), at(p, "to")));
        if (!to) throw InputError("unknown state", at(p, "to"));
        located(p, [&] {
            g.add_transition(*from, *action, *to);
            return 0;
        });
    }

    auto init = g.find_state(text(field(j, "initial", ""), "/initial"));
    if (!init) throw InputError("unknown initial state", "/initial");
    g.set_initial(*init);
    located("/states", [&] {
        g.validate();
        return 0;
    });
    return g;
}

Json game_to_json(const GameGraph& g)
{
    Json states = Json::array();
    for (StateId s = 0; s < g.num_states(); ++s) {
        const auto& info = g.state(s);
        states.push_back({{"id", info.name}, {"owner", player_number(info.owner)}, {"label", g.label_names(info.label)}});
    }
    Json actions = Json::array();
    for (std::size_t a = 0; a < g.num_actions(); ++a) {
        const auto& info = g.action(static_cast<ActionId>(a));
        actions.push_back({{"id", info.name}, {"owner", player_number(info.owner)}});
    }
    Json transitions = Json::array();
    for (StateId s = 0; s < g.num_states(); ++s) {
        for (const auto& t : g.transitions(s)) {
            transitions.push_back({{"from", g.state(s).name}, {"action", g.action(t.action).name}, {"to", g.state(t.to).name}});
        }
    }
    return {{"atomic_props", g.atomic_props()},
            {"states", std::move(states)},
            {"initial", g.state(g.initial()).name},
            {"actions", std::move(actions)},
            {"transitions", std::move(transitions)}};
}

SemiAutomaton semi_from_json(const Json& j)
{
    expect_object(j, "", {"states", "initial", "atomic_props", "transitions", "defaults"});
    const Json& states = array(field(j, "states", ""), "/states");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < states.size(); ++i) {
        auto name = text(states[i], at("/states", i));
        if (name == "*") throw InputError("'*' is reserved", at("/states", i));
        if (std::find(names.begin(), names.end(), name) != names.end()) throw InputError("duplicate state", at("/states", i));
        names.push_back(std::move(name));
    }
    const Json& transitions = j.contains("transitions") ? array(j["transitions"], "/transitions") : Json::array();

    std::vector<std::string> props;
    if (j.contains("atomic_props")) {
        const Json& aps = array(j["atomic_props"], "/atomic_props");
        for (std::size_t i = 0; i < aps.size(); ++i) props.push_back(text(aps[i], at("/atomic_props", i)));
    } else {
        for (std::size_t i = 0; i < transitions.size(); ++i) {
            if (!transitions[i].is_object() || !transitions[i].contains("symbol")) continue;
            const std::string sp = at(at("/transitions", i), "symbol");
            const Json& sym = array(transitions[i]["symbol"], sp);
            for (std::size_t k = 0; k < sym.size(); ++k) {
                auto ap = text(sym[k], at(sp, k));
                if (std::find(props.begin(), props.end(), ap) == props.end()) props.push_back(ap);
            }
        }
    }

    auto index = [&](const Json& v, const std::string& p) -> QState {
        auto name = text(v, p);
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) throw InputError("unknown semi-automaton state '" + name + "'", p);
        return static_cast<QState>(it - names.begin());
    };
    const QState init = index(field(j, "initial", ""), "/initial");
    SemiAutomaton sa = located("/states", [&] { return SemiAutomaton(names, props, init); });

    for (std::size_t i = 0; i < transitions.size(); ++i) {
        const std::string p = at("/transitions", i);
        expect_object(transitions[i], p, {"from", "symbol", "to"});
        Symbol symbol = 0;
        const Json& sym = array(field(transitions[i], "symbol", p), at(p, "symbol"));
        for (std::size_t k = 0; k < sym.size(); ++k) {
            const std::string sp = at(at(p, "symbol"), k);
            auto ap = text(sym[k], sp);
            auto it = std::find(props.begin(), props.end(), ap);
            if (it == props.end()) throw InputError("unknown atomic proposition '" + ap + "'", sp);
            symbol |= Symbol{1} << (it - props.begin());
        }
        const QState to = index(field(transitions[i], "to", p), at(p, "to"));
        const Json& from = field(transitions[i], "from", p);
        if (from.is_string() && from.get<std::string>() == "*") {
            for (QState q = 0; q < names.size(); ++q) {
                if (!sa.explicit_transitions().contains({q, symbol})) located(p, [&] {
                    sa.add_transition(q, symbol, to);
                    return 0;
                });
            }
        } else {
            const QState q = index(from, at(p, "from"));
            located(p, [&] {
                sa.add_transition(q, symbol, to);
                return 0;
            });
        }
    }

    if (j.contains("defaults")) {
        const Json& defaults = j["defaults"];
        if (!defaults.is_object()) throw InputError("expected an object", "/defaults");
        std::optional<QState> wildcard;
        for (const auto& item : defaults.items()) {
            const std::string p = at("/defaults", item.key());
            const QState to = index(item.value(), p);
            if (item.key() == "*") {
                wildcard = to;
                continue;
            }
            auto it = std::find(names.begin(), names.end(), item.key());
            if (it == names.end()) throw InputError("unknown semi-automaton state '" + item.key() + "'", p);
            sa.set_default(static_cast<QState>(it - names.begin()), to);
        }
        if (wildcard) {
            for (QState q = 0; q < names.size(); ++q) {
                if (!sa.default_of(q)) sa.set_default(q, *wildcard);
            }
        }
    }
    return sa;
}

Json semi_to_json(const SemiAutomaton& sa)
{
    Json transitions = Json::array();
    for (const auto& [key, to] : sa.explicit_transitions()) {
        Json symbol = Json::array();
        for (std::size_t i = 0; i < sa.atomic_props().size(); ++i) {
            if ((key.second >> i) & 1U) symbol.push_back(sa.atomic_props()[i]);
        }
        transitions.push_back({{"from", sa.state_name(key.first)}, {"symbol", std::move(symbol)}, {"to", sa.state_name(to)}});
    }
    Json defaults = Json::object();
    for (QState q = 0; q < sa.num_states(); ++q) {
        if (auto d = sa.default_of(q)) defaults[sa.state_name(q)] = sa.state_name(*d);
    }
    return {{"states", sa.states()},
            {"initial", sa.state_name(sa.initial())},
            {"atomic_props", sa.atomic_props()},
            {"transitions", std::move(transitions)},
            {"defaults", std::move(defaults)}};
}

Preorder preorder_from_json(const Json& j, const SemiAutomaton& sa)
{
    expect_object(j, "", {"states", "edges"});
    if (j.contains("states")) {
        const Json& states = array(j["states"], "/states");
        std::set<std::string> given;
        for (std::size_t i = 0; i < states.size(); ++i) given.insert(text(states[i], at("/states", i)));
        const std::set<std::string> expected(sa.states().begin(), sa.states().end());
        if (given != expected) throw InputError("preorder states differ from the semi-automaton states", "/states");
    }
    Relation r(sa.num_states());
    const Json& edges = array(field(j, "edges", ""), "/edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string p = at("/edges", i);
        if (!edges[i].is_array() || edges[i].size() != 2) throw InputError("edge must be a pair [u, v]", p);
        auto u = sa.find_state(text(edges[i][0], at(p, 0)));
        if (!u) throw InputError("unknown state", at(p, 0));
        auto v = sa.find_state(text(edges[i][1], at(p, 1)));
        if (!v) throw InputError("unknown state", at(p, 1));
        r.add(*u, *v);
    }
    return Preorder::closure_of(std::move(r));
}

Json preorder_to_json(const Preorder& e, const SemiAutomaton& sa)
{
    Json edges = Json::array();
    const auto n = static_cast<QState>(e.size());
    for (QState u = 0; u < n; ++u) {
        for (QState v = 0; v < n; ++v) {
            if (u != v && e.weakly_prefers(u, v)) edges.push_back({sa.state_name(u), sa.state_name(v)});
        }
    }
    return {{"states", sa.states()}, {"edges", std::move(edges)}};
}

Secret secret_from_json(const Json& j, const SemiAutomaton& sa)
{
    expect_object(j, "", {"x", "y", "constraints"});
    auto state = [&](const Json& v, const std::string& p) {
        auto q = sa.find_state(text(v, p));
        if (!q) throw InputError("unknown state", p);
        return *q;
    };
    if (j.contains("constraints")) {
        if (j.contains("x") || j.contains("y")) throw InputError("give either x/y or constraints", "/constraints");
        Secret secret;
        const Json& list = array(j["constraints"], "/constraints");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string p = at("/constraints", i);
            expect_object(list[i], p, {"u", "v", "strict"});
            bool strict = true;
            if (list[i].contains("strict")) {
                if (!list[i]["strict"].is_boolean()) throw InputError("expected a boolean", at(p, "strict"));
                strict = list[i]["strict"].get<bool>();
            }
            secret.constraints.push_back(Constraint{state(field(list[i], "u", p), at(p, "u")),
                                                    state(field(list[i], "v", p), at(p, "v")),
                                                    strict ? Polarity::Strict : Polarity::NotStrict});
        }
        if (secret.constraints.empty()) throw InputError("secret needs at least one constraint", "/constraints");
        return secret;
    }
    const QState x = state(field(j, "x", ""), "/x");
    const QState y = state(field(j, "y", ""), "/y");
    if (x == y) throw InputError("x and y must differ", "/y");
    return Secret::strict_pair(x, y);
}

Network network_from_json(const Json& j)
{
    expect_object(j, "", {"nodes", "edges", "f1", "f2", "destinations", "initial", "initial_holder"});
    Network net;
    const Json& nodes = array(field(j, "nodes", ""), "/nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto name = text(nodes[i], at("/nodes", i));
        if (net.find(name)) throw InputError("duplicate node", at("/nodes", i));
        net.nodes.push_back(std::move(name));
    }
    auto node = [&](const Json& v, const std::string& p) {
        auto idx = net.find(text(v, p));
        if (!idx) throw InputError("unknown node", p);
        return *idx;
    };
    auto edge_list = [&](const char* key) {
        std::vector<Network::EdgeRef> out;
        const std::string p = std::string("/") + key;
        const Json& list = array(field(j, key, ""), p);
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (!list[i].is_array() || list[i].size() != 2) throw InputError("edge must be a pair", at(p, i));
            out.emplace_back(node(list[i][0], at(at(p, i), 0)), node(list[i][1], at(at(p, i), 1)));
        }
        return out;
    };
    net.edges = edge_list("edges");
    net.f1 = edge_list("f1");
    net.f2 = edge_list("f2");
    const Json& dests = array(field(j, "destinations", ""), "/destinations");
    for (std::size_t i = 0; i < dests.size(); ++i) net.destinations.push_back(node(dests[i], at("/destinations", i)));
    net.initial = node(field(j, "initial", ""), "/initial");
    if (j.contains("initial_holder")) net.initial_holder = owner_of(j["initial_holder"], "/initial_holder");
    located("", [&] {
        net.validate();
        return 0;
    });
    return net;
}

Json network_to_json(const Network& net)
{
    auto edges = [&](const std::vector<Network::EdgeRef>& list) {
        Json out = Json::array();
        for (auto [a, b] : list) out.push_back({net.nodes[a], net.nodes[b]});
        return out;
    };
    Json dests = Json::array();
    for (std::size_t d : net.destinations) dests.push_back(net.nodes[d]);
    return {{"nodes", net.nodes},
            {"edges", edges(net.edges)},
            {"f1", edges(net.f1)},
            {"f2", edges(net.f2)},
            {"destinations", std::move(dests)},
            {"initial", net.nodes[net.initial]},
            {"initial_holder", player_number(net.initial_holder)}};
}

std::string action_name(const ProductGame& pg, ActionId a)
{
    if (a == kTerminate) return "tau";
    if (a == kNoAction) return "none";
    return pg.game().base().action(a).name;
}

namespace {

Json strategy_to_json(const ProductGame& pg, const MemorylessStrategy& s)
{
    Json out = Json::array();
    for (NodeId v = 0; v < pg.size(); ++v) {
        if (pg.terminated(v) || pg.arena().owner(v) != s.owner()) continue;
        const ActionId a = s.at(v);
        if (a == kNoAction) continue;
        out.push_back({{"node", v}, {"name", pg.node_name(v)}, {"action", action_name(pg, a)}});
    }
    return out;
}

} // namespace

Json result_to_json(const ProductGame& pg, const EquilibriumResult& result)
{
    if (std::holds_alternative<NoneExists>(result)) return {{"outcome", "none"}};
    if (const auto* s = std::get_if<Stopped>(&result)) {
        return {{"outcome", "stopped"}, {"player", player_number(s->by)}, {"query", s->query}};
    }
    const auto& eq = std::get<Equilibrium>(result);
    const auto& sa = pg.automaton();
    Json names = Json::array();
    Json actions = Json::array();
    for (NodeId v : eq.nominal.nodes) names.push_back(pg.node_name(v));
    for (ActionId a : eq.nominal.actions) actions.push_back(action_name(pg, a));

    Json steps = Json::array();
    const CombinedStrategy c1 = eq.strategy(Player::One);
    const CombinedStrategy c2 = eq.strategy(Player::Two);
    std::vector<NodeId> history{pg.initial()};
    while (!pg.terminated(history.back()) && history.size() <= 2 * pg.size() + 1) {
        const NodeId v = history.back();
        const Player p = pg.arena().owner(v);
        const ActionId a = (p == Player::One ? static_cast<const Strategy&>(c1) : c2).choose(history);
        const auto next = pg.arena().successor(v, a);
        if (!next) break;
        steps.push_back({{"node", v}, {"player", player_number(p)}, {"action", action_name(pg, a)}, {"next", *next}});
        history.push_back(*next);
    }

    return {{"outcome", "equilibrium"},
            {"q", sa.state_name(eq.q())},
            {"terminal", {{"node", eq.terminal()}, {"name", pg.node_name(eq.terminal())}}},
            {"nominal", {{"nodes", eq.nominal.nodes}, {"names", std::move(names)}, {"actions", std::move(actions)}}},
            {"punishment",
             {{"by_player_1", strategy_to_json(pg, eq.punish_by_1)}, {"by_player_2", strategy_to_json(pg, eq.punish_by_2)}}},
            {"replay", {{"start", pg.initial()}, {"steps", std::move(steps)}}}};
}

Json response_to_json(const ProductGame& pg, const Response& r)
{
    if (const auto* lr = std::get_if<LosingRegion>(&r)) {
        std::vector<NodeId> nodes = lr->nodes;
        std::sort(nodes.begin(), nodes.end());
        return {{"type", "losing_region"}, {"nodes", std::move(nodes)}};
    }
    if (const auto* bp = std::get_if<BuchiPayload>(&r)) {
        std::vector<NodeId> target = bp->target;
        std::sort(target.begin(), target.end());
        return {{"type", "buchi"},
                {"protagonist", player_number(bp->protagonist)},
                {"target", std::move(target)},
                {"punishment", strategy_to_json(pg, bp->punishment)}};
    }
    return {{"type", "stop"}};
}

Json transcript_to_json(const ProductGame& pg, const Transcript& t)
{
    Json session = Json::array();
    for (const Exchange& x : t.session) {
        session.push_back({{"player", player_number(x.player)},
                           {"query", {{"q", pg.automaton().state_name(x.query.q)}, {"flag", x.query.flag == Flag::R ? "r" : "p"}}},
                           {"response", response_to_json(pg, x.response)}});
    }
    return {{"session", std::move(session)}, {"outcome", to_string(t.outcome)}};
}

} // namespace nashpriv
