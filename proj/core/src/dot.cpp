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

#include "nashpriv/dot.hpp"

#include <array>
#include <sstream>

namespace nashpriv {

namespace {

constexpr std::array<const char*, 12> kPalette = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
                                                  "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};

std::string quoted(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string product_to_dot(const ProductGame& pg, const DotOptions& options)
{
    const Arena& arena = pg.arena();
    auto visible = [&](NodeId v) { return options.show_terminated || !pg.terminated(v); };
    auto on_path = [&](NodeId a, NodeId b) {
        for (std::size_t i = 0; i + 1 < options.path.size(); ++i) {
            if (options.path[i] == a && options.path[i + 1] == b) return true;
        }
        return false;
    };

    std::ostringstream out;
    out << "digraph product {\n  rankdir=LR;\n  node [style=filled];\n";
    out << "  start [shape=point];\n  start -> n" << pg.initial() << ";\n";
    for (NodeId v = 0; v < pg.size(); ++v) {
        if (!visible(v)) continue;
        out << "  n" << v << " [label=" << quoted(pg.node_name(v))
            << ", shape=" << (arena.owner(v) == Player::One ? "circle" : "box")
            << ", fillcolor=" << quoted(kPalette[pg.semi(v) % kPalette.size()]);
        if (pg.terminated(v)) out << ", peripheries=2";
        if (v < options.highlight.size() && options.highlight[v]) out << ", penwidth=3";
        out << "];\n";
    }
    for (NodeId v = 0; v < pg.size(); ++v) {
        if (!visible(v)) continue;
        for (const Edge& e : arena.out(v)) {
            if (!visible(e.to) || (e.action == kTerminate && pg.terminated(v))) continue;
            const std::string name =
                e.action == kTerminate ? "tau" : pg.game().base().action(e.action).name;
            out << "  n" << v << " -> n" << e.to << " [label=" << quoted(name);
            if (on_path(v, e.to)) out << ", penwidth=3";
            out << "];\n";
        }
    }
    out << "}\n";
    return out.str();
}

std::string network_to_dot(const Network& net, std::optional<Player> player)
{
    const auto& edges = !player ? net.edges : (*player == Player::One ? net.f1 : net.f2);
    std::ostringstream out;
    out << "graph network {\n";
    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
        bool dest = false;
        for (std::size_t d : net.destinations) dest = dest || d == i;
        out << "  t" << i << " [label=" << quoted(net.nodes[i]) << (dest ? ", shape=doublecircle" : ", shape=circle");
        if (i == net.initial) out << ", style=bold";
        out << "];\n";
    }
    for (auto [a, b] : edges) {
        out << "  t" << a << " -- t" << b << ";\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace nashpriv
