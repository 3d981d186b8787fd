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

#include "nashpriv/delivery.hpp"
#include "nashpriv/game.hpp"
#include "nashpriv/preference.hpp"
#include "nashpriv/product.hpp"
#include "nashpriv/protocol.hpp"
#include "nashpriv/synthesis.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace nashpriv {

using Json = nlohmann::json;

/// Parses a JSON file. Syntax errors become InputError with line and column.
Json read_json_file(const std::string& path);
Json parse_json(const std::string& text, const std::string& source = "<input>");
void write_text_file(const std::string& path, const std::string& text);

/**
 * {"states": [{"id", "owner", "label": [ap...]}], "initial",
 *  "actions": [{"id", "owner"}], "transitions": [{"from", "action", "to"}],
 *  "atomic_props"?}
 * Owners are 1 or 2. Without "atomic_props" the propositions are collected
 * from the labels in order of appearance.
 */
GameGraph game_from_json(const Json& j);
Json game_to_json(const GameGraph& g);

/**
 * {"states", "initial", "atomic_props"?, "transitions": [{"from", "symbol": [ap...], "to"}],
 *  "defaults"?: {"state": "state"}}
 * "from": "*" applies a transition to every state, and a "*" default key
 * applies to every state without its own default.
 */
SemiAutomaton semi_from_json(const Json& j);
Json semi_to_json(const SemiAutomaton& sa);

/// {"states"?, "edges": [["u", "v"], ...]}: reflexive-transitive closure of the edges.
Preorder preorder_from_json(const Json& j, const SemiAutomaton& sa);
Json preorder_to_json(const Preorder& e, const SemiAutomaton& sa);

/// {"x", "y"} for x ≻ y, or {"constraints": [{"u", "v", "strict"}, ...]}.
Secret secret_from_json(const Json& j, const SemiAutomaton& sa);

/// {"nodes", "edges", "f1", "f2", "destinations", "initial", "initial_holder"?}
Network network_from_json(const Json& j);
Json network_to_json(const Network& net);

std::string action_name(const ProductGame& pg, ActionId a);

/// Equilibrium, none or stop, with a replay of the combined strategies.
Json result_to_json(const ProductGame& pg, const EquilibriumResult& result);

/// Byte-stable transcript: node lists are ascending ids.
Json transcript_to_json(const ProductGame& pg, const Transcript& t);
Json response_to_json(const ProductGame& pg, const Response& r);

} // namespace nashpriv
