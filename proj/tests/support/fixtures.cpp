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

#include "fixtures.hpp"

#include "nashpriv/io.hpp"

namespace nashpriv::testing {

std::string data_path(const std::string& relative) { return std::string(NASHPRIV_DATA_DIR) + "/" + relative; }

Scenario cycle_scenario()
{
    auto game = std::make_shared<const TerminatingGame>(game_from_json(read_json_file(data_path("cycle/game.json"))));
    auto sa = std::make_shared<const SemiAutomaton>(semi_from_json(read_json_file(data_path("cycle/semi.json"))));
    auto pg = std::make_shared<const ProductGame>(build_product(game, sa));
    return Scenario{pg, preorder_from_json(read_json_file(data_path("cycle/pref1.json")), *sa),
                    preorder_from_json(read_json_file(data_path("cycle/pref2.json")), *sa)};
}

Network delivery_network() { return network_from_json(read_json_file(data_path("delivery/network.json"))); }

Scenario delivery_scenario()
{
    const DeliveryModel dm = build_delivery_game(delivery_network());
    auto pg = std::make_shared<const ProductGame>(dm.product());
    return Scenario{pg, preorder_from_json(read_json_file(data_path("delivery/pref1.json")), *dm.automaton),
                    preorder_from_json(read_json_file(data_path("delivery/pref2.json")), *dm.automaton)};
}

} // namespace nashpriv::testing
