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
#include "nashpriv/product.hpp"

#include <memory>
#include <string>

namespace nashpriv::testing {

std::string data_path(const std::string& relative);

/// A product game together with both players' preorders.
struct Scenario {
    std::shared_ptr<const ProductGame> product;
    Preorder e1;
    Preorder e2;

    const SemiAutomaton& automaton() const { return product->automaton(); }
    QState state(const std::string& name) const { return *automaton().find_state(name); }
};

/// Two-state cycle in which each player prefers the other to terminate.
Scenario cycle_scenario();

/// Shared-delivery environment with destinations a, b, c, d.
Scenario delivery_scenario();
Network delivery_network();

} // namespace nashpriv::testing
