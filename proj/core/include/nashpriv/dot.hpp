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

#include <optional>
#include <string>
#include <vector>

namespace nashpriv {

struct DotOptions {
    /// Nodes drawn with a bold outline, e.g. a winning region.
    NodeSet highlight;
    /// Nodes whose edges along consecutive entries are drawn bold.
    std::vector<NodeId> path;
    bool show_terminated = true;
};

/// Player 1 nodes are circles, player 2 nodes boxes; fill color follows the semi state.
std::string product_to_dot(const ProductGame& pg, const DotOptions& options = {});

/// View of the network restricted to ℱ1 or ℱ2, or all of ℱ when `player` is empty.
std::string network_to_dot(const Network& net, std::optional<Player> player = std::nullopt);

} // namespace nashpriv
