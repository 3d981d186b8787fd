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
#include "nashpriv/product.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace nashpriv {

/// Undirected network (𝒯, ℱ) with per-player traversable edges ℱ1, ℱ2 ⊆ ℱ.
struct Network {
    using EdgeRef = std::pair<std::size_t, std::size_t>;

    std::vector<std::string> nodes;
    std::vector<EdgeRef> edges;
    std::vector<EdgeRef> f1;
    std::vector<EdgeRef> f2;
    std::vector<std::size_t> destinations;
    std::size_t initial = 0;
    Player initial_holder = Player::One;

    std::optional<std::size_t> find(std::string_view name) const;
    /// Throws InputError on bad indices or ℱi ⊄ ℱ.
    void validate() const;
};

/// Name of the semi-automaton state standing for "not a destination".
inline constexpr const char* kTopState = "top";

struct DeliveryModel {
    std::shared_ptr<const TerminatingGame> game;
    std::shared_ptr<const SemiAutomaton> automaton;
    std::vector<std::string> warnings;

    ProductGame product() const { return build_product(game, automaton); }
};

/**
 * State (t, ι) has id 2·t + ι, is owned by the holder ι and labelled {t}.
 * The holder moves the package along its edges or hands it over in place.
 * The automaton has states 𝒟 in destination order followed by ⊤ (omitted
 * when 𝒟 = 𝒯) and jumps to the entered location, or to ⊤ outside 𝒟.
 * A disconnected (𝒯, ℱ) is reported in `warnings`.
 */
DeliveryModel build_delivery_game(const Network& net);

/// k×k grid "r{i}c{j}" (0-based), ℱ1 = row moves, ℱ2 = column moves, both
/// with self-loops; every location is a destination.
Network grid_network(std::size_t k, std::size_t init_row, std::size_t init_col, Player holder = Player::One);

/// Centre location with player 1 holding.
Network grid_network(std::size_t k);

} // namespace nashpriv
