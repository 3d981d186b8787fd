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
#include "nashpriv/protocol.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace nashpriv {

/// A candidate upper closure Q⁺ over grid locations (bit i·k + j).
using ThresholdSet = QMask;

/**
 * Row/column grid delivery game. Location (i, j) is semi state i·k + j and
 * every product node is reachable.
 */
class GridGame {
  public:
    explicit GridGame(std::size_t k);
    GridGame(std::size_t k, std::size_t init_row, std::size_t init_col, Player holder);

    std::size_t side() const { return k_; }
    std::size_t locations() const { return k_ * k_; }
    const Network& network() const { return net_; }
    const ProductGame& product() const { return *product_; }
    std::shared_ptr<const ProductGame> shared_product() const { return product_; }

    QState location(std::size_t i, std::size_t j) const { return static_cast<QState>(i * k_ + j); }
    NodeId node(std::size_t i, std::size_t j, Player holder, bool terminated) const;

  private:
    std::size_t k_;
    Network net_;
    std::shared_ptr<const ProductGame> product_;
};

/**
 * Closed-form winning region, restricted to bit-0 nodes, of the Büchi game
 * with objective Q⁺ × {p1,p2} × {0,1}. For player 1:
 * (i,j,p1,0) wins iff some (i,j') ∈ Q⁺, and (i,j,p2,0) wins iff every
 * (i',j) ∈ Q⁺. Player 2 is the transpose.
 */
NodeSet grid_region_from_thresholds(const GridGame& grid, ThresholdSet qplus, Player protagonist = Player::One);

/// All subsets of n elements by ascending size, then lexicographically.
const std::vector<ThresholdSet>& threshold_order(std::size_t n);

/// Up to `limit` sets Q⁺ whose closed-form region matches `target` on bit-0 nodes.
std::vector<ThresholdSet> generate_thresholds(const NodeSet& target, const GridGame& grid, std::size_t limit,
                                              Player protagonist = Player::One);

inline constexpr std::size_t kDefaultSearchLimit = 64;

/// Search-based GenKPrefs over products of threshold candidates.
PrefSets gen_k_prefs_wr(const GridGame& grid, const Preorder& e, std::span<const QState> queries, const Secret& secret,
                        std::size_t k, Flag flag, std::size_t limit = kDefaultSearchLimit,
                        Player protagonist = Player::One);

/// gen_k_prefs_wr with threshold lists memoized per upper closure.
class WinningRegionGenerator final : public PrefGenerator {
  public:
    WinningRegionGenerator(std::shared_ptr<const GridGame> grid, std::size_t limit = kDefaultSearchLimit,
                           Player protagonist = Player::One);

    PrefSets generate(const Preorder& e, std::span<const QState> queries, const Secret& secret, std::size_t k,
                      Flag flag) const override;

  private:
    const std::vector<ThresholdSet>& thresholds(QMask upper) const;

    std::shared_ptr<const GridGame> grid_;
    std::size_t limit_;
    Player protagonist_;
    mutable std::mutex mutex_;
    mutable std::map<QMask, std::vector<ThresholdSet>> cache_;
};

} // namespace nashpriv
