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

#include "nashpriv/wrprivacy.hpp"

#include "nashpriv/errors.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

namespace nashpriv {

GridGame::GridGame(std::size_t k) : GridGame(k, k / 2, k / 2, Player::One) {}

GridGame::GridGame(std::size_t k, std::size_t init_row, std::size_t init_col, Player holder)
    : k_(k), net_(grid_network(k, init_row, init_col, holder))
{
    product_ = std::make_shared<const ProductGame>(build_delivery_game(net_).product());
}

NodeId GridGame::node(std::size_t i, std::size_t j, Player holder, bool terminated) const
{
    const auto state = static_cast<StateId>(2 * (i * k_ + j) + static_cast<std::size_t>(player_index(holder)));
    auto v = product_->find({state, location(i, j), terminated});
    if (!v) throw InputError("grid node is not in the product");
    return *v;
}

namespace {

/// Bit-0 region indexed by 2·location + holder.
std::vector<bool> closed_form(std::size_t k, ThresholdSet qplus, Player protagonist)
{
    std::vector<bool> out(2 * k * k);
    auto in = [&](std::size_t i, std::size_t j) { return mask_has(qplus, static_cast<QState>(i * k + j)); };
    for (std::size_t i = 0; i < k; ++i) {
        bool row_any = false;
        for (std::size_t j = 0; j < k; ++j) row_any = row_any || in(i, j);
        for (std::size_t j = 0; j < k; ++j) {
            bool col_all = true;
            bool col_any = false;
            for (std::size_t r = 0; r < k; ++r) {
                col_all = col_all && in(r, j);
                col_any = col_any || in(r, j);
            }
            bool row_all = true;
            for (std::size_t c = 0; c < k; ++c) row_all = row_all && in(i, c);
            const std::size_t loc = i * k + j;
            if (protagonist == Player::One) {
                out[2 * loc] = row_any;
                out[2 * loc + 1] = col_all;
            } else {
                out[2 * loc] = row_all;
                out[2 * loc + 1] = col_any;
            }
        }
    }
    return out;
}

std::vector<bool> compact(const GridGame& grid, const NodeSet& region)
{
    const std::size_t k = grid.side();
    std::vector<bool> out(2 * k * k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            for (Player p : {Player::One, Player::Two}) {
                out[2 * (i * k + j) + static_cast<std::size_t>(player_index(p))] = region[grid.node(i, j, p, false)];
            }
        }
    }
    return out;
}

std::vector<ThresholdSet> thresholds_for(const std::vector<bool>& target, std::size_t k, std::size_t limit,
                                         Player protagonist)
{
    std::vector<ThresholdSet> out;
    if (limit == 0) return out;
    for (ThresholdSet s : threshold_order(k * k)) {
        if (closed_form(k, s, protagonist) == target) {
            out.push_back(s);
            if (out.size() >= limit) break;
        }
    }
    return out;
}

void append_unique(std::vector<Preorder>& dst, std::unordered_set<Preorder, PreorderHash>& seen,
                   std::vector<Preorder> src)
{
    for (auto& e : src) {
        if (seen.insert(e).second) dst.push_back(std::move(e));
    }
}

template <class ThresholdsOf>
PrefSets search(std::size_t n, const Preorder& e, std::span<const QState> queries, const Secret& secret,
                std::size_t k, Flag flag, std::size_t limit, ThresholdsOf thresholds_of)
{
    std::vector<std::vector<ThresholdSet>> lists;
    for (std::size_t j = 0; j < queries.size(); ++j) {
        const QMask upper = e.strict_upper_closure(queries[j]);
        if (flag == Flag::P && j + 1 == queries.size()) {
            lists.push_back({upper});
        } else {
            lists.push_back(thresholds_of(upper));
        }
    }

    PrefSets out;
    std::unordered_set<Preorder, PreorderHash> seen_plus;
    std::unordered_set<Preorder, PreorderHash> seen_minus;
    const bool empty = std::any_of(lists.begin(), lists.end(), [](const auto& l) { return l.empty(); });
    std::vector<std::size_t> digit(queries.size(), 0);
    std::size_t c = 0;
    while (!empty) {
        ++c;
        std::vector<Constraint> cs;
        for (std::size_t j = 0; j < queries.size(); ++j) {
            const ThresholdSet z = lists[j][digit[j]];
            for (QState v = 0; v < n; ++v) {
                if (mask_has(z, v)) cs.push_back({v, queries[j], Polarity::Strict});
            }
            for (QState v = 0; v < n; ++v) {
                if (!mask_has(z, v)) cs.push_back({v, queries[j], Polarity::NotStrict});
            }
        }
        PrefSets found = gen_split(n, cs, secret, k);
        append_unique(out.plus, seen_plus, std::move(found.plus));
        append_unique(out.minus, seen_minus, std::move(found.minus));
        if (c >= limit || (out.plus.size() > k && out.minus.size() > k)) break;

        // Odometer, last query fastest.
        bool advanced = false;
        for (std::size_t i = queries.size(); i > 0 && !advanced; --i) {
            if (++digit[i - 1] < lists[i - 1].size()) {
                advanced = true;
            } else {
                digit[i - 1] = 0;
            }
        }
        if (!advanced) break;
    }
    if (out.plus.size() > k) out.plus.resize(k);
    if (out.minus.size() > k) out.minus.resize(k);
    return out;
}

} // namespace

NodeSet grid_region_from_thresholds(const GridGame& grid, ThresholdSet qplus, Player protagonist)
{
    const std::size_t k = grid.side();
    const std::vector<bool> bits = closed_form(k, qplus, protagonist);
    NodeSet out(grid.product().size());
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            for (Player p : {Player::One, Player::Two}) {
                out[grid.node(i, j, p, false)] = bits[2 * (i * k + j) + static_cast<std::size_t>(player_index(p))];
            }
        }
    }
    return out;
}

const std::vector<ThresholdSet>& threshold_order(std::size_t n)
{
    static std::mutex mutex;
    static std::map<std::size_t, std::vector<ThresholdSet>> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    if (n > 20) throw TooLarge("threshold enumeration is limited to 20 locations");

    std::vector<ThresholdSet> all;
    all.reserve(std::size_t{1} << n);
    for (std::size_t size = 0; size <= n; ++size) {
        // Combinations of `size` elements in lexicographic order of their sorted lists.
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            ThresholdSet s = 0;
            for (std::size_t p : pick) s |= ThresholdSet{1} << p;
            all.push_back(s);
            std::size_t i = size;
            while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return cache.emplace(n, std::move(all)).first->second;
}

std::vector<ThresholdSet> generate_thresholds(const NodeSet& target, const GridGame& grid, std::size_t limit,
                                              Player protagonist)
{
    return thresholds_for(compact(grid, target), grid.side(), limit, protagonist);
}

PrefSets gen_k_prefs_wr(const GridGame& grid, const Preorder& e, std::span<const QState> queries, const Secret& secret,
                        std::size_t k, Flag flag, std::size_t limit, Player protagonist)
{
    const std::size_t side = grid.side();
    return search(e.size(), e, queries, secret, k, flag, limit, [&](QMask upper) {
        return thresholds_for(closed_form(side, upper, protagonist), side, limit, protagonist);
    });
}

WinningRegionGenerator::WinningRegionGenerator(std::shared_ptr<const GridGame> grid, std::size_t limit,
                                               Player protagonist)
    : grid_(std::move(grid)), limit_(limit), protagonist_(protagonist)
{
}

const std::vector<ThresholdSet>& WinningRegionGenerator::thresholds(QMask upper) const
{
    // Lists depend on the closure only through its region; key by the closure itself.
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(upper); it != cache_.end()) return it->second;
    const std::size_t side = grid_->side();
    auto list = thresholds_for(closed_form(side, upper, protagonist_), side, limit_, protagonist_);
    return cache_.emplace(upper, std::move(list)).first->second;
}

PrefSets WinningRegionGenerator::generate(const Preorder& e, std::span<const QState> queries, const Secret& secret,
                                          std::size_t k, Flag flag) const
{
    return search(e.size(), e, queries, secret, k, flag, limit_, [&](QMask upper) { return thresholds(upper); });
}

} // namespace nashpriv
