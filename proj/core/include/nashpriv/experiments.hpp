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

#include "nashpriv/preference.hpp"
#include "nashpriv/protocol.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace nashpriv {

using TreeEdge = std::pair<QState, QState>;

/// Labelled tree on {0..n-1} encoded by a Prüfer sequence of length n-2.
std::vector<TreeEdge> prufer_decode(std::span<const QState> sequence, std::size_t n);

/// Uniform labelled tree (Cayley): a uniform Prüfer sequence, decoded.
std::vector<TreeEdge> random_labeled_tree(std::size_t n, std::mt19937_64& rng);

/// Orients the tree away from `root` and relates each child to its parent
/// (the root is least preferred), then closes reflexively and transitively.
Preorder tree_to_preorder(std::size_t n, std::span<const TreeEdge> edges, QState root);

/// Uniform tree, uniform root. Requires n ≥ 2.
Preorder sample_tree_preorder(std::size_t n, std::mt19937_64& rng);

/// Uniform shuffle of Q ∖ {x, y} followed by x, y.
std::vector<QState> sample_query_sequence(std::size_t n, QState x, QState y, std::mt19937_64& rng);

enum class Method : std::uint8_t { UpperClosure, WinningRegion };
std::string to_string(Method m);

struct ExperimentConfig {
    std::size_t grid = 3;
    std::size_t trials = 1000;
    Method method = Method::UpperClosure;
    /// Secret x ≻ y as grid locations (row, column).
    std::pair<std::size_t, std::size_t> x{0, 0};
    std::pair<std::size_t, std::size_t> y{0, 1};
    std::uint64_t seed = 7;
    std::size_t limit = 64;
    std::size_t init_row = 1;
    std::size_t init_col = 1;
    Player holder = Player::One;
    /// 0 picks the hardware concurrency.
    std::size_t threads = 0;
};

struct TrialRecord {
    std::size_t trial = 0;
    Preorder preference;
    std::vector<QState> order;
    /// 1-based index of the STOP reply, if any.
    std::optional<std::size_t> stop;
};

inline constexpr std::size_t kBuckets = 6;
inline constexpr std::array<const char*, kBuckets> kBucketLabels{"1", "2", "3", "4-6", "7-9", ">=10"};

/// Bucket of a stop index: 1, 2, 3, 4–6, 7–9, ≥10.
std::size_t bucket_of(std::size_t stop);

struct StopDistribution {
    ExperimentConfig config;
    std::array<std::size_t, kBuckets> counts{};
    std::size_t no_stop = 0;
    std::vector<TrialRecord> records;

    double frequency(std::size_t bucket) const;
    double no_stop_frequency() const;
};

/// Per-trial generator: mt19937_64 seeded by seed_seq{seed low, seed high, trial}.
std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t trial);

/**
 * Player 1 answers r-queries on the k×k grid game for `trials` sampled
 * (tree preorder, query order) pairs, stopping at the first STOP. Trials run
 * in parallel; results are independent of the thread count.
 */
StopDistribution stop_distribution(const ExperimentConfig& config);

/// Replays one trial of `config` and returns its responses.
std::vector<Response> replay_trial(const ExperimentConfig& config, const TrialRecord& record);

std::string to_csv(const StopDistribution& d);
std::string to_json(const StopDistribution& d, bool with_records = false);

} // namespace nashpriv
