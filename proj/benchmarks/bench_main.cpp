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

#include "nashpriv/buchi.hpp"
#include "nashpriv/experiments.hpp"
#include "nashpriv/protocol.hpp"
#include "nashpriv/synthesis.hpp"
#include "nashpriv/wrprivacy.hpp"

#include <benchmark/benchmark.h>

#include <memory>
#include <random>

namespace nashpriv {
namespace {

Arena random_arena(std::size_t n, std::mt19937_64& rng)
{
    Arena a;
    for (std::size_t i = 0; i < n; ++i) a.add_node(rng() % 2 ? Player::One : Player::Two);
    for (NodeId v = 0; v < n; ++v) {
        const std::size_t out = 1 + rng() % 3;
        for (std::size_t k = 0; k < out; ++k) a.add_edge(v, static_cast<ActionId>(k), static_cast<NodeId>(rng() % n));
    }
    return a;
}

BuchiGame random_game(std::size_t n)
{
    std::mt19937_64 rng(n);
    auto arena = std::make_shared<const Arena>(random_arena(n, rng));
    NodeSet target(n, false);
    for (NodeId v = 0; v < n; ++v) target[v] = rng() % 4 == 0;
    return BuchiGame{arena, target, Player::One};
}

void BM_Solve(benchmark::State& state)
{
    const BuchiGame bg = random_game(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solve(bg));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Solve)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_SolveNaive(benchmark::State& state)
{
    const BuchiGame bg = random_game(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_naive(bg));
}
BENCHMARK(BM_SolveNaive)->RangeMultiplier(4)->Range(16, 1024);

void BM_GenFromConstraints(benchmark::State& state)
{
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::vector<Constraint> cs{{0, 1, Polarity::Strict}};
    for (auto _ : state) benchmark::DoNotOptimize(gen_from_constraints(n, cs, 64));
}
BENCHMARK(BM_GenFromConstraints)->DenseRange(3, 9, 2);

void BM_GridSynthesis(benchmark::State& state)
{
    const GridGame grid(static_cast<std::size_t>(state.range(0)));
    std::mt19937_64 rng(3);
    const Preorder e1 = sample_tree_preorder(grid.locations(), rng);
    const Preorder e2 = sample_tree_preorder(grid.locations(), rng);
    for (auto _ : state) benchmark::DoNotOptimize(synthesize_ne(grid.product(), e1, e2));
}
BENCHMARK(BM_GridSynthesis)->DenseRange(2, 5);

void BM_RespondSession(benchmark::State& state)
{
    auto grid = std::make_shared<const GridGame>(3);
    std::mt19937_64 rng(5);
    const Secret secret = Secret::strict_pair(grid->location(0, 0), grid->location(0, 1));
    std::shared_ptr<const PrefGenerator> gen;
    if (state.range(0) == 0) {
        gen = std::make_shared<const UpperClosureGenerator>();
    } else {
        gen = std::make_shared<const WinningRegionGenerator>(grid);
    }
    const ResponderConfig cfg{Player::One, sample_tree_preorder(9, rng), secret,
                              std::make_shared<const RegionOracle>(grid->shared_product()), gen};
    const auto order = sample_query_sequence(9, 0, 1, rng);
    for (auto _ : state) {
        Responder r(cfg);
        for (QState q : order)
            if (is_stop(r.respond(Query{q, Flag::R}))) break;
    }
    state.SetLabel(state.range(0) == 0 ? "uc" : "wr");
}
BENCHMARK(BM_RespondSession)->Arg(0)->Arg(1);

} // namespace
} // namespace nashpriv

BENCHMARK_MAIN();
