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

#include "nashpriv/experiments.hpp"

#include "nashpriv/errors.hpp"
#include "nashpriv/wrprivacy.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <deque>
#include <numeric>
#include <sstream>
#include <thread>

namespace nashpriv {

std::vector<TreeEdge> prufer_decode(std::span<const QState> sequence, std::size_t n)
{
    if (n < 2 || sequence.size() + 2 != n) throw InputError("Prüfer sequence must have length n - 2");
    std::vector<std::size_t> degree(n, 1);
    for (QState s : sequence) {
        if (s >= n) throw InputError("Prüfer label out of range");
        ++degree[s];
    }
    std::vector<TreeEdge> edges;
    for (QState s : sequence) {
        QState leaf = 0;
        while (degree[leaf] != 1) ++leaf;
        edges.emplace_back(leaf, s);
        --degree[leaf];
        --degree[s];
    }
    std::vector<QState> last;
    for (QState v = 0; v < n; ++v) {
        if (degree[v] == 1) last.push_back(v);
    }
    edges.emplace_back(last[0], last[1]);
    return edges;
}

std::vector<TreeEdge> random_labeled_tree(std::size_t n, std::mt19937_64& rng)
{
    if (n < 2) throw InputError("a random tree needs at least two nodes");
    std::uniform_int_distribution<QState> label(0, static_cast<QState>(n - 1));
    std::vector<QState> seq(n - 2);
    for (auto& s : seq) s = label(rng);
    return prufer_decode(seq, n);
}

Preorder tree_to_preorder(std::size_t n, std::span<const TreeEdge> edges, QState root)
{
    std::vector<std::vector<QState>> adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    Relation r(n);
    std::vector<bool> seen(n);
    std::deque<QState> queue{root};
    seen[root] = true;
    while (!queue.empty()) {
        const QState v = queue.front();
        queue.pop_front();
        for (QState w : adj[v]) {
            if (seen[w]) continue;
            seen[w] = true;
            r.add(w, v);
            queue.push_back(w);
        }
    }
    return Preorder::closure_of(std::move(r));
}

Preorder sample_tree_preorder(std::size_t n, std::mt19937_64& rng)
{
    const auto edges = random_labeled_tree(n, rng);
    std::uniform_int_distribution<QState> pick(0, static_cast<QState>(n - 1));
    return tree_to_preorder(n, edges, pick(rng));
}

std::vector<QState> sample_query_sequence(std::size_t n, QState x, QState y, std::mt19937_64& rng)
{
    std::vector<QState> order;
    for (QState q = 0; q < n; ++q) {
        if (q != x && q != y) order.push_back(q);
    }
    std::shuffle(order.begin(), order.end(), rng);
    order.push_back(x);
    order.push_back(y);
    return order;
}

std::string to_string(Method m)
{
    return m == Method::UpperClosure ? "uc" : "wr";
}

std::size_t bucket_of(std::size_t stop)
{
    if (stop <= 3) return stop - 1;
    if (stop <= 6) return 3;
    if (stop <= 9) return 4;
    return 5;
}

double StopDistribution::frequency(std::size_t bucket) const
{
    return config.trials == 0 ? 0.0 : static_cast<double>(counts[bucket]) / static_cast<double>(config.trials);
}

double StopDistribution::no_stop_frequency() const
{
    return config.trials == 0 ? 0.0 : static_cast<double>(no_stop) / static_cast<double>(config.trials);
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t trial)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(static_cast<std::uint64_t>(trial) >> 32)};
    return std::mt19937_64(seq);
}

namespace {

struct Context {
    std::shared_ptr<const GridGame> grid;
    ResponderConfig base;
    QState x = 0;
    QState y = 0;
};

Context make_context(const ExperimentConfig& cfg)
{
    if (cfg.x == cfg.y) throw InputError("secret locations must differ");
    if (cfg.x.first >= cfg.grid || cfg.x.second >= cfg.grid || cfg.y.first >= cfg.grid || cfg.y.second >= cfg.grid) {
        throw InputError("secret location outside the grid");
    }
    Context ctx;
    ctx.grid = std::make_shared<const GridGame>(cfg.grid, cfg.init_row, cfg.init_col, cfg.holder);
    ctx.x = ctx.grid->location(cfg.x.first, cfg.x.second);
    ctx.y = ctx.grid->location(cfg.y.first, cfg.y.second);
    ctx.base.player = Player::One;
    ctx.base.secret = Secret::strict_pair(ctx.x, ctx.y);
    ctx.base.oracle = std::make_shared<const RegionOracle>(ctx.grid->shared_product());
    if (cfg.method == Method::UpperClosure) {
        ctx.base.generator = std::make_shared<const UpperClosureGenerator>();
    } else {
        ctx.base.generator = std::make_shared<const WinningRegionGenerator>(ctx.grid, cfg.limit, Player::One);
    }
    return ctx;
}

std::vector<Response> run_session(const Context& ctx, const Preorder& e, std::span<const QState> order)
{
    ResponderConfig cfg = ctx.base;
    cfg.preference = e;
    Responder r(std::move(cfg));
    std::vector<Response> out;
    for (QState q : order) {
        out.push_back(r.respond({q, Flag::R}));
        if (is_stop(out.back())) break;
    }
    return out;
}

} // namespace

StopDistribution stop_distribution(const ExperimentConfig& config)
{
    StopDistribution d;
    d.config = config;
    d.records.resize(config.trials);
    if (config.trials == 0) return d;
    const Context ctx = make_context(config);
    const std::size_t n = ctx.grid->locations();

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t t = next++; t < config.trials; t = next++) {
            std::mt19937_64 rng = trial_rng(config.seed, t);
            TrialRecord& rec = d.records[t];
            rec.trial = t;
            rec.preference = sample_tree_preorder(n, rng);
            rec.order = sample_query_sequence(n, ctx.x, ctx.y, rng);
            const auto responses = run_session(ctx, rec.preference, rec.order);
            if (!responses.empty() && is_stop(responses.back())) rec.stop = responses.size();
        }
    };
    std::size_t threads = config.threads ? config.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = std::min(threads, config.trials);
    std::vector<std::thread> pool;
    for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (const auto& rec : d.records) {
        if (rec.stop) {
            ++d.counts[bucket_of(*rec.stop)];
        } else {
            ++d.no_stop;
        }
    }
    return d;
}

std::vector<Response> replay_trial(const ExperimentConfig& config, const TrialRecord& record)
{
    return run_session(make_context(config), record.preference, record.order);
}

std::string to_csv(const StopDistribution& d)
{
    std::ostringstream os;
    const auto& c = d.config;
    os << "# method=" << to_string(c.method) << " grid=" << c.grid << " trials=" << c.trials << " seed=" << c.seed
       << " limit=" << c.limit << " no_stop=" << d.no_stop << "\n";
    os << "bucket,count,frequency\n";
    if (c.trials == 0) return os.str();
    for (std::size_t b = 0; b < kBuckets; ++b) {
        os << kBucketLabels[b] << ',' << d.counts[b] << ',' << d.frequency(b) << "\n";
    }
    return os.str();
}

std::string to_json(const StopDistribution& d, bool with_records)
{
    using nlohmann::json;
    const auto& c = d.config;
    json j;
    j["config"] = {{"method", to_string(c.method)},
                   {"grid", c.grid},
                   {"trials", c.trials},
                   {"seed", c.seed},
                   {"limit", c.limit},
                   {"secret", {{"x", {c.x.first, c.x.second}}, {"y", {c.y.first, c.y.second}}}},
                   {"initial", {{"row", c.init_row}, {"col", c.init_col}, {"holder", player_number(c.holder)}}},
                   {"rng", "mt19937_64 seeded by seed_seq{seed_lo, seed_hi, trial_lo, trial_hi}"}};
    json buckets = json::array();
    for (std::size_t b = 0; b < kBuckets; ++b) {
        buckets.push_back({{"bucket", kBucketLabels[b]}, {"count", d.counts[b]}, {"frequency", d.frequency(b)}});
    }
    j["buckets"] = std::move(buckets);
    j["no_stop"] = {{"count", d.no_stop}, {"frequency", d.no_stop_frequency()}};
    if (with_records) {
        json recs = json::array();
        for (const auto& r : d.records) {
            json edges = json::array();
            const auto n = static_cast<QState>(r.preference.size());
            for (QState u = 0; u < n; ++u) {
                for (QState v = 0; v < n; ++v) {
                    if (u != v && r.preference.weakly_prefers(u, v)) edges.push_back({u, v});
                }
            }
            recs.push_back({{"trial", r.trial},
                            {"preorder", std::move(edges)},
                            {"order", r.order},
                            {"stop", r.stop ? json(*r.stop) : json(nullptr)}});
        }
        j["records"] = std::move(recs);
    }
    return j.dump(2);
}

} // namespace nashpriv
