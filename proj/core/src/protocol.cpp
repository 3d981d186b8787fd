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

#include "nashpriv/protocol.hpp"

#include "nashpriv/errors.hpp"

#include <algorithm>
#include <unordered_set>

namespace nashpriv {

std::vector<Constraint> closure_constraints(const Preorder& e, std::span<const QState> queries)
{
    std::vector<Constraint> cs;
    const auto n = static_cast<QState>(e.size());
    for (QState q : queries) {
        const QMask up = e.strict_upper_closure(q);
        for (QState v = 0; v < n; ++v) {
            if (mask_has(up, v)) cs.push_back({v, q, Polarity::Strict});
        }
        for (QState v = 0; v < n; ++v) {
            if (!mask_has(up, v)) cs.push_back({v, q, Polarity::NotStrict});
        }
    }
    return cs;
}

PrefSets gen_split(std::size_t n, const std::vector<Constraint>& base, const Secret& secret, std::size_t k)
{
    PrefSets out;
    std::vector<Constraint> cs = base;
    cs.insert(cs.end(), secret.constraints.begin(), secret.constraints.end());
    out.plus = gen_from_constraints(n, cs, k);

    std::unordered_set<Preorder, PreorderHash> seen;
    for (const Constraint& c : secret.constraints) {
        cs = base;
        cs.push_back(negate(c));
        for (auto& e : gen_from_constraints(n, cs, k)) {
            if (out.minus.size() < k && seen.insert(e).second) out.minus.push_back(std::move(e));
        }
    }
    return out;
}

PrefSets gen_k_prefs_uc(const Preorder& e, std::span<const QState> queries, const Secret& secret, std::size_t k,
                        Flag /*flag*/)
{
    return gen_split(e.size(), closure_constraints(e, queries), secret, k);
}

const RegionOracle::Entry& RegionOracle::entry(Player player, QState q, QMask upper) const
{
    const auto key = std::make_tuple(player, q, upper);
    {
        std::lock_guard lock(mutex_);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }

    const ObjectiveSet obj = objective_sets_from_closure(*pg_, player, q, upper);
    const Regions regions = solve(objective_game(*pg_, obj));
    Entry fresh;
    for (NodeId v = 0; v < pg_->size(); ++v) {
        if (!regions.winning[v] && !pg_->terminated(v)) fresh.losing.push_back(v);
    }
    fresh.payload.protagonist = player;
    for (NodeId v = 0; v < pg_->size(); ++v) {
        if (obj.target[v]) fresh.payload.target.push_back(v);
    }
    fresh.payload.punishment = punishment_transform(pg_->arena(), regions.counter_strategy, obj.lower());

    std::lock_guard lock(mutex_);
    return cache_.try_emplace(key, std::move(fresh)).first->second;
}

std::vector<NodeId> RegionOracle::losing_region(Player player, QState q, QMask upper) const
{
    return entry(player, q, upper).losing;
}

BuchiPayload RegionOracle::buchi_payload(Player player, QState q, QMask upper) const
{
    return entry(player, q, upper).payload;
}

ResponderMemory ResponderMemory::initial(std::size_t n, const Secret& secret)
{
    auto plus = secret.least_member(n);
    auto minus = secret.least_non_member(n);
    if (!plus || !minus) throw InputError("the secret must be neither empty nor everything");
    ResponderMemory mem;
    mem.gamma_plus.push_back(std::move(*plus));
    mem.gamma_minus.push_back(std::move(*minus));
    return mem;
}

namespace {

bool in_gamma(const ResponderMemory& mem, const Preorder& e)
{
    auto has = [&](const std::vector<Preorder>& g) { return std::find(g.begin(), g.end(), e) != g.end(); };
    return has(mem.gamma_plus) || has(mem.gamma_minus);
}

const Preorder* first_fresh(const ResponderMemory& mem, const std::vector<Preorder>& candidates)
{
    for (const auto& e : candidates) {
        if (!in_gamma(mem, e)) return &e;
    }
    return nullptr;
}

} // namespace

std::pair<Response, ResponderMemory> respond(const ResponderConfig& cfg, const ResponderMemory& mem, const Query& query)
{
    if (mem.closed) throw ProtocolOrder("query after the session was closed");
    const Preorder& e = cfg.preference;
    ResponderMemory next = mem;
    auto stop = [&]() {
        ResponderMemory closed = mem;
        closed.closed = true;
        return std::pair<Response, ResponderMemory>{StopReply{}, std::move(closed)};
    };

    std::vector<QState> queries = mem.queries;
    queries.push_back(query.q);
    const QMask upper = e.strict_upper_closure(query.q);
    if (!cfg.generator) {
        if (query.flag == Flag::R) {
            next.queries = std::move(queries);
            return {LosingRegion{cfg.oracle->losing_region(cfg.player, query.q, upper)}, std::move(next)};
        }
        next.closed = true;
        return {cfg.oracle->buchi_payload(cfg.player, query.q, upper), std::move(next)};
    }

    if (e == mem.gamma_plus.back() || e == mem.gamma_minus.back()) return stop();

    const PrefSets sets = cfg.generator->generate(e, queries, cfg.secret, mem.queries.size() + 2, query.flag);
    const Preorder* plus = first_fresh(mem, sets.plus);
    if (!plus) return stop();
    const Preorder* minus = first_fresh(mem, sets.minus);
    if (!minus) return stop();
    next.gamma_plus.push_back(*plus);
    next.gamma_minus.push_back(*minus);

    if (query.flag == Flag::R) {
        next.queries = std::move(queries);
        return {LosingRegion{cfg.oracle->losing_region(cfg.player, query.q, upper)}, std::move(next)};
    }
    ResponderMemory closed = mem;
    closed.closed = true;
    return {cfg.oracle->buchi_payload(cfg.player, query.q, upper), std::move(closed)};
}

Responder::Responder(ResponderConfig cfg)
    : cfg_(std::move(cfg))
{
    if (cfg_.generator) mem_ = ResponderMemory::initial(cfg_.preference.size(), cfg_.secret);
}

Response Responder::respond(const Query& query)
{
    auto [response, mem] = nashpriv::respond(cfg_, mem_, query);
    mem_ = std::move(mem);
    return response;
}

std::string to_string(Outcome o)
{
    switch (o) {
    case Outcome::Equilibrium: return "equilibrium";
    case Outcome::NoneExists: return "none";
    case Outcome::Stopped: return "stopped";
    }
    return "?";
}

std::vector<Exchange> Transcript::of(Player p) const
{
    std::vector<Exchange> out;
    std::copy_if(session.begin(), session.end(), std::back_inserter(out),
                 [p](const Exchange& x) { return x.player == p; });
    return out;
}

MediationResult mediate(const ProductGame& pg, Responder& r1, Responder& r2, std::span<const QState> order)
{
    MediationResult out{NoneExists{}, {}};
    std::size_t asked[2] = {0, 0};
    auto ask = [&](Responder& r, const Query& query) {
        Response resp = r.respond(query);
        ++asked[player_index(r.player())];
        out.transcript.session.push_back({r.player(), query, resp});
        if (is_stop(resp)) {
            out.result = Stopped{r.player(), asked[player_index(r.player())]};
            out.transcript.outcome = Outcome::Stopped;
        }
        return resp;
    };

    for (QState q : order) {
        const Response a = ask(r1, {q, Flag::R});
        if (is_stop(a)) return out;
        const Response b = ask(r2, {q, Flag::R});
        if (is_stop(b)) return out;

        NodeSet allowed(pg.size());
        for (NodeId v = 0; v < pg.size(); ++v) allowed[v] = pg.terminated(v);
        NodeSet in_b(pg.size());
        for (NodeId v : std::get<LosingRegion>(b).nodes) in_b[v] = true;
        for (NodeId v : std::get<LosingRegion>(a).nodes) allowed[v] = allowed[v] || in_b[v];
        auto path = find_nominal_path(pg, allowed, q);
        if (!path) continue;

        const Response pa = ask(r1, {q, Flag::P});
        if (is_stop(pa)) return out;
        const Response pb = ask(r2, {q, Flag::P});
        if (is_stop(pb)) return out;
        Equilibrium eq;
        eq.nominal = std::move(*path);
        eq.arena = pg.shared_arena();
        eq.punish_by_2 = std::get<BuchiPayload>(pa).punishment;
        eq.punish_by_1 = std::get<BuchiPayload>(pb).punishment;
        out.result = std::move(eq);
        out.transcript.outcome = Outcome::Equilibrium;
        return out;
    }
    out.transcript.outcome = Outcome::NoneExists;
    return out;
}

bool replays(const ResponderConfig& base, const Preorder& candidate, std::span<const Exchange> exchanges)
{
    ResponderConfig cfg = base;
    cfg.preference = candidate;
    ResponderMemory mem = cfg.generator ? ResponderMemory::initial(candidate.size(), cfg.secret) : ResponderMemory{};
    for (const Exchange& x : exchanges) {
        if (mem.closed) return false;
        auto [resp, next] = respond(cfg, mem, x.query);
        if (resp != x.response) return false;
        mem = std::move(next);
    }
    return true;
}

AuditResult audit_privacy(const Transcript& transcript, Player player, const ResponderConfig& base,
                          std::span<const Preorder> candidates)
{
    const std::vector<Exchange> mine = transcript.of(player);
    const std::size_t n = base.oracle->game().num_semi_states();
    std::optional<Preorder> plus;
    std::optional<Preorder> minus;
    auto consider = [&](const Preorder& e) {
        std::optional<Preorder>& slot = base.secret.contains(e) ? plus : minus;
        if (!slot && replays(base, e, mine)) slot = e;
    };
    if (auto least = base.secret.least_member(n)) consider(*least);
    if (auto least = base.secret.least_non_member(n)) consider(*least);
    for (const Preorder& e : candidates) {
        if (plus && minus) break;
        consider(e);
    }
    if (plus && minus) return PrivacyWitnesses{std::move(*plus), std::move(*minus)};
    return Violation{!plus, !minus};
}

AuditResult audit_privacy(const Transcript& transcript, Player player, const ResponderConfig& base)
{
    const std::vector<Preorder> all = enumerate_preorders(base.oracle->game().num_semi_states());
    return audit_privacy(transcript, player, base, all);
}

} // namespace nashpriv
