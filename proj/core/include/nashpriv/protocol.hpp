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

#include "nashpriv/buchi.hpp"
#include "nashpriv/preference.hpp"
#include "nashpriv/product.hpp"
#include "nashpriv/synthesis.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

namespace nashpriv {

/// r asks for a losing region, p for the Büchi game and punishment strategy.
enum class Flag : std::uint8_t { R, P };

struct Query {
    QState q = 0;
    Flag flag = Flag::R;
    friend bool operator==(const Query&, const Query&) = default;
};

/// (V_r × {0}) ∩ U_i(q) as ascending product node ids.
struct LosingRegion {
    std::vector<NodeId> nodes;
    friend bool operator==(const LosingRegion&, const LosingRegion&) = default;
};

/// Buchi(B_i(q)) over the shared product arena plus the transformed
/// punishment σ̂_{-i}, which is owned by the other player.
struct BuchiPayload {
    Player protagonist = Player::One;
    std::vector<NodeId> target;
    MemorylessStrategy punishment;
    friend bool operator==(const BuchiPayload&, const BuchiPayload&) = default;
};

struct StopReply {
    friend bool operator==(const StopReply&, const StopReply&) = default;
};

using Response = std::variant<LosingRegion, BuchiPayload, StopReply>;

inline bool is_stop(const Response& r) { return std::holds_alternative<StopReply>(r); }

/// 𝒫⁺ ⊆ 𝔘 and 𝒫⁻ ⊆ 𝔘ᶜ.
struct PrefSets {
    std::vector<Preorder> plus;
    std::vector<Preorder> minus;
};

/// GenKPrefs(E, (q_1..q_k), 𝔘, K, f).
class PrefGenerator {
  public:
    virtual ~PrefGenerator() = default;
    virtual PrefSets generate(const Preorder& e, std::span<const QState> queries, const Secret& secret, std::size_t k,
                              Flag flag) const = 0;
};

/// Closure constraints {(v,q,≻) : v ∈ {q}↑_E} ∪ {(v,q,⊁) : v ∉ {q}↑_E} for each query.
std::vector<Constraint> closure_constraints(const Preorder& e, std::span<const QState> queries);

/// Adds the secret (or its negation) to `base` and generates up to k preorders.
PrefSets gen_split(std::size_t n, const std::vector<Constraint>& base, const Secret& secret, std::size_t k);

/// Upper-closure GenKPrefs. The flag is irrelevant: every queried closure is fixed.
PrefSets gen_k_prefs_uc(const Preorder& e, std::span<const QState> queries, const Secret& secret, std::size_t k,
                        Flag flag);

class UpperClosureGenerator final : public PrefGenerator {
  public:
    PrefSets generate(const Preorder& e, std::span<const QState> queries, const Secret& secret, std::size_t k,
                      Flag flag) const override
    {
        return gen_k_prefs_uc(e, queries, secret, k, flag);
    }
};

/**
 * Losing regions and punishment strategies of one product game, memoized by
 * (player, q, {q}↑). Both depend on the preorder only through that closure.
 * Thread-safe.
 */
class RegionOracle {
  public:
    explicit RegionOracle(std::shared_ptr<const ProductGame> pg) : pg_(std::move(pg)) {}

    const ProductGame& game() const { return *pg_; }
    std::shared_ptr<const ProductGame> shared_game() const { return pg_; }

    /// (V_r × {0}) ∩ U_player(q), ascending.
    std::vector<NodeId> losing_region(Player player, QState q, QMask upper) const;
    BuchiPayload buchi_payload(Player player, QState q, QMask upper) const;

  private:
    struct Entry {
        std::vector<NodeId> losing;
        BuchiPayload payload;
    };
    const Entry& entry(Player player, QState q, QMask upper) const;

    std::shared_ptr<const ProductGame> pg_;
    mutable std::mutex mutex_;
    mutable std::map<std::tuple<Player, QState, QMask>, Entry> cache_;
};

/// A null `generator` gives a truthful responder without privacy: it never
/// replies STOP and keeps no dummy preorders.
struct ResponderConfig {
    Player player = Player::One;
    Preorder preference;
    Secret secret;
    std::shared_ptr<const RegionOracle> oracle;
    std::shared_ptr<const PrefGenerator> generator;
};

/// 𝒰_k, Γ⁺_k, Γ⁻_k, plus a flag set once a p-query is answered or STOP is sent.
struct ResponderMemory {
    std::vector<QState> queries;
    std::vector<Preorder> gamma_plus;
    std::vector<Preorder> gamma_minus;
    bool closed = false;

    /// 𝒰₁ = ∅, Γ⁺₁ = {least member}, Γ⁻₁ = {least non-member}. Throws
    /// InputError when the secret or its complement is empty.
    static ResponderMemory initial(std::size_t n, const Secret& secret);
    friend bool operator==(const ResponderMemory&, const ResponderMemory&) = default;
};

/// The responder step as a pure function. Throws ProtocolOrder on a closed memory.
std::pair<Response, ResponderMemory> respond(const ResponderConfig& cfg, const ResponderMemory& mem, const Query& query);

class Responder {
  public:
    explicit Responder(ResponderConfig cfg);

    Player player() const { return cfg_.player; }
    const ResponderConfig& config() const { return cfg_; }
    const ResponderMemory& memory() const { return mem_; }
    Response respond(const Query& query);

  private:
    ResponderConfig cfg_;
    ResponderMemory mem_;
};

struct Exchange {
    Player player = Player::One;
    Query query;
    Response response;
    friend bool operator==(const Exchange&, const Exchange&) = default;
};

enum class Outcome : std::uint8_t { Equilibrium, NoneExists, Stopped };
std::string to_string(Outcome o);

struct Transcript {
    std::vector<Exchange> session;
    Outcome outcome = Outcome::NoneExists;

    /// The (query, response) pairs of one player, in order.
    std::vector<Exchange> of(Player p) const;
};

struct MediationResult {
    EquilibriumResult result;
    Transcript transcript;
};

/**
 * synthesize_ne with every query served by a responder: per q, player 1 then
 * player 2 are asked for losing regions; on a nominal path both are asked
 * for punishments with flag p. The first STOP ends the session.
 */
MediationResult mediate(const ProductGame& pg, Responder& r1, Responder& r2, std::span<const QState> order);

struct PrivacyWitnesses {
    Preorder plus;
    Preorder minus;
};

struct Violation {
    bool missing_plus = false;
    bool missing_minus = false;
};

using AuditResult = std::variant<PrivacyWitnesses, Violation>;

/// True when a fresh responder holding `candidate` reproduces `exchanges`.
bool replays(const ResponderConfig& base, const Preorder& candidate, std::span<const Exchange> exchanges);

/**
 * Searches `candidates` for Ẽ⁺ ∈ 𝔘 and Ẽ⁻ ∈ 𝔘ᶜ whose replay through respond yields the
 * transcript's responses for `player`. The least member and least non-member
 * are tried first. `base` supplies the secret, oracle and generator; its
 * preference is ignored.
 */
AuditResult audit_privacy(const Transcript& transcript, Player player, const ResponderConfig& base,
                          std::span<const Preorder> candidates);
/// Enumerates candidates itself; throws EnumerationTooLarge past |Q| = 5.
AuditResult audit_privacy(const Transcript& transcript, Player player, const ResponderConfig& base);

} // namespace nashpriv
