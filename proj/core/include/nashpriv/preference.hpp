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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nashpriv {

/// Semi-automaton state index.
using QState = std::uint32_t;
/// Subset of semi-automaton states, bit q set iff q is a member.
using QMask = std::uint64_t;
inline constexpr std::size_t kMaxSemiStates = 64;

constexpr bool mask_has(QMask m, QState q) { return ((m >> q) & 1U) != 0; }
constexpr QMask mask_of(QState q) { return QMask{1} << q; }

/**
 * Binary relation over {0..n-1}, n ≤ 64, stored as one bit row per element:
 * bit v of row u is set iff (u, v) is in the relation.
 */
class Relation {
  public:
    Relation() = default;
    explicit Relation(std::size_t n);
    static Relation identity(std::size_t n);

    std::size_t size() const { return n_; }
    bool has(QState u, QState v) const { return ((rows_[u] >> v) & 1U) != 0; }
    void add(QState u, QState v) { rows_[u] |= mask_of(v); }
    void add_row(QState u, QMask m) { rows_[u] |= m; }
    QMask row(QState u) const { return rows_[u]; }
    /// Elements w with (w, v) in the relation.
    QMask column(QState v) const;
    std::size_t count() const;

    bool is_reflexive() const;
    bool is_transitive() const;
    bool subset_of(const Relation& other) const;
    Relation& operator|=(const Relation& other);

    std::size_t hash() const;
    friend bool operator==(const Relation&, const Relation&) = default;
    friend auto operator<=>(const Relation&, const Relation&) = default;

  private:
    std::size_t n_ = 0;
    std::vector<QMask> rows_;
};

/// Smallest transitive superset (Warshall over bit rows).
Relation transitive_closure(Relation r);

/**
 * Reflexive, transitive relation over semi-automaton states. (u, v) in the
 * relation reads "u is weakly preferred to v". Invariants are checked at
 * construction.
 */
class Preorder {
  public:
    Preorder() = default;

    /// E_∅: the identity relation.
    static Preorder empty(std::size_t n);
    /// E_(x,y): identity plus (x, y), the least preorder with x ≻ y.
    static Preorder strict_pair(std::size_t n, QState x, QState y);
    /// Throws InputError unless `r` is reflexive and transitive.
    static Preorder from_relation(Relation r);
    /// Reflexive-transitive closure of `r`.
    static Preorder closure_of(Relation r);

    std::size_t size() const { return rel_.size(); }
    const Relation& relation() const { return rel_; }
    bool weakly_prefers(QState u, QState v) const { return rel_.has(u, v); }
    bool strictly_prefers(QState u, QState v) const { return rel_.has(u, v) && !rel_.has(v, u); }
    /// {q' : q' ≻ q}
    QMask strict_upper_closure(QState q) const;

    std::size_t hash() const { return rel_.hash(); }
    friend bool operator==(const Preorder&, const Preorder&) = default;
    friend auto operator<=>(const Preorder&, const Preorder&) = default;

  private:
    explicit Preorder(Relation r) : rel_(std::move(r)) {}
    Relation rel_;
};

struct PreorderHash {
    std::size_t operator()(const Preorder& p) const { return p.hash(); }
};

QMask strict_upper_closure(const Preorder& e, QState q);

enum class Polarity : std::uint8_t { Strict, NotStrict };

/// (u, v, ≻) holds iff u ≻ v; (u, v, ⊁) holds iff not u ≻ v.
struct Constraint {
    QState u;
    QState v;
    Polarity polarity;
    friend bool operator==(const Constraint&, const Constraint&) = default;
};

bool satisfies(const Preorder& e, const Constraint& c);
bool satisfies_all(const Preorder& e, std::span<const Constraint> cs);
Constraint negate(const Constraint& c);

/**
 * A secret 𝔘: the set of preorders satisfying every listed constraint.
 * The canonical secret 𝔘_xy is the single constraint (x, y, ≻).
 *
 * Conjunctions of more than one constraint are experimental: the complement
 * side is built as the union of the single-constraint negations.
 */
struct Secret {
    std::vector<Constraint> constraints;

    static Secret strict_pair(QState x, QState y) { return Secret{{Constraint{x, y, Polarity::Strict}}}; }
    bool contains(const Preorder& e) const { return satisfies_all(e, constraints); }
    /// Least member: E_(x,y) for the canonical secret.
    std::optional<Preorder> least_member(std::size_t n) const;
    /// First non-member in constraint-engine order: E_∅ for the canonical secret.
    std::optional<Preorder> least_non_member(std::size_t n) const;
};

struct CheckStats {
    std::size_t iterations = 0;
};

/**
 * Least preorder containing `init` that satisfies `cs`, or nullopt when no
 * such preorder exists. Each non-returning round adds at least one pair, so
 * the loop runs at most n² + 1 times.
 */
std::optional<Preorder> check_constraints(std::size_t n, std::span<const Constraint> cs, const Relation& init,
                                          CheckStats* stats = nullptr);

/**
 * Up to `k` distinct preorders satisfying `cs`. Starting from the least
 * solution, repeatedly extends known solutions by one pair (pairs row-major,
 * solutions in insertion order, including ones found in the same pass) and
 * keeps each new least extension. Either exactly k are returned, or every
 * satisfying preorder is.
 */
std::vector<Preorder> gen_from_constraints(std::size_t n, std::span<const Constraint> cs, std::size_t k);

/// Every preorder on n elements (1, 1, 4, 29, 355, 6942 for n = 0..5).
/// Throws EnumerationTooLarge for n > 5.
std::vector<Preorder> enumerate_preorders(std::size_t n);

using Symbol = std::uint64_t;

/**
 * Deterministic semi-automaton ⟨Q, 2^AP, δ, q0⟩. Symbols are bitmasks over
 * the automaton's own AP list. δ consults explicit transitions first and then
 * the per-state default.
 */
class SemiAutomaton {
  public:
    SemiAutomaton() = default;
    SemiAutomaton(std::vector<std::string> states, std::vector<std::string> atomic_props, QState initial);

    void add_transition(QState from, Symbol symbol, QState to);
    void set_default(QState from, QState to);

    std::size_t num_states() const { return states_.size(); }
    QState initial() const { return initial_; }
    const std::vector<std::string>& states() const { return states_; }
    const std::string& state_name(QState q) const { return states_[q]; }
    std::optional<QState> find_state(std::string_view name) const;
    const std::vector<std::string>& atomic_props() const { return atomic_props_; }

    const std::map<std::pair<QState, Symbol>, QState>& explicit_transitions() const { return delta_; }
    std::optional<QState> default_of(QState q) const { return default_[q]; }

    /// Throws InputError if δ(q, σ) is undefined.
    QState step(QState q, Symbol symbol) const;
    /// Extended δ; the empty word leaves q unchanged.
    QState run(QState q, std::span<const Symbol> word) const;

  private:
    std::vector<std::string> states_;
    std::vector<std::string> atomic_props_;
    QState initial_ = 0;
    std::map<std::pair<QState, Symbol>, QState> delta_;
    std::vector<std::optional<QState>> default_;
};

} // namespace nashpriv
