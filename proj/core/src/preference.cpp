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

#include "nashpriv/preference.hpp"

#include "nashpriv/errors.hpp"

#include <bit>
#include <unordered_set>
#include <utility>

namespace nashpriv {

namespace {

void require_size(std::size_t n)
{
    if (n > kMaxSemiStates) throw InputError("at most 64 semi-automaton states are supported");
}

} // namespace

Relation::Relation(std::size_t n) : n_(n), rows_(n, 0)
{
    require_size(n);
}

Relation Relation::identity(std::size_t n)
{
    Relation r(n);
    for (QState q = 0; q < n; ++q) r.add(q, q);
    return r;
}

QMask Relation::column(QState v) const
{
    QMask m = 0;
    for (QState u = 0; u < n_; ++u) {
        if (has(u, v)) m |= mask_of(u);
    }
    return m;
}

std::size_t Relation::count() const
{
    std::size_t c = 0;
    for (QMask r : rows_) c += static_cast<std::size_t>(std::popcount(r));
    return c;
}

bool Relation::is_reflexive() const
{
    for (QState q = 0; q < n_; ++q) {
        if (!has(q, q)) return false;
    }
    return true;
}

bool Relation::is_transitive() const
{
    for (QState u = 0; u < n_; ++u) {
        QMask reach = 0;
        for (QMask m = rows_[u]; m != 0; m &= m - 1) reach |= rows_[static_cast<QState>(std::countr_zero(m))];
        if ((reach & ~rows_[u]) != 0) return false;
    }
    return true;
}

bool Relation::subset_of(const Relation& other) const
{
    if (n_ != other.n_) return false;
    for (std::size_t u = 0; u < n_; ++u) {
        if ((rows_[u] & ~other.rows_[u]) != 0) return false;
    }
    return true;
}

Relation& Relation::operator|=(const Relation& other)
{
    for (std::size_t u = 0; u < n_; ++u) rows_[u] |= other.rows_[u];
    return *this;
}

std::size_t Relation::hash() const
{
    std::size_t h = n_ * 0x9e3779b97f4a7c15ULL;
    for (QMask r : rows_) h = (h ^ r) * 0x100000001b3ULL + (h >> 29);
    return h;
}

Relation transitive_closure(Relation r)
{
    const auto n = r.size();
    for (QState k = 0; k < n; ++k) {
        const QMask via = r.row(k);
        for (QState i = 0; i < n; ++i) {
            if (r.has(i, k)) r.add_row(i, via);
        }
    }
    return r;
}

Preorder Preorder::empty(std::size_t n) { return Preorder(Relation::identity(n)); }

Preorder Preorder::strict_pair(std::size_t n, QState x, QState y)
{
    Relation r = Relation::identity(n);
    r.add(x, y);
    return Preorder(std::move(r));
}

Preorder Preorder::from_relation(Relation r)
{
    if (!r.is_reflexive()) throw InputError("relation is not reflexive");
    if (!r.is_transitive()) throw InputError("relation is not transitive");
    return Preorder(std::move(r));
}

Preorder Preorder::closure_of(Relation r)
{
    r |= Relation::identity(r.size());
    return Preorder(transitive_closure(std::move(r)));
}

QMask Preorder::strict_upper_closure(QState q) const
{
    // q' ≻ q: (q', q) present and (q, q') absent.
    return rel_.column(q) & ~rel_.row(q);
}

QMask strict_upper_closure(const Preorder& e, QState q) { return e.strict_upper_closure(q); }

bool satisfies(const Preorder& e, const Constraint& c)
{
    const bool strict = e.strictly_prefers(c.u, c.v);
    return c.polarity == Polarity::Strict ? strict : !strict;
}

bool satisfies_all(const Preorder& e, std::span<const Constraint> cs)
{
    for (const auto& c : cs) {
        if (!satisfies(e, c)) return false;
    }
    return true;
}

Constraint negate(const Constraint& c)
{
    return Constraint{c.u, c.v, c.polarity == Polarity::Strict ? Polarity::NotStrict : Polarity::Strict};
}

std::optional<Preorder> Secret::least_member(std::size_t n) const
{
    return check_constraints(n, constraints, Relation(n));
}

std::optional<Preorder> Secret::least_non_member(std::size_t n) const
{
    for (const auto& c : constraints) {
        const Constraint neg = negate(c);
        if (auto e = check_constraints(n, std::span<const Constraint>(&neg, 1), Relation(n))) return e;
    }
    return std::nullopt;
}

std::optional<Preorder> check_constraints(std::size_t n, std::span<const Constraint> cs, const Relation& init,
                                          CheckStats* stats)
{
    Relation e = init;
    e |= Relation::identity(n);
    for (const auto& c : cs) {
        if (c.polarity == Polarity::Strict) e.add(c.u, c.v);
    }
    std::size_t rounds = 0;
    while (true) {
        ++rounds;
        e = transitive_closure(std::move(e));
        bool valid = true;
        for (const auto& c : cs) {
            if (c.polarity == Polarity::Strict && e.has(c.v, c.u)) {
                if (stats) stats->iterations = rounds;
                return std::nullopt;
            }
        }
        // u ⊁ v with u ≽ v forces v ≽ u in every solution above e.
        for (const auto& c : cs) {
            if (c.polarity == Polarity::NotStrict && e.has(c.u, c.v) && !e.has(c.v, c.u)) {
                e.add(c.v, c.u);
                valid = false;
            }
        }
        if (valid) {
            if (stats) stats->iterations = rounds;
            return Preorder::from_relation(std::move(e));
        }
    }
}

std::vector<Preorder> gen_from_constraints(std::size_t n, std::span<const Constraint> cs, std::size_t k)
{
    std::vector<Preorder> found;
    if (k == 0) return found;
    auto least = check_constraints(n, cs, Relation(n));
    if (!least) return found;

    std::unordered_set<Preorder, PreorderHash> index;
    found.push_back(*least);
    index.insert(*least);

    bool grew = true;
    while (found.size() < k && grew) {
        grew = false;
        for (QState u = 0; u < n; ++u) {
            for (QState v = 0; v < n; ++v) {
                // `found` may grow during the pass; new members are visited too.
                for (std::size_t i = 0; i < found.size(); ++i) {
                    if (found[i].relation().has(u, v)) continue;
                    Relation seed = found[i].relation();
                    seed.add(u, v);
                    auto next = check_constraints(n, cs, seed);
                    if (next && index.insert(*next).second) {
                        found.push_back(std::move(*next));
                        grew = true;
                        if (found.size() >= k) return found;
                    }
                }
            }
        }
    }
    return found;
}

std::vector<Preorder> enumerate_preorders(std::size_t n)
{
    if (n > 5) throw EnumerationTooLarge("preorder enumeration is limited to 5 elements");
    std::vector<std::pair<QState, QState>> off_diagonal;
    for (QState u = 0; u < n; ++u) {
        for (QState v = 0; v < n; ++v) {
            if (u != v) off_diagonal.emplace_back(u, v);
        }
    }
    std::vector<Preorder> out;
    const std::uint64_t total = std::uint64_t{1} << off_diagonal.size();
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        Relation r = Relation::identity(n);
        for (std::size_t i = 0; i < off_diagonal.size(); ++i) {
            if ((bits >> i) & 1U) r.add(off_diagonal[i].first, off_diagonal[i].second);
        }
        if (r.is_transitive()) out.push_back(Preorder::from_relation(std::move(r)));
    }
    return out;
}

SemiAutomaton::SemiAutomaton(std::vector<std::string> states, std::vector<std::string> atomic_props, QState initial)
    : states_(std::move(states)), atomic_props_(std::move(atomic_props)), initial_(initial),
      default_(states_.size())
{
    require_size(states_.size());
    if (atomic_props_.size() > kMaxAtomicProps) throw InputError("at most 64 atomic propositions are supported");
    if (states_.empty()) throw InputError("semi-automaton has no states");
    if (initial_ >= states_.size()) throw InputError("semi-automaton initial state out of range");
}

void SemiAutomaton::add_transition(QState from, Symbol symbol, QState to)
{
    if (from >= states_.size() || to >= states_.size()) throw InputError("semi-automaton transition out of range");
    auto [it, inserted] = delta_.emplace(std::make_pair(from, symbol), to);
    if (!inserted && it->second != to) {
        throw InputError("nondeterministic semi-automaton transition from '" + states_[from] + "'");
    }
}

void SemiAutomaton::set_default(QState from, QState to)
{
    if (from >= states_.size() || to >= states_.size()) throw InputError("semi-automaton default out of range");
    default_[from] = to;
}

std::optional<QState> SemiAutomaton::find_state(std::string_view name) const
{
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (states_[i] == name) return static_cast<QState>(i);
    }
    return std::nullopt;
}

QState SemiAutomaton::step(QState q, Symbol symbol) const
{
    if (auto it = delta_.find({q, symbol}); it != delta_.end()) return it->second;
    if (default_[q]) return *default_[q];
    throw InputError("semi-automaton has no transition from '" + states_[q] + "' on symbol " + std::to_string(symbol));
}

QState SemiAutomaton::run(QState q, std::span<const Symbol> word) const
{
    for (Symbol s : word) q = step(q, s);
    return q;
}

} // namespace nashpriv
