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

#include "fixtures.hpp"
#include "nashpriv/buchi.hpp"
#include "nashpriv/errors.hpp"
#include "nashpriv/protocol.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

namespace nashpriv {
namespace {

using testing::brute_force_preorders;

std::shared_ptr<const ProductGame> random_product(std::size_t qs, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const TerminatingGame tg(testing::random_game(5, 2, 3, rng));
    return std::make_shared<const ProductGame>(build_product(tg, testing::random_semi(qs, 2, rng)));
}

ResponderConfig uc_config(std::shared_ptr<const ProductGame> pg, Player p, const Preorder& e, const Secret& s)
{
    return ResponderConfig{p, e, s, std::make_shared<const RegionOracle>(std::move(pg)),
                           std::make_shared<const UpperClosureGenerator>()};
}

/// Runs r-queries in `order` (then a p-query on the last one if `final_p`), stopping at STOP.
Transcript session(const ResponderConfig& cfg, std::span<const QState> order, bool final_p)
{
    Responder r(cfg);
    Transcript t;
    t.outcome = Outcome::NoneExists;
    for (std::size_t i = 0; i < order.size() + (final_p ? 1 : 0); ++i) {
        const Query q{order[std::min(i, order.size() - 1)], i < order.size() ? Flag::R : Flag::P};
        const Response resp = r.respond(q);
        t.session.push_back(Exchange{cfg.player, q, resp});
        if (is_stop(resp)) {
            t.outcome = Outcome::Stopped;
            break;
        }
    }
    return t;
}

bool same_closures(const Preorder& a, const Preorder& b, std::span<const QState> qs)
{
    return std::all_of(qs.begin(), qs.end(),
                       [&](QState q) { return a.strict_upper_closure(q) == b.strict_upper_closure(q); });
}

TEST(Respond, EmptyPreorderStopsImmediately)
{
    auto pg = random_product(3, 1);
    const Secret s = Secret::strict_pair(0, 1);
    Responder r(uc_config(pg, Player::One, Preorder::empty(3), s));
    EXPECT_TRUE(is_stop(r.respond(Query{2, Flag::R})));
    EXPECT_TRUE(r.memory().closed);
    EXPECT_THROW(r.respond(Query{1, Flag::R}), ProtocolOrder);
}

TEST(Respond, InitialMemory)
{
    const auto mem = ResponderMemory::initial(3, Secret::strict_pair(0, 2));
    EXPECT_TRUE(mem.queries.empty());
    EXPECT_EQ(mem.gamma_plus, std::vector<Preorder>{Preorder::strict_pair(3, 0, 2)});
    EXPECT_EQ(mem.gamma_minus, std::vector<Preorder>{Preorder::empty(3)});
}

// With two states every preorder is a dummy or has no fresh look-alike, so the first reply is STOP.
TEST(Respond, TwoStatesAlwaysStop)
{
    auto pg = random_product(2, 2);
    for (const Preorder& e : brute_force_preorders(2)) {
        for (QState q : {0u, 1u}) {
            const auto cfg = uc_config(pg, Player::One, e, Secret::strict_pair(0, 1));
            const auto [resp, mem] = respond(cfg, ResponderMemory::initial(2, cfg.secret), Query{q, Flag::R});
            EXPECT_TRUE(is_stop(resp));
        }
    }
}

// STOP decisions and dummy choices checked against the set of all preorders
// sharing the queried closures.
TEST(Respond, StopRuleMatchesEnumeration)
{
    const std::size_t n = 4;
    auto pg = random_product(n, 3);
    const auto all = brute_force_preorders(n);
    std::mt19937_64 rng(4);
    for (int t = 0; t < 150; ++t) {
        const Preorder e = all[rng() % all.size()];
        const Secret s = Secret::strict_pair(0, 1 + rng() % 3);
        const auto cfg = uc_config(pg, Player::One, e, s);
        std::vector<QState> order{0, 1, 2, 3};
        std::shuffle(order.begin(), order.end(), rng);
        ResponderMemory mem = ResponderMemory::initial(n, s);
        for (std::size_t k = 0; k < n; ++k) {
            const Query q{order[k], Flag::R};
            const auto [resp, next] = respond(cfg, mem, q);
            std::vector<QState> queried = mem.queries;
            queried.push_back(q.q);
            std::vector<Preorder> plus;
            std::vector<Preorder> minus;
            for (const Preorder& p : all) {
                if (same_closures(p, e, queried)) (s.contains(p) ? plus : minus).push_back(p);
            }
            std::vector<Preorder> dummies = mem.gamma_plus;
            dummies.insert(dummies.end(), mem.gamma_minus.begin(), mem.gamma_minus.end());
            auto is_dummy = [&](const Preorder& p) { return std::find(dummies.begin(), dummies.end(), p) != dummies.end(); };
            const std::size_t K = queried.size() + 1;
            // With more than K candidates, at least one of the first K is fresh.
            const bool plus_stuck = plus.size() <= K && std::all_of(plus.begin(), plus.end(), is_dummy);
            const bool minus_stuck = minus.size() <= K && std::all_of(minus.begin(), minus.end(), is_dummy);
            const bool expect_stop = e == mem.gamma_plus.back() || e == mem.gamma_minus.back() || plus_stuck || minus_stuck;
            ASSERT_EQ(is_stop(resp), expect_stop) << "trial " << t << " query " << k;
            if (expect_stop) break;
            const Preorder& xp = next.gamma_plus.back();
            const Preorder& xm = next.gamma_minus.back();
            EXPECT_TRUE(s.contains(xp));
            EXPECT_FALSE(s.contains(xm));
            EXPECT_FALSE(is_dummy(xp));
            EXPECT_FALSE(is_dummy(xm));
            EXPECT_TRUE(same_closures(xp, e, queried));
            EXPECT_TRUE(same_closures(xm, e, queried));
            mem = next;
        }
    }
}

TEST(Respond, LosingRegionMatchesSolver)
{
    const auto sc = testing::delivery_scenario();
    const ProductGame& pg = *sc.product;
    const auto cfg = uc_config(sc.product, Player::One, sc.e1, Secret::strict_pair(sc.state("a"), sc.state("c")));
    Responder r(cfg);
    for (const char* name : {"top", "b", "d"}) {
        const QState q = sc.state(name);
        const Response resp = r.respond(Query{q, Flag::R});
        const auto* lr = std::get_if<LosingRegion>(&resp);
        ASSERT_NE(lr, nullptr) << name;
        const Regions regions = solve_naive(objective_game(pg, objective_sets(pg, Player::One, sc.e1, q)));
        std::vector<NodeId> want;
        for (NodeId v : pg.reachable_unterminated())
            if (!regions.wins(v)) want.push_back(v);
        EXPECT_EQ(lr->nodes, want) << name;
    }
}

// Only one non-member shares the closures at ⊤, b and d with player 1's
// preorder, and it became the negative dummy at the d query. A p-query on d
// must therefore STOP.
TEST(Respond, DeliveryPunishmentQueryStops)
{
    const auto sc = testing::delivery_scenario();
    const Secret s = Secret::strict_pair(sc.state("a"), sc.state("c"));
    const auto cfg = uc_config(sc.product, Player::One, sc.e1, s);
    const std::vector<QState> order{sc.state("top"), sc.state("b"), sc.state("d")};
    std::size_t non_members = 0;
    for (const Preorder& p : enumerate_preorders(5)) non_members += !s.contains(p) && same_closures(p, sc.e1, order);
    EXPECT_EQ(non_members, 1u);

    const Transcript t = session(cfg, order, true);
    ASSERT_EQ(t.session.size(), 4u);
    for (int i = 0; i < 3; ++i) EXPECT_TRUE(std::holds_alternative<LosingRegion>(t.session[i].response));
    EXPECT_TRUE(is_stop(t.session[3].response));
    EXPECT_TRUE(std::holds_alternative<PrivacyWitnesses>(audit_privacy(t, Player::One, cfg)));
}

// Answering that p-query would reveal the secret: no non-member replays it.
// Members with the same closures would have stopped too, so both sides may be missing.
TEST(Audit, DetectsLeakingTranscript)
{
    const auto sc = testing::delivery_scenario();
    const Secret s = Secret::strict_pair(sc.state("a"), sc.state("c"));
    const auto cfg = uc_config(sc.product, Player::One, sc.e1, s);
    const std::vector<QState> order{sc.state("top"), sc.state("b"), sc.state("d")};
    Transcript t = session(cfg, order, false);
    ASSERT_EQ(t.session.size(), 3u);
    const QMask upper = sc.e1.strict_upper_closure(sc.state("d"));
    t.session.push_back(Exchange{Player::One, Query{sc.state("d"), Flag::P},
                                 cfg.oracle->buchi_payload(Player::One, sc.state("d"), upper)});
    const auto audit = audit_privacy(t, Player::One, cfg);
    const auto* v = std::get_if<Violation>(&audit);
    ASSERT_NE(v, nullptr);
    EXPECT_TRUE(v->missing_minus);
}

TEST(Audit, EmptyTranscript)
{
    auto pg = random_product(3, 5);
    const Secret s = Secret::strict_pair(0, 2);
    const auto audit = audit_privacy(Transcript{}, Player::One, uc_config(pg, Player::One, Preorder::empty(3), s));
    const auto* w = std::get_if<PrivacyWitnesses>(&audit);
    ASSERT_NE(w, nullptr);
    EXPECT_EQ(w->plus, Preorder::strict_pair(3, 0, 2));
    EXPECT_EQ(w->minus, Preorder::empty(3));
}

// Every preorder on three states and every query permutation, with and
// without a final p-query: both witnesses always exist.
TEST(Audit, PrivacyOnThreeStates)
{
    auto pg = random_product(3, 6);
    const Secret s = Secret::strict_pair(0, 1);
    const auto all = brute_force_preorders(3);
    ASSERT_EQ(all.size(), 29u);
    std::size_t sessions = 0;
    for (const Preorder& e : all) {
        std::vector<QState> order{0, 1, 2};
        do {
            for (bool final_p : {false, true}) {
                const auto cfg = uc_config(pg, Player::One, e, s);
                const Transcript t = session(cfg, order, final_p);
                const auto audit = audit_privacy(t, Player::One, cfg, all);
                EXPECT_TRUE(std::holds_alternative<PrivacyWitnesses>(audit));
                ++sessions;
            }
        } while (std::next_permutation(order.begin(), order.end()));
    }
    EXPECT_EQ(sessions, 29u * 6u * 2u);
}

TEST(Respond, ReplayIsDeterministic)
{
    auto pg = random_product(4, 7);
    std::mt19937_64 rng(8);
    for (int t = 0; t < 20; ++t) {
        const auto cfg = uc_config(pg, Player::Two, testing::random_preorder(4, rng), Secret::strict_pair(1, 3));
        const std::vector<QState> order{3, 0, 2, 1};
        const Transcript a = session(cfg, order, true);
        const Transcript b = session(cfg, order, true);
        EXPECT_EQ(a.session, b.session);
        EXPECT_TRUE(replays(cfg, cfg.preference, a.session));
    }
}

// Assumption conditions on random inputs: membership, shared closures and
// losing regions, and invariance of the generator under its own outputs.
TEST(GenKPrefsUc, AssumptionConditions)
{
    const std::size_t n = 4;
    auto pg = random_product(n, 9);
    RegionOracle oracle(pg);
    std::mt19937_64 rng(10);
    for (int t = 0; t < 100; ++t) {
        const Preorder e = testing::random_preorder(n, rng);
        const Secret s = Secret::strict_pair(rng() % 2, 2 + rng() % 2);
        std::vector<QState> qs{0, 1, 2, 3};
        std::shuffle(qs.begin(), qs.end(), rng);
        qs.resize(1 + rng() % n);
        const std::size_t K = 1 + rng() % 6;
        const Flag f = rng() % 2 ? Flag::P : Flag::R;
        const PrefSets out = gen_k_prefs_uc(e, qs, s, K, f);
        EXPECT_LE(out.plus.size(), K);
        EXPECT_LE(out.minus.size(), K);
        for (const auto* side : {&out.plus, &out.minus}) {
            for (const Preorder& p : *side) {
                EXPECT_EQ(s.contains(p), side == &out.plus);
                EXPECT_TRUE(same_closures(p, e, qs));
                for (QState q : qs) {
                    EXPECT_EQ(oracle.losing_region(Player::One, q, p.strict_upper_closure(q)),
                              oracle.losing_region(Player::One, q, e.strict_upper_closure(q)));
                }
                for (std::size_t j = 1; j <= qs.size(); ++j) {
                    const std::span<const QState> prefix(qs.data(), j);
                    const Flag fj = j < qs.size() ? Flag::R : f;
                    const PrefSets a = gen_k_prefs_uc(e, prefix, s, K, fj);
                    const PrefSets b = gen_k_prefs_uc(p, prefix, s, K, fj);
                    EXPECT_EQ(a.plus, b.plus);
                    EXPECT_EQ(a.minus, b.minus);
                }
            }
        }
    }
}

TEST(Respond, TruthfulResponderNeverStops)
{
    auto pg = random_product(3, 11);
    ResponderConfig cfg{Player::One, Preorder::empty(3), Secret::strict_pair(0, 1),
                        std::make_shared<const RegionOracle>(pg), nullptr};
    Responder r(cfg);
    for (QState q : {0u, 1u, 2u}) EXPECT_TRUE(std::holds_alternative<LosingRegion>(r.respond(Query{q, Flag::R})));
    EXPECT_TRUE(std::holds_alternative<BuchiPayload>(r.respond(Query{2, Flag::P})));
    EXPECT_THROW(r.respond(Query{0, Flag::R}), ProtocolOrder);
}

TEST(Mediate, CycleTruthfulRespondersFindNothing)
{
    const auto sc = testing::cycle_scenario();
    const Secret s = Secret::strict_pair(sc.state("q1"), sc.state("q2"));
    auto oracle = std::make_shared<const RegionOracle>(sc.product);
    Responder r1(ResponderConfig{Player::One, sc.e1, s, oracle, nullptr});
    Responder r2(ResponderConfig{Player::Two, sc.e2, s, oracle, nullptr});
    const auto order = ascending_order(2);
    const MediationResult m = mediate(*sc.product, r1, r2, order);
    EXPECT_TRUE(std::holds_alternative<NoneExists>(m.result));
    EXPECT_EQ(m.transcript.outcome, Outcome::NoneExists);
    EXPECT_EQ(m.transcript.session.size(), 4u);
}

TEST(Mediate, DummyResponderStopsAtFirstQuery)
{
    const auto sc = testing::delivery_scenario();
    const Secret s = Secret::strict_pair(sc.state("a"), sc.state("c"));
    Responder r1(uc_config(sc.product, Player::One, Preorder::empty(5), s));
    Responder r2(uc_config(sc.product, Player::Two, sc.e2, s));
    const auto order = ascending_order(5);
    const MediationResult m = mediate(*sc.product, r1, r2, order);
    const auto* st = std::get_if<Stopped>(&m.result);
    ASSERT_NE(st, nullptr);
    EXPECT_EQ(st->by, Player::One);
    EXPECT_EQ(st->query, 1u);
    EXPECT_EQ(m.transcript.session.size(), 1u);
}

TEST(Mediate, DeliveryTopBD)
{
    const auto sc = testing::delivery_scenario();
    const Secret s = Secret::strict_pair(sc.state("a"), sc.state("c"));
    Responder r1(uc_config(sc.product, Player::One, sc.e1, s));
    Responder r2(uc_config(sc.product, Player::Two, sc.e2, s));
    const std::vector<QState> order{sc.state("top"), sc.state("b"), sc.state("d")};
    const MediationResult m = mediate(*sc.product, r1, r2, order);
    const auto p1 = m.transcript.of(Player::One);
    ASSERT_EQ(p1.size(), 4u);
    for (int i = 0; i < 3; ++i) EXPECT_TRUE(std::holds_alternative<LosingRegion>(p1[i].response));
    EXPECT_EQ(p1[3].query, (Query{sc.state("d"), Flag::P}));
    EXPECT_TRUE(is_stop(p1[3].response));
    EXPECT_EQ(m.transcript.outcome, Outcome::Stopped);
    EXPECT_TRUE(std::holds_alternative<PrivacyWitnesses>(audit_privacy(m.transcript, Player::One, r1.config())));
}

// Whenever mediation succeeds it returns the equilibrium synthesize_ne finds directly.
TEST(Mediate, AgreesWithDirectSynthesis)
{
    std::mt19937_64 rng(12);
    int agreed = 0;
    for (int t = 0; t < 200; ++t) {
        auto pg = random_product(4, 100 + t);
        const Preorder e1 = testing::random_preorder(4, rng);
        const Preorder e2 = testing::random_preorder(4, rng);
        const Secret s = Secret::strict_pair(0, 1);
        auto oracle = std::make_shared<const RegionOracle>(pg);
        Responder r1(ResponderConfig{Player::One, e1, s, oracle, nullptr});
        Responder r2(ResponderConfig{Player::Two, e2, s, oracle, nullptr});
        std::vector<QState> order{0, 1, 2, 3};
        std::shuffle(order.begin(), order.end(), rng);
        const MediationResult m = mediate(*pg, r1, r2, order);
        ASSERT_FALSE(std::holds_alternative<Stopped>(m.result));
        const EquilibriumResult direct = synthesize_ne(*pg, e1, e2, order);
        ASSERT_EQ(m.result.index(), direct.index()) << t;
        if (const auto* eq = std::get_if<Equilibrium>(&m.result)) {
            const auto& d = std::get<Equilibrium>(direct);
            EXPECT_EQ(eq->nominal.nodes, d.nominal.nodes);
            EXPECT_EQ(eq->punish_by_1, d.punish_by_1);
            EXPECT_EQ(eq->punish_by_2, d.punish_by_2);
            EXPECT_TRUE(verify_ne(*pg, e1, e2, m.result));
        }
        ++agreed;
    }
    EXPECT_EQ(agreed, 200);
}

} // namespace
} // namespace nashpriv
