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

#include "nashpriv/errors.hpp"
#include "nashpriv/preference.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

namespace nashpriv {
namespace {

using testing::brute_force_preorders;
using testing::oracle_least;
using testing::oracle_satisfies;

TEST(Relation, ClosureIsTransitive)
{
    Relation r(4);
    r.add(0, 1);
    r.add(1, 2);
    r.add(2, 3);
    const Relation c = transitive_closure(r);
    EXPECT_TRUE(c.has(0, 3));
    EXPECT_TRUE(c.is_transitive());
    EXPECT_FALSE(c.has(3, 0));
}

TEST(Preorder, RejectsNonPreorders)
{
    Relation r(2);
    r.add(0, 1);
    EXPECT_THROW(Preorder::from_relation(r), InputError);
    r.add(0, 0);
    r.add(1, 1);
    EXPECT_NO_THROW(Preorder::from_relation(r));
}

TEST(Preorder, StrictUpperClosure)
{
    const Preorder e = Preorder::strict_pair(3, 2, 0);
    EXPECT_EQ(e.strict_upper_closure(0), mask_of(2));
    EXPECT_EQ(e.strict_upper_closure(2), 0u);
    EXPECT_TRUE(e.strictly_prefers(2, 0));
    EXPECT_FALSE(e.strictly_prefers(0, 1));
}

TEST(Preorder, IndifferenceIsNotStrict)
{
    Relation r(2);
    r.add(0, 1);
    r.add(1, 0);
    const Preorder e = Preorder::closure_of(r);
    EXPECT_TRUE(e.weakly_prefers(0, 1));
    EXPECT_FALSE(e.strictly_prefers(0, 1));
    EXPECT_EQ(e.strict_upper_closure(0), 0u);
}

TEST(Enumerate, CountsMatchBruteForce)
{
    const std::size_t expected[] = {1, 1, 4, 29, 355, 6942};
    for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(enumerate_preorders(n).size(), expected[n]) << n;
    for (std::size_t n = 1; n <= 4; ++n) {
        auto a = enumerate_preorders(n);
        auto b = brute_force_preorders(n);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        EXPECT_EQ(a, b) << n;
    }
    EXPECT_THROW(enumerate_preorders(6), EnumerationTooLarge);
}

TEST(Secret, LeastMemberAndNonMember)
{
    const Secret s = Secret::strict_pair(0, 1);
    EXPECT_EQ(*s.least_member(3), Preorder::strict_pair(3, 0, 1));
    EXPECT_EQ(*s.least_non_member(3), Preorder::empty(3));
}

// Minimality of CheckConstraints against exhaustive enumeration.
TEST(CheckConstraints, LeastSolutionMatchesOracle)
{
    std::mt19937_64 rng(3);
    for (std::size_t n : {3u, 4u}) {
        const auto all = brute_force_preorders(n);
        for (int trial = 0; trial < 100; ++trial) {
            const auto cs = testing::random_constraints(n, 1 + rng() % 5, rng);
            Relation init(n);
            if (rng() % 2) init.add(static_cast<QState>(rng() % n), static_cast<QState>(rng() % n));
            const auto got = check_constraints(n, cs, init);
            const auto want = oracle_least(n, cs, init, all);
            ASSERT_EQ(got.has_value(), want.has_value()) << "n=" << n << " trial=" << trial;
            if (got) EXPECT_EQ(*got, *want);
        }
    }
}

TEST(CheckConstraints, IterationBound)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng() % 5;
        const auto cs = testing::random_constraints(n, 1 + rng() % 8, rng);
        CheckStats stats;
        check_constraints(n, cs, Relation(n), &stats);
        EXPECT_LE(stats.iterations, n * n + 1);
    }
}

// Completeness of GenFromConstraints: exactly min(k, #solutions) distinct solutions.
TEST(GenFromConstraints, CompleteAgainstEnumeration)
{
    std::mt19937_64 rng(9);
    for (std::size_t n : {3u, 4u}) {
        const auto all = brute_force_preorders(n);
        for (int trial = 0; trial < 100; ++trial) {
            const auto cs = testing::random_constraints(n, rng() % 4, rng);
            std::set<Preorder> solutions;
            for (const auto& e : all)
                if (oracle_satisfies(e, cs)) solutions.insert(e);

            const auto everything = gen_from_constraints(n, cs, all.size() + 1);
            const std::set<Preorder> got(everything.begin(), everything.end());
            ASSERT_EQ(got.size(), everything.size()) << "duplicates";
            EXPECT_EQ(got, solutions) << "n=" << n << " trial=" << trial;

            const std::size_t k = 1 + rng() % 6;
            const auto some = gen_from_constraints(n, cs, k);
            EXPECT_EQ(some.size(), std::min(k, solutions.size()));
            for (const auto& e : some) EXPECT_TRUE(solutions.contains(e));
        }
    }
}

TEST(GenFromConstraints, FirstIsLeast)
{
    const std::vector<Constraint> cs{{0, 1, Polarity::Strict}};
    const auto out = gen_from_constraints(3, cs, 4);
    ASSERT_FALSE(out.empty());
    EXPECT_EQ(out.front(), Preorder::strict_pair(3, 0, 1));
}

TEST(GenFromConstraints, Infeasible)
{
    const std::vector<Constraint> cs{{0, 1, Polarity::Strict}, {1, 0, Polarity::Strict}};
    EXPECT_TRUE(gen_from_constraints(2, cs, 3).empty());
}

TEST(SemiAutomaton, DefaultsAndExplicitTransitions)
{
    SemiAutomaton sa({"q0", "q1"}, {"p"}, 0);
    sa.add_transition(0, 1, 1);
    EXPECT_THROW(sa.step(0, 0), InputError);
    sa.set_default(0, 0);
    sa.set_default(1, 1);
    EXPECT_EQ(sa.step(0, 0), 0u);
    EXPECT_EQ(sa.step(0, 1), 1u);
    const std::vector<Symbol> word{1, 0};
    EXPECT_EQ(sa.run(0, word), 1u);
    EXPECT_EQ(sa.run(1, {}), 1u);
}

} // namespace
} // namespace nashpriv
