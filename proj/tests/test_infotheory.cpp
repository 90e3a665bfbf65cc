/*
 * Copyright 2026 The miselect Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "miselect.hpp"
#include "oracles.hpp"

using namespace miselect;
using V = std::vector<Code>;

namespace {

V to_codes(const oracle::Column& c) { return V(c.begin(), c.end()); }

}  // namespace

TEST(Entropy, Examples) {
  EXPECT_DOUBLE_EQ(entropy(V{0, 1, 0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(entropy(V{3, 3, 3}), 0.0);
  EXPECT_DOUBLE_EQ(entropy(V{0, 1, 2, 3}), 2.0);
  EXPECT_NEAR(entropy(V{0, 1, 0, 1}, LogBase::nats), std::log(2.0), 1e-15);
  EXPECT_THROW(entropy(V{}), InvalidArgument);
}

TEST(MutualInformation, Examples) {
  EXPECT_DOUBLE_EQ(mutual_information(V{0, 0, 1, 1}, V{0, 1, 0, 1}), 0.0);
  EXPECT_DOUBLE_EQ(mutual_information(V{0, 0, 1, 1}, V{0, 0, 1, 1}), 1.0);
  const double expected = oracle::mi({0, 0, 1, 1}, {0, 1, 1, 1});
  EXPECT_NEAR(expected, 0.3113, 1e-4);
  EXPECT_NEAR(mutual_information(V{0, 0, 1, 1}, V{0, 1, 1, 1}), expected, 1e-12);
  EXPECT_THROW(mutual_information(V{0, 1}, V{0}), InvalidArgument);
  EXPECT_THROW(mutual_information(V{}, V{}), InvalidArgument);
}

TEST(ConditionalMutualInformation, Examples) {
  V x = {0, 1, 1, 0, 2, 1}, y = {1, 1, 0, 0, 1, 2}, one = {0, 0, 0, 0, 0, 0};
  EXPECT_EQ(conditional_mutual_information(x, y, one), mutual_information(x, y));
  EXPECT_DOUBLE_EQ(conditional_mutual_information(x, x, x), 0.0);
  EXPECT_THROW(conditional_mutual_information(x, y, V{0}), InvalidArgument);
}

TEST(ConditionalMutualInformation, ChainRuleOracleOnTernaryTriples) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    auto x = oracle::random_column(rng, 12, 3), y = oracle::random_column(rng, 12, 3),
         z = oracle::random_column(rng, 12, 3);
    EXPECT_NEAR(conditional_mutual_information(to_codes(x), to_codes(y), to_codes(z)),
                oracle::cmi_chain_rule(x, y, z), 1e-12);
  }
}

TEST(JointPairMi, Examples) {
  V x = {0, 1, 1, 0, 1}, y = {1, 1, 0, 0, 1}, c = {2, 2, 2, 2, 2};
  EXPECT_NEAR(joint_pair_mi(x, x, y), mutual_information(x, y), 1e-15);
  EXPECT_DOUBLE_EQ(joint_pair_mi(c, c, c), 0.0);
  EXPECT_THROW(joint_pair_mi(x, V{0, 1}, y), InvalidArgument);
}

TEST(JointPairMi, ChainRule) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    auto x = to_codes(oracle::random_column(rng, 10, 3));
    auto s = to_codes(oracle::random_column(rng, 10, 4));
    auto y = to_codes(oracle::random_column(rng, 10, 2));
    EXPECT_NEAR(joint_pair_mi(x, s, y),
                mutual_information(s, y) + conditional_mutual_information(x, y, s), 1e-12);
  }
}

TEST(InfoTheory, MatchesNestedLoopOracle) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 30;
    const int ar = 1 + static_cast<int>(rng() % 5);
    auto x = oracle::random_column(rng, n, ar), y = oracle::random_column(rng, n, ar),
         z = oracle::random_column(rng, n, 3);
    EXPECT_NEAR(entropy(to_codes(x)), oracle::entropy(x), 1e-12);
    EXPECT_NEAR(mutual_information(to_codes(x), to_codes(y)), oracle::mi(x, y), 1e-12);
    EXPECT_NEAR(conditional_mutual_information(to_codes(x), to_codes(y), to_codes(z)),
                oracle::cmi(x, y, z), 1e-12);
    EXPECT_NEAR(joint_pair_mi(to_codes(x), to_codes(z), to_codes(y)),
                oracle::joint_pair_mi(x, z, y), 1e-12);
  }
}

TEST(InfoTheory, Identities) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 40;
    auto x = to_codes(oracle::random_column(rng, n, 4));
    auto y = to_codes(oracle::random_column(rng, n, 3));
    auto z = to_codes(oracle::random_column(rng, n, 3));
    const double mxy = mutual_information(x, y);
    EXPECT_EQ(mxy, mutual_information(y, x));
    EXPECT_GE(mxy, 0.0);
    EXPECT_LE(mxy, std::min(entropy(x), entropy(y)) + 1e-12);
    EXPECT_NEAR(mutual_information(x, x), entropy(x), 1e-12);
    EXPECT_GE(conditional_mutual_information(x, y, z), 0.0);
    EXPECT_LE(entropy(x), std::log2(4.0) + 1e-12);
  }
}

TEST(InfoTheory, BijectiveRelabelingIsInvisible) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    auto x = to_codes(oracle::random_column(rng, 25, 4));
    auto y = to_codes(oracle::random_column(rng, 25, 3));
    auto z = to_codes(oracle::random_column(rng, 25, 3));
    std::vector<Code> perm = {0, 1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), rng);
    V rx(x.size()), ry(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      rx[i] = perm[x[i]] + 5;
      ry[i] = 2 - y[i];
    }
    EXPECT_EQ(entropy(rx), entropy(x));
    EXPECT_EQ(mutual_information(rx, ry), mutual_information(x, y));
    EXPECT_EQ(conditional_mutual_information(rx, ry, z), conditional_mutual_information(x, y, z));
  }
}

TEST(ContingencyTable, CountsAndMarginals) {
  V x = {0, 1, 1, 2}, y = {1, 0, 1, 1}, z = {0, 0, 1, 1};
  auto t = ContingencyTable::tabulate(std::span<const Code>(x), 3, std::span<const Code>(y), 2,
                                      std::span<const Code>(z), 2);
  EXPECT_EQ(t.total(), 4u);
  EXPECT_EQ(std::accumulate(t.counts().begin(), t.counts().end(), std::uint64_t{0}), 4u);
  EXPECT_EQ(t.at(1, 1, 1), 1u);
  EXPECT_EQ(t.marginal(0), (std::vector<std::uint64_t>{1, 2, 1}));
  EXPECT_EQ(t.marginal(1), (std::vector<std::uint64_t>{1, 3}));
  EXPECT_EQ(t.marginal(2), (std::vector<std::uint64_t>{2, 2}));
  auto xy = t.sum_out(2);
  EXPECT_EQ(xy.at(1, 0), 1u);
  EXPECT_EQ(xy.at(2, 1), 1u);
  EXPECT_THROW(ContingencyTable(std::vector<Code>{}), InvalidArgument);
  EXPECT_THROW(ContingencyTable::tabulate(std::span<const Code>(x), 2), InvalidArgument);
}

TEST(InfoTheory, ExplicitArityMatchesInferred) {
  V x = {0, 1, 1}, y = {1, 1, 0};
  EXPECT_EQ(mutual_information(std::span<const Code>(x), 7, std::span<const Code>(y), 3),
            mutual_information(x, y));
}
