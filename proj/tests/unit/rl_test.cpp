// Copyright 2026 The bdg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bdg/env/chain.h"
#include "bdg/env/random.h"
#include "bdg/rl/dqn.h"
#include "bdg/rl/error.h"
#include "bdg/rl/mlp.h"
#include "bdg/rl/optim.h"
#include "bdg/rl/ppo.h"
#include "bdg/rl/qtable.h"
#include "bdg/rl/replay.h"
#include "bdg/rl/train.h"

namespace bdg::rl {
namespace {

template <typename F>
RlErrc error_code(F&& f) {
  try {
    f();
  } catch (const RlError& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected RlError";
  return RlErrc::InvalidSpec;
}

std::vector<double> random_vector(env::Pcg32& rng, std::size_t n, double scale = 1.0) {
  std::vector<double> v(n);
  for (double& x : v) x = scale * (2.0 * rng.uniform() - 1.0);
  return v;
}

double relative_error(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-6});
}

// ---------------------------------------------------------------- Mlp

TEST(MlpForward, ZeroNetGivesZero) {
  const Mlp net({3, 4, 2});
  EXPECT_EQ(net.forward(std::vector<double>{1.0, -2.0, 3.0}), (std::vector<double>{0.0, 0.0}));
}

TEST(MlpForward, SingleAffineUnit) {
  Mlp net({1, 1});
  net.params() = {2.0, 1.0};
  EXPECT_EQ(net.forward(std::vector<double>{3.0}), std::vector<double>{7.0});
}

TEST(MlpForward, NegativePreActivationIsZeroedByRelu) {
  Mlp net({1, 1, 1});
  // hidden = relu(-1 * x), output = 5 * hidden + 0.5
  net.params() = {-1.0, 0.0, 5.0, 0.5};
  EXPECT_EQ(net.forward(std::vector<double>{2.0}), std::vector<double>{0.5});
  EXPECT_EQ(net.forward(std::vector<double>{-2.0}), std::vector<double>{10.5});
}

TEST(MlpForward, DimensionMismatch) {
  const Mlp net({3, 2});
  EXPECT_EQ(error_code([&] { net.forward(std::vector<double>{1.0}); }), RlErrc::DimensionMismatch);
}

TEST(MlpInit, GlorotRangeAndDeterminism) {
  env::Pcg32 a(1);
  env::Pcg32 b(1);
  const Mlp x({5, 8, 2}, a);
  const Mlp y({5, 8, 2}, b);
  EXPECT_EQ(x, y);
  const double limit = std::sqrt(6.0 / 13.0);
  for (std::size_t k = x.weight_offset(0); k < x.bias_offset(0); ++k) EXPECT_LE(std::abs(x.params()[k]), limit);
  for (std::size_t k = x.bias_offset(0); k < x.weight_offset(1); ++k) EXPECT_EQ(x.params()[k], 0.0);
}

TEST(MlpBackward, ZeroUpstreamGivesZeroGradient) {
  env::Pcg32 rng(2);
  const Mlp net({4, 6, 3}, rng);
  Mlp::Cache cache;
  net.forward(random_vector(rng, 4), cache);
  std::vector<double> grad(net.params().size(), 0.0);
  net.backward(cache, std::vector<double>(3, 0.0), grad);
  for (double g : grad) EXPECT_EQ(g, 0.0);
}

TEST(MlpBackward, SingleUnitChainRule) {
  Mlp net({1, 1});
  net.params() = {2.0, 1.0};
  Mlp::Cache cache;
  net.forward(std::vector<double>{3.0}, cache);
  std::vector<double> grad(2, 0.0);
  net.backward(cache, std::vector<double>{1.0}, grad);
  EXPECT_DOUBLE_EQ(grad[0], 3.0);
  EXPECT_DOUBLE_EQ(grad[1], 1.0);
}

// Oracle: central finite differences of L = c . net(x).
void check_gradients(const std::vector<int>& sizes, std::uint64_t seed) {
  env::Pcg32 rng(seed);
  Mlp net(sizes, rng);
  for (double& p : net.params()) p += 0.1 * (2.0 * rng.uniform() - 1.0);  // non-zero biases too
  const auto x = random_vector(rng, sizes.front());
  const auto c = random_vector(rng, sizes.back());
  const auto loss = [&](const Mlp& m) {
    const auto out = m.forward(x);
    return std::inner_product(out.begin(), out.end(), c.begin(), 0.0);
  };
  Mlp::Cache cache;
  net.forward(x, cache);
  std::vector<double> grad(net.params().size(), 0.0);
  net.backward(cache, c, grad);

  const double h = 1e-5;
  for (std::size_t k = 0; k < net.params().size(); ++k) {
    Mlp plus = net;
    Mlp minus = net;
    plus.params()[k] += h;
    minus.params()[k] -= h;
    const double numeric = (loss(plus) - loss(minus)) / (2.0 * h);
    EXPECT_LT(relative_error(grad[k], numeric), 1e-6)
        << "param " << k << " analytic " << grad[k] << " numeric " << numeric;
  }
}

TEST(MlpBackward, MatchesFiniteDifferences) { check_gradients({5, 8, 2}, 17); }

TEST(MlpBackward, FiniteDifferenceProperty) {
  env::Pcg32 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> sizes{1 + static_cast<int>(rng.below(6))};
    for (std::uint32_t l = rng.below(3); l > 0; --l) sizes.push_back(1 + static_cast<int>(rng.below(8)));
    sizes.push_back(1 + static_cast<int>(rng.below(4)));
    check_gradients(sizes, 1000 + trial);
  }
}

TEST(Argmax, TiesGoToLowestIndex) {
  EXPECT_EQ(argmax(std::vector<double>{1.0, 3.0, 3.0}), 1);
  EXPECT_EQ(argmax(std::vector<double>{0.0, 0.0}), 0);
}

// ---------------------------------------------------------------- Adam

TEST(Adam, FirstStepMovesByLearningRate) {
  Adam adam(1, 0.001);
  std::vector<double> theta{0.0};
  adam.step(theta, std::vector<double>{1.0});
  EXPECT_NEAR(theta[0], -0.001, 1e-10);
  EXPECT_EQ(adam.t, 1);
}

TEST(Adam, ZeroGradientLeavesParameters) {
  Adam adam(2, 0.01);
  std::vector<double> theta{0.5, -0.25};
  adam.step(theta, std::vector<double>{0.0, 0.0});
  EXPECT_EQ(theta, (std::vector<double>{0.5, -0.25}));
}

TEST(Adam, NonFiniteGradientRejected) {
  Adam adam(2, 0.01);
  std::vector<double> theta{1.0, 2.0};
  EXPECT_EQ(error_code([&] { adam.step(theta, std::vector<double>{0.1, std::nan("")}); }),
            RlErrc::NonFiniteGradient);
  EXPECT_EQ(theta, (std::vector<double>{1.0, 2.0}));
  EXPECT_EQ(adam.t, 0);
}

TEST(Epsilon, LinearSchedule) {
  EXPECT_DOUBLE_EQ(epsilon(0), 1.0);
  EXPECT_DOUBLE_EQ(epsilon(50'000), 0.05);
  EXPECT_DOUBLE_EQ(epsilon(25'000), 0.525);
  EXPECT_DOUBLE_EQ(epsilon(1'000'000), 0.05);
}

// ---------------------------------------------------------------- Q-table

TEST(QTableUpdate, Examples) {
  QTable q(2);
  qtable_update(q, {0}, 0, 1.0, {1}, false, 0.1, 0.99);
  EXPECT_DOUBLE_EQ(q.values({0})[0], 0.1);

  QTable q2(2);
  q2.values({0})[1] = 0.5;
  q2.values({1}) = {1.0, 0.0};
  qtable_update(q2, {0}, 1, 0.0, {1}, false, 0.5, 0.9);
  EXPECT_DOUBLE_EQ(q2.values({0})[1], 0.7);

  QTable q3(2);
  q3.values({1}) = {5.0, 5.0};
  qtable_update(q3, {0}, 0, 1.0, {1}, true, 1.0, 0.99);
  EXPECT_DOUBLE_EQ(q3.values({0})[0], 1.0);
}

TEST(QTableUpdate, BoundProperty) {
  env::Pcg32 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const double gamma = 0.99 * rng.uniform();
    const double alpha = 0.01 + 0.99 * rng.uniform();
    const double bound = 1.01 / (1.0 - gamma);
    QTable q(3);
    for (int i = 0; i < 2000; ++i) {
      const StateKey s{static_cast<std::int32_t>(rng.below(6))};
      const StateKey next{static_cast<std::int32_t>(rng.below(6))};
      const double r = -1.0 + 2.01 * rng.uniform();
      qtable_update(q, s, static_cast<int>(rng.below(3)), r, next, rng.below(10) == 0, alpha, gamma);
      for (const auto& [key, values] : q.entries()) {
        for (double v : values) ASSERT_LE(std::abs(v), bound + 1e-12);
      }
    }
  }
}

// Oracle: value iteration on the chain MDP written out directly.
struct ChainOracle {
  int length;
  double gamma;
  std::vector<std::array<double, 2>> q;

  ChainOracle(int n, double g) : length(n), gamma(g), q(n, {0.0, 0.0}) {
    for (int iter = 0; iter < 10'000; ++iter) {
      double change = 0.0;
      for (int s = 0; s + 1 < length; ++s) {
        for (int a = 0; a < 2; ++a) {
          const int next = a == 0 ? std::max(s - 1, 0) : s + 1;
          const bool goal = next == length - 1;
          const double target = goal ? 1.0 : gamma * std::max(q[next][0], q[next][1]);
          change = std::max(change, std::abs(target - q[s][a]));
          q[s][a] = target;
        }
      }
      if (change < 1e-15) break;
    }
  }

  int policy(int s) const { return q[s][1] > q[s][0] ? 1 : 0; }
};

TEST(QTableUpdate, ConvergesToValueIterationOnChain) {
  const int length = 5;
  const double gamma = 0.9;
  const ChainOracle oracle(length, gamma);
  const env::RewardSpec rewards{{{"goal", 1.0}}, 0.0};
  QTable q(2);
  env::ChainEnv chain;
  // Deterministic sweep: every (state, action) pair once per sweep.
  for (int sweep = 0; sweep < 200; ++sweep) {
    for (int s = 0; s + 1 < length; ++s) {
      for (int a = 0; a < 2; ++a) {
        env::EnvConfig config;
        config.env_id = "chain";
        config.set("length", static_cast<double>(length));
        config.set("start", static_cast<double>(s));
        chain.reset(config, 0);
        const auto t = chain.step(env::Action{a});
        const StateKey next{static_cast<std::int32_t>(t.obs.at("state"))};
        qtable_update(q, {s}, a, env::reward_eval(t, rewards), next, t.done, 0.5, gamma);
      }
    }
  }
  double worst = 0.0;
  for (int s = 0; s + 1 < length; ++s) {
    for (int a = 0; a < 2; ++a) worst = std::max(worst, std::abs(q.values({s})[a] - oracle.q[s][a]));
  }
  EXPECT_LE(worst, 1e-3);
}

// ---------------------------------------------------------------- Replay

TEST(ReplayBuffer, KeepsExactlyTheLastCapacityItemsProperty) {
  env::Pcg32 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t capacity = 1 + rng.below(20);
    const std::size_t pushes = capacity + rng.below(50);
    ReplayBuffer buffer(capacity, 2);
    for (std::size_t i = 0; i < pushes; ++i) {
      const double v = static_cast<double>(i);
      buffer.push(std::vector<double>{v, -v}, static_cast<int>(i % 3), v, std::vector<double>{v + 1, 0}, i % 2 == 0);
    }
    ASSERT_EQ(buffer.size(), capacity);
    for (std::size_t k = 0; k < capacity; ++k) {
      const std::size_t slot = buffer.slot(k);
      const double expected = static_cast<double>(pushes - capacity + k);
      EXPECT_EQ(buffer.reward(slot), expected);
      EXPECT_EQ(buffer.features(slot)[1], -expected);
    }
  }
}

TEST(ReplayBuffer, SampleStaysInRange) {
  ReplayBuffer buffer(10, 1);
  for (int i = 0; i < 3; ++i) buffer.push(std::vector<double>{1.0}, 0, 0.0, std::vector<double>{1.0}, false);
  env::Pcg32 rng(1);
  std::vector<std::size_t> slots;
  buffer.sample(100, rng, slots);
  for (auto s : slots) EXPECT_LT(s, 3u);
}

// ---------------------------------------------------------------- DQN

TEST(DqnTrainStep, TerminalTransitionLoss) {
  Mlp net({1, 2});
  const Mlp target = net;
  Adam adam(net.params().size(), 1e-3);
  ReplayBuffer buffer(1, 1);
  buffer.push(std::vector<double>{0.5}, 0, 1.0, std::vector<double>{0.0}, true);
  DqnScratch scratch;
  const std::vector<std::size_t> slots{0};
  EXPECT_DOUBLE_EQ(dqn_train_step(net, target, adam, buffer, slots, 0.99, 10.0, scratch), 1.0);
}

TEST(DqnTrainStep, BellmanFixedPointIsStationary) {
  const double gamma = 0.9;
  const double r = 0.3;
  Mlp net({1, 1});
  net.params() = {0.0, r / (1.0 - gamma)};
  const Mlp target = net;
  Adam adam(net.params().size(), 1e-3);
  ReplayBuffer buffer(4, 1);
  buffer.push(std::vector<double>{0.7}, 0, r, std::vector<double>{-0.2}, false);
  buffer.push(std::vector<double>{0.1}, 0, r, std::vector<double>{0.4}, false);
  DqnScratch scratch;
  const std::vector<std::size_t> slots{0, 1};
  const auto before = net.params();
  EXPECT_NEAR(dqn_train_step(net, target, adam, buffer, slots, gamma, 10.0, scratch), 0.0, 1e-24);
  for (std::size_t k = 0; k < before.size(); ++k) EXPECT_NEAR(net.params()[k], before[k], 1e-15);
}

TEST(DqnTrainStep, LossFallsOnFrozenBatch) {
  env::Pcg32 rng(4);
  Mlp net({3, 16, 2}, rng);
  const Mlp target = net;
  Adam adam(net.params().size(), 1e-2);
  ReplayBuffer buffer(32, 3);
  for (int i = 0; i < 32; ++i) {
    buffer.push(random_vector(rng, 3), static_cast<int>(rng.below(2)), rng.uniform(), random_vector(rng, 3),
                rng.below(4) == 0);
  }
  std::vector<std::size_t> slots(32);
  std::iota(slots.begin(), slots.end(), std::size_t{0});
  DqnScratch scratch;
  const double first = dqn_loss(net, target, buffer, slots, 0.9);
  for (int i = 0; i < 100; ++i) dqn_train_step(net, target, adam, buffer, slots, 0.9, 10.0, scratch);
  const double last = dqn_loss(net, target, buffer, slots, 0.9);
  EXPECT_LT(last, 0.5 * first);
}

TEST(DqnTrainStep, GradientMatchesFiniteDifferences) {
  env::Pcg32 rng(6);
  Mlp net({3, 5, 2}, rng);
  env::Pcg32 rng2(7);
  const Mlp target({3, 5, 2}, rng2);
  ReplayBuffer buffer(8, 3);
  for (int i = 0; i < 8; ++i) {
    buffer.push(random_vector(rng, 3), static_cast<int>(rng.below(2)), rng.uniform(), random_vector(rng, 3),
                rng.below(3) == 0);
  }
  std::vector<std::size_t> slots(8);
  std::iota(slots.begin(), slots.end(), std::size_t{0});
  // scratch.grad keeps the unclipped gradient; the tiny learning rate makes the step irrelevant.
  DqnScratch scratch;
  Adam adam(net.params().size(), 1e-12);
  const Mlp original = net;
  dqn_train_step(net, target, adam, buffer, slots, 0.9, 1e9, scratch);
  const double h = 1e-5;
  for (std::size_t k = 0; k < original.params().size(); ++k) {
    Mlp plus = original;
    Mlp minus = original;
    plus.params()[k] += h;
    minus.params()[k] -= h;
    const double numeric =
        (dqn_loss(plus, target, buffer, slots, 0.9) - dqn_loss(minus, target, buffer, slots, 0.9)) / (2.0 * h);
    EXPECT_LT(relative_error(scratch.grad[k], numeric), 1e-6) << k;
  }
}

// ---------------------------------------------------------------- PPO math

TEST(Gae, Examples) {
  const std::vector<double> rewards{1.0};
  const std::vector<double> values{0.5, 1.0};
  auto r = gae(rewards, values, std::vector<std::uint8_t>{0}, 0.99, 0.95);
  EXPECT_NEAR(r.advantages[0], 1.49, 1e-12);
  EXPECT_NEAR(r.returns[0], 1.99, 1e-12);
  r = gae(rewards, values, std::vector<std::uint8_t>{1}, 0.99, 0.95);
  EXPECT_NEAR(r.advantages[0], 0.5, 1e-12);
}

TEST(Gae, LambdaZeroIsOneStepTd) {
  const std::vector<double> rewards{1.0, -0.5};
  const std::vector<double> values{0.2, 0.4, 0.8};
  const auto r = gae(rewards, values, std::vector<std::uint8_t>{0, 0}, 0.9, 0.0);
  EXPECT_NEAR(r.advantages[0], 1.0 + 0.9 * 0.4 - 0.2, 1e-12);
  EXPECT_NEAR(r.advantages[1], -0.5 + 0.9 * 0.8 - 0.4, 1e-12);
}

TEST(Gae, LengthMismatch) {
  EXPECT_EQ(error_code([] {
              gae(std::vector<double>{1.0}, std::vector<double>{1.0}, std::vector<std::uint8_t>{0}, 0.9, 0.9);
            }),
            RlErrc::LengthMismatch);
}

TEST(Gae, LambdaOneTelescopesProperty) {
  env::Pcg32 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(40);
    const double gamma = rng.uniform();
    const auto rewards = random_vector(rng, n, 2.0);
    const auto values = random_vector(rng, n + 1, 3.0);
    std::vector<std::uint8_t> dones(n);
    for (auto& d : dones) d = rng.below(6) == 0;
    const auto result = gae(rewards, values, dones, gamma, 1.0);
    for (std::size_t t = 0; t < n; ++t) {
      // Discounted return to the end of the episode (or rollout) plus bootstrap, minus V_t.
      double ret = 0.0;
      double discount = 1.0;
      std::size_t k = t;
      for (; k < n; ++k) {
        ret += discount * rewards[k];
        discount *= gamma;
        if (dones[k]) break;
      }
      if (k == n) ret += discount * values[n];
      EXPECT_NEAR(result.advantages[t], ret - values[t], 1e-10);
    }
  }
}

TEST(ClippedSurrogate, Examples) {
  EXPECT_DOUBLE_EQ(clipped_surrogate(1.5, 1.0, 0.2), 1.2);
  EXPECT_DOUBLE_EQ(clipped_surrogate(0.5, -1.0, 0.2), -0.8);
  EXPECT_DOUBLE_EQ(clipped_surrogate(1.0, 0.3, 0.2), 0.3);
}

TEST(ClippedSurrogate, NeverExceedsUnclippedProperty) {
  env::Pcg32 rng(13);
  for (int i = 0; i < 10'000; ++i) {
    const double ratio = 3.0 * rng.uniform();
    const double adv = 4.0 * rng.uniform() - 2.0;
    const double eps = 0.5 * rng.uniform();
    EXPECT_LE(clipped_surrogate(ratio, adv, eps), ratio * adv);
  }
}

TEST(Softmax, NormalisedAndConsistentWithLogSoftmaxProperty) {
  env::Pcg32 rng(14);
  for (int i = 0; i < 2000; ++i) {
    const auto logits = random_vector(rng, 1 + rng.below(6), 50.0);
    const auto p = softmax(logits);
    const auto logp = log_softmax(logits);
    EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12);
    for (std::size_t k = 0; k < p.size(); ++k) EXPECT_NEAR(std::exp(logp[k]), p[k], 1e-12);
  }
}

Rollout random_rollout(env::Pcg32& rng, const Mlp& policy, std::size_t n, double logp_jitter) {
  Rollout r;
  r.dim = static_cast<std::size_t>(policy.input_size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = random_vector(rng, r.dim);
    const auto logp = log_softmax(policy.forward(x));
    const int a = static_cast<int>(rng.below(static_cast<std::uint32_t>(policy.output_size())));
    r.features.insert(r.features.end(), x.begin(), x.end());
    r.actions.push_back(a);
    r.log_probs.push_back(logp[a] + logp_jitter * (2.0 * rng.uniform() - 1.0));
    r.rewards.push_back(rng.uniform());
    r.dones.push_back(rng.below(5) == 0);
  }
  r.values = random_vector(rng, n + 1);
  return r;
}

TEST(PpoObjective, GradientsMatchFiniteDifferences) {
  env::Pcg32 rng(21);
  Mlp policy({3, 6, 3}, rng);
  Mlp value({3, 6, 1}, rng);
  const auto rollout = random_rollout(rng, policy, 12, 0.5);
  const auto advantages = random_vector(rng, 12);
  const auto returns = random_vector(rng, 12);
  std::vector<std::size_t> indices(12);
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  Hyperparameters hp = Hyperparameters::defaults(Algorithm::Ppo);

  std::vector<double> pgrad(policy.params().size(), 0.0);
  std::vector<double> vgrad(value.params().size(), 0.0);
  ppo_objective(policy, value, rollout, indices, advantages, returns, hp, &pgrad, &vgrad);
  const auto objective = [&](const Mlp& p, const Mlp& v) {
    return ppo_objective(p, v, rollout, indices, advantages, returns, hp, nullptr, nullptr);
  };
  const double h = 1e-6;
  for (std::size_t k = 0; k < policy.params().size(); ++k) {
    Mlp plus = policy;
    Mlp minus = policy;
    plus.params()[k] += h;
    minus.params()[k] -= h;
    const double numeric = (objective(plus, value) - objective(minus, value)) / (2.0 * h);
    EXPECT_LT(relative_error(pgrad[k], numeric), 1e-5) << "policy " << k;
  }
  for (std::size_t k = 0; k < value.params().size(); ++k) {
    Mlp plus = value;
    Mlp minus = value;
    plus.params()[k] += h;
    minus.params()[k] -= h;
    const double numeric = (objective(policy, plus) - objective(policy, minus)) / (2.0 * h);
    EXPECT_LT(relative_error(vgrad[k], numeric), 1e-6) << "value " << k;
  }
}

TEST(PpoObjective, UnchangedPolicyGivesMeanAdvantage) {
  env::Pcg32 rng(22);
  const Mlp policy({2, 4, 2}, rng);
  const Mlp value({2, 4, 1}, rng);
  const auto rollout = random_rollout(rng, policy, 20, 0.0);
  auto advantages = random_vector(rng, 20);
  const double mean = std::accumulate(advantages.begin(), advantages.end(), 0.0) / 20.0;
  for (double& a : advantages) a -= mean;
  std::vector<std::size_t> indices(20);
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  PpoStats stats;
  ppo_objective(policy, value, rollout, indices, advantages, random_vector(rng, 20),
                Hyperparameters::defaults(Algorithm::Ppo), nullptr, nullptr, &stats);
  EXPECT_NEAR(stats.policy_loss, 0.0, 1e-12);
}

TEST(PpoUpdate, ImprovesSurrogateOnFixedRollout) {
  env::Pcg32 rng(23);
  Mlp policy({2, 8, 2}, rng);
  Mlp value({2, 8, 1}, rng);
  Rollout rollout = random_rollout(rng, policy, 128, 0.0);
  // Reward action 1 only.
  for (std::size_t i = 0; i < rollout.size(); ++i) rollout.rewards[i] = rollout.actions[i] == 1 ? 1.0 : 0.0;
  std::fill(rollout.dones.begin(), rollout.dones.end(), 1);
  Hyperparameters hp = Hyperparameters::defaults(Algorithm::Ppo);
  hp.learning_rate = 1e-2;
  Adam pa(policy.params().size(), hp.learning_rate);
  Adam va(value.params().size(), hp.learning_rate);
  const auto p_before = softmax(policy.forward(std::vector<double>{0.0, 0.0}));
  for (int i = 0; i < 5; ++i) ppo_update(policy, value, pa, va, rollout, hp, rng);
  const auto p_after = softmax(policy.forward(std::vector<double>{0.0, 0.0}));
  EXPECT_GT(p_after[1], p_before[1]);
}

// ---------------------------------------------------------------- Specs

TEST(Hyperparameters, SetAndValidate) {
  auto hp = Hyperparameters::defaults(Algorithm::Dqn);
  EXPECT_DOUBLE_EQ(hp.learning_rate, 1e-3);
  EXPECT_DOUBLE_EQ(Hyperparameters::defaults(Algorithm::Ppo).learning_rate, 3e-4);
  hp.set("gamma", 0.5);
  hp.set("batch_size", 32);
  EXPECT_DOUBLE_EQ(hp.gamma, 0.5);
  EXPECT_EQ(hp.batch_size, 32);
  EXPECT_EQ(error_code([&] { hp.set("warp_factor", 9); }), RlErrc::InvalidSpec);
  EXPECT_EQ(error_code([&] { hp.set("batch_size", 2.5); }), RlErrc::InvalidSpec);
  hp.gamma = 1.0;
  EXPECT_EQ(error_code([&] { hp.validate(); }), RlErrc::InvalidSpec);
}

TEST(TrainerRegistry, Defaults) {
  const auto registry = TrainerRegistry::with_defaults();
  EXPECT_EQ(registry.ids(), (std::vector<std::string>{"dqn_default", "ppo_default", "qtable_default"}));
  const auto& dqn = registry.at("dqn_default");
  EXPECT_EQ(dqn.algorithm, Algorithm::Dqn);
  EXPECT_EQ(dqn.budget, 500'000);
  EXPECT_EQ(dqn.hp.hidden, (std::vector<int>{64, 64}));
  EXPECT_EQ(dqn.hp.buffer_capacity, 100'000);
  EXPECT_EQ(registry.at("ppo_default").hp.rollout, 2048);
  EXPECT_EQ(registry.at("qtable_default").budget, 200'000);
  EXPECT_EQ(error_code([&] { registry.at("sarsa"); }), RlErrc::UnknownTrainer);
}

// ---------------------------------------------------------------- train()

TrainContext chain_context(std::uint64_t seed) {
  const auto entry = env::chain_entry();
  TrainContext context;
  context.make_env = entry.factory;
  context.config.env_id = "chain";
  context.config.set("length", 5.0);
  context.config.episode_cap = 100;
  context.features = entry.default_features;
  context.rewards = entry.default_rewards;
  context.bins = entry.default_bins;
  context.success = [](const env::EpisodeRecord& r) { return r.count("goal") >= 1; };
  context.seed = seed;
  return context;
}

TEST(Train, BudgetOfOneStep) {
  auto spec = TrainerSpec::defaults("q", Algorithm::QTable);
  spec.budget = 1;
  const auto result = train(chain_context(1), spec);
  EXPECT_EQ(result.stats.env_steps, 1);
  EXPECT_LE(result.stats.updates, 1);
  ASSERT_EQ(result.stats.epochs.size(), 1u);
  EXPECT_EQ(result.model.algorithm(), Algorithm::QTable);
}

TEST(Train, QTableMatchesValueIterationPolicyOnChain) {
  auto spec = TrainerSpec::defaults("q", Algorithm::QTable);
  spec.hp.gamma = 0.9;
  spec.budget = 20'000;
  spec.probe_interval = 20'000;  // no early stop: learn values everywhere
  const auto result = train(chain_context(5), spec);
  const ChainOracle oracle(5, 0.9);
  for (int s = 0; s < 4; ++s) {
    EXPECT_EQ(result.model.greedy_action_features(std::vector<double>{static_cast<double>(s)}), oracle.policy(s))
        << "state " << s;
  }
  const auto& table = std::get<QTableModel>(result.model.body).table;
  for (int s = 0; s < 4; ++s) {
    for (int a = 0; a < 2; ++a) EXPECT_NEAR(table.values({s})[a], oracle.q[s][a], 1e-3) << s << "," << a;
  }
}

TEST(Train, DeterministicForFixedSeed) {
  for (const auto algorithm : {Algorithm::QTable, Algorithm::Dqn, Algorithm::Ppo}) {
    auto spec = TrainerSpec::defaults("t", algorithm);
    spec.budget = 1500;
    spec.probe_interval = 500;
    spec.hp.hidden = {8};
    spec.hp.learning_starts = 100;
    spec.hp.rollout = 256;
    auto context = chain_context(77);
    context.threshold = 1.1;  // never stop early
    const auto a = train(context, spec);
    const auto b = train(context, spec);
    EXPECT_EQ(a.model, b.model) << algorithm_name(algorithm);
    EXPECT_EQ(a.stats.env_steps, b.stats.env_steps);
    EXPECT_EQ(a.stats.updates, b.stats.updates);
    ASSERT_EQ(a.stats.epochs.size(), b.stats.epochs.size());
    for (std::size_t i = 0; i < a.stats.epochs.size(); ++i) {
      EXPECT_EQ(a.stats.epochs[i].env_steps, b.stats.epochs[i].env_steps);
      EXPECT_EQ(a.stats.epochs[i].mean_return, b.stats.epochs[i].mean_return);
    }
  }
}

TEST(Train, EarlyStopWhenProbeReachesThreshold) {
  for (const auto algorithm : {Algorithm::QTable, Algorithm::Dqn, Algorithm::Ppo}) {
    auto spec = TrainerSpec::defaults("t", algorithm);
    spec.budget = 60'000;
    spec.probe_interval = 1000;
    spec.hp.hidden = {16};
    spec.hp.learning_starts = 200;
    spec.hp.epsilon_steps = 3000;
    spec.hp.rollout = 512;
    spec.hp.learning_rate = algorithm == Algorithm::Ppo ? 3e-3 : 1e-3;
    const auto result = train(chain_context(3), spec);
    EXPECT_TRUE(result.stats.reached_threshold) << algorithm_name(algorithm);
    EXPECT_LT(result.stats.env_steps, spec.budget) << algorithm_name(algorithm);
    EXPECT_DOUBLE_EQ(result.stats.best_probe_success, 1.0);
    for (std::size_t i = 1; i < result.stats.epochs.size(); ++i) {
      EXPECT_GT(result.stats.epochs[i].env_steps, result.stats.epochs[i - 1].env_steps);
    }
  }
}

TEST(Train, InvalidSpecRejected) {
  auto spec = TrainerSpec::defaults("t", Algorithm::Dqn);
  spec.budget = 0;
  EXPECT_EQ(error_code([&] { train(chain_context(1), spec); }), RlErrc::InvalidSpec);
}

}  // namespace
}  // namespace bdg::rl
