#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "tacgrasp/errors.hpp"
#include "tacgrasp/nn/adam.hpp"
#include "tacgrasp/nn/checkpoint.hpp"
#include "tacgrasp/nn/gaussian.hpp"
#include "tacgrasp/nn/mlp.hpp"
#include "tacgrasp/nn/normalizer.hpp"

namespace tacgrasp::nn {
namespace {

Eigen::MatrixXd random_matrix(Eigen::Index r, Eigen::Index c, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = n(rng);
  return m;
}

TEST(Forward, ZeroNetwork) {
  ActorCritic net({5, {8, 8}, 3});
  const PolicyOutput out = net.forward(Eigen::VectorXd::LinSpaced(5, -1, 1));
  EXPECT_EQ(out.mean, Eigen::VectorXd::Zero(3));
  EXPECT_EQ(out.value, 0.0);
  EXPECT_EQ(out.std, Eigen::VectorXd::Ones(3));
  net.log_std().setConstant(-0.7);
  EXPECT_EQ(net.forward(Eigen::VectorXd::Ones(5)).std, Eigen::VectorXd::Constant(3, std::exp(-0.7)));
}

TEST(Forward, IdentityLayerPassesInputThrough) {
  ActorCritic net({4, {}, 4, Activation::kIdentity});
  net.weight(net.policy_layers()[0]) = Eigen::MatrixXd::Identity(4, 4);
  const Eigen::VectorXd obs(Eigen::Vector4d(0.3, -2.0, 7.5, 0.0));
  EXPECT_EQ(net.forward(obs).mean, obs);
}

TEST(Forward, Deterministic) {
  const ActorCritic a = ActorCritic::initialized({6, {16, 16}, 2}, 11);
  const ActorCritic b = ActorCritic::initialized({6, {16, 16}, 2}, 11);
  EXPECT_EQ(a.params(), b.params());
  const Eigen::VectorXd obs = Eigen::VectorXd::LinSpaced(6, -0.5, 0.9);
  const PolicyOutput x = a.forward(obs);
  const PolicyOutput y = a.forward(obs);
  EXPECT_EQ(x.mean, y.mean);
  EXPECT_EQ(x.value, y.value);
  EXPECT_EQ(x.mean, b.forward(obs).mean);
}

TEST(Forward, DimensionMismatchThrows) {
  const ActorCritic net({6, {4}, 2});
  EXPECT_THROW(net.forward(Eigen::VectorXd::Zero(5)), ArgumentError);
  EXPECT_THROW(net.forward_batch(Eigen::MatrixXd::Zero(7, 3)), ArgumentError);
}

TEST(Forward, BatchMatchesSingle) {
  std::mt19937_64 rng(2);
  const ActorCritic net = ActorCritic::initialized({5, {12, 7}, 3}, 4);
  const Eigen::MatrixXd obs = random_matrix(5, 9, rng);
  const ForwardCache cache = net.forward_batch(obs);
  for (int j = 0; j < 9; ++j) {
    const PolicyOutput o = net.forward(obs.col(j));
    EXPECT_LT((o.mean - cache.mean().col(j)).norm(), 1e-14);
    EXPECT_NEAR(o.value, cache.values()(0, j), 1e-14);
  }
}

TEST(Initialization, HiddenWeightsAreScaledOrthogonal) {
  const ActorCritic net = ActorCritic::initialized({10, {32, 32}, 4}, 3);
  const Eigen::MatrixXd w = net.weight(net.policy_layers()[0]);  // 32 x 10
  EXPECT_LT((w.transpose() * w - 2.0 * Eigen::MatrixXd::Identity(10, 10)).norm(), 1e-10);
  const Eigen::MatrixXd head = net.weight(net.policy_layers().back());  // 4 x 32
  EXPECT_LT((head * head.transpose() - 1e-4 * Eigen::MatrixXd::Identity(4, 4)).norm(), 1e-12);
}

TEST(LogProb, ClosedFormValues) {
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(1), one = Eigen::VectorXd::Ones(1);
  EXPECT_NEAR(log_prob(zero, one, zero), -0.9189385332046727, 1e-12);
  EXPECT_NEAR(log_prob(zero, one, one), -0.9189385332046727 - 0.5, 1e-12);
  EXPECT_NEAR(log_prob(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Ones(2), Eigen::VectorXd::Zero(2)),
              2 * -0.9189385332046727, 1e-12);
}

TEST(LogProb, IntegratesToOne) {
  for (double s : {0.5, 1.0, 2.0}) {
    const int n = 20001;
    const double lo = -10 * s, hi = 10 * s, h = (hi - lo) / (n - 1);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd a(1);
      a << lo + i * h;
      total += std::exp(log_prob(Eigen::VectorXd::Constant(1, 0.3), Eigen::VectorXd::Constant(1, s), a)) * h;
    }
    EXPECT_NEAR(total, 1.0, 0.01) << "std " << s;
  }
}

TEST(Entropy, ClosedForm) {
  const Eigen::VectorXd log_std(Eigen::Vector3d(-1.0, 0.0, 0.5));
  const double expected = log_std.sum() + 3 * 0.5 * std::log(2 * std::numbers::pi * std::numbers::e);
  EXPECT_NEAR(entropy(log_std), expected, 1e-12);
}

TEST(Backward, ConstantLossHasZeroGradient) {
  std::mt19937_64 rng(1);
  const ActorCritic net = ActorCritic::initialized({4, {8}, 2}, 1);
  const ForwardCache cache = net.forward_batch(random_matrix(4, 5, rng));
  const GradientBuffer g = net.backward(
      cache, {Eigen::MatrixXd::Zero(2, 5), Eigen::MatrixXd::Zero(1, 5), Eigen::VectorXd::Zero(2)});
  EXPECT_EQ(g.grad.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Backward, LinearSquaredError) {
  std::mt19937_64 rng(8);
  ActorCritic net({3, {}, 2, Activation::kIdentity});
  net.params() = random_matrix(net.param_count(), 1, rng);
  const Eigen::VectorXd x = random_matrix(3, 1, rng);
  const Eigen::VectorXd y = random_matrix(2, 1, rng);
  const ForwardCache cache = net.forward_batch(x);
  const Eigen::VectorXd residual = cache.mean().col(0) - y;
  const GradientBuffer g = net.backward(
      cache, {2.0 * residual, Eigen::MatrixXd::Zero(1, 1), Eigen::VectorXd::Zero(2)});
  const DenseLayer& l = net.policy_layers()[0];
  const Eigen::MatrixXd dw = Eigen::Map<const Eigen::MatrixXd>(g.grad.data() + l.offset, 2, 3);
  EXPECT_LT((dw - 2.0 * residual * x.transpose()).norm(), 1e-14);
}

// Scalar test loss whose output gradients are known in closed form.
struct TestLoss {
  Eigen::MatrixXd c;       // linear weight on the mean
  Eigen::MatrixXd target;  // value regression target
  Eigen::VectorXd g;       // linear weight on log_std

  double operator()(const ActorCritic& net, const Eigen::MatrixXd& obs) const {
    const ForwardCache f = net.forward_batch(obs);
    return (c.array() * f.mean().array()).sum() + 0.3 * f.mean().squaredNorm() +
           (f.values() - target).squaredNorm() + g.dot(net.log_std());
  }
  OutputGradients grads(const ActorCritic&, const ForwardCache& f) const {
    return {c + 0.6 * f.mean(), 2.0 * (f.values() - target), g};
  }
};

double max_relative_error(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> width(1, 32), depth(0, 2), io(1, 6);
  MlpShape shape;
  shape.obs_dim = io(rng);
  shape.action_dim = io(rng);
  shape.hidden.resize(depth(rng));
  for (int& h : shape.hidden) h = width(rng);
  ActorCritic net = ActorCritic::initialized(shape, seed, -0.3);
  net.params() += 0.1 * random_matrix(net.param_count(), 1, rng);
  const int batch = 3;
  const Eigen::MatrixXd obs = random_matrix(shape.obs_dim, batch, rng);
  const TestLoss loss{random_matrix(shape.action_dim, batch, rng), random_matrix(1, batch, rng),
                      random_matrix(shape.action_dim, 1, rng)};
  const ForwardCache cache = net.forward_batch(obs);
  const Eigen::VectorXd analytic = net.backward(cache, loss.grads(net, cache)).grad;

  const double h = 1e-5;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < net.param_count(); ++i) {
    const double keep = net.params()[i];
    net.params()[i] = keep + h;
    const double up = loss(net, obs);
    net.params()[i] = keep - h;
    const double down = loss(net, obs);
    net.params()[i] = keep;
    const double numeric = (up - down) / (2 * h);
    const double scale = std::max({std::abs(analytic[i]), std::abs(numeric), 1e-6});
    worst = std::max(worst, std::abs(analytic[i] - numeric) / scale);
  }
  return worst;
}

TEST(Backward, MatchesCentralDifferences) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    EXPECT_LT(max_relative_error(seed), 1e-4) << "seed " << seed;
  }
}

TEST(Adam, ZeroGradientLeavesParams) {
  Eigen::VectorXd p = Eigen::VectorXd::LinSpaced(5, -1, 1);
  const Eigen::VectorXd before = p;
  GradientBuffer g{Eigen::VectorXd::Zero(5), 1};
  AdamState s = AdamState::zeros(5);
  adam_update(p, g, s, 1e-3);
  EXPECT_EQ(p, before);
}

TEST(Adam, FirstStepMovesByLearningRate) {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(4);
  GradientBuffer g{Eigen::Vector4d(0.5, -3.0, 1e-2, 40.0), 1};
  AdamState s = AdamState::zeros(4);
  adam_update(p, g, s, 1e-3);
  EXPECT_NEAR(p[0], -1e-3, 1e-9);
  EXPECT_NEAR(p[1], 1e-3, 1e-9);
  EXPECT_NEAR(p[2], -1e-3, 1e-8);
  EXPECT_NEAR(p[3], -1e-3, 1e-9);
  EXPECT_EQ(g.grad, Eigen::VectorXd::Zero(4));
  EXPECT_EQ(g.count, 0);
}

TEST(Adam, Deterministic) {
  const Eigen::VectorXd grad = Eigen::VectorXd::LinSpaced(6, -2, 3);
  auto run = [&] {
    Eigen::VectorXd p = Eigen::VectorXd::Ones(6);
    AdamState s = AdamState::zeros(6);
    for (int i = 0; i < 5; ++i) {
      GradientBuffer g{grad * (i + 1), 1};
      adam_update(p, g, s, 1e-2);
    }
    return p;
  };
  EXPECT_EQ(run(), run());
}

TEST(Normalizer, ChunkedUpdatesMatchWholeBatch) {
  std::mt19937_64 rng(3);
  Eigen::MatrixXd data = random_matrix(4, 300, rng);
  data.row(1) = data.row(1) * 50.0 + Eigen::RowVectorXd::Constant(300, 7.0);
  RunningMeanStd whole(4), chunked(4);
  whole.update(data);
  for (int i = 0; i < 300; i += 37) chunked.update(data.middleCols(i, std::min(37, 300 - i)));
  const Eigen::VectorXd mean = data.rowwise().mean();
  const Eigen::VectorXd var = (data.colwise() - mean).array().square().rowwise().mean();
  EXPECT_LT((whole.mean - mean).norm(), 1e-12);
  EXPECT_LT((chunked.mean - mean).norm(), 1e-10);
  EXPECT_LT((chunked.var - var).cwiseQuotient(var).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_EQ(chunked.count, 300);
  const Eigen::VectorXd far = Eigen::VectorXd::Constant(4, 1e6);
  EXPECT_EQ(whole.normalize(far), Eigen::VectorXd::Constant(4, 10.0));
}

TEST(Checkpoint, RoundTripAndShapeChecks) {
  Checkpoint c{ActorCritic::initialized({7, {5, 3}, 2}, 9, -0.2), RunningMeanStd(7), 1234,
               {{"condition", "te"}}};
  c.obs_norm.mean.setConstant(0.25);
  const Checkpoint back = checkpoint_from_json(checkpoint_to_json(c));
  EXPECT_EQ(back.net.shape(), c.net.shape());
  EXPECT_EQ(back.net.params(), c.net.params());
  EXPECT_EQ(back.obs_norm.mean, c.obs_norm.mean);
  EXPECT_EQ(back.step, 1234);
  EXPECT_EQ(back.metadata["condition"], "te");

  nlohmann::json bad = checkpoint_to_json(c);
  bad["shape"]["obs_dim"] = 8;
  EXPECT_THROW(checkpoint_from_json(bad), ConfigError);
  bad = checkpoint_to_json(c);
  bad["params"].erase(0);
  EXPECT_THROW(checkpoint_from_json(bad), ConfigError);
  bad = checkpoint_to_json(c);
  bad["version"] = 99;
  EXPECT_THROW(checkpoint_from_json(bad), ConfigError);
}

}  // namespace
}  // namespace tacgrasp::nn
