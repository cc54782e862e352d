#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include <Eigen/Dense>

#include "boundlab/nn/weights_csv.hpp"
#include "boundlab/prefit/prefit.hpp"
#include "boundlab/random.hpp"

using namespace boundlab;
using namespace boundlab::prefit;

namespace {

PrefitDataset synthetic(int in, int out, int rows, int train, Rng& rng) {
  PrefitDataset d;
  d.observations.resize(in, rows);
  d.labels.resize(out, rows);
  for (int j = 0; j < rows; ++j)
    for (int i = 0; i < in; ++i) d.observations(i, j) = symmetric(rng, 1.0);
  d.train_rows = train;
  return d;
}

CollectConfig small_collect(int steps) {
  CollectConfig c;
  c.control_steps = steps;
  c.episode_steps = 150;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("schedule defaults and validation") {
  const auto s = TrainingSchedule::standard();
  REQUIRE(s.phases.size() == 3);
  CHECK(s.phases[0].kind == nn::OptimizerKind::Sgd);
  CHECK(s.phases[0].learning_rate == 1e-2);
  CHECK(s.phases[1].kind == nn::OptimizerKind::Adam);
  CHECK(s.phases[1].learning_rate == 1e-3);
  CHECK(s.phases[2].learning_rate == 1e-4);
  CHECK(s.total_iterations() == 1500);
  TrainingSchedule bad{{{nn::OptimizerKind::Adam, 1e-3, 0}}};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  CHECK_THROWS_AS(TrainingSchedule{}.validate(), ConfigError);
}

TEST_CASE("evaluate_mse by hand") {
  nn::Mlp net(nn::MlpSpec{{2, 2, 2}});
  net.weight(1) << 1, 0, 0, 1;
  net.weight(0) << 0.5, 0, 0, -0.25;
  net.bias(1) << 0.1, -0.2;
  Eigen::MatrixXd x(2, 1), y(2, 1);
  x << 0.4, 0.8;
  y << 0.0, 0.0;
  const double o0 = std::tanh(0.2) + 0.1;
  const double o1 = std::tanh(-0.2) - 0.2;
  CHECK(evaluate_mse(net, x, y) == doctest::Approx((o0 * o0 + o1 * o1) / 2).epsilon(1e-14));

  Rng rng(4);
  Eigen::MatrixXd X(2, 9), Y(2, 9);
  for (int j = 0; j < 9; ++j)
    for (int i = 0; i < 2; ++i) X(i, j) = symmetric(rng, 1), Y(i, j) = symmetric(rng, 1);
  CHECK(evaluate_mse(net, X, net.forward_batch(X)) == 0.0);
  std::vector<int> perm(9);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Eigen::MatrixXd Xp(2, 9), Yp(2, 9);
  for (int j = 0; j < 9; ++j) Xp.col(j) = X.col(perm[j]), Yp.col(j) = Y.col(perm[j]);
  CHECK(evaluate_mse(net, Xp, Yp) == doctest::Approx(evaluate_mse(net, X, Y)).epsilon(1e-14));
}

TEST_CASE("prefit learns a constant through the bias") {
  Rng rng(1);
  auto d = synthetic(5, 3, 200, 180, rng);
  for (int j = 0; j < 200; ++j) d.labels.col(j) = Eigen::Vector3d(0.3, -1.2, 0.05);
  PrefitConfig cfg;
  Rng init_rng(5);
  auto init = nn::Mlp::random(nn::MlpSpec{{5, 8, 3}}, init_rng);
  init.weight(1).setZero();
  const auto r = run_prefit(d, init.spec(), cfg, &init);
  CHECK(r.train_loss.size() == 1500);
  CHECK(r.final_train_mse < 1e-6);
  CHECK(r.final_validation_mse < 1e-6);
  CHECK(r.phase_validation_mse.size() == 3);
}

TEST_CASE("prefit on an affine target reaches the least-squares solution") {
  Rng rng(9);
  auto d = synthetic(4, 2, 300, 300, rng);
  Eigen::MatrixXd A(2, 4);
  A << 0.5, -1.0, 0.25, 2.0, -0.3, 0.1, 0.7, 0.0;
  const Eigen::Vector2d c(0.2, -0.4);
  d.labels = (A * d.observations).colwise() + c;
  d.labels += 0.05 * Eigen::MatrixXd::NullaryExpr(2, 300, [&]() { return symmetric(rng, 1.0); });

  // normal equations on [x; 1]
  Eigen::MatrixXd Xa(5, 300);
  Xa << d.observations, Eigen::RowVectorXd::Ones(300);
  const Eigen::MatrixXd sol = (Xa * Xa.transpose()).ldlt().solve(Xa * d.labels.transpose());
  const Eigen::MatrixXd residual = d.labels - sol.transpose() * Xa;
  const double floor = residual.squaredNorm() / residual.size();

  PrefitConfig cfg;
  cfg.schedule = TrainingSchedule{{{nn::OptimizerKind::Sgd, 0.5, 3000}}};
  const auto r = run_prefit(d, nn::MlpSpec{{4, 2}}, cfg);
  CHECK(r.final_train_mse == doctest::Approx(floor).epsilon(1e-10));
  CHECK((r.net.weight(0) - sol.topRows(4).transpose()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((r.net.bias(0) - sol.row(4).transpose()).cwiseAbs().maxCoeff() < 1e-10);

  // exact affine labels: the residual goes to rounding level
  d.labels = (A * d.observations).colwise() + c;
  const auto exact = run_prefit(d, nn::MlpSpec{{4, 2}}, cfg);
  CHECK(exact.final_train_mse < 1e-28);
}

TEST_CASE("prefit input standardization is folded into the first layer") {
  Rng rng(13);
  auto d = synthetic(3, 1, 120, 100, rng);
  d.observations.row(0) = d.observations.row(0) * 50.0 + Eigen::RowVectorXd::Constant(120, 7.0);
  for (int j = 0; j < 120; ++j) d.labels(0, j) = std::sin(d.observations(1, j)) + 0.01 * d.observations(0, j);
  PrefitConfig cfg;
  cfg.standardize_inputs = true;
  cfg.schedule = TrainingSchedule{{{nn::OptimizerKind::Adam, 1e-2, 300}}};
  const auto r = run_prefit(d, nn::MlpSpec{{3, 16, 1}}, cfg);
  // the folded net reports the same MSE on raw inputs
  CHECK(evaluate_mse(r.net, d.train_observations(), d.train_labels()) ==
        doctest::Approx(r.final_train_mse).epsilon(1e-12));
  CHECK(r.final_train_mse < 0.01);
}

TEST_CASE("prefit minibatch mode and divergence") {
  Rng rng(17);
  auto d = synthetic(3, 2, 64, 60, rng);
  d.labels = d.observations.topRows(2) * 0.5;
  PrefitConfig cfg;
  cfg.minibatch = 16;
  cfg.schedule = TrainingSchedule{{{nn::OptimizerKind::Adam, 1e-2, 400}}};
  const auto r = run_prefit(d, nn::MlpSpec{{3, 8, 2}}, cfg);
  CHECK(r.final_train_mse < 1e-3);
  const auto again = run_prefit(d, nn::MlpSpec{{3, 8, 2}}, cfg);
  CHECK(again.net.parameters() == r.net.parameters());

  d.labels(0, 3) = std::nan("");
  cfg.minibatch = 0;
  CHECK_THROWS_AS(run_prefit(d, nn::MlpSpec{{3, 8, 2}}, cfg), PrefitDiverged);

  CHECK_THROWS_AS(run_prefit(d, nn::MlpSpec{{4, 8, 2}}, cfg), DimensionError);
}

TEST_CASE("collected SLIP dataset shape, labels and split") {
  const auto model = sim::RobotModel::jueying_mini();
  const auto terrain = sim::Terrain::flat();
  const auto cfg = small_collect(1000);
  const auto d = collect_dataset(cfg, 3, model, terrain, sim::ContactParams{});
  CHECK(d.rows() == 1000);
  CHECK(d.row_width() == 46);
  CHECK(d.train_rows == 900);
  CHECK(d.validation_rows() == 100);
  CHECK(d.observations.allFinite());
  const double lo = deg2rad(-158.0), hi = deg2rad(28.0);
  for (int j = 0; j < d.rows(); ++j)
    for (int leg = 0; leg < 4; ++leg) {
      const double hip = d.labels(joint_index(leg, JointClass::HipPitch), j);
      CHECK(hip >= lo);
      CHECK(hip <= hi);
    }

  // label(t) equals the reference evaluated one control period later: it is
  // what the next row's rollout state produces, so re-running one episode
  // with the same seed reproduces it
  auto one = cfg;
  one.control_steps = 150;
  const auto first = collect_dataset(one, 3, model, terrain, sim::ContactParams{});
  CHECK(first.labels == d.labels.leftCols(150));
  CHECK(first.observations == d.observations.leftCols(150));

  auto eng = cfg;
  eng.features.mode = obs::FeatureMode::Engineered;
  CHECK(collect_dataset(eng, 3, model, terrain, sim::ContactParams{}).row_width() == 42);
}

TEST_CASE("dataset files are deterministic across runs and worker counts") {
  const auto model = sim::RobotModel::jueying_mini();
  const auto terrain = sim::Terrain::flat();
  auto cfg = small_collect(600);
  const auto a = collect_dataset(cfg, 21, model, terrain, sim::ContactParams{});
  cfg.workers = 3;
  const auto b = collect_dataset(cfg, 21, model, terrain, sim::ContactParams{});
  const auto pa = std::filesystem::temp_directory_path() / "boundlab_ds_a.csv";
  const auto pb = std::filesystem::temp_directory_path() / "boundlab_ds_b.csv";
  write_dataset_csv(a, pa);
  write_dataset_csv(b, pb);
  CHECK(slurp(pa) == slurp(pb));

  const auto back = read_dataset_csv(pa);
  CHECK(back.observations == a.observations);
  CHECK(back.labels == a.labels);
  CHECK(back.train_rows == a.train_rows);

  std::ofstream(pb) << "# rows=2 train=1 features=raw\nnot,a,header\n";
  CHECK_THROWS_AS(read_dataset_csv(pb), DataError);
  std::filesystem::remove(pa);
  std::filesystem::remove(pb);
}

TEST_CASE("a falling reference controller is reported") {
  const auto model = sim::RobotModel::jueying_mini();
  const auto terrain = sim::Terrain::flat();
  auto cfg = small_collect(300);
  cfg.gains = control::GainSet::uniform(0.5, 0.01);  // too soft to stand
  try {
    collect_dataset(cfg, 1, model, terrain, sim::ContactParams{});
    FAIL("expected a fall");
  } catch (const ReferenceControllerFell& e) {
    CHECK(e.episode_index == 0);
    CHECK(e.step_index >= 0);
    CHECK(std::string(e.what()).find("reference controller fell") != std::string::npos);
  }
}
