#include <doctest.h>

#include <random>

#include <Eigen/SVD>

#include "fixtures.hpp"
#include "sectorscope/pca.hpp"

using namespace sectorscope;

namespace {

Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    const double scale = 0.2 + j;
    for (int i = 0; i < rows; ++i) m(i, j) = scale * g(rng) + j;
  }
  // Introduce correlation between neighbouring columns.
  for (int j = 1; j < cols; ++j) m.col(j) += 0.5 * m.col(j - 1);
  return m;
}

InvestorYearProfile profile(std::string id, int year, std::vector<double> rounds,
                            std::optional<StageClass> stage = std::nullopt) {
  InvestorYearProfile p;
  p.investor_id = std::move(id);
  p.year = year;
  p.stage = stage;
  p.vector.rounds = Eigen::Map<Eigen::VectorXd>(rounds.data(), static_cast<Eigen::Index>(rounds.size()));
  p.vector.amounts = Eigen::VectorXd::Zero(p.vector.rounds.size());
  return p;
}

}  // namespace

TEST_CASE("standardize matches a two-pass oracle") {
  std::mt19937_64 rng(1);
  Eigen::MatrixXd m = random_matrix(rng, 40, 6);
  m.col(3).setConstant(2.5);
  const auto s = standardize(m);
  for (int j = 0; j < 6; ++j) {
    double mean = 0;
    for (int i = 0; i < 40; ++i) mean += m(i, j);
    mean /= 40;
    double ss = 0;
    for (int i = 0; i < 40; ++i) ss += (m(i, j) - mean) * (m(i, j) - mean);
    const double sd = std::sqrt(ss / 39);
    CHECK(s.params.means[j] == doctest::Approx(mean).epsilon(1e-12));
    if (j == 3) {
      CHECK(s.params.stds[j] == 0.0);
      CHECK(s.data.col(j).isZero());
    } else {
      CHECK(s.params.stds[j] == doctest::Approx(sd).epsilon(1e-12));
      for (int i = 0; i < 40; ++i) CHECK(s.data(i, j) == doctest::Approx((m(i, j) - mean) / sd).epsilon(1e-10));
    }
  }
  CHECK(s.params.constant_columns == std::vector<Eigen::Index>{3});
  CHECK_THROWS_AS(standardize(Eigen::MatrixXd::Ones(1, 3)), InvalidArgument);
}

TEST_CASE("pca agrees with an SVD oracle") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXd m = random_matrix(rng, 80, 9);
    const auto st = standardize(m);
    const auto model = fit_pca(st, 3);
    CHECK((model.axes * model.axes.transpose() - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(st.data / std::sqrt(79.0), Eigen::ComputeThinV);
    for (int d = 0; d < 3; ++d) {
      Eigen::VectorXd v = svd.matrixV().col(d);
      Eigen::Index arg = 0;
      v.cwiseAbs().maxCoeff(&arg);
      if (v[arg] < 0) v = -v;
      CHECK((model.axes.row(d).transpose() - v).cwiseAbs().maxCoeff() < 1e-8);
      CHECK(model.explained_variance[d] == doctest::Approx(svd.singularValues()[d] * svd.singularValues()[d]));
    }
    const Eigen::MatrixXd cov = st.data.transpose() * st.data / 79.0;
    CHECK(model.eigenvalues.sum() == doctest::Approx(cov.trace()).epsilon(1e-10));
    const Eigen::VectorXd x = m.row(5).transpose();
    CHECK((project(model, x) - model.axes * st.data.row(5).transpose()).cwiseAbs().maxCoeff() < 1e-10);
  }
  const auto st = standardize(random_matrix(rng, 10, 4));
  CHECK_THROWS_AS(fit_pca(st, 5), InvalidArgument);
  CHECK_THROWS_AS(fit_pca(st, 0), InvalidArgument);
}

TEST_CASE("barycenter matches a brute-force weighted mean") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  std::vector<InvestorYearProfile> ps;
  for (int i = 0; i < 12; ++i) {
    std::vector<double> r(5);
    for (auto& x : r) x = u(rng) < 1.0 ? 0.0 : u(rng);
    r[static_cast<std::size_t>(i % 5)] += 0.5;
    ps.push_back(profile("I" + std::to_string(i), 2010, r));
  }
  const auto b = barycenter(ps);
  double n = 0;
  Eigen::VectorXd num = Eigen::VectorXd::Zero(5);
  for (const auto& p : ps) {
    const double ni = p.vector.rounds.sum();
    n += ni;
    num += p.vector.rounds;  // x_i * n_i = rounds
  }
  CHECK(b.weight == doctest::Approx(n));
  CHECK((b.coords - num / n).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(b.coords.sum() == doctest::Approx(1.0));

  Eigen::VectorXd var = Eigen::VectorXd::Zero(5);
  for (const auto& p : ps) {
    const double ni = p.vector.rounds.sum();
    var += ni * (p.vector.rounds / ni - b.coords).array().square().matrix();
  }
  CHECK((b.sigma - (var / (n * (n - 1))).cwiseSqrt()).cwiseAbs().maxCoeff() < 1e-12);

  const std::vector<InvestorYearProfile> single = {profile("I1", 2010, {1, 0, 0})};
  const auto s = barycenter(single);
  CHECK_FALSE(s.sigma_defined);
  CHECK(s.sigma.isZero());

  const std::vector<InvestorYearProfile> mixed = {profile("I1", 2010, {1, 0}), profile("I2", 2011, {0, 1})};
  CHECK_THROWS_AS(barycenter(mixed), InvalidArgument);
}

TEST_CASE("trajectory projects barycenters and propagates sigma linearly") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::vector<InvestorYearProfile> ps;
  for (int year = 2001; year <= 2004; ++year)
    for (int i = 0; i < 30; ++i) {
      std::vector<double> r(6);
      for (auto& x : r) x = u(rng);
      ps.push_back(profile("I" + std::to_string(i), year, r));
      ps.push_back(profile("I" + std::to_string(i), year, r, StageClass::Seed));
    }
  std::vector<InvestorYearProfile> unfiltered;
  for (const auto& p : ps)
    if (!p.stage) unfiltered.push_back(p);
  const auto model = fit_share_pca(unfiltered, 2);
  const auto traj = barycenter_trajectory(ps, std::nullopt, model);
  REQUIRE(traj.size() == 4);
  for (const auto& t : traj) {
    const auto b = barycenter(profiles_for_year(unfiltered, t.year));
    CHECK((t.position - project(model, b.coords)).cwiseAbs().maxCoeff() < 1e-12);
    for (int d = 0; d < 2; ++d) {
      double s2 = 0;
      for (Eigen::Index j = 0; j < 6; ++j) {
        const double g = model.axes(d, j) / model.params.stds[j];
        s2 += g * g * b.sigma[j] * b.sigma[j];
      }
      CHECK(t.sigma[d] == doctest::Approx(std::sqrt(s2)).epsilon(1e-10));
    }
  }
  CHECK(barycenter_trajectory(ps, StageClass::Seed, model).size() == 4);
  CHECK(barycenter_trajectory(ps, StageClass::SeriesB, model).empty());
}

TEST_CASE("sector positions and sign convention") {
  std::mt19937_64 rng(6);
  const auto st = standardize(random_matrix(rng, 50, 5));
  auto model = fit_pca(st, 2);
  for (Eigen::Index d = 0; d < 2; ++d) {
    Eigen::Index arg = 0;
    model.axes.row(d).cwiseAbs().maxCoeff(&arg);
    CHECK(model.axes(d, arg) > 0);
  }
  model.labels = {"a", "b", "c", "d", "e"};
  const auto pos = sector_positions(model);
  REQUIRE(pos.size() == 5);
  CHECK(pos[2].tag == "c");
  CHECK(pos[2].position.x() == model.axes(0, 2));
}
