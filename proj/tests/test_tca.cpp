#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "sectorscope/synth.hpp"
#include "sectorscope/tca.hpp"

using namespace sectorscope;

namespace {

Eigen::MatrixXd gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = g(rng);
  return m;
}

CPModel random_model(std::mt19937_64& rng, int n, int s, int k, int r) {
  Eigen::VectorXd w(r);
  for (int i = 0; i < r; ++i) w[i] = 1.0 + i;
  return canonicalize(gaussian(rng, n, r), gaussian(rng, s, r), gaussian(rng, k, r), w);
}

// Triple loop over all entries.
double frobenius_oracle(const CPModel& m, const StrategyTensor& t) {
  double res = 0, norm = 0;
  for (Eigen::Index k = 0; k < t.year_count(); ++k)
    for (Eigen::Index i = 0; i < t.investor_count(); ++i)
      for (Eigen::Index j = 0; j < t.sector_count(); ++j) {
        double v = 0;
        for (int r = 0; r < m.rank; ++r)
          v += m.weights[r] * m.investor_factors(i, r) * m.sector_factors(j, r) * m.temporal_factors(k, r);
        res += (t.at(i, j, k) - v) * (t.at(i, j, k) - v);
        norm += t.at(i, j, k) * t.at(i, j, k);
      }
  return std::sqrt(res / norm);
}

// Best score over all permutations.
double fms_oracle(const CPModel& a, const CPModel& b) {
  std::vector<int> perm(static_cast<std::size_t>(a.rank));
  std::iota(perm.begin(), perm.end(), 0);
  auto cosine = [](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    return std::abs(x.dot(y)) / (x.norm() * y.norm());
  };
  double best = 0;
  do {
    double total = 0;
    for (int i = 0; i < a.rank; ++i) {
      const int j = perm[static_cast<std::size_t>(i)];
      const double wa = a.weights[i], wb = b.weights[j];
      total += cosine(a.investor_factors.col(i), b.investor_factors.col(j)) *
               cosine(a.sector_factors.col(i), b.sector_factors.col(j)) *
               cosine(a.temporal_factors.col(i), b.temporal_factors.col(j)) *
               (1 - std::abs(wa - wb) / std::max(wa, wb));
    }
    best = std::max(best, total / a.rank);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

StrategyTensor tensor_of(const CPModel& m) {
  auto t = StrategyTensor::zeros(m.investor_factors.rows(), m.sector_factors.rows(), m.temporal_factors.rows());
  t.slices = reconstruct(m);
  return t;
}

InvestorYearProfile profile(std::string id, int year, std::vector<double> rounds) {
  InvestorYearProfile p;
  p.investor_id = std::move(id);
  p.year = year;
  p.vector.rounds = Eigen::Map<Eigen::VectorXd>(rounds.data(), static_cast<Eigen::Index>(rounds.size()));
  p.vector.amounts = Eigen::VectorXd::Zero(p.vector.rounds.size());
  return p;
}

}  // namespace

TEST_CASE("build_tensor places profiles and standardizes slices") {
  const std::vector<InvestorYearProfile> ps = {profile("B", 2001, {1, 0, 2}), profile("A", 2001, {0, 3, 1}),
                                               profile("A", 2002, {1, 1, 0}), profile("C", 2002, {2, 0, 0}),
                                               profile("C", 2001, {1, 1, 1})};
  const std::vector<std::string> sectors = {"x", "y", "z"};
  const auto raw = build_tensor(ps, {2001, 2002}, sectors, {.standardize = false, .use_shares = false});
  CHECK(raw.investors == std::vector<std::string>{"A", "B", "C"});
  CHECK(raw.years == std::vector<int>{2001, 2002});
  CHECK(raw.at(1, 2, 0) == 2.0);
  CHECK(raw.at(1, 0, 1) == 0.0);  // B inactive in 2002
  CHECK(raw.at(2, 0, 1) == 2.0);

  const auto st = build_tensor(ps, {2001, 2002}, sectors);
  for (Eigen::Index k = 0; k < 2; ++k)
    for (Eigen::Index j = 0; j < 3; ++j) {
      const Eigen::VectorXd col = st.slices[static_cast<std::size_t>(k)].col(j);
      if (col.isZero()) continue;
      CHECK(std::abs(col.mean()) < 1e-12);
      CHECK(std::sqrt((col.array() - col.mean()).square().sum() / 2) == doctest::Approx(1.0));
    }
  const auto shares = build_tensor(ps, {2001, 2002}, sectors, {.standardize = false, .use_shares = true});
  CHECK(shares.at(0, 1, 0) == doctest::Approx(0.75));
  CHECK_THROWS_AS(build_tensor(ps, {2001, 2001}, sectors), InvalidArgument);
}

TEST_CASE("reconstruction error matches a triple-loop oracle") {
  std::mt19937_64 rng(5);
  const auto m = random_model(rng, 9, 5, 4, 3);
  auto t = tensor_of(random_model(rng, 9, 5, 4, 2));
  CHECK(reconstruction_error(m, t) == doctest::Approx(frobenius_oracle(m, t)).epsilon(1e-12));
  CHECK(reconstruction_error(m, tensor_of(m)) < 1e-12);
}

TEST_CASE("canonical form is invariant to permutation, scaling and sign") {
  std::mt19937_64 rng(6);
  const auto m = random_model(rng, 7, 4, 5, 3);
  Eigen::MatrixXd a = m.investor_factors, b = m.sector_factors, c = m.temporal_factors;
  Eigen::VectorXd w = m.weights;
  const Eigen::Vector3i perm(2, 0, 1);
  Eigen::MatrixXd a2(a.rows(), 3), b2(b.rows(), 3), c2(c.rows(), 3);
  Eigen::VectorXd w2(3);
  for (int r = 0; r < 3; ++r) {
    a2.col(r) = -3.0 * a.col(perm[r]);
    b2.col(r) = 0.5 * b.col(perm[r]);
    c2.col(r) = -c.col(perm[r]);
    w2[r] = w[perm[r]] / 1.5;
  }
  const auto back = canonicalize(a2, b2, c2, w2);
  CHECK((back.investor_factors - m.investor_factors).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((back.sector_factors - m.sector_factors).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((back.temporal_factors - m.temporal_factors).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((back.weights - m.weights).cwiseAbs().maxCoeff() < 1e-12);
  for (int r = 0; r + 1 < 3; ++r) CHECK(m.weights[r] >= m.weights[r + 1]);
  for (int r = 0; r < 3; ++r) CHECK(m.investor_factors.col(r).norm() == doctest::Approx(1.0));
}

TEST_CASE("factor match score equals the permutation oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int r = 1 + trial % 4;
    const auto a = random_model(rng, 6, 5, 4, r);
    auto b = random_model(rng, 6, 5, 4, r);
    b.investor_factors = 0.6 * b.investor_factors + 0.4 * a.investor_factors;
    CHECK(factor_match_score(a, b) == doctest::Approx(fms_oracle(a, b)).epsilon(1e-12));
    CHECK(factor_match_score(a, b) == doctest::Approx(factor_match_score(b, a)).epsilon(1e-12));
    CHECK(factor_match_score(a, a) == doctest::Approx(1.0));
  }
  const std::vector<CPModel> same = {random_model(rng, 5, 4, 3, 2)};
  CHECK_THROWS_AS(model_similarity(same), InvalidArgument);
}

TEST_CASE("best_assignment matches brute force") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 6;
    Eigen::MatrixXd s(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s(i, j) = u(rng);
    const auto a = best_assignment(s);
    double got = 0;
    for (int i = 0; i < n; ++i) got += s(i, a[static_cast<std::size_t>(i)]);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    double best = 0;
    do {
      double t = 0;
      for (int i = 0; i < n; ++i) t += s(i, perm[static_cast<std::size_t>(i)]);
      best = std::max(best, t);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(got == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("cp_als recovers an exact low-rank tensor") {
  const auto sample = synth::generate_cp_tensor(40, 10, 8, 3, 0.0, 12);
  const auto fit = cp_als(sample.tensor, 3, 99, {.tol = 1e-10, .max_iter = 2000});
  CHECK(fit.error < 1e-4);
  CHECK(factor_match_score(fit, *sample.truth.cp) > 0.99);
  for (std::size_t i = 1; i < fit.error_trace.size(); ++i)
    CHECK(fit.error_trace[i] <= fit.error_trace[i - 1] + 1e-9);
  CHECK(fit.error == doctest::Approx(frobenius_oracle(fit, sample.tensor)).epsilon(1e-9));
}

TEST_CASE("cp_als is deterministic and validates input") {
  const auto sample = synth::generate_cp_tensor(20, 6, 5, 2, 0.1, 3);
  const auto a = cp_als(sample.tensor, 2, 7);
  const auto b = cp_als(sample.tensor, 2, 7);
  CHECK(a.investor_factors == b.investor_factors);
  CHECK(a.error == b.error);
  CHECK_THROWS_AS(cp_als(sample.tensor, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(cp_als(StrategyTensor::zeros(4, 3, 2), 1, 1), InvalidArgument);
}

TEST_CASE("rank_scan is independent of thread count") {
  const auto sample = synth::generate_cp_tensor(30, 8, 6, 2, 0.05, 4);
  RankScanOptions one{.restarts = 3, .seed = 11, .als = {}, .similarity_threshold = 0.8, .threads = 1};
  RankScanOptions four = one;
  four.threads = 4;
  const auto a = rank_scan(sample.tensor, 1, 4, one);
  const auto b = rank_scan(sample.tensor, 1, 4, four);
  CHECK(diagnostics_csv(a) == diagnostics_csv(b));
  CHECK(a.chosen_rank == 2);
  REQUIRE(a.ranks.size() == 4);
  for (const auto& rf : a.ranks) {
    CHECK(rf.restart_errors.size() == 3);
    CHECK(rf.best_error == *std::min_element(rf.restart_errors.begin(), rf.restart_errors.end()));
    CHECK(rf.restart_similarity[static_cast<std::size_t>(rf.best_restart)] == doctest::Approx(1.0));
  }
  CHECK(restart_seed(11, 2, 0) != restart_seed(11, 2, 1));
  CHECK_THROWS_AS(rank_scan(sample.tensor, 3, 2, one), InvalidArgument);
}

TEST_CASE("top investors and emerging component") {
  auto t = StrategyTensor::zeros(4, 2, 4);
  t.investors = {"a", "b", "c", "d"};
  t.years = {2000, 2001, 2002, 2003};
  Eigen::MatrixXd a(4, 2), b(2, 2), c(4, 2);
  a << 0.5, 0.1, 0.5, 0.9, 0.7, 0.1, 0.1, 0.4;
  b << 1, 0, 0, 1;
  c << 1, 0, 1, 0, 1, 1, 1, 1;
  const auto m = canonicalize(a, b, c, Eigen::Vector2d(2.0, 1.0));
  std::vector<std::string> warnings;
  const auto top = top_investors(m, 0, 10, t, nullptr, &warnings);
  REQUIRE(top.size() == 4);
  CHECK(top[0].investor_id == "c");
  CHECK(top[1].investor_id == "a");  // tie with b broken by id
  CHECK(top[2].investor_id == "b");
  CHECK(warnings.size() == 1);
  CHECK(emerging_component(m, t, 2002) == 1);
}

TEST_CASE("tensor csv round-trips") {
  const auto sample = synth::generate_cp_tensor(5, 3, 4, 2, 0.1, 9);
  auto t = sample.tensor;
  t.years = {2001, 2002, 2003, 2004};
  const auto back = parse_tensor_csv(tensor_csv(t), "t.csv");
  CHECK(back.investors == t.investors);
  CHECK(back.sectors == t.sectors);
  CHECK(back.years == t.years);
  for (std::size_t k = 0; k < t.slices.size(); ++k) CHECK(back.slices[k] == t.slices[k]);
  CHECK_THROWS_AS(parse_tensor_csv("investor,sector,year,value\na,b,20x1,1\n", "t.csv"), SchemaError);
}
