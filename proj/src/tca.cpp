#include "sectorscope/tca.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <thread>
#include <tuple>

#include <Eigen/Cholesky>

#include "sectorscope/csv.hpp"

namespace sectorscope {

double StrategyTensor::squared_norm() const {
  double s = 0;
  for (const auto& slice : slices) s += slice.squaredNorm();
  return s;
}

std::size_t StrategyTensor::constant_fiber_count() const {
  std::size_t n = 0;
  for (const auto& p : standardization) n += p.constant_columns.size();
  return n;
}

StrategyTensor StrategyTensor::zeros(Eigen::Index n, Eigen::Index s, Eigen::Index k) {
  StrategyTensor t;
  t.slices.assign(static_cast<std::size_t>(k), Eigen::MatrixXd::Zero(n, s));
  for (Eigen::Index i = 0; i < n; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "inv%05ld", static_cast<long>(i));
    t.investors.emplace_back(buf);
  }
  for (Eigen::Index j = 0; j < s; ++j) t.sectors.push_back("sector" + std::to_string(j));
  for (Eigen::Index y = 0; y < k; ++y) t.years.push_back(static_cast<int>(y));
  return t;
}

StrategyTensor build_tensor(std::span<const InvestorYearProfile> profiles, YearRange years,
                            std::vector<std::string> sectors, const TensorOptions& options) {
  if (years.size() < 2) throw InvalidArgument("tensor needs at least 2 years (temporal factor undefined)");
  std::set<std::string> ids;
  for (const auto& p : profiles)
    if (!p.stage && years.contains(p.year)) {
      if (p.vector.rounds.size() != static_cast<Eigen::Index>(sectors.size()))
        throw InvalidArgument("tensor: profile dimension does not match sector labels");
      ids.insert(p.investor_id);
    }
  if (ids.size() < 2) throw InvalidArgument("tensor needs at least 2 active investors");

  StrategyTensor t;
  t.investors.assign(ids.begin(), ids.end());
  t.sectors = std::move(sectors);
  t.years = years.years();
  std::map<std::string_view, Eigen::Index> row;
  for (std::size_t i = 0; i < t.investors.size(); ++i) row.emplace(t.investors[i], static_cast<Eigen::Index>(i));
  t.slices.assign(t.years.size(), Eigen::MatrixXd::Zero(t.investor_count(), t.sector_count()));
  for (const auto& p : profiles) {
    if (p.stage || !years.contains(p.year)) continue;
    const auto k = static_cast<std::size_t>(p.year - years.first);
    const Eigen::VectorXd v = options.use_shares ? p.vector.shares() : p.vector.rounds;
    t.slices[k].row(row.at(p.investor_id)) = v.transpose();
  }
  if (options.standardize) {
    for (auto& slice : t.slices) {
      auto s = standardize(slice);
      slice = std::move(s.data);
      t.standardization.push_back(std::move(s.params));
    }
  }
  return t;
}

// ---------------------------------------------------------------------------

namespace {

Eigen::Index leading_index(const Eigen::VectorXd& v) {
  Eigen::Index lead = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[lead])) lead = i;
  return lead;
}

void check_shape(const CPModel& model, const StrategyTensor& tensor) {
  if (model.investor_factors.rows() != tensor.investor_count() ||
      model.sector_factors.rows() != tensor.sector_count() ||
      model.temporal_factors.rows() != tensor.year_count())
    throw InvalidArgument("CP model shape does not match tensor");
}

// Khatri-Rao style matricized-tensor times factor products, one per mode.
Eigen::MatrixXd mttkrp_investor(const StrategyTensor& t, const Eigen::MatrixXd& b, const Eigen::MatrixXd& c) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(t.investor_count(), b.cols());
  for (Eigen::Index k = 0; k < t.year_count(); ++k)
    m.noalias() += t.slices[k] * (b.array().rowwise() * c.row(k).array()).matrix();
  return m;
}

Eigen::MatrixXd mttkrp_sector(const StrategyTensor& t, const Eigen::MatrixXd& a, const Eigen::MatrixXd& c) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(t.sector_count(), a.cols());
  for (Eigen::Index k = 0; k < t.year_count(); ++k)
    m.noalias() += t.slices[k].transpose() * (a.array().rowwise() * c.row(k).array()).matrix();
  return m;
}

Eigen::MatrixXd mttkrp_temporal(const StrategyTensor& t, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd m(t.year_count(), a.cols());
  Eigen::MatrixXd xb;
  for (Eigen::Index k = 0; k < t.year_count(); ++k) {
    xb.noalias() = t.slices[k] * b;
    m.row(k) = (xb.array() * a.array()).colwise().sum();
  }
  return m;
}

// Solves X * gram = rhs for X.
Eigen::MatrixXd solve_normal(const Eigen::MatrixXd& gram, const Eigen::MatrixXd& rhs, bool& regularized) {
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() == Eigen::Success && llt.rcond() > 1e-12) return llt.solve(rhs.transpose()).transpose();
  regularized = true;
  const double scale = std::max(gram.diagonal().maxCoeff(), std::numeric_limits<double>::min());
  Eigen::MatrixXd ridge = gram;
  ridge.diagonal().array() += 1e-10 * scale;
  return ridge.ldlt().solve(rhs.transpose()).transpose();
}

Eigen::VectorXd normalize_columns(Eigen::MatrixXd& m) {
  Eigen::VectorXd norms = m.colwise().norm().transpose();
  for (Eigen::Index r = 0; r < m.cols(); ++r)
    if (norms[r] > 0) m.col(r) /= norms[r];
  return norms;
}

void require_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) throw NumericError(std::string("non-finite values in ") + what + " factor during ALS");
}

}  // namespace

CPModel canonicalize(Eigen::MatrixXd investor, Eigen::MatrixXd sector, Eigen::MatrixXd temporal,
                     Eigen::VectorXd weights) {
  const Eigen::Index r = weights.size();
  if (investor.cols() != r || sector.cols() != r || temporal.cols() != r)
    throw InvalidArgument("canonicalize: factor column counts differ from rank");
  for (Eigen::Index c = 0; c < r; ++c) {
    const double na = investor.col(c).norm();
    const double nb = sector.col(c).norm();
    const double nc = temporal.col(c).norm();
    double w = weights[c] * na * nb * nc;
    if (na == 0 || nb == 0 || nc == 0 || w == 0) {
      investor.col(c).setZero();
      sector.col(c).setZero();
      temporal.col(c).setZero();
      weights[c] = 0;
      continue;
    }
    investor.col(c) /= na;
    sector.col(c) /= nb;
    temporal.col(c) /= nc;
    if (w < 0) {
      temporal.col(c) *= -1;
      w = -w;
    }
    if (investor(leading_index(investor.col(c)), c) < 0) {
      investor.col(c) *= -1;
      temporal.col(c) *= -1;
    }
    if (sector(leading_index(sector.col(c)), c) < 0) {
      sector.col(c) *= -1;
      temporal.col(c) *= -1;
    }
    weights[c] = w;
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(r));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    if (weights[x] != weights[y]) return weights[x] > weights[y];
    for (Eigen::Index k = 0; k < temporal.rows(); ++k)
      if (temporal(k, x) != temporal(k, y)) return temporal(k, x) > temporal(k, y);
    return false;
  });

  CPModel m;
  m.rank = static_cast<int>(r);
  m.investor_factors.resize(investor.rows(), r);
  m.sector_factors.resize(sector.rows(), r);
  m.temporal_factors.resize(temporal.rows(), r);
  m.weights.resize(r);
  for (Eigen::Index c = 0; c < r; ++c) {
    const auto src = order[static_cast<std::size_t>(c)];
    m.investor_factors.col(c) = investor.col(src);
    m.sector_factors.col(c) = sector.col(src);
    m.temporal_factors.col(c) = temporal.col(src);
    m.weights[c] = weights[src];
  }
  return m;
}

std::vector<Eigen::MatrixXd> reconstruct(const CPModel& model) {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(static_cast<std::size_t>(model.temporal_factors.rows()));
  for (Eigen::Index k = 0; k < model.temporal_factors.rows(); ++k) {
    const Eigen::VectorXd scale = model.weights.cwiseProduct(model.temporal_factors.row(k).transpose());
    out.push_back(model.investor_factors * scale.asDiagonal() * model.sector_factors.transpose());
  }
  return out;
}

CPModel cp_als(const StrategyTensor& tensor, int rank, std::uint64_t seed, const AlsOptions& options) {
  const Eigen::Index n = tensor.investor_count();
  const Eigen::Index s = tensor.sector_count();
  const Eigen::Index k = tensor.year_count();
  if (rank < 1 || rank > std::min<Eigen::Index>(n, s * k))
    throw InvalidArgument("cp_als: rank " + std::to_string(rank) + " outside [1, min(N, S*K)]");
  if (!(options.tol > 0)) throw InvalidArgument("cp_als: tol must be positive");
  if (options.max_iter < 1) throw InvalidArgument("cp_als: max_iter must be at least 1");
  const double norm2 = tensor.squared_norm();
  if (!(norm2 > 0)) throw InvalidArgument("cp_als: zero tensor");
  if (!std::isfinite(norm2)) throw NumericError("cp_als: tensor contains non-finite values");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  auto draw = [&](Eigen::Index rows) {
    Eigen::MatrixXd m(rows, rank);
    for (Eigen::Index c = 0; c < rank; ++c)
      for (Eigen::Index i = 0; i < rows; ++i) m(i, c) = unif(rng);
    return m;
  };
  Eigen::MatrixXd a = draw(n);
  Eigen::MatrixXd b = draw(s);
  Eigen::MatrixXd c = draw(k);
  normalize_columns(a);
  normalize_columns(b);
  Eigen::VectorXd lambda = Eigen::VectorXd::Ones(rank);

  CPModel fit;
  double previous = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= options.max_iter; ++it) {
    a = solve_normal((b.transpose() * b).cwiseProduct(c.transpose() * c), mttkrp_investor(tensor, b, c),
                     fit.regularized);
    require_finite(a, "investor");
    normalize_columns(a);

    b = solve_normal((a.transpose() * a).cwiseProduct(c.transpose() * c), mttkrp_sector(tensor, a, c),
                     fit.regularized);
    require_finite(b, "sector");
    normalize_columns(b);

    const Eigen::MatrixXd mc = mttkrp_temporal(tensor, a, b);
    const Eigen::MatrixXd gram_ab = (a.transpose() * a).cwiseProduct(b.transpose() * b);
    c = solve_normal(gram_ab, mc, fit.regularized);
    require_finite(c, "temporal");
    lambda = normalize_columns(c);

    // ||T||^2 - 2 <T, That> + ||That||^2 with That = [lambda; a, b, c].
    const double inner = (mc.array() * c.array()).colwise().sum().matrix().dot(lambda);
    const double model2 = lambda.dot(gram_ab.cwiseProduct(c.transpose() * c) * lambda);
    const double resid2 = std::max(norm2 - 2 * inner + model2, 0.0);
    fit.error_trace.push_back(std::sqrt(resid2 / norm2));
    fit.iterations = it;

    const double change = std::abs(previous - resid2) / std::max(previous, norm2 * 1e-300);
    previous = resid2;
    if (resid2 <= norm2 * 1e-24 || (it > 1 && change < options.tol)) {
      fit.converged = true;
      break;
    }
  }

  CPModel model = canonicalize(std::move(a), std::move(b), std::move(c), std::move(lambda));
  model.seed = seed;
  model.iterations = fit.iterations;
  model.converged = fit.converged;
  model.regularized = fit.regularized;
  model.error_trace = std::move(fit.error_trace);
  model.error = reconstruction_error(model, tensor);
  return model;
}

double reconstruction_error(const CPModel& model, const StrategyTensor& tensor) {
  check_shape(model, tensor);
  const double norm2 = tensor.squared_norm();
  if (!(norm2 > 0)) throw InvalidArgument("reconstruction_error: zero-norm tensor");
  const auto approx = reconstruct(model);
  double resid = 0;
  for (Eigen::Index k = 0; k < tensor.year_count(); ++k)
    resid += (tensor.slices[static_cast<std::size_t>(k)] - approx[static_cast<std::size_t>(k)]).squaredNorm();
  return std::sqrt(resid / norm2);
}

// ---------------------------------------------------------------------------

std::vector<int> best_assignment(const Eigen::MatrixXd& scores) {
  const int n = static_cast<int>(scores.rows());
  if (scores.cols() != n) throw InvalidArgument("best_assignment needs a square matrix");
  if (n == 0) return {};
  // Hungarian algorithm on cost = -score (1-based potentials formulation).
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0), v(n + 1, 0), way_min(n + 1);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::fill(way_min.begin(), way_min.end(), inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = match[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = -scores(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < way_min[j]) {
          way_min[j] = cur;
          way[j] = j0;
        }
        if (way_min[j] < delta) {
          delta = way_min[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          way_min[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> result(n, -1);
  for (int j = 1; j <= n; ++j)
    if (match[j] > 0) result[match[j] - 1] = j - 1;
  return result;
}

namespace {

double abs_cosine(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const double nx = x.norm();
  const double ny = y.norm();
  if (nx == 0 || ny == 0) return 0;
  return std::min(1.0, std::abs(x.dot(y)) / (nx * ny));
}

}  // namespace

double factor_match_score(const CPModel& a, const CPModel& b) {
  if (a.rank != b.rank) throw InvalidArgument("factor_match_score: ranks differ");
  if (a.investor_factors.rows() != b.investor_factors.rows() || a.sector_factors.rows() != b.sector_factors.rows() ||
      a.temporal_factors.rows() != b.temporal_factors.rows())
    throw InvalidArgument("factor_match_score: shapes differ");
  const int r = a.rank;
  Eigen::MatrixXd scores(r, r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      const double wa = a.weights[i];
      const double wb = b.weights[j];
      const double top = std::max(wa, wb);
      const double penalty = top > 0 ? 1.0 - std::abs(wa - wb) / top : 1.0;
      scores(i, j) = abs_cosine(a.investor_factors.col(i), b.investor_factors.col(j)) *
                     abs_cosine(a.sector_factors.col(i), b.sector_factors.col(j)) *
                     abs_cosine(a.temporal_factors.col(i), b.temporal_factors.col(j)) * penalty;
    }
  }
  const auto assignment = best_assignment(scores);
  double total = 0;
  for (int i = 0; i < r; ++i) total += scores(i, assignment[static_cast<std::size_t>(i)]);
  return std::clamp(total / r, 0.0, 1.0);
}

double model_similarity(std::span<const CPModel> models) {
  if (models.size() < 2) throw InvalidArgument("model_similarity needs at least 2 models");
  double total = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < models.size(); ++i)
    for (std::size_t j = i + 1; j < models.size(); ++j) {
      total += factor_match_score(models[i], models[j]);
      ++pairs;
    }
  return total / static_cast<double>(pairs);
}

// ---------------------------------------------------------------------------

const RankFit& FitDiagnostics::at(int rank) const {
  for (const auto& r : ranks)
    if (r.rank == rank) return r;
  throw InvalidArgument("rank " + std::to_string(rank) + " not in scan");
}

std::uint64_t restart_seed(std::uint64_t seed, int rank, int restart) {
  return mix_seed(mix_seed(seed, static_cast<std::uint64_t>(rank)), static_cast<std::uint64_t>(restart));
}

FitDiagnostics rank_scan(const StrategyTensor& tensor, int r_min, int r_max, const RankScanOptions& options) {
  if (r_min < 1 || r_max < r_min) throw InvalidArgument("rank_scan: empty rank range");
  if (options.restarts < 2) throw InvalidArgument("rank_scan: needs at least 2 restarts");

  struct Job {
    int rank;
    int restart;
  };
  std::vector<Job> jobs;
  for (int r = r_min; r <= r_max; ++r)
    for (int j = 0; j < options.restarts; ++j) jobs.push_back({r, j});
  std::vector<CPModel> fits(jobs.size());

  unsigned workers = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(jobs.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      for (std::size_t i = next++; i < jobs.size(); i = next++)
        fits[i] = cp_als(tensor, jobs[i].rank, restart_seed(options.seed, jobs[i].rank, jobs[i].restart),
                         options.als);
    } catch (...) {
      errors[w] = std::current_exception();
      next = jobs.size();
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  FitDiagnostics diag;
  diag.similarity_threshold = options.similarity_threshold;
  std::size_t offset = 0;
  for (int r = r_min; r <= r_max; ++r) {
    RankFit rf;
    rf.rank = r;
    for (int j = 0; j < options.restarts; ++j) rf.restart_errors.push_back(fits[offset + j].error);
    rf.best_restart = static_cast<int>(std::min_element(rf.restart_errors.begin(), rf.restart_errors.end()) -
                                       rf.restart_errors.begin());
    rf.best_error = rf.restart_errors[static_cast<std::size_t>(rf.best_restart)];
    const double mean = std::accumulate(rf.restart_errors.begin(), rf.restart_errors.end(), 0.0) / options.restarts;
    double ss = 0;
    for (double e : rf.restart_errors) ss += (e - mean) * (e - mean);
    rf.error_std = std::sqrt(ss / (options.restarts - 1));
    const CPModel& best = fits[offset + static_cast<std::size_t>(rf.best_restart)];
    double sim = 0;
    for (int j = 0; j < options.restarts; ++j) {
      const double s = j == rf.best_restart ? 1.0 : factor_match_score(best, fits[offset + j]);
      rf.restart_similarity.push_back(s);
      if (j != rf.best_restart) sim += s;
    }
    rf.similarity = sim / (options.restarts - 1);
    rf.best_model = best;
    diag.ranks.push_back(std::move(rf));
    offset += static_cast<std::size_t>(options.restarts);
  }

  int chosen = 0;
  double best_drop = -1;
  if (diag.ranks.size() == 1) {
    if (diag.ranks[0].similarity >= options.similarity_threshold) chosen = diag.ranks[0].rank;
  } else {
    for (std::size_t i = 1; i < diag.ranks.size(); ++i) {
      const auto& cur = diag.ranks[i];
      if (cur.similarity < options.similarity_threshold) continue;
      const double drop = std::abs(diag.ranks[i - 1].best_error - cur.best_error);
      if (drop > best_drop) {
        best_drop = drop;
        chosen = cur.rank;
      }
    }
  }
  if (chosen == 0)
    throw NumericError("rank_scan: no rank reaches similarity threshold " +
                       format_double(options.similarity_threshold) + "; review the threshold or the rank range");
  diag.chosen_rank = chosen;
  return diag;
}

std::vector<RankedInvestor> top_investors(const CPModel& model, int component, std::size_t k,
                                          const StrategyTensor& tensor, const ValidatedDataset* dataset,
                                          std::vector<std::string>* warnings) {
  if (component < 0 || component >= model.rank)
    throw InvalidArgument("top_investors: component " + std::to_string(component) + " outside rank");
  if (model.investor_factors.rows() != tensor.investor_count())
    throw InvalidArgument("top_investors: model and tensor investor counts differ");
  const auto n = static_cast<std::size_t>(tensor.investor_count());
  if (k > n) {
    if (warnings)
      warnings->push_back("requested top " + std::to_string(k) + " of " + std::to_string(n) + " investors");
    k = n;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto col = model.investor_factors.col(component);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const double vx = col[static_cast<Eigen::Index>(x)];
    const double vy = col[static_cast<Eigen::Index>(y)];
    if (vx != vy) return vx > vy;
    return tensor.investors[x] < tensor.investors[y];
  });
  std::vector<RankedInvestor> out;
  for (std::size_t i = 0; i < k; ++i) {
    RankedInvestor r;
    r.investor_id = tensor.investors[order[i]];
    r.value = col[static_cast<Eigen::Index>(order[i])];
    if (dataset) {
      if (const auto* inv = dataset->find_investor(r.investor_id)) {
        r.name = inv->name;
        r.type = inv->type;
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

int emerging_component(const CPModel& model, const StrategyTensor& tensor, int year) {
  if (model.temporal_factors.rows() != tensor.year_count()) throw InvalidArgument("emerging_component: shape");
  int best = 0;
  double best_rise = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < model.rank; ++r) {
    double before = 0, after = 0;
    int nb = 0, na = 0;
    for (Eigen::Index k = 0; k < tensor.year_count(); ++k) {
      const double v = model.temporal_factors(k, r);
      if (tensor.years[static_cast<std::size_t>(k)] < year) {
        before += v;
        ++nb;
      } else {
        after += v;
        ++na;
      }
    }
    const double rise = (na ? after / na : 0.0) - (nb ? before / nb : 0.0);
    if (rise > best_rise) {
      best_rise = rise;
      best = r;
    }
  }
  return best;
}

std::string factors_csv(const CPModel& model, const StrategyTensor& tensor) {
  check_shape(model, tensor);
  csv::Writer w({"mode", "component", "index_label", "value"});
  for (int r = 0; r < model.rank; ++r) {
    const auto comp = std::to_string(r + 1);
    w.add({"weight", comp, "lambda", format_double(model.weights[r])});
    for (Eigen::Index i = 0; i < tensor.investor_count(); ++i)
      w.add({"investor", comp, tensor.investors[static_cast<std::size_t>(i)],
             format_double(model.investor_factors(i, r))});
    for (Eigen::Index j = 0; j < tensor.sector_count(); ++j)
      w.add({"sector", comp, tensor.sectors[static_cast<std::size_t>(j)], format_double(model.sector_factors(j, r))});
    for (Eigen::Index k = 0; k < tensor.year_count(); ++k)
      w.add({"temporal", comp, std::to_string(tensor.years[static_cast<std::size_t>(k)]),
             format_double(model.temporal_factors(k, r))});
  }
  return w.str();
}

std::string diagnostics_csv(const FitDiagnostics& diagnostics) {
  csv::Writer w({"R", "restart", "error", "similarity"});
  for (const auto& rf : diagnostics.ranks)
    for (std::size_t j = 0; j < rf.restart_errors.size(); ++j)
      w.add({std::to_string(rf.rank), std::to_string(j), format_double(rf.restart_errors[j]),
             format_double(rf.restart_similarity[j])});
  return w.str();
}

std::string tensor_csv(const StrategyTensor& tensor) {
  csv::Writer w({"investor", "sector", "year", "value"});
  for (Eigen::Index k = 0; k < tensor.year_count(); ++k)
    for (Eigen::Index i = 0; i < tensor.investor_count(); ++i)
      for (Eigen::Index j = 0; j < tensor.sector_count(); ++j)
        w.add({tensor.investors[static_cast<std::size_t>(i)], tensor.sectors[static_cast<std::size_t>(j)],
               std::to_string(tensor.years[static_cast<std::size_t>(k)]), format_double(tensor.at(i, j, k))});
  return w.str();
}

StrategyTensor parse_tensor_csv(std::string_view text, const std::string& source) {
  const auto table = csv::parse(text, source);
  const int ci = table.column("investor"), cs = table.column("sector"), cy = table.column("year"),
            cv = table.column("value");
  if (ci < 0 || cs < 0 || cy < 0 || cv < 0) throw SchemaError(source, 1, "expected investor,sector,year,value");

  StrategyTensor t;
  std::map<std::string, Eigen::Index> inv, sec;
  std::map<int, Eigen::Index> yrs;
  std::vector<std::tuple<Eigen::Index, Eigen::Index, int, double>> entries;
  auto intern = [](auto& index, auto& labels, const auto& key) {
    auto [it, inserted] = index.try_emplace(key, static_cast<Eigen::Index>(labels.size()));
    if (inserted) labels.push_back(key);
    return it->second;
  };
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    int year = 0;
    double value = 0;
    try {
      std::size_t pos = 0;
      year = std::stoi(row[static_cast<std::size_t>(cy)], &pos);
      if (pos != row[static_cast<std::size_t>(cy)].size()) throw std::invalid_argument("year");
      value = std::stod(row[static_cast<std::size_t>(cv)]);
    } catch (const std::exception&) {
      throw SchemaError(source, r + 2, "malformed year or value");
    }
    if (!std::isfinite(value)) throw SchemaError(source, r + 2, "non-finite value");
    const auto i = intern(inv, t.investors, row[static_cast<std::size_t>(ci)]);
    const auto j = intern(sec, t.sectors, row[static_cast<std::size_t>(cs)]);
    yrs.try_emplace(year, 0);
    entries.emplace_back(i, j, year, value);
  }
  if (entries.empty()) throw SchemaError(source, 1, "empty tensor");
  for (auto& [y, k] : yrs) {
    k = static_cast<Eigen::Index>(t.years.size());
    t.years.push_back(y);
  }
  t.slices.assign(t.years.size(), Eigen::MatrixXd::Zero(t.investor_count(), t.sector_count()));
  for (const auto& [i, j, y, v] : entries) t.at(i, j, yrs.at(y)) = v;
  return t;
}

}  // namespace sectorscope
