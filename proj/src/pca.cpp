#include "sectorscope/pca.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

namespace sectorscope {

Eigen::VectorXd StandardizationParams::apply(const Eigen::VectorXd& v) const {
  if (v.size() != means.size())
    throw InvalidArgument("standardize: dimension " + std::to_string(v.size()) + " != " +
                          std::to_string(means.size()));
  return ((v - means).array() * inverse_stds().array()).matrix();
}

Eigen::MatrixXd StandardizationParams::apply(const Eigen::MatrixXd& rows) const {
  if (rows.cols() != means.size()) throw InvalidArgument("standardize: column count mismatch");
  return (rows.rowwise() - means.transpose()).array().rowwise() * inverse_stds().transpose().array();
}

Eigen::VectorXd StandardizationParams::inverse_stds() const {
  Eigen::VectorXd inv(stds.size());
  for (Eigen::Index j = 0; j < stds.size(); ++j) inv[j] = stds[j] == 0.0 ? 0.0 : 1.0 / stds[j];
  return inv;
}

Standardized standardize(const Eigen::MatrixXd& rows) {
  const Eigen::Index n = rows.rows();
  const Eigen::Index p = rows.cols();
  if (n < 2) throw InvalidArgument("standardize needs at least 2 rows, got " + std::to_string(n));
  Standardized out;
  auto& params = out.params;
  params.means.resize(p);
  params.stds.resize(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const auto col = rows.col(j);
    const double mean = col.mean();
    params.means[j] = mean;
    if (col.maxCoeff() == col.minCoeff()) {
      params.stds[j] = 0.0;
      params.constant_columns.push_back(j);
      continue;
    }
    const double ss = (col.array() - mean).square().sum();
    params.stds[j] = std::sqrt(ss / static_cast<double>(n - 1));
  }
  out.data = params.apply(rows);
  return out;
}

PCAModel fit_pca(const Standardized& standardized, Eigen::Index dimensions) {
  const auto& z = standardized.data;
  const Eigen::Index n = z.rows();
  const Eigen::Index p = z.cols();
  if (n < 2) throw InvalidArgument("fit_pca needs at least 2 rows");
  if (dimensions < 1 || dimensions > p)
    throw InvalidArgument("fit_pca: dimension " + std::to_string(dimensions) + " outside [1, " +
                          std::to_string(p) + "]");

  const Eigen::MatrixXd cov = (z.transpose() * z) / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    const double trace = cov.trace();
    throw NumericError("covariance eigendecomposition failed (P=" + std::to_string(p) +
                       ", trace=" + format_double(trace) + ", max |entry|=" +
                       format_double(cov.cwiseAbs().maxCoeff()) + ")");
  }

  PCAModel model;
  model.params = standardized.params;
  model.eigenvalues.resize(p);
  Eigen::MatrixXd vectors(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    model.eigenvalues[i] = solver.eigenvalues()[p - 1 - i];
    vectors.row(i) = solver.eigenvectors().col(p - 1 - i).transpose();
  }
  model.axes.resize(dimensions, p);
  model.explained_variance.resize(dimensions);
  for (Eigen::Index i = 0; i < dimensions; ++i) {
    Eigen::RowVectorXd axis = vectors.row(i);
    Eigen::Index lead = 0;
    for (Eigen::Index j = 1; j < p; ++j)
      if (std::abs(axis[j]) > std::abs(axis[lead])) lead = j;
    const int s = axis[lead] < 0 ? -1 : 1;
    model.sign.push_back(s);
    model.axes.row(i) = s * axis;
    model.explained_variance[i] = std::max(0.0, model.eigenvalues[i]);
  }
  return model;
}

Eigen::VectorXd project(const PCAModel& model, const Eigen::VectorXd& vector) {
  if (vector.size() != model.input_dimension())
    throw InvalidArgument("project: vector dimension " + std::to_string(vector.size()) + " != model dimension " +
                          std::to_string(model.input_dimension()));
  return model.axes * model.params.apply(vector);
}

Eigen::VectorXd reconstruct_standardized(const PCAModel& model, const Eigen::VectorXd& coords) {
  if (coords.size() != model.dimension()) throw InvalidArgument("reconstruct: coordinate dimension mismatch");
  return model.axes.transpose() * coords;
}

std::vector<SectorPosition> sector_positions(const PCAModel& model) {
  if (model.dimension() < 2) throw InvalidArgument("sector_positions needs a model with at least 2 axes");
  std::vector<SectorPosition> out;
  for (Eigen::Index j = 0; j < model.input_dimension(); ++j) {
    const std::string tag =
        static_cast<std::size_t>(j) < model.labels.size() ? model.labels[j] : "dim" + std::to_string(j);
    out.push_back({tag, Eigen::Vector2d(model.axes(0, j), model.axes(1, j))});
  }
  return out;
}

Eigen::MatrixXd share_matrix(std::span<const InvestorYearProfile> profiles) {
  if (profiles.empty()) return {};
  Eigen::MatrixXd m(static_cast<Eigen::Index>(profiles.size()), profiles.front().vector.rounds.size());
  for (std::size_t i = 0; i < profiles.size(); ++i)
    m.row(static_cast<Eigen::Index>(i)) = profiles[i].vector.shares().transpose();
  return m;
}

PCAModel fit_share_pca(std::span<const InvestorYearProfile> profiles, Eigen::Index dimensions,
                       std::vector<std::string> labels) {
  auto model = fit_pca(standardize(share_matrix(profiles)), dimensions);
  model.labels = std::move(labels);
  return model;
}

BarycenterPoint barycenter(std::span<const InvestorYearProfile> profiles) {
  if (profiles.empty()) throw InvalidArgument("barycenter of no profiles");
  const int year = profiles.front().year;
  const Eigen::Index p = profiles.front().vector.rounds.size();
  BarycenterPoint b;
  b.year = year;
  b.coords = Eigen::VectorXd::Zero(p);
  for (const auto& prof : profiles) {
    if (prof.year != year) throw InvalidArgument("barycenter: profiles span several years");
    if (prof.vector.rounds.size() != p) throw InvalidArgument("barycenter: dimension mismatch");
    b.weight += prof.vector.total_rounds();
  }
  if (b.weight <= 0) throw InvalidArgument("barycenter: all profiles are empty");
  for (const auto& prof : profiles) {
    const double n = prof.vector.total_rounds();
    if (n > 0) b.coords += prof.vector.shares() * n;
  }
  b.coords /= b.weight;

  b.sigma = Eigen::VectorXd::Zero(p);
  if (b.weight <= 1.0) {
    b.sigma_defined = false;
    return b;
  }
  for (const auto& prof : profiles) {
    const double n = prof.vector.total_rounds();
    if (n > 0) b.sigma += n * (prof.vector.shares() - b.coords).array().square().matrix();
  }
  b.sigma = (b.sigma / (b.weight * (b.weight - 1.0))).cwiseSqrt();
  return b;
}

std::vector<TrajectoryPoint> barycenter_trajectory(std::span<const InvestorYearProfile> profiles,
                                                   std::optional<StageClass> stage, const PCAModel& model) {
  if (model.dimension() < 2) throw InvalidArgument("trajectory needs a model with at least 2 axes");
  std::map<int, std::vector<InvestorYearProfile>> by_year;
  for (const auto& p : profiles)
    if (p.stage == stage) by_year[p.year].push_back(p);

  const Eigen::MatrixXd plane = model.axes.topRows(2);
  const Eigen::MatrixXd jacobian = plane * model.params.inverse_stds().asDiagonal();
  std::vector<TrajectoryPoint> out;
  for (const auto& [year, group] : by_year) {
    const auto b = barycenter(group);
    TrajectoryPoint t;
    t.year = year;
    t.position = plane * model.params.apply(b.coords);
    t.sigma = (jacobian.array().square().matrix() * b.sigma.array().square().matrix()).cwiseSqrt();
    out.push_back(t);
  }
  return out;
}

}  // namespace sectorscope
