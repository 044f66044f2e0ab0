#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sectorscope/profile.hpp"

namespace sectorscope {

// Column means and sample (n-1) standard deviations. Constant columns keep
// std 0 and map to 0 under apply().
struct StandardizationParams {
  Eigen::VectorXd means;
  Eigen::VectorXd stds;
  std::vector<Eigen::Index> constant_columns;

  bool is_constant(Eigen::Index column) const { return stds[column] == 0.0; }
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
  Eigen::MatrixXd apply(const Eigen::MatrixXd& rows) const;
  // d(standardized)/d(raw) per column: 1/std, 0 for constant columns.
  Eigen::VectorXd inverse_stds() const;
};

struct Standardized {
  Eigen::MatrixXd data;
  StandardizationParams params;
};

// Requires at least 2 rows.
Standardized standardize(const Eigen::MatrixXd& rows);

struct PCAModel {
  Eigen::MatrixXd axes;                // D x P, orthonormal rows
  Eigen::VectorXd explained_variance;  // D, non-increasing
  Eigen::VectorXd eigenvalues;         // all P, non-increasing
  StandardizationParams params;
  std::vector<int> sign;               // +1/-1 applied to each raw eigenvector
  std::vector<std::string> labels;     // sector names, may be empty

  Eigen::Index dimension() const { return axes.rows(); }
  Eigen::Index input_dimension() const { return axes.cols(); }
};

// Top-D eigenvectors of the P x P sample covariance of an already
// standardized matrix. Each axis is flipped so its largest-magnitude loading
// is positive (ties: lowest index).
PCAModel fit_pca(const Standardized& standardized, Eigen::Index dimensions);

// axes * standardize(vector). Throws on dimension mismatch.
Eigen::VectorXd project(const PCAModel& model, const Eigen::VectorXd& vector);
// Inverse of project restricted to the model subspace, in standardized units.
Eigen::VectorXd reconstruct_standardized(const PCAModel& model, const Eigen::VectorXd& coords);

struct SectorPosition {
  std::string tag;
  Eigen::Vector2d position;
};

// Loadings on the first two axes.
std::vector<SectorPosition> sector_positions(const PCAModel& model);

// Matrix whose rows are the share vectors of the given profiles.
Eigen::MatrixXd share_matrix(std::span<const InvestorYearProfile> profiles);

// Standardize + fit on the share vectors of `profiles`.
PCAModel fit_share_pca(std::span<const InvestorYearProfile> profiles, Eigen::Index dimensions,
                       std::vector<std::string> labels = {});

struct BarycenterPoint {
  int year = 0;
  Eigen::VectorXd coords;  // weighted mean of share vectors
  double weight = 0;       // N, total rounds
  Eigen::VectorXd sigma;   // per-coordinate weighted standard error
  // False when N <= 1 makes the standard error undefined; sigma is then 0.
  bool sigma_defined = true;
};

// X_k = (1/N) sum_i x_{i,k} n_i with x_i the share vector of investor i,
// n_i its round total and N = sum n_i. Profiles must share one year.
BarycenterPoint barycenter(std::span<const InvestorYearProfile> profiles);

struct TrajectoryPoint {
  int year = 0;
  Eigen::Vector2d position;
  Eigen::Vector2d sigma;
};

// Per-year barycenter of the profiles carrying `stage` (nullopt: unfiltered),
// projected onto the first two axes. Years without activity are omitted.
std::vector<TrajectoryPoint> barycenter_trajectory(std::span<const InvestorYearProfile> profiles,
                                                   std::optional<StageClass> stage, const PCAModel& model);

}  // namespace sectorscope
