#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sectorscope/pca.hpp"
#include "sectorscope/profile.hpp"

namespace sectorscope {

// Dense investor x sector x year tensor stored slice-major: slices[k] is the
// N x S matrix of year k.
struct StrategyTensor {
  std::vector<Eigen::MatrixXd> slices;
  std::vector<std::string> investors;  // row labels, sorted
  std::vector<std::string> sectors;    // column labels
  std::vector<int> years;              // slab labels, increasing
  // Per-slice column standardization; empty when the tensor is raw.
  std::vector<StandardizationParams> standardization;

  Eigen::Index investor_count() const { return static_cast<Eigen::Index>(investors.size()); }
  Eigen::Index sector_count() const { return static_cast<Eigen::Index>(sectors.size()); }
  Eigen::Index year_count() const { return static_cast<Eigen::Index>(slices.size()); }
  double squared_norm() const;
  double& at(Eigen::Index investor, Eigen::Index sector, Eigen::Index year) {
    return slices[static_cast<std::size_t>(year)](investor, sector);
  }
  double at(Eigen::Index investor, Eigen::Index sector, Eigen::Index year) const {
    return slices[static_cast<std::size_t>(year)](investor, sector);
  }
  // (sector, year) fibers that were constant before standardization.
  std::size_t constant_fiber_count() const;

  // Zero tensor with generated labels.
  static StrategyTensor zeros(Eigen::Index n, Eigen::Index s, Eigen::Index k);
};

struct TensorOptions {
  // Standardize each yearly N x S matrix column-wise (sample std).
  bool standardize = true;
  // Use share vectors instead of round counts as entries.
  bool use_shares = false;
};

// Places each stage-unfiltered profile at (investor, sector, year). Investors
// inactive in a year contribute a zero row to that slice. Needs >= 2 years.
StrategyTensor build_tensor(std::span<const InvestorYearProfile> profiles, YearRange years,
                            std::vector<std::string> sectors, const TensorOptions& options = {});

// Rank-R CP model. Factor columns have unit norm; magnitude is carried in
// `weights`, which are non-negative and non-increasing.
struct CPModel {
  int rank = 0;
  Eigen::MatrixXd investor_factors;  // N x R
  Eigen::MatrixXd sector_factors;    // S x R
  Eigen::MatrixXd temporal_factors;  // K x R
  Eigen::VectorXd weights;           // R
  std::uint64_t seed = 0;

  // Fit metadata (not part of the canonical form).
  int iterations = 0;
  bool converged = false;
  bool regularized = false;
  std::vector<double> error_trace;  // relative error after each sweep
  double error = 0;                 // exact relative error at the end

  int investor_count() const { return static_cast<int>(investor_factors.rows()); }
};

// Normalizes columns, moves the magnitude into the weights, fixes signs (the
// investor and sector columns get a positive largest-|entry|, the temporal
// column absorbs the sign) and sorts components by weight, ties broken by
// the first differing temporal coefficient (larger first).
CPModel canonicalize(Eigen::MatrixXd investor, Eigen::MatrixXd sector, Eigen::MatrixXd temporal,
                     Eigen::VectorXd weights);

// Full reconstruction T-hat as slices.
std::vector<Eigen::MatrixXd> reconstruct(const CPModel& model);

struct AlsOptions {
  double tol = 1e-6;
  int max_iter = 500;
};

// Alternating least squares with i.i.d. U[-1, 1] initialization from `seed`.
// Stops when the relative change of the squared residual drops below tol.
CPModel cp_als(const StrategyTensor& tensor, int rank, std::uint64_t seed, const AlsOptions& options = {});

// ||T - T-hat||_F / ||T||_F. Throws on a zero tensor or shape mismatch.
double reconstruction_error(const CPModel& model, const StrategyTensor& tensor);

// Factor match score in [0, 1]: the best one-to-one component matching of
// the mean over components of |cos a| |cos b| |cos c| (1 - |wa - wb| /
// max(wa, wb)). Models must have equal rank and shape.
double factor_match_score(const CPModel& a, const CPModel& b);
// Mean factor match score over all model pairs.
double model_similarity(std::span<const CPModel> models);

// Maximum-weight perfect assignment on a square score matrix; result[i] is
// the column assigned to row i.
std::vector<int> best_assignment(const Eigen::MatrixXd& scores);

struct RankFit {
  int rank = 0;
  std::vector<double> restart_errors;
  // Factor match score of each restart against the best restart (1 for the
  // best itself).
  std::vector<double> restart_similarity;
  int best_restart = 0;
  double best_error = 0;
  double error_std = 0;   // sample std of restart errors
  double similarity = 0;  // mean restart_similarity over non-best restarts
  CPModel best_model;
};

struct FitDiagnostics {
  std::vector<RankFit> ranks;
  int chosen_rank = 0;
  double similarity_threshold = 0.8;

  const RankFit& at(int rank) const;
};

struct RankScanOptions {
  int restarts = 8;
  std::uint64_t seed = 0;
  AlsOptions als;
  double similarity_threshold = 0.8;
  // Worker threads for restarts; 0 means hardware concurrency.
  unsigned threads = 0;
};

// Fits every rank in [r_min, r_max] from `restarts` seeds and chooses the
// rank R with the largest error drop |e(R-1) - e(R)| among ranks above r_min
// whose restart similarity reaches the threshold. Throws when none does.
FitDiagnostics rank_scan(const StrategyTensor& tensor, int r_min, int r_max, const RankScanOptions& options);

// Seed used for restart `restart` of rank `rank` in a scan seeded with `seed`.
std::uint64_t restart_seed(std::uint64_t seed, int rank, int restart);

struct RankedInvestor {
  std::string investor_id;
  std::string name;
  InvestorType type = InvestorType::Other;
  double value = 0;
};

// Largest investor-factor values on one component, ties by investor_id.
// k > N truncates and appends a message to `warnings` when given.
std::vector<RankedInvestor> top_investors(const CPModel& model, int component, std::size_t k,
                                          const StrategyTensor& tensor, const ValidatedDataset* dataset,
                                          std::vector<std::string>* warnings = nullptr);

// Component whose temporal factor rises most between the years before
// `year` and the years from `year` on.
int emerging_component(const CPModel& model, const StrategyTensor& tensor, int year);

// mode,component,index_label,value
std::string factors_csv(const CPModel& model, const StrategyTensor& tensor);
// R,restart,error,similarity
std::string diagnostics_csv(const FitDiagnostics& diagnostics);

// investor,sector,year,value for every entry, slice-major.
std::string tensor_csv(const StrategyTensor& tensor);
// Inverse of tensor_csv; labels keep their first-seen order.
StrategyTensor parse_tensor_csv(std::string_view text, const std::string& source);

}  // namespace sectorscope
