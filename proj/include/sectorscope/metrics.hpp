#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sectorscope/pca.hpp"
#include "sectorscope/profile.hpp"

namespace sectorscope {

double euclidean_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

struct DistanceWithError {
  double distance = 0;
  double sigma = 0;
  // d = 0: sigma is the upper bound sqrt(sum(sx^2 + sy^2)).
  bool degenerate = false;
};

// First-order propagation: sigma^2 = sum(((x_i - y_i) / d)^2 (sx_i^2 + sy_i^2)).
DistanceWithError distance_with_error(const BarycenterPoint& a, const BarycenterPoint& b);

struct DistanceEntry {
  int year = 0;
  double distance = 0;
  double sigma = 0;
  bool degenerate = false;
};

struct DistanceSeries {
  GroupSpec group_a;
  GroupSpec group_b;
  std::vector<DistanceEntry> entries;  // strictly increasing years

  // Year of the smallest distance; ties resolve to the earliest year.
  int argmin_year() const;
  double min_distance() const;
};

// Per common year in `years`, the distance between the two group
// barycenters. Throws when the groups share no year.
DistanceSeries distance_series(std::span<const InvestorYearProfile> profiles, const GroupSpec& group_a,
                               const GroupSpec& group_b, YearRange years, const ValidatedDataset& dataset);

struct GridSpec {
  int x_bins = 30;
  int y_bins = 30;

  // "30x30".
  static GridSpec parse(std::string_view text);
};

struct HeatmapGrid {
  std::vector<double> x_edges;  // x_bins + 1, increasing
  std::vector<double> y_edges;
  std::map<int, Eigen::MatrixXi> counts;  // year -> x_bins x y_bins

  int x_bins() const { return static_cast<int>(x_edges.size()) - 1; }
  int y_bins() const { return static_cast<int>(y_edges.size()) - 1; }
  // Largest cell count over the year total; 0 for an empty year.
  double max_cell_share(int year) const;

  // Equal-width bins over [lo, hi] on each axis. Throws unless lo < hi and
  // the grid has at least 2 bins per axis.
  static HeatmapGrid uniform(const GridSpec& spec, Eigen::Vector2d lo, Eigen::Vector2d hi);
  // Bins spanning the [lower, upper] percentiles (in [0, 1]) of the points.
  static HeatmapGrid from_points(const GridSpec& spec, std::span<const Eigen::Vector2d> points, double lower = 0.01,
                                 double upper = 0.99);
};

// Type-7 (linear interpolation) sample quantile.
double quantile(std::vector<double> values, double q);

// Projects each profile's share vector onto the first two axes of `model`.
std::vector<Eigen::Vector2d> project_profiles(std::span<const InvestorYearProfile> profiles, const PCAModel& model);

// Bins one year's profiles into `grid`; points outside are clamped to the
// edge bins. Returns the count matrix (also stored in grid.counts[year]).
Eigen::MatrixXi heatmap(std::span<const InvestorYearProfile> profiles, const PCAModel& model, HeatmapGrid& grid,
                        int year);

struct SpreadPoint {
  int year = 0;
  double mean_distance = 0;
  double sigma = 0;  // standard error of the mean
  std::size_t investors = 0;
};

// Equal-weight mean distance of the investors' share vectors to the year's
// barycenter. Needs at least 2 profiles.
SpreadPoint average_distance_to_barycenter(std::span<const InvestorYearProfile> profiles);

// year,group_a,group_b,distance,sigma
std::string distances_csv(std::span<const DistanceSeries> series);
// xbin,ybin,count
std::string heatmap_csv(const Eigen::MatrixXi& counts);
// year,mean_distance,sigma
std::string spread_csv(std::span<const SpreadPoint> spread);

}  // namespace sectorscope
