#include "sectorscope/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sectorscope/csv.hpp"

namespace sectorscope {

double euclidean_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != y.size())
    throw InvalidArgument("euclidean_distance: dimensions " + std::to_string(x.size()) + " and " +
                          std::to_string(y.size()));
  return (x - y).norm();
}

DistanceWithError distance_with_error(const BarycenterPoint& a, const BarycenterPoint& b) {
  if (a.coords.size() != b.coords.size() || a.sigma.size() != a.coords.size() || b.sigma.size() != b.coords.size())
    throw InvalidArgument("distance_with_error: dimension mismatch");
  DistanceWithError out;
  out.distance = euclidean_distance(a.coords, b.coords);
  const Eigen::ArrayXd var = a.sigma.array().square() + b.sigma.array().square();
  if (out.distance == 0) {
    out.degenerate = true;
    out.sigma = std::sqrt(var.sum());
    return out;
  }
  const Eigen::ArrayXd grad = (a.coords - b.coords).array() / out.distance;
  out.sigma = std::sqrt((grad.square() * var).sum());
  return out;
}

int DistanceSeries::argmin_year() const {
  if (entries.empty()) throw InvalidArgument("empty distance series");
  auto it = std::min_element(entries.begin(), entries.end(),
                             [](const DistanceEntry& x, const DistanceEntry& y) { return x.distance < y.distance; });
  return it->year;
}

double DistanceSeries::min_distance() const {
  if (entries.empty()) throw InvalidArgument("empty distance series");
  double m = entries.front().distance;
  for (const auto& e : entries) m = std::min(m, e.distance);
  return m;
}

DistanceSeries distance_series(std::span<const InvestorYearProfile> profiles, const GroupSpec& group_a,
                               const GroupSpec& group_b, YearRange years, const ValidatedDataset& dataset) {
  std::map<int, std::vector<InvestorYearProfile>> ya, yb;
  for (auto& p : group_profiles(profiles, group_a, dataset))
    if (years.contains(p.year)) ya[p.year].push_back(std::move(p));
  for (auto& p : group_profiles(profiles, group_b, dataset))
    if (years.contains(p.year)) yb[p.year].push_back(std::move(p));

  DistanceSeries series{group_a, group_b, {}};
  for (const auto& [year, pa] : ya) {
    auto it = yb.find(year);
    if (it == yb.end()) continue;
    const auto d = distance_with_error(barycenter(pa), barycenter(it->second));
    series.entries.push_back({year, d.distance, d.sigma, d.degenerate});
  }
  if (series.entries.empty())
    throw InvalidArgument("distance_series: groups " + group_a.label() + " and " + group_b.label() +
                          " share no active year");
  return series;
}

GridSpec GridSpec::parse(std::string_view text) {
  const auto t = trim(text);
  const auto x = t.find('x');
  GridSpec g;
  try {
    if (x == std::string::npos) throw InvalidArgument("");
    std::size_t used = 0;
    g.x_bins = std::stoi(t.substr(0, x), &used);
    if (used != x) throw InvalidArgument("");
    const auto rest = t.substr(x + 1);
    g.y_bins = std::stoi(rest, &used);
    if (used != rest.size()) throw InvalidArgument("");
  } catch (const std::exception&) {
    throw InvalidArgument("invalid grid '" + t + "' (expected e.g. 30x30)");
  }
  if (g.x_bins < 2 || g.y_bins < 2) throw InvalidArgument("grid needs at least 2 bins per axis");
  return g;
}

double HeatmapGrid::max_cell_share(int year) const {
  auto it = counts.find(year);
  if (it == counts.end()) return 0;
  const double total = it->second.sum();
  return total > 0 ? it->second.maxCoeff() / total : 0.0;
}

HeatmapGrid HeatmapGrid::uniform(const GridSpec& spec, Eigen::Vector2d lo, Eigen::Vector2d hi) {
  if (spec.x_bins < 2 || spec.y_bins < 2) throw InvalidArgument("heatmap grid needs at least 2 bins per axis");
  if (!(lo.x() < hi.x()) || !(lo.y() < hi.y()) || !lo.allFinite() || !hi.allFinite())
    throw InvalidArgument("degenerate heatmap bin edges");
  HeatmapGrid g;
  for (int i = 0; i <= spec.x_bins; ++i) g.x_edges.push_back(lo.x() + (hi.x() - lo.x()) * i / spec.x_bins);
  for (int i = 0; i <= spec.y_bins; ++i) g.y_edges.push_back(lo.y() + (hi.y() - lo.y()) * i / spec.y_bins);
  g.x_edges.back() = hi.x();
  g.y_edges.back() = hi.y();
  return g;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InvalidArgument("quantile of no values");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1) * std::clamp(q, 0.0, 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

HeatmapGrid HeatmapGrid::from_points(const GridSpec& spec, std::span<const Eigen::Vector2d> points, double lower,
                                     double upper) {
  if (points.empty()) throw InvalidArgument("heatmap grid from no points");
  std::vector<double> xs, ys;
  for (const auto& p : points) {
    xs.push_back(p.x());
    ys.push_back(p.y());
  }
  return uniform(spec, {quantile(xs, lower), quantile(ys, lower)}, {quantile(xs, upper), quantile(ys, upper)});
}

std::vector<Eigen::Vector2d> project_profiles(std::span<const InvestorYearProfile> profiles, const PCAModel& model) {
  if (model.dimension() < 2) throw InvalidArgument("projection needs a model with at least 2 axes");
  std::vector<Eigen::Vector2d> out;
  out.reserve(profiles.size());
  for (const auto& p : profiles) out.emplace_back(project(model, p.vector.shares()).head<2>());
  return out;
}

namespace {

int bin_of(const std::vector<double>& edges, double v) {
  const int bins = static_cast<int>(edges.size()) - 1;
  if (!(v >= edges.front())) return 0;  // also catches NaN
  if (v >= edges.back()) return bins - 1;
  const auto it = std::upper_bound(edges.begin(), edges.end(), v);
  return std::clamp(static_cast<int>(it - edges.begin()) - 1, 0, bins - 1);
}

}  // namespace

Eigen::MatrixXi heatmap(std::span<const InvestorYearProfile> profiles, const PCAModel& model, HeatmapGrid& grid,
                        int year) {
  if (grid.x_bins() < 2 || grid.y_bins() < 2) throw InvalidArgument("heatmap grid needs at least 2 bins per axis");
  for (std::size_t i = 1; i < grid.x_edges.size(); ++i)
    if (!(grid.x_edges[i] > grid.x_edges[i - 1])) throw InvalidArgument("degenerate heatmap bin edges");
  for (std::size_t i = 1; i < grid.y_edges.size(); ++i)
    if (!(grid.y_edges[i] > grid.y_edges[i - 1])) throw InvalidArgument("degenerate heatmap bin edges");
  Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(grid.x_bins(), grid.y_bins());
  for (const auto& pt : project_profiles(profiles, model)) ++counts(bin_of(grid.x_edges, pt.x()), bin_of(grid.y_edges, pt.y()));
  grid.counts[year] = counts;
  return counts;
}

SpreadPoint average_distance_to_barycenter(std::span<const InvestorYearProfile> profiles) {
  if (profiles.size() < 2) throw InvalidArgument("average distance needs at least 2 investors");
  const auto center = barycenter(profiles);
  std::vector<double> d;
  d.reserve(profiles.size());
  for (const auto& p : profiles) d.push_back(euclidean_distance(p.vector.shares(), center.coords));
  SpreadPoint s;
  s.year = center.year;
  s.investors = d.size();
  const double n = static_cast<double>(d.size());
  double sum = 0;
  for (double v : d) sum += v;
  s.mean_distance = sum / n;
  double ss = 0;
  for (double v : d) ss += (v - s.mean_distance) * (v - s.mean_distance);
  s.sigma = std::sqrt(ss / (n - 1) / n);
  return s;
}

std::string distances_csv(std::span<const DistanceSeries> series) {
  csv::Writer w({"year", "group_a", "group_b", "distance", "sigma"});
  for (const auto& s : series)
    for (const auto& e : s.entries)
      w.add({std::to_string(e.year), s.group_a.label(), s.group_b.label(), format_double(e.distance),
             format_double(e.sigma)});
  return w.str();
}

std::string heatmap_csv(const Eigen::MatrixXi& counts) {
  csv::Writer w({"xbin", "ybin", "count"});
  for (Eigen::Index x = 0; x < counts.rows(); ++x)
    for (Eigen::Index y = 0; y < counts.cols(); ++y)
      w.add({std::to_string(x), std::to_string(y), std::to_string(counts(x, y))});
  return w.str();
}

std::string spread_csv(std::span<const SpreadPoint> spread) {
  csv::Writer w({"year", "mean_distance", "sigma"});
  for (const auto& s : spread)
    w.add({std::to_string(s.year), format_double(s.mean_distance), format_double(s.sigma)});
  return w.str();
}

}  // namespace sectorscope
