#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sectorscope/tca.hpp"

namespace sectorscope::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> error;  // optional symmetric error bars
};

struct LabeledPoint {
  std::string label;
  double x = 0;
  double y = 0;
};

// All charts are plain text with fixed-precision coordinates and no
// timestamps, so identical inputs give identical documents.
std::string line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                       std::span<const Series> series);
// Series drawn as connected points in the plane (trajectories).
std::string path_chart(const std::string& title, std::span<const Series> series,
                       std::span<const LabeledPoint> anchors = {});
std::string scatter(const std::string& title, std::span<const LabeledPoint> points);
std::string heatmap(const std::string& title, const Eigen::MatrixXi& counts);
// One row per component: investor, sector and temporal factors.
std::string factor_grid(const std::string& title, const CPModel& model, const StrategyTensor& tensor);

}  // namespace sectorscope::svg
