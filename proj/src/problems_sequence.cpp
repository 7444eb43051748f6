#include "genopt/problems.hpp"

#include <stdexcept>

namespace genopt {

namespace {

ProblemConfig single_permutation(int n, std::string objective) {
  ProblemConfig cfg;
  cfg.encoding = Encoding::permutation();
  cfg.d1 = 1;
  cfg.d2 = n;
  cfg.n = n;
  cfg.row_mode = RowMode::SingleSeq;
  cfg.obj_defs = {{std::move(objective), Direction::Minimize, 1.0}};
  cfg.comparison = WeightedMode{{1.0}};
  return cfg;
}

void require_square(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols())
    throw std::invalid_argument(std::string(what) + " must be a nonempty square matrix");
}

}  // namespace

TspProblem::TspProblem(Eigen::MatrixXd distance) : dist_(std::move(distance)) {
  require_square(dist_, "tsp distance matrix");
  cfg_ = single_permutation(static_cast<int>(dist_.rows()), "tour_length");
}

double TspProblem::compute_objective(int, const Solution& sol) const { return tour_length(dist_, sol.row(0)); }

std::size_t TspProblem::payload_bytes() const { return sizeof(double) * dist_.size(); }

QapProblem::QapProblem(Eigen::MatrixXd flow, Eigen::MatrixXd distance)
    : flow_(std::move(flow)), dist_(std::move(distance)) {
  require_square(flow_, "qap flow matrix");
  require_square(dist_, "qap distance matrix");
  if (flow_.rows() != dist_.rows()) throw std::invalid_argument("qap flow and distance sizes differ");
  cfg_ = single_permutation(static_cast<int>(flow_.rows()), "assignment_cost");
}

double QapProblem::compute_objective(int, const Solution& sol) const {
  const auto p = sol.row(0);
  const auto n = static_cast<int>(p.size());
  double total = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) total += flow_(i, j) * dist_(p[i], p[j]);
  return total;
}

std::size_t QapProblem::payload_bytes() const { return sizeof(double) * (flow_.size() + dist_.size()); }

AssignmentProblem::AssignmentProblem(Eigen::MatrixXd cost) : cost_(std::move(cost)) {
  require_square(cost_, "assignment cost matrix");
  cfg_ = single_permutation(static_cast<int>(cost_.rows()), "total_cost");
}

double AssignmentProblem::compute_objective(int, const Solution& sol) const {
  const auto p = sol.row(0);
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += cost_(static_cast<Eigen::Index>(i), p[i]);
  return total;
}

std::size_t AssignmentProblem::payload_bytes() const { return sizeof(double) * cost_.size(); }

}  // namespace genopt
