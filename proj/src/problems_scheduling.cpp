#include "genopt/problems.hpp"

#include <algorithm>
#include <stdexcept>

namespace genopt {

namespace {

void check_shop(const JobShop& shop) {
  if (shop.jobs() < 1 || shop.machine_count() < 1) throw std::invalid_argument("jsp: empty instance");
  if (shop.durations.rows() != shop.machines.rows() || shop.durations.cols() != shop.machines.cols())
    throw std::invalid_argument("jsp: machines and durations must have the same shape");
  for (Eigen::Index j = 0; j < shop.machines.rows(); ++j) {
    std::vector<bool> seen(static_cast<std::size_t>(shop.machine_count()), false);
    for (Eigen::Index k = 0; k < shop.machines.cols(); ++k) {
      const int m = shop.machines(j, k);
      if (m < 0 || m >= shop.machine_count() || seen[m])
        throw std::invalid_argument("jsp: job " + std::to_string(j) + " must visit every machine once");
      seen[m] = true;
      if (shop.durations(j, k) < 0) throw std::invalid_argument("jsp: negative duration");
    }
  }
}

}  // namespace

JspIntProblem::JspIntProblem(JobShop shop) : shop_(std::move(shop)) {
  check_shop(shop_);
  const int ops = shop_.jobs() * shop_.machine_count();
  cfg_.encoding = Encoding::integer(0, ops - 1);
  cfg_.d1 = 1;
  cfg_.d2 = ops;
  cfg_.n = ops;
  cfg_.row_mode = RowMode::SingleSeq;
  cfg_.obj_defs = {{"makespan", Direction::Minimize, 1.0}};
}

int JspIntProblem::makespan(std::span<const int> priorities) const {
  const int jobs = shop_.jobs();
  const int mcount = shop_.machine_count();
  std::vector<int> next(jobs, 0), job_ready(jobs, 0), mach_ready(mcount, 0);
  for (int step = 0; step < jobs * mcount; ++step) {
    int pick = -1;
    for (int j = 0; j < jobs; ++j) {
      if (next[j] >= mcount) continue;
      if (pick < 0 || priorities[j * mcount + next[j]] < priorities[pick * mcount + next[pick]]) pick = j;
    }
    const int k = next[pick]++;
    const int m = shop_.machines(pick, k);
    const int end = std::max(job_ready[pick], mach_ready[m]) + shop_.durations(pick, k);
    job_ready[pick] = mach_ready[m] = end;
  }
  return *std::ranges::max_element(job_ready);
}

double JspIntProblem::compute_objective(int, const Solution& sol) const { return makespan(sol.row(0)); }

std::size_t JspIntProblem::payload_bytes() const { return 2 * sizeof(int) * shop_.machines.size(); }

JspPermProblem::JspPermProblem(JobShop shop) : shop_(std::move(shop)) {
  check_shop(shop_);
  cfg_.encoding = Encoding::permutation();
  cfg_.d1 = shop_.machine_count();
  cfg_.d2 = shop_.jobs();
  cfg_.n = shop_.jobs();
  cfg_.row_mode = shop_.machine_count() == 1 ? RowMode::SingleSeq : RowMode::MultiFixed;
  cfg_.obj_defs = {{"makespan", Direction::Minimize, 1.0}};
}

JspPermProblem::Decoded JspPermProblem::decode(const Solution& sol) const {
  const int jobs = shop_.jobs();
  const int mcount = shop_.machine_count();
  std::vector<int> next(jobs, 0), job_ready(jobs, 0), mach_ready(mcount, 0);
  // done(m, j): job j already processed on machine m.
  std::vector<char> done(static_cast<std::size_t>(jobs * mcount), 0);
  std::vector<int> head(mcount, 0);  // first unprocessed slot of each machine row
  auto advance_head = [&](int m) {
    const auto row = sol.row(m);
    while (head[m] < jobs && done[m * jobs + row[head[m]]]) ++head[m];
  };
  auto dispatch = [&](int j) {
    const int k = next[j]++;
    const int m = shop_.machines(j, k);
    const int end = std::max(job_ready[j], mach_ready[m]) + shop_.durations(j, k);
    job_ready[j] = mach_ready[m] = end;
    done[m * jobs + j] = 1;
    advance_head(m);
  };

  Decoded out;
  int remaining = jobs * mcount;
  while (remaining > 0) {
    bool progress = false;
    for (int j = 0; j < jobs; ++j) {
      if (next[j] >= mcount) continue;
      const int m = shop_.machines(j, next[j]);
      if (head[m] < jobs && sol.row(m)[head[m]] == j) {
        dispatch(j);
        --remaining;
        progress = true;
      }
    }
    if (progress) continue;
    // Deadlock: force the pending operation listed earliest on its machine.
    int pick = -1, pick_pos = jobs + 1;
    for (int j = 0; j < jobs; ++j) {
      if (next[j] >= mcount) continue;
      const int m = shop_.machines(j, next[j]);
      const auto row = sol.row(m);
      const int pos = static_cast<int>(std::ranges::find(row, j) - row.begin());
      if (pos < pick_pos) {
        pick = j;
        pick_pos = pos;
      }
    }
    dispatch(pick);
    --remaining;
    ++out.forced;
  }
  out.makespan = *std::ranges::max_element(job_ready);
  return out;
}

double JspPermProblem::compute_objective(int, const Solution& sol) const { return decode(sol).makespan; }

double JspPermProblem::compute_penalty(const Solution& sol) const { return decode(sol).forced; }

std::size_t JspPermProblem::payload_bytes() const { return 2 * sizeof(int) * shop_.machines.size(); }

ScheduleBinaryProblem::ScheduleBinaryProblem(Eigen::MatrixXd cost, std::vector<double> coverage, double max_shifts)
    : cost_(std::move(cost)), coverage_(std::move(coverage)), max_shifts_(max_shifts) {
  if (cost_.rows() < 1 || cost_.cols() < 1) throw std::invalid_argument("schedule_binary: empty cost matrix");
  if (coverage_.size() != static_cast<std::size_t>(cost_.cols()))
    throw std::invalid_argument("schedule_binary: coverage needs one entry per shift");
  cfg_.encoding = Encoding::binary();
  cfg_.d1 = static_cast<int>(cost_.rows());
  cfg_.d2 = static_cast<int>(cost_.cols());
  cfg_.n = cfg_.d2;
  cfg_.row_mode = cfg_.d1 == 1 ? RowMode::SingleSeq : RowMode::MultiFixed;
  cfg_.obj_defs = {{"staffing_cost", Direction::Minimize, 1.0}};
}

double ScheduleBinaryProblem::compute_objective(int, const Solution& sol) const {
  double total = 0.0;
  for (int w = 0; w < cfg_.d1; ++w)
    for (int s = 0; s < cfg_.d2; ++s) total += cost_(w, s) * sol.data(w, s);
  return total;
}

double ScheduleBinaryProblem::compute_penalty(const Solution& sol) const {
  double pen = 0.0;
  for (int s = 0; s < cfg_.d2; ++s) pen += std::max(0.0, coverage_[s] - sol.data.col(s).sum());
  if (max_shifts_ > 0)
    for (int w = 0; w < cfg_.d1; ++w) pen += std::max(0.0, sol.data.row(w).sum() - max_shifts_);
  return pen;
}

std::size_t ScheduleBinaryProblem::payload_bytes() const {
  return sizeof(double) * (cost_.size() + coverage_.size());
}

}  // namespace genopt
