// Copyright 2026 The xaimat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "xaimat/parallel.h"

#include <exception>
#include <thread>

#include "xaimat/fourier.h"
#include "xaimat/linalg.h"

namespace xaimat {

const char* to_string(Axis axis) {
  return axis == Axis::kRows ? "rows" : "cols";
}

PartitionPlan plan_partition(std::size_t total, std::size_t workers,
                             Axis axis) {
  if (total == 0) throw EmptyInputError("plan_partition: nothing to split");
  if (workers == 0) throw InvalidArgument("plan_partition: workers must be >= 1");

  PartitionPlan plan{axis, total, workers, {}};
  const std::size_t used = std::min(total, workers);
  const std::size_t base = total / used;
  const std::size_t extra = total % used;
  std::size_t start = 0;
  for (std::size_t w = 0; w < used; ++w) {
    const std::size_t length = base + (w < extra ? 1 : 0);
    plan.slices.push_back({w, start, length});
    start += length;
  }
  return plan;
}

void run_assigned(std::span<const std::size_t> owners, std::size_t workers,
                  const std::function<void(std::size_t)>& fn) {
  if (workers == 0) throw InvalidArgument("run_assigned: workers must be >= 1");
  const std::size_t tasks = owners.size();
  std::vector<std::exception_ptr> errors(tasks);

  auto drain = [&](std::size_t worker) {
    for (std::size_t t = 0; t < tasks; ++t) {
      if (owners[t] % workers != worker) continue;
      try {
        fn(t);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };

  if (workers == 1 || tasks <= 1) {
    for (std::size_t t = 0; t < tasks; ++t) {
      try {
        fn(t);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(drain, w);
    drain(0);
  }  // jthreads join here

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void run_round_robin(std::size_t tasks, std::size_t workers,
                     const std::function<void(std::size_t)>& fn) {
  if (workers == 0) throw InvalidArgument("run_round_robin: workers must be >= 1");
  std::vector<std::size_t> owners(tasks);
  for (std::size_t t = 0; t < tasks; ++t) owners[t] = t % workers;
  run_assigned(owners, workers, fn);
}

SliceOp identity_op() {
  return {"identity", [](const ComplexMatrix& m) { return m; }};
}

SliceOp scale_op(Complex factor) {
  return {"scale",
          [factor](const ComplexMatrix& m) { return scale(m, factor); }};
}

SliceOp dft_rows_op() {
  return {"dft-rows", [](const ComplexMatrix& m) {
            return matmul(m, dft_matrix(m.cols()).matrix());
          }};
}

SliceOp dft_cols_op() {
  return {"dft-cols", [](const ComplexMatrix& m) {
            return matmul(dft_matrix(m.rows()).matrix(), m);
          }};
}

namespace {

std::size_t extent(const ComplexMatrix& x, Axis axis) {
  return axis == Axis::kRows ? x.rows() : x.cols();
}

ComplexMatrix take_slice(const ComplexMatrix& x, Axis axis, const Slice& s) {
  return axis == Axis::kRows ? x.row_block(s.start, s.length)
                             : x.col_block(s.start, s.length);
}

// Stacks pieces along `axis` in the given order.
ComplexMatrix merge_slices(std::span<const ComplexMatrix> pieces, Axis axis) {
  if (pieces.empty()) throw MergeError("merge: no slices");
  const std::size_t fixed = axis == Axis::kRows ? pieces[0].cols()
                                                : pieces[0].rows();
  std::size_t stacked = 0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const std::size_t other = axis == Axis::kRows ? pieces[i].cols()
                                                  : pieces[i].rows();
    if (other != fixed) {
      throw MergeError("merge: slice " + std::to_string(i) + " has shape " +
                       to_string(pieces[i].shape()) +
                       ", inconsistent with slice 0 (" +
                       to_string(pieces[0].shape()) + ")");
    }
    stacked += axis == Axis::kRows ? pieces[i].rows() : pieces[i].cols();
  }

  if (axis == Axis::kRows) {
    ComplexMatrix out(stacked, fixed);
    auto dst = out.data().begin();
    for (const auto& p : pieces) dst = std::copy(p.data().begin(), p.data().end(), dst);
    return out;
  }
  ComplexMatrix out(fixed, stacked);
  std::size_t offset = 0;
  for (const auto& p : pieces) {
    for (std::size_t r = 0; r < fixed; ++r) {
      std::copy(p.row(r).begin(), p.row(r).end(), out.row(r).begin() + offset);
    }
    offset += p.cols();
  }
  return out;
}

void check_plan(const ComplexMatrix& x, const PartitionPlan& plan) {
  if (plan.total != extent(x, plan.axis)) {
    throw ShapeError("execute_plan: plan covers " + std::to_string(plan.total) +
                     " " + to_string(plan.axis) + " but input is " +
                     to_string(x.shape()));
  }
}

}  // namespace

ComplexMatrix execute_plan(const ComplexMatrix& x, const PartitionPlan& plan,
                           const SliceOp& op) {
  check_plan(x, plan);
  std::vector<ComplexMatrix> outputs;
  outputs.reserve(plan.slices.size());
  for (std::size_t i = 0; i < plan.slices.size(); ++i) {
    outputs.emplace_back(1, 1);
  }
  std::vector<std::size_t> owners;
  for (const auto& s : plan.slices) owners.push_back(s.worker_id);

  run_assigned(owners, plan.workers, [&](std::size_t i) {
    outputs[i] = op.apply(take_slice(x, plan.axis, plan.slices[i]));
  });
  return merge_slices(outputs, plan.axis);
}

ComplexMatrix cross_replica_sum(std::span<const ComplexMatrix> partials) {
  if (partials.empty()) {
    throw EmptyInputError("cross_replica_sum: no partials");
  }
  ComplexMatrix acc = partials[0];
  for (std::size_t i = 1; i < partials.size(); ++i) {
    if (partials[i].shape() != acc.shape()) {
      throw ShapeError("cross_replica_sum: partial " + std::to_string(i) +
                       " has shape " + to_string(partials[i].shape()) +
                       ", expected " + to_string(acc.shape()));
    }
    auto dst = acc.data();
    auto src = partials[i].data();
    for (std::size_t e = 0; e < dst.size(); ++e) dst[e] += src[e];
  }
  return acc;
}

std::vector<ComplexMatrix> execute_batch(const BatchJob& job) {
  if (job.inputs.empty()) throw EmptyInputError("execute_batch: no inputs");
  if (job.workers == 0) throw InvalidArgument("execute_batch: workers must be >= 1");

  struct Task {
    std::size_t input;
    std::size_t slice;
  };
  std::vector<PartitionPlan> plans;
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < job.inputs.size(); ++i) {
    plans.push_back(
        plan_partition(extent(job.inputs[i], job.axis), job.workers, job.axis));
    for (std::size_t s = 0; s < plans.back().slices.size(); ++s) {
      tasks.push_back({i, s});
    }
  }

  std::vector<ComplexMatrix> results(tasks.size(), ComplexMatrix(1, 1));
  run_round_robin(tasks.size(), job.workers, [&](std::size_t t) {
    const Task& task = tasks[t];
    try {
      results[t] = job.op.apply(take_slice(
          job.inputs[task.input], job.axis, plans[task.input].slices[task.slice]));
    } catch (const std::exception& e) {
      throw BatchTaskError(task.input, task.slice, e.what());
    }
  });

  std::vector<ComplexMatrix> merged;
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < job.inputs.size(); ++i) {
    const std::size_t count = plans[i].slices.size();
    try {
      merged.push_back(merge_slices(
          std::span<const ComplexMatrix>(results).subspan(cursor, count),
          job.axis));
    } catch (const MergeError& e) {
      throw MergeError("input " + std::to_string(i) + ": " + e.what());
    }
    cursor += count;
  }
  return merged;
}

}  // namespace xaimat
