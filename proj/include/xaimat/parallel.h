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

#ifndef XAIMAT_PARALLEL_H_
#define XAIMAT_PARALLEL_H_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "xaimat/errors.h"
#include "xaimat/matrix.h"

namespace xaimat {

enum class Axis { kRows, kCols };

const char* to_string(Axis axis);

struct Slice {
  std::size_t worker_id = 0;
  std::size_t start = 0;
  std::size_t length = 0;

  friend bool operator==(const Slice&, const Slice&) = default;
};

// The tracking table: which worker owns which contiguous slice. Slices are
// balanced (lengths differ by at most one, longer slices first) and cover
// [0, total) in ascending order.
struct PartitionPlan {
  Axis axis = Axis::kRows;
  std::size_t total = 0;
  std::size_t workers = 0;
  std::vector<Slice> slices;
};

PartitionPlan plan_partition(std::size_t total, std::size_t workers, Axis axis);

// Runs fn(t) for every task t in [0, owners.size()) on `workers` threads.
// Task t runs on worker owners[t]; a worker executes its tasks in ascending
// order. With one worker everything runs on the calling thread. If tasks
// throw, the exception of the lowest failing task index is rethrown after
// all workers join.
void run_assigned(std::span<const std::size_t> owners, std::size_t workers,
                  const std::function<void(std::size_t)>& fn);

// Static round-robin convenience wrapper over run_assigned.
void run_round_robin(std::size_t tasks, std::size_t workers,
                     const std::function<void(std::size_t)>& fn);

// A side-effect-free transform applied to one slice of a matrix.
struct SliceOp {
  std::string name;
  std::function<ComplexMatrix(const ComplexMatrix&)> apply;
};

SliceOp identity_op();
SliceOp scale_op(Complex factor);
// 1-D unitary DFT of every row (slice * W_N) or every column (W_M * slice).
SliceOp dft_rows_op();
SliceOp dft_cols_op();

ComplexMatrix execute_plan(const ComplexMatrix& x, const PartitionPlan& plan,
                           const SliceOp& op);

// Element-wise sum of the partials, folded in ascending index order.
ComplexMatrix cross_replica_sum(std::span<const ComplexMatrix> partials);

struct BatchJob {
  std::vector<ComplexMatrix> inputs;
  SliceOp op;
  Axis axis = Axis::kRows;
  std::size_t workers = 1;
};

// A per-slice failure inside execute_batch, tagged with where it happened.
class BatchTaskError : public Error {
 public:
  BatchTaskError(std::size_t input_index, std::size_t slice_index,
                 const std::string& what)
      : Error("input " + std::to_string(input_index) + ", slice " +
              std::to_string(slice_index) + ": " + what),
        input_index_(input_index),
        slice_index_(slice_index) {}

  std::size_t input_index() const { return input_index_; }
  std::size_t slice_index() const { return slice_index_; }

 private:
  std::size_t input_index_;
  std::size_t slice_index_;
};

// Slices of all inputs form one flattened FIFO task pool, dealt round-robin
// to the workers; outputs are reassembled per input through each input's plan.
std::vector<ComplexMatrix> execute_batch(const BatchJob& job);

}  // namespace xaimat

#endif  // XAIMAT_PARALLEL_H_
