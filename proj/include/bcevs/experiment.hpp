#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "bcevs/edit_model.hpp"

namespace bcevs {

struct ExperimentConfig {
  // cycle, path, tree (random), trees (every free tree), planted, random
  std::string family = "cycle";
  std::size_t from = 6;
  std::size_t to = 18;
  std::size_t step = 6;
  std::size_t count = 1;  // instances per size for random families
  Mode mode = Mode::bcevs();
  std::uint64_t seed = 1;
  bool omit_timing = false;
};

// CSV with one row per instance:
//   n,m,k,mode,value,kernel_size,lower_bound,nodes,time_ms,reference
// k is the optimum, used as the kernel budget. reference is an independent
// value when one exists: the oracle optimum for trees, the planted cost for
// planted instances. time_ms is dropped with omit_timing.
std::string run_experiment(const ExperimentConfig& config);

}  // namespace bcevs
