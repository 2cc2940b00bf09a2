#ifndef SLIDEOPT_TRACE_HPP
#define SLIDEOPT_TRACE_HPP

#include <optional>
#include <string>
#include <vector>

#include "slideopt/vec.hpp"

namespace slideopt {

// One row per completed outer iteration.  k is the 0-based index of the
// iteration that was just finished; dist_sq / r_gap / lyapunov describe the
// iterates it produced and stay absent when the optimum is unknown.  Counter
// columns are cumulative snapshots.
struct TraceRecord {
  long k = 0;
  std::optional<double> dist_sq;
  std::optional<double> r_gap;
  std::optional<double> lyapunov;
  long comm_rounds = 0;
  long grad_p = 0;
  long grad_q = 0;
  long p_calls = 0;
  long q_calls = 0;
  long inner_iters = 0;
};

struct RunTrace {
  std::vector<TraceRecord> records;
  Vec solution;             // the point the run reports as its answer
  std::string config_json;  // resolved configuration, embedded on serialization
};

}  // namespace slideopt

#endif  // SLIDEOPT_TRACE_HPP
