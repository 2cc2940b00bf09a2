#ifndef SLIDEOPT_DATAIO_HPP
#define SLIDEOPT_DATAIO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "slideopt/problems.hpp"
#include "slideopt/trace.hpp"

// Sparse dataset ("<label> <index>:<value> ...", '#' comments, 1-based
// strictly increasing indices) parsing with line-located errors, and trace
// serialization.  Doubles are written with the shortest representation that
// round-trips, so a written file reparses to identical values.

namespace slideopt {

struct ParseError : std::runtime_error {
  long line;  // 1-based physical line number

  ParseError(long line_number, const std::string& message)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + message),
        line(line_number) {}
};

struct SparseEntry {
  long index = 0;  // 1-based
  double value = 0.0;
};

struct SparseRow {
  double label = 0.0;
  std::vector<SparseEntry> entries;
};

struct SparseDataset {
  std::vector<SparseRow> rows;
  long max_index = 0;

  // Zero-filled dense matrix; features = 0 means use max_index columns.
  Dataset densify(std::size_t features = 0) const;
};

// Total: every input yields either a dataset or a ParseError naming the line.
SparseDataset parse_libsvm(std::istream& in);
SparseDataset parse_libsvm_file(const std::string& path);
void write_libsvm(std::ostream& out, const SparseDataset& data);

enum class TraceFormat { csv, json };

// CSV: optional "# config: {...}" comment, fixed header
// k,dist_sq,r_gap,lyapunov,comm_rounds,grad_p,grad_q,P_calls,Q_calls,inner_iters,
// absent metrics as empty fields.  JSON: {"config":..., "records": [...],
// "solution": [...]} with absent metrics as null.
void write_trace(std::ostream& out, const RunTrace& trace, TraceFormat format);
std::string trace_to_string(const RunTrace& trace, TraceFormat format);
RunTrace read_trace(std::istream& in, TraceFormat format);

// Shortest decimal that parses back to exactly v.
std::string format_double(double v);

}  // namespace slideopt

#endif  // SLIDEOPT_DATAIO_HPP
