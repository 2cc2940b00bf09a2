#include "slideopt/dataio.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace slideopt {

namespace {

bool parse_full_double(const std::string& tok, double* out) {
  if (tok.empty()) return false;
  const char* begin = tok.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + tok.size()) return false;
  *out = v;
  return true;
}

bool parse_full_long(const std::string& tok, long* out) {
  if (tok.empty()) return false;
  const char* begin = tok.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end != begin + tok.size()) return false;
  *out = v;
  return true;
}

}  // namespace

SparseDataset parse_libsvm(std::istream& in) {
  SparseDataset out;
  std::string raw;
  long line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);

    std::istringstream tokens(raw);
    std::string tok;
    if (!(tokens >> tok)) continue;  // blank or comment-only line

    SparseRow row;
    if (!parse_full_double(tok, &row.label))
      throw ParseError(line_no, "invalid label '" + tok + "'");

    long prev_index = 0;
    while (tokens >> tok) {
      const std::size_t colon = tok.find(':');
      if (colon == std::string::npos)
        throw ParseError(line_no, "expected index:value, got '" + tok + "'");
      long index = 0;
      if (!parse_full_long(tok.substr(0, colon), &index) || index < 1)
        throw ParseError(line_no, "invalid feature index in '" + tok + "'");
      if (index <= prev_index)
        throw ParseError(line_no,
                         "feature indices must be strictly increasing, got '" +
                             tok + "'");
      double value = 0.0;
      if (!parse_full_double(tok.substr(colon + 1), &value))
        throw ParseError(line_no, "invalid feature value in '" + tok + "'");
      row.entries.push_back(SparseEntry{index, value});
      prev_index = index;
    }
    out.max_index = std::max(out.max_index, prev_index);
    out.rows.push_back(std::move(row));
  }
  return out;
}

SparseDataset parse_libsvm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_libsvm(in);
}

void write_libsvm(std::ostream& out, const SparseDataset& data) {
  for (const SparseRow& row : data.rows) {
    out << format_double(row.label);
    for (const SparseEntry& e : row.entries)
      out << ' ' << e.index << ':' << format_double(e.value);
    out << '\n';
  }
}

Dataset SparseDataset::densify(std::size_t features) const {
  if (features == 0) features = static_cast<std::size_t>(max_index);
  if (features < static_cast<std::size_t>(max_index))
    throw std::invalid_argument("densify: dataset has larger feature indices");
  if (features == 0)
    throw std::invalid_argument("densify: dataset has no features");
  Dataset dense;
  dense.x = Matrix(rows.size(), features);
  dense.y.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    dense.y[i] = rows[i].label;
    for (const SparseEntry& e : rows[i].entries)
      dense.x.at(i, static_cast<std::size_t>(e.index - 1)) = e.value;
  }
  return dense;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

constexpr const char* kCsvHeader =
    "k,dist_sq,r_gap,lyapunov,comm_rounds,grad_p,grad_q,P_calls,Q_calls,"
    "inner_iters";
constexpr const char* kConfigPrefix = "# config: ";

std::string opt_field(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

nlohmann::json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

void write_csv(std::ostream& out, const RunTrace& trace) {
  if (!trace.config_json.empty())
    out << kConfigPrefix << trace.config_json << '\n';
  out << kCsvHeader << '\n';
  for (const TraceRecord& r : trace.records) {
    out << r.k << ',' << opt_field(r.dist_sq) << ',' << opt_field(r.r_gap)
        << ',' << opt_field(r.lyapunov) << ',' << r.comm_rounds << ','
        << r.grad_p << ',' << r.grad_q << ',' << r.p_calls << ',' << r.q_calls
        << ',' << r.inner_iters << '\n';
  }
}

void write_json(std::ostream& out, const RunTrace& trace) {
  nlohmann::json doc;
  doc["config"] = trace.config_json.empty()
                      ? nlohmann::json(nullptr)
                      : nlohmann::json::parse(trace.config_json);
  doc["records"] = nlohmann::json::array();
  for (const TraceRecord& r : trace.records) {
    nlohmann::json row;
    row["k"] = r.k;
    row["dist_sq"] = opt_json(r.dist_sq);
    row["r_gap"] = opt_json(r.r_gap);
    row["lyapunov"] = opt_json(r.lyapunov);
    row["comm_rounds"] = r.comm_rounds;
    row["grad_p"] = r.grad_p;
    row["grad_q"] = r.grad_q;
    row["P_calls"] = r.p_calls;
    row["Q_calls"] = r.q_calls;
    row["inner_iters"] = r.inner_iters;
    doc["records"].push_back(std::move(row));
  }
  doc["solution"] = trace.solution;
  out << doc.dump(2) << '\n';
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::optional<double> parse_opt_field(const std::string& field, long line_no) {
  if (field.empty()) return std::nullopt;
  double v = 0.0;
  if (!parse_full_double(field, &v))
    throw ParseError(line_no, "invalid numeric field '" + field + "'");
  return v;
}

long parse_long_field(const std::string& field, long line_no) {
  long v = 0;
  if (!parse_full_long(field, &v))
    throw ParseError(line_no, "invalid integer field '" + field + "'");
  return v;
}

RunTrace read_csv(std::istream& in) {
  RunTrace trace;
  std::string line;
  long line_no = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind(kConfigPrefix, 0) == 0)
        trace.config_json = line.substr(std::string(kConfigPrefix).size());
      continue;
    }
    if (!seen_header) {
      if (line != kCsvHeader)
        throw ParseError(line_no, "unexpected header '" + line + "'");
      seen_header = true;
      continue;
    }
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 10)
      throw ParseError(line_no, "expected 10 fields, got " +
                                    std::to_string(f.size()));
    TraceRecord r;
    r.k = parse_long_field(f[0], line_no);
    r.dist_sq = parse_opt_field(f[1], line_no);
    r.r_gap = parse_opt_field(f[2], line_no);
    r.lyapunov = parse_opt_field(f[3], line_no);
    r.comm_rounds = parse_long_field(f[4], line_no);
    r.grad_p = parse_long_field(f[5], line_no);
    r.grad_q = parse_long_field(f[6], line_no);
    r.p_calls = parse_long_field(f[7], line_no);
    r.q_calls = parse_long_field(f[8], line_no);
    r.inner_iters = parse_long_field(f[9], line_no);
    trace.records.push_back(std::move(r));
  }
  if (!seen_header) throw ParseError(line_no, "missing trace header");
  return trace;
}

std::optional<double> json_opt(const nlohmann::json& v) {
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

RunTrace read_json(std::istream& in) {
  nlohmann::json doc = nlohmann::json::parse(in);
  RunTrace trace;
  if (doc.contains("config") && !doc["config"].is_null())
    trace.config_json = doc["config"].dump();
  for (const nlohmann::json& row : doc.at("records")) {
    TraceRecord r;
    r.k = row.at("k").get<long>();
    r.dist_sq = json_opt(row.at("dist_sq"));
    r.r_gap = json_opt(row.at("r_gap"));
    r.lyapunov = json_opt(row.at("lyapunov"));
    r.comm_rounds = row.at("comm_rounds").get<long>();
    r.grad_p = row.at("grad_p").get<long>();
    r.grad_q = row.at("grad_q").get<long>();
    r.p_calls = row.at("P_calls").get<long>();
    r.q_calls = row.at("Q_calls").get<long>();
    r.inner_iters = row.at("inner_iters").get<long>();
    trace.records.push_back(std::move(r));
  }
  if (doc.contains("solution"))
    trace.solution = doc["solution"].get<Vec>();
  return trace;
}

}  // namespace

void write_trace(std::ostream& out, const RunTrace& trace, TraceFormat format) {
  if (format == TraceFormat::csv)
    write_csv(out, trace);
  else
    write_json(out, trace);
}

std::string trace_to_string(const RunTrace& trace, TraceFormat format) {
  std::ostringstream out;
  write_trace(out, trace, format);
  return out.str();
}

RunTrace read_trace(std::istream& in, TraceFormat format) {
  return format == TraceFormat::csv ? read_csv(in) : read_json(in);
}

}  // namespace slideopt
