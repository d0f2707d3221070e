#include "mpgmres/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "mpgmres/errors.hpp"

namespace mpgmres {

namespace {

constexpr std::string_view kHeader = "outer,inner,arnoldi_residual,backward_error,event,elapsed_s";

void put_double(std::ostream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

template <class T>
T parse_field(std::string_view text, std::size_t line, const char* what) {
  T v{};
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

std::string_view to_string(TraceEvent e) noexcept {
  switch (e) {
    case TraceEvent::none: return "";
    case TraceEvent::restart: return "restart";
    case TraceEvent::breakdown: return "breakdown";
    case TraceEvent::converged: return "converged";
    case TraceEvent::exhausted: return "exhausted";
  }
  return "";
}

TraceEvent parse_trace_event(std::string_view text) {
  if (text.empty() || text == "none") return TraceEvent::none;
  if (text == "restart") return TraceEvent::restart;
  if (text == "breakdown") return TraceEvent::breakdown;
  if (text == "converged") return TraceEvent::converged;
  if (text == "exhausted") return TraceEvent::exhausted;
  throw ConfigError("unknown trace event '" + std::string(text) + "'");
}

std::size_t ConvergenceTrace::inner_samples() const noexcept {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const TraceRecord& r) {
    return r.inner >= 1 && r.backward_error.has_value();
  }));
}

std::vector<double> ConvergenceTrace::cycle_residuals(int outer) const {
  std::vector<double> out;
  for (const auto& r : records) {
    if (r.outer == outer) out.push_back(r.arnoldi_residual);
  }
  return out;
}

std::vector<TraceRecord> ConvergenceTrace::cycle_starts() const {
  std::vector<TraceRecord> out;
  for (const auto& r : records) {
    if (r.inner == 0) out.push_back(r);
  }
  return out;
}

int ConvergenceTrace::cycles() const noexcept {
  std::set<int> seen;
  for (const auto& r : records) seen.insert(r.outer);
  return static_cast<int>(seen.size());
}

void write_csv(const ConvergenceTrace& trace, std::ostream& out) {
  out << kHeader << '\n';
  for (const auto& r : trace.records) {
    out << r.outer << ',' << r.inner << ',';
    put_double(out, r.arnoldi_residual);
    out << ',';
    if (r.backward_error) put_double(out, *r.backward_error);
    out << ',' << to_string(r.event) << ',';
    put_double(out, r.elapsed);
    out << '\n';
  }
}

void write_csv(const ConvergenceTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write trace file " + path.string());
  write_csv(trace, out);
  if (!out) throw Error("write failed for " + path.string());
}

ConvergenceTrace read_csv(std::istream& in) {
  ConvergenceTrace trace;
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kHeader) throw ParseError(1, "missing trace header");
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest(line);
    while (true) {
      const auto pos = rest.find(',');
      f.push_back(rest.substr(0, pos));
      if (pos == std::string_view::npos) break;
      rest.remove_prefix(pos + 1);
    }
    if (f.size() != 6) throw ParseError(line_no, "expected 6 fields");
    TraceRecord r;
    r.outer = parse_field<int>(f[0], line_no, "outer");
    r.inner = parse_field<int>(f[1], line_no, "inner");
    r.arnoldi_residual = parse_field<double>(f[2], line_no, "arnoldi_residual");
    if (!f[3].empty()) r.backward_error = parse_field<double>(f[3], line_no, "backward_error");
    try {
      r.event = parse_trace_event(f[4]);
    } catch (const ConfigError& e) {
      throw ParseError(line_no, e.what());
    }
    r.elapsed = parse_field<double>(f[5], line_no, "elapsed_s");
    trace.records.push_back(r);
  }
  return trace;
}

ConvergenceTrace read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open trace file " + path.string());
  return read_csv(in);
}

}  // namespace mpgmres
