#pragma once

#include <charconv>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <envsel/env.hpp>
#include <envsel/errors.hpp>
#include <envsel/modelfit.hpp>

namespace envsel {

namespace detail {

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

inline double parse_double(std::string_view cell, std::size_t line_no) {
  const std::string_view t = trim(cell);
  if (t.empty()) {
    throw validation_error("line " + std::to_string(line_no) + ": missing value", line_no);
  }
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw validation_error(
        "line " + std::to_string(line_no) + ": '" + std::string(t) + "' is not a number", line_no);
  }
  return out;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path.string() + " for reading");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  if (in.bad()) throw io_error("error while reading " + path.string());
  // Ignore trailing blank lines.
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

}  // namespace detail

// Writes content to a temporary sibling and renames it into place, so a
// failed run never leaves a partial file.
inline void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw io_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw io_error("error while writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw io_error("cannot replace " + path.string());
  }
}

// Curve CSV: header `k,v`, then one row per k with k ascending from 0 and no
// gaps or duplicates.
inline std::vector<double> read_curve_csv(const std::filesystem::path& path) {
  const std::vector<std::string> lines = detail::read_lines(path);
  if (lines.empty() || detail::trim(lines[0]) != "k,v") {
    throw validation_error(path.string() + ": expected header 'k,v'");
  }
  std::vector<double> values;
  values.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = detail::split_fields(lines[i]);
    if (fields.size() != 2) {
      throw validation_error(path.string() + ": line " + std::to_string(i + 1) +
                             ": expected 'k,v'");
    }
    const double k = detail::parse_double(fields[0], i + 1);
    const std::size_t expected = values.size();
    if (k != static_cast<double>(expected)) {
      throw validation_error(path.string() + ": line " + std::to_string(i + 1) + ": expected k=" +
                             std::to_string(expected) + " (ascending from 0, no gaps)");
    }
    values.push_back(detail::parse_double(fields[1], i + 1));
  }
  if (values.size() < 2) {
    throw validation_error(path.string() + ": curve needs at least rows k=0 and k=1");
  }
  return values;
}

inline void write_curve_csv(const std::filesystem::path& path, std::span<const double> values) {
  std::ostringstream out;
  out << "k,v\n";
  for (std::size_t k = 0; k < values.size(); ++k) {
    out << k << ',' << detail::format_double(values[k]) << '\n';
  }
  atomic_write_file(path, out.str());
}

// Dataset CSV: header with feature names and a final `target` column; every
// cell numeric, no blanks.
inline Dataset read_dataset_csv(const std::filesystem::path& path) {
  const std::vector<std::string> lines = detail::read_lines(path);
  if (lines.empty()) throw validation_error(path.string() + ": empty file");
  const auto header = detail::split_fields(lines[0]);
  if (header.size() < 2 || detail::trim(header.back()) != "target") {
    throw validation_error(path.string() + ": header must list features then 'target'");
  }
  Dataset data;
  data.n_features = header.size() - 1;
  for (std::size_t j = 0; j < data.n_features; ++j) {
    data.names.emplace_back(detail::trim(header[j]));
  }
  data.n_rows = lines.size() - 1;
  data.x.reserve(data.n_rows * data.n_features);
  data.y.reserve(data.n_rows);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = detail::split_fields(lines[i]);
    if (fields.size() != header.size()) {
      throw validation_error(path.string() + ": line " + std::to_string(i + 1) + ": expected " +
                             std::to_string(header.size()) + " fields");
    }
    for (std::size_t j = 0; j < data.n_features; ++j) {
      data.x.push_back(detail::parse_double(fields[j], i + 1));
    }
    data.y.push_back(detail::parse_double(fields.back(), i + 1));
  }
  data.validate();
  return data;
}

inline void write_dataset_csv(const std::filesystem::path& path, const Dataset& data) {
  std::ostringstream out;
  for (const std::string& name : data.names) out << name << ',';
  out << "target\n";
  for (std::size_t i = 0; i < data.n_rows; ++i) {
    for (std::size_t j = 0; j < data.n_features; ++j) {
      out << detail::format_double(data.at(i, j)) << ',';
    }
    out << detail::format_double(data.y[i]) << '\n';
  }
  atomic_write_file(path, out.str());
}

// Trace CSV: `K,i_env` rows.
inline void write_trace_csv(const std::filesystem::path& path,
                            std::span<const TracePoint> trace) {
  std::ostringstream out;
  out << "K,i_env\n";
  for (const TracePoint& p : trace) {
    out << p.K << ',' << detail::format_double(p.i_env) << '\n';
  }
  atomic_write_file(path, out.str());
}

// Ranking sidecar: `rank,feature,w_bar`, one row per ranked feature. w_bar
// cells stay empty when the built curve is flat (importance undefined).
inline void write_ranking_csv(const std::filesystem::path& path, const RankedFeatures& ranking,
                              std::span<const std::string> names,
                              std::span<const double> w_bar) {
  std::ostringstream out;
  out << "rank,feature,w_bar\n";
  for (std::size_t i = 0; i < ranking.order.size(); ++i) {
    out << (i + 1) << ',' << names[ranking.order[i]] << ',';
    if (i < w_bar.size()) out << detail::format_double(w_bar[i]);
    out << '\n';
  }
  atomic_write_file(path, out.str());
}

}  // namespace envsel
