// Copyright 2026 The islocc Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file report.hpp
 * @brief Serialization of sweep results (CSV, JSON, SVG) and the flat
 *        `key = value` configuration file format.
 *
 * CSV is the authoritative artifact. Floats are printed with 12 significant
 * digits; JSON carries exactly the values the CSV text denotes, so the two
 * decode to identical records. Undefined metrics print as `nan` in CSV and
 * `null` in JSON.
 */

#pragma once

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "islocc/sweep.hpp"

namespace islocc {

inline constexpr std::string_view kSweepCsvHeader = "p,l,lprime,theta,statistics,indist,concurrence,eof,p_lr,bell";
inline constexpr std::string_view kBellRegionCsvHeader = "p,indist,bell,violated";

inline std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// The value a 12-digit CSV field denotes.
inline double rounded(double v) {
  if (std::isnan(v)) return v;
  return std::strtod(format_real(v).c_str(), nullptr);
}

namespace detail {

inline std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline double parse_field(const std::string& s) {
  if (s == "nan") return std::nan("");
  return parse_real(s, "csv field");
}

inline nlohmann::ordered_json json_real(double v) {
  if (std::isnan(v)) return nullptr;
  return rounded(v);
}

inline double real_from_json(const nlohmann::ordered_json& j) {
  return j.is_null() ? std::nan("") : j.get<double>();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// CSV

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& rows) {
  os << kSweepCsvHeader << '\n';
  for (const auto& r : rows)
    os << format_real(r.p) << ',' << format_real(r.l) << ',' << format_real(r.lprime) << ',' << format_real(r.theta)
       << ',' << to_string(r.statistics) << ',' << format_real(r.indist) << ',' << format_real(r.concurrence) << ','
       << format_real(r.eof) << ',' << format_real(r.p_lr) << ',' << format_real(r.bell) << '\n';
}

inline std::vector<SweepRecord> read_sweep_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || detail::trim(line) != kSweepCsvHeader)
    throw Error(ErrorCode::io, "missing or unexpected sweep CSV header");
  std::vector<SweepRecord> out;
  while (std::getline(is, line)) {
    if (detail::trim(line).empty()) continue;
    const auto f = detail::split(detail::trim(line), ',');
    if (f.size() != 10) throw Error(ErrorCode::io, "sweep CSV row with " + std::to_string(f.size()) + " fields");
    SweepRecord r;
    r.p = detail::parse_field(f[0]);
    r.l = detail::parse_field(f[1]);
    r.lprime = detail::parse_field(f[2]);
    r.theta = detail::parse_field(f[3]);
    r.statistics = parse_statistics(f[4]);
    r.indist = detail::parse_field(f[5]);
    r.concurrence = detail::parse_field(f[6]);
    r.eof = detail::parse_field(f[7]);
    r.p_lr = detail::parse_field(f[8]);
    r.bell = detail::parse_field(f[9]);
    r.detected = !std::isnan(r.concurrence);
    out.push_back(r);
  }
  return out;
}

inline void write_bell_region_csv(std::ostream& os, const std::vector<BellRegionRow>& rows) {
  os << kBellRegionCsvHeader << '\n';
  for (const auto& r : rows)
    os << format_real(r.p) << ',' << format_real(r.indist) << ',' << format_real(r.bell) << ','
       << (r.violated ? "true" : "false") << '\n';
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::ordered_json sweep_to_json(const std::vector<SweepRecord>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows)
    arr.push_back({{"p", detail::json_real(r.p)},
                   {"l", detail::json_real(r.l)},
                   {"lprime", detail::json_real(r.lprime)},
                   {"theta", detail::json_real(r.theta)},
                   {"statistics", to_string(r.statistics)},
                   {"indist", detail::json_real(r.indist)},
                   {"concurrence", detail::json_real(r.concurrence)},
                   {"eof", detail::json_real(r.eof)},
                   {"p_lr", detail::json_real(r.p_lr)},
                   {"bell", detail::json_real(r.bell)}});
  return arr;
}

inline std::vector<SweepRecord> sweep_from_json(const nlohmann::ordered_json& arr) {
  if (!arr.is_array()) throw Error(ErrorCode::io, "sweep JSON must be an array");
  std::vector<SweepRecord> out;
  for (const auto& j : arr) {
    SweepRecord r;
    r.p = detail::real_from_json(j.at("p"));
    r.l = detail::real_from_json(j.at("l"));
    r.lprime = detail::real_from_json(j.at("lprime"));
    r.theta = detail::real_from_json(j.at("theta"));
    r.statistics = parse_statistics(j.at("statistics").get<std::string>());
    r.indist = detail::real_from_json(j.at("indist"));
    r.concurrence = detail::real_from_json(j.at("concurrence"));
    r.eof = detail::real_from_json(j.at("eof"));
    r.p_lr = detail::real_from_json(j.at("p_lr"));
    r.bell = detail::real_from_json(j.at("bell"));
    r.detected = !std::isnan(r.concurrence);
    out.push_back(r);
  }
  return out;
}

inline nlohmann::ordered_json bell_region_to_json(const std::vector<BellRegionRow>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows)
    arr.push_back({{"p", detail::json_real(r.p)},
                   {"indist", detail::json_real(r.indist)},
                   {"bell", detail::json_real(r.bell)},
                   {"violated", r.violated}});
  return arr;
}

inline nlohmann::ordered_json threshold_to_json(const ThresholdResult& t) {
  if (!t.found) return {{"threshold", nullptr}};
  return {{"threshold", detail::json_real(t.indist)},
          {"l", detail::json_real(t.l)},
          {"worst_p", detail::json_real(t.worst_p)},
          {"min_bell", detail::json_real(t.min_bell)},
          {"concurrence", detail::json_real(t.concurrence)},
          {"iterations", t.iterations}};
}

inline void write_threshold_text(std::ostream& os, const ThresholdResult& t) {
  if (!t.found) {
    os << "threshold = none\n";
    return;
  }
  os << "threshold = " << format_real(t.indist) << '\n'
     << "l = " << format_real(t.l) << '\n'
     << "worst_p = " << format_real(t.worst_p) << '\n'
     << "min_bell = " << format_real(t.min_bell) << '\n'
     << "concurrence = " << format_real(t.concurrence) << '\n'
     << "iterations = " << t.iterations << '\n';
}

// ---------------------------------------------------------------------------
// SVG

namespace detail {

struct Frame {
  double width = 640, height = 420, left = 60, right = 20, top = 20, bottom = 50;
  double x(double v, double lo, double hi) const { return left + (v - lo) / (hi - lo) * (width - left - right); }
  double y(double v, double lo, double hi) const { return height - bottom - (v - lo) / (hi - lo) * (height - top - bottom); }
};

inline void svg_axes(std::ostream& os, const Frame& f, std::string_view xlabel, std::string_view ylabel, double ymax) {
  os << "<line x1=\"" << f.left << "\" y1=\"" << f.height - f.bottom << "\" x2=\"" << f.width - f.right << "\" y2=\""
     << f.height - f.bottom << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << f.left << "\" y1=\"" << f.top << "\" x2=\"" << f.left << "\" y2=\"" << f.height - f.bottom
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << f.width / 2 << "\" y=\"" << f.height - 12 << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  os << "<text x=\"16\" y=\"" << f.height / 2 << "\" transform=\"rotate(-90 16 " << f.height / 2
     << ")\" text-anchor=\"middle\">" << ylabel << "</text>\n";
  for (int k = 0; k <= 4; ++k) {
    const double v = k / 4.0;
    os << "<text x=\"" << f.x(v, 0, 1) << "\" y=\"" << f.height - f.bottom + 16 << "\" font-size=\"11\" text-anchor=\"middle\">"
       << format_real(v) << "</text>\n";
    os << "<text x=\"" << f.left - 6 << "\" y=\"" << f.y(v * ymax, 0, ymax) + 4
       << "\" font-size=\"11\" text-anchor=\"end\">" << format_real(v * ymax) << "</text>\n";
  }
}

}  // namespace detail

/// Concurrence against p, one polyline per outer-grid value.
inline void write_sweep_svg(std::ostream& os, const std::vector<SweepRecord>& rows, std::size_t per_curve) {
  detail::Frame f;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width << "\" height=\"" << f.height << "\">\n";
  detail::svg_axes(os, f, "p", "concurrence", 1.0);
  static constexpr const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#7f7f7f"};
  for (std::size_t start = 0, c = 0; per_curve > 0 && start < rows.size(); start += per_curve, ++c) {
    os << "<polyline fill=\"none\" stroke=\"" << colors[c % 7] << "\" points=\"";
    for (std::size_t i = start; i < std::min(rows.size(), start + per_curve); ++i)
      if (rows[i].detected) os << f.x(rows[i].p, 0, 1) << ',' << f.y(rows[i].concurrence, 0, 1) << ' ';
    os << "\"/>\n";
  }
  os << "</svg>\n";
}

/// Violation map over (p, I_LR): filled cells where B > 2.
inline void write_bell_region_svg(std::ostream& os, const std::vector<BellRegionRow>& rows, std::size_t p_steps,
                                  std::size_t outer_steps) {
  detail::Frame f;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width << "\" height=\"" << f.height << "\">\n";
  detail::svg_axes(os, f, "p", "I_LR", 1.0);
  const double cw = (f.width - f.left - f.right) / static_cast<double>(std::max<std::size_t>(p_steps, 1));
  const double ch = (f.height - f.top - f.bottom) / static_cast<double>(std::max<std::size_t>(outer_steps, 1));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::size_t i = k % p_steps;
    const std::size_t j = k / p_steps;
    os << "<rect x=\"" << f.left + static_cast<double>(i) * cw << "\" y=\""
       << f.height - f.bottom - static_cast<double>(j + 1) * ch << "\" width=\"" << cw << "\" height=\"" << ch
       << "\" fill=\"" << (rows[k].violated ? "#d62728" : "#f0f0f0") << "\"/>\n";
  }
  os << "</svg>\n";
}

// ---------------------------------------------------------------------------
// Config files

/// Parses `key = value` lines; `#` starts a comment, dashes in keys become
/// underscores.
inline std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t line_no = 0;
  for (const auto& raw : detail::split(text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorCode::config, "config line " + std::to_string(line_no) + ": expected key = value");
    std::string key(detail::trim(line.substr(0, eq)));
    const std::string value(detail::trim(line.substr(eq + 1)));
    if (key.empty() || value.empty())
      throw Error(ErrorCode::config, "config line " + std::to_string(line_no) + ": empty key or value");
    for (auto& ch : key)
      if (ch == '-') ch = '_';
    out.emplace_back(std::move(key), value);
  }
  return out;
}

inline SweepConfig parse_sweep_config(std::string_view text, SweepConfig base = {}) {
  for (const auto& [k, v] : parse_config_text(text)) apply_setting(base, k, v);
  return base;
}

}  // namespace islocc
