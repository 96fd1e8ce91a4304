#pragma once

/* Report and table serialization. JSON via nlohmann::json for the structured
 * reports, plain CSV for plot-ready tables. All floating-point output is
 * clamped to 12 significant digits, comfortably above every solver tolerance
 * in the library; non-finite values serialize as JSON null or an empty CSV
 * cell. Reports carry their certificates and scheme provenance next to each
 * number, never bare values.
 */

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "avedim/dimension.hpp"
#include "avedim/horseshoe.hpp"
#include "avedim/pressure.hpp"

namespace avedim {

// 12 significant digits, shortest form ("%.12g").
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// The double closest to the 12-digit decimal rendering; what reports store.
inline double round_display(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_number(v).c_str(), nullptr);
}

inline nlohmann::json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_display(v);
}

inline void to_json(nlohmann::json& j, const PressureEstimate& p) {
  j = {{"value", json_number(p.value)},
       {"level", p.level},
       {"scheme", p.scheme},
       {"monotonicity_note", p.monotonicity_note}};
}

inline void to_json(nlohmann::json& j, const BowenRoot& r) {
  j = {{"t", json_number(r.t)},
       {"bracket_low", json_number(r.lo)},
       {"bracket_high", json_number(r.hi)},
       {"residual", json_number(r.residual)},
       {"level", r.level},
       {"scheme", r.scheme}};
}

inline void to_json(nlohmann::json& j, const BracketRow& r) {
  j = {{"k", r.k},
       {"block_length", 1 << r.k},
       {"t_lower", r.lower_ok ? json_number(r.t_lower) : nlohmann::json(nullptr)},
       {"t_upper", r.upper_ok ? json_number(r.t_upper) : nlohmann::json(nullptr)}};
}

inline void to_json(nlohmann::json& j, const BracketTable& t) {
  j = {{"rows", t.rows},
       {"final_lower", json_number(t.final_lower)},
       {"final_upper", json_number(t.final_upper)},
       {"notes", t.notes}};
}

inline void to_json(nlohmann::json& j, const DefectCertificate& c) {
  j = {{"level", c.level}, {"defect_per_step", json_number(c.defect)}};
}

inline void to_json(nlohmann::json& j, const HyperbolicityCertificate& c) {
  j = {{"certified", c.certified}, {"block_length", c.block_length}, {"rate", json_number(c.rate)}};
}

inline void to_json(nlohmann::json& j, const DimensionReport& r) {
  j = {{"t_unstable", r.t_u},
       {"t_stable", r.t_s},
       {"dim_total", json_number(r.dim_total)},
       {"dim_lower", json_number(r.dim_lower)},
       {"dim_upper", json_number(r.dim_upper)},
       {"unstable_brackets", r.unstable_brackets},
       {"stable_brackets", r.stable_brackets},
       {"unstable_defect", r.unstable_defect},
       {"stable_defect", r.stable_defect},
       {"unstable_expansion", r.unstable_expansion},
       {"stable_contraction", r.stable_contraction},
       {"certified", r.certified},
       {"flags", r.flags},
       {"k_max", r.k_max},
       {"tolerance", json_number(r.tol)}};
  if (r.box_count_ref.has_value())
    j["box_count_ref"] = json_number(*r.box_count_ref);
  else
    j["box_count_ref"] = nullptr;
}

inline void to_json(nlohmann::json& j, const BoxCountResult& r) {
  nlohmann::json scales = nlohmann::json::array();
  for (double s : r.scales) scales.push_back(json_number(s));
  j = {{"scales", scales},
       {"counts", r.counts},
       {"slope", json_number(r.slope)},
       {"fit_quality", json_number(r.fit_quality)},
       {"slope_stderr", json_number(r.slope_stderr)},
       {"note", r.note}};
}

inline void to_json(nlohmann::json& j, const HolderFit& f) {
  j = {{"r_lower", json_number(f.r_lower)},
       {"fit_quality", json_number(f.fit_quality)},
       {"pairs_used", f.pairs_used}};
}

inline void to_json(nlohmann::json& j, const SweepPoint& p) {
  j = {{"parameter", json_number(p.parameter)},
       {"dim_total", p.ok ? json_number(p.dim_total) : nlohmann::json(nullptr)},
       {"ok", p.ok},
       {"error", p.error}};
}

inline void to_json(nlohmann::json& j, const SweepResult& s) {
  j = {{"points", s.points}, {"max_adjacent_jump", json_number(s.max_jump)}};
}

// CSV writers. One row per record, 12 significant digits, '\n' line ends.

inline void write_points_csv(std::ostream& os, const PointCloud& cloud) {
  os << "x,y\n";
  for (const auto& p : cloud.points) os << format_number(p[0]) << ',' << format_number(p[1]) << '\n';
}

inline void write_box_count_csv(std::ostream& os, const BoxCountResult& r) {
  os << "delta,count\n";
  for (std::size_t i = 0; i < r.scales.size(); ++i)
    os << format_number(r.scales[i]) << ',' << r.counts[i] << '\n';
}

inline void write_brackets_csv(std::ostream& os, const BracketTable& t) {
  os << "k,block_length,t_lower,t_upper\n";
  for (const BracketRow& row : t.rows) {
    os << row.k << ',' << (1 << row.k) << ',';
    if (row.lower_ok) os << format_number(row.t_lower);
    os << ',';
    if (row.upper_ok) os << format_number(row.t_upper);
    os << '\n';
  }
}

inline void write_sweep_csv(std::ostream& os, const SweepResult& s) {
  os << "parameter,dim_total,ok\n";
  for (const SweepPoint& p : s.points) {
    os << format_number(p.parameter) << ',';
    if (p.ok) os << format_number(p.dim_total);
    os << ',' << (p.ok ? 1 : 0) << '\n';
  }
}

template <typename Fn>
std::string csv_to_string(Fn&& write) {
  std::ostringstream os;
  write(os);
  return os.str();
}

}  // namespace avedim
