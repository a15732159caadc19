#pragma once

#include <json.hpp>

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "critent/analysis.hpp"
#include "critent/error.hpp"
#include "critent/sweep.hpp"

namespace critent::io {

inline constexpr const char* kCsvHeader = "model,T,lambda,N,r,S_i,S_j,S_ij,MI,tag";

/// 12 significant digits, shortest form.
inline std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

/// Unit notes emitted as `#` comment lines ahead of the header.
inline std::vector<std::string> unit_notes(const std::string& model) {
  std::vector<std::string> notes;
  if (model == "dimer") notes.push_back("T in units of the exchange coupling");
  if (model == "ising2d") {
    notes.push_back("T in units of Ising coupling");
    notes.push_back("r = separation along the lattice diagonal; N not applicable");
  }
  if (model == "tfim") notes.push_back("T and lambda in units of the transverse field");
  notes.push_back("entropies in bits; error rows carry the diagnostic in tag");
  return notes;
}

inline void write_csv(std::ostream& out, const std::vector<analysis::SweepRecord>& records,
                      const std::vector<std::string>& notes = {}) {
  for (const auto& n : notes) out << "# " << n << '\n';
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.model << ',' << format_number(r.temperature) << ','
        << (r.coupling ? format_number(*r.coupling) : "") << ','
        << (r.sites ? std::to_string(*r.sites) : "") << ',' << r.separation << ',';
    if (r.ok()) {
      out << format_number(r.s_i) << ',' << format_number(r.s_j) << ',' << format_number(r.s_ij)
          << ',' << format_number(r.mutual) << ',' << csv_field(r.tag);
    } else {
      out << ",,,," << csv_field("error: " + *r.error);
    }
    out << '\n';
  }
}

inline nlohmann::json to_json(const analysis::SweepRecord& r) {
  nlohmann::json j;
  j["model"] = r.model;
  j["T"] = r.temperature;
  j["lambda"] = r.coupling ? nlohmann::json(*r.coupling) : nlohmann::json(nullptr);
  j["N"] = r.sites ? nlohmann::json(*r.sites) : nlohmann::json(nullptr);
  j["r"] = r.separation;
  if (r.ok()) {
    j["S_i"] = r.s_i;
    j["S_j"] = r.s_j;
    j["S_ij"] = r.s_ij;
    j["MI"] = r.mutual;
  } else {
    j["error"] = *r.error;
  }
  j["tag"] = r.tag;
  return j;
}

inline nlohmann::json to_json(const std::vector<analysis::SweepRecord>& records,
                              const std::vector<std::string>& notes = {}) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : records) rows.push_back(to_json(r));
  return {{"notes", notes}, {"records", rows}};
}

inline nlohmann::json to_json(const analysis::FitResult& f) {
  return {{"kind", analysis::to_string(f.kind)},
          {"coefficients", f.coefficients},
          {"amplitude", f.amplitude},
          {"residual_norm", f.residual_norm},
          {"data_range", f.data_range},
          {"relative_residual", f.relative_residual()},
          {"point_count", f.point_count},
          {"x_min", f.x_min},
          {"x_max", f.x_max}};
}

inline analysis::FitResult fit_from_json(const nlohmann::json& j) {
  analysis::FitResult f;
  const auto kind = analysis::fit_kind_from_string(j.at("kind").get<std::string>());
  if (!kind) throw ValidationError("fit_kind", "unknown fit kind " + j.at("kind").dump());
  f.kind = *kind;
  f.coefficients = j.at("coefficients").get<std::vector<double>>();
  f.amplitude = j.at("amplitude").get<double>();
  f.residual_norm = j.at("residual_norm").get<double>();
  f.data_range = j.at("data_range").get<double>();
  f.point_count = j.at("point_count").get<std::size_t>();
  f.x_min = j.at("x_min").get<double>();
  f.x_max = j.at("x_max").get<double>();
  return f;
}

}  // namespace critent::io
