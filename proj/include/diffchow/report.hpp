// Machine-readable reports: a versioned JSON envelope with an input digest,
// plus converters for the common result types. Identical inputs produce
// byte-identical documents.
#ifndef DIFFCHOW_REPORT_HPP
#define DIFFCHOW_REPORT_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "diffchow/chowform.hpp"
#include "diffchow/io.hpp"
#include "diffchow/kolchin.hpp"
#include "diffchow/quasigeneric.hpp"

namespace diffchow {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "diffchow.report/1";

inline std::string fnv1a64_hex(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

inline Json report_envelope(const std::string& command,
                            std::string_view input_text, Json results) {
  Json j;
  j["schema"] = kReportSchema;
  j["command"] = command;
  j["inputs_digest"] = fnv1a64_hex(input_text);
  j["results"] = std::move(results);
  return j;
}

inline Json to_json(const NumericalPolynomial& w) {
  Json j;
  Json coeffs = Json::array();
  for (const auto& c : w.coeffs) coeffs.push_back(c.get_str());
  j["binomial_coeffs"] = std::move(coeffs);
  j["pretty"] = print_numerical(w);
  return j;
}

inline Json to_json(const DiffPoly& f) { return print_poly(f); }

inline Json to_json(const ChowFormResult& chow) {
  Json j;
  j["form"] = print_poly(chow.form);
  j["order_s"] = chow.s;
  j["dimension_d"] = chow.d;
  j["delta_degree_r"] = chow.r;
  j["leader"] = jet_name(*chow.ctx, chow.leader);
  j["leader_degree_g"] = chow.g;
  Json coords = Json::array();
  for (const auto& c : chow.chow_coords) coords.push_back(c.get_str());
  j["chow_coordinates"] = std::move(coords);
  return j;
}

inline Json to_json(const IntersectionExperiment& ex) {
  Json j;
  j["order_s"] = ex.s;
  j["t_min"] = ex.t_min;
  j["t_max"] = ex.t_max;
  j["variety_delta_dim"] = ex.variety_delta_dim;
  j["omega_v"] = to_json(ex.omega_v);
  Json rows = Json::array();
  for (std::size_t i = 0; i < ex.predicted.size(); ++i) {
    Json row;
    row["t"] = ex.t_min + static_cast<unsigned>(i);
    row["predicted"] = ex.predicted[i].get_str();
    if (ex.measured[i])
      row["measured"] = *ex.measured[i];
    else
      row["measured"] = "empty";
    rows.push_back(std::move(row));
  }
  j["dimensions"] = std::move(rows);
  if (ex.empty_at)
    j["empty_at"] = *ex.empty_at;
  else
    j["empty_at"] = nullptr;
  j["matches"] = ex.matches;
  return j;
}

}  // namespace diffchow

#endif
