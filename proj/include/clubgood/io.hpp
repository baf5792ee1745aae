#ifndef CLUBGOOD_IO_HPP
#define CLUBGOOD_IO_HPP

// Serialization of results: JSON (snake_case keys mirroring the domain
// types), fixed-column CSV and small standalone SVG charts.

#include <clubgood/congestion_index.hpp>
#include <clubgood/equilibrium.hpp>
#include <clubgood/scenario.hpp>

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace clubgood {

/// Shortest decimal string that parses back to the same double.
std::string format_number(double value);

std::optional<Zone> parse_zone(std::string_view name);
std::optional<SolveMethod> parse_solve_method(std::string_view name);

void to_json(nlohmann::json& j, const ModelParams& p);
ModelParams params_from_json(const nlohmann::json& j);  // validates
void to_json(nlohmann::json& j, const EquilibriumResult& r);
void from_json(const nlohmann::json& j, EquilibriumResult& r);
void to_json(nlohmann::json& j, const ZoneDiagnosis& d);
void from_json(const nlohmann::json& j, ZoneDiagnosis& d);
void to_json(nlohmann::json& j, const CurveSample& c);
void from_json(const nlohmann::json& j, CurveSample& c);
void to_json(nlohmann::json& j, const SweepResult& s);
void from_json(const nlohmann::json& j, SweepResult& s);
void to_json(nlohmann::json& j, const FractureReport& r);
void from_json(const nlohmann::json& j, FractureReport& r);
void to_json(nlohmann::json& j, const IndexSeries& s);
void from_json(const nlohmann::json& j, IndexSeries& s);
void to_json(nlohmann::json& j, const PlaceboComparison& p);
void from_json(const nlohmann::json& j, PlaceboComparison& p);

/// Result of `solve`: the equilibrium and, when an actual intensity was
/// given, its diagnosis and congestion ratio.
struct SolveReport {
  std::string scenario;
  ModelParams params;
  EquilibriumResult equilibrium;
  std::optional<ZoneDiagnosis> diagnosis;
};

void to_json(nlohmann::json& j, const SolveReport& r);

// CSV. Headers:
//   solve     m_star,w_star,mb_at_star,mc_at_star,soc_value,method,m_actual,zone,gap,congestion_ratio
//   curve     m,benefit,cost,welfare
//   sweep     param_value,m_star,w_star,zone      (rejected rows: "error: <reason>" in zone)
//   fracture  label,capacity,m_star,zone,welfare_at_actual,conflict
//   index     year,count,total
//   placebo   year_from,year_to,treatment_ratio,control_ratio,divergence
void write_csv(std::ostream& out, const SolveReport& r);
void write_csv(std::ostream& out, const CurveSample& c);
void write_csv(std::ostream& out, const SweepResult& s);
void write_csv(std::ostream& out, const FractureReport& r);
void write_csv(std::ostream& out, const IndexSeries& s);
void write_csv(std::ostream& out, const PlaceboComparison& p, int year_from,
               int year_to);

/// Parses the `year,count,total` format back into a series.
IndexSeries read_index_csv(std::istream& in, std::string label);
IndexSeries load_index_csv(const std::string& path);

// SVG: 800x500 canvas, linear axes with 10 ticks each.
std::string render_svg(const CurveSample& c);   // polylines B, C, W + M* line
std::string render_svg(const IndexSeries& s);   // one polyline of counts

}  // namespace clubgood

// ModelParams has no default state, so it needs a value-returning serializer.
template <>
struct nlohmann::adl_serializer<clubgood::ModelParams> {
  static clubgood::ModelParams from_json(const nlohmann::json& j) {
    return clubgood::params_from_json(j);
  }
  static void to_json(nlohmann::json& j, const clubgood::ModelParams& p) {
    clubgood::to_json(j, p);
  }
};

#endif  // CLUBGOOD_IO_HPP
