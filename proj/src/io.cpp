#include <clubgood/io.hpp>

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace clubgood {

using nlohmann::json;

std::string format_number(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

std::optional<Zone> parse_zone(std::string_view name) {
  for (auto z : {Zone::Climbing, Zone::AtOptimum, Zone::Diseconomy}) {
    if (to_string(z) == name) return z;
  }
  return std::nullopt;
}

std::optional<SolveMethod> parse_solve_method(std::string_view name) {
  for (auto m : {SolveMethod::ClosedForm, SolveMethod::GoldenSection}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

namespace {

template <typename T>
T parse_enum(const json& j, std::optional<T> (*parse)(std::string_view),
             std::string_view what) {
  const auto name = j.get<std::string>();
  const auto v = parse(name);
  if (!v) throw std::invalid_argument("unknown " + std::string(what) + ": " + name);
  return *v;
}

json array_to_json(const Eigen::ArrayXd& a) {
  return json(std::vector<double>(a.data(), a.data() + a.size()));
}

Eigen::ArrayXd array_from_json(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::ArrayXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

void to_json(json& j, const ModelParams& p) {
  j = json{{"alpha", p.alpha()}, {"delta", p.delta()}, {"theta", p.theta()},
           {"gamma", p.gamma()}, {"phi", p.phi()},     {"capacity", p.capacity()}};
}

ModelParams params_from_json(const json& j) {
  return ModelParams::make(j.at("alpha").get<double>(), j.at("delta").get<double>(),
                           j.at("theta").get<double>(), j.at("gamma").get<double>(),
                           j.at("phi").get<double>(), j.at("capacity").get<double>());
}

void to_json(json& j, const EquilibriumResult& r) {
  j = json{{"m_star", r.m_star},         {"w_star", r.w_star},
           {"mb_at_star", r.mb_at_star}, {"mc_at_star", r.mc_at_star},
           {"soc_value", r.soc_value},   {"method", to_string(r.method)}};
}

void from_json(const json& j, EquilibriumResult& r) {
  r.m_star = j.at("m_star").get<double>();
  r.w_star = j.at("w_star").get<double>();
  r.mb_at_star = j.at("mb_at_star").get<double>();
  r.mc_at_star = j.at("mc_at_star").get<double>();
  r.soc_value = j.at("soc_value").get<double>();
  r.method = parse_enum(j.at("method"), &parse_solve_method, "method");
}

void to_json(json& j, const ZoneDiagnosis& d) {
  j = json{{"zone", to_string(d.zone)},
           {"m_actual", d.m_actual},
           {"m_star", d.m_star},
           {"gap", d.gap}};
}

void from_json(const json& j, ZoneDiagnosis& d) {
  d.zone = parse_enum(j.at("zone"), &parse_zone, "zone");
  d.m_actual = j.at("m_actual").get<double>();
  d.m_star = j.at("m_star").get<double>();
  d.gap = j.at("gap").get<double>();
}

void to_json(json& j, const CurveSample& c) {
  j = json{{"m_grid", array_to_json(c.m_grid)},
           {"benefit_values", array_to_json(c.benefit_values)},
           {"cost_values", array_to_json(c.cost_values)},
           {"welfare_values", array_to_json(c.welfare_values)},
           {"m_star_marker", c.m_star_marker}};
}

void from_json(const json& j, CurveSample& c) {
  c.m_grid = array_from_json(j.at("m_grid"));
  c.benefit_values = array_from_json(j.at("benefit_values"));
  c.cost_values = array_from_json(j.at("cost_values"));
  c.welfare_values = array_from_json(j.at("welfare_values"));
  c.m_star_marker = j.at("m_star_marker").get<double>();
}

void to_json(json& j, const SweepResult& s) {
  json rows = json::array();
  for (const auto& row : s.rows) {
    if (row.ok()) {
      rows.push_back({{"parameter_value", row.parameter_value},
                      {"m_star", row.point->equilibrium.m_star},
                      {"w_star", row.point->equilibrium.w_star},
                      {"zone", to_string(row.point->zone)},
                      {"equilibrium", row.point->equilibrium}});
    } else {
      rows.push_back({{"parameter_value", row.parameter_value}, {"error", row.error}});
    }
  }
  j = json{{"swept_parameter", to_string(s.swept_parameter)},
           {"reference_m_actual", s.reference_m_actual},
           {"rows", std::move(rows)}};
}

void from_json(const json& j, SweepResult& s) {
  s.swept_parameter = parse_enum(j.at("swept_parameter"), &parse_sweep_parameter,
                                 "swept parameter");
  s.reference_m_actual = j.at("reference_m_actual").get<double>();
  s.rows.clear();
  for (const auto& r : j.at("rows")) {
    SweepRow row;
    row.parameter_value = r.at("parameter_value").get<double>();
    if (r.contains("error")) {
      row.error = r.at("error").get<std::string>();
    } else {
      row.point = SweepPoint{r.at("equilibrium").get<EquilibriumResult>(),
                             parse_enum(r.at("zone"), &parse_zone, "zone")};
    }
    s.rows.push_back(std::move(row));
  }
}

void to_json(json& j, const FractureReport& r) {
  json groups = json::array();
  for (const auto& g : r.per_group) {
    groups.push_back({{"label", g.label},
                      {"capacity", g.capacity},
                      {"m_star", g.m_star},
                      {"zone", to_string(g.zone)},
                      {"welfare_at_actual", g.welfare_at_actual}});
  }
  j = json{{"m_actual", r.m_actual}, {"conflict", r.conflict}, {"per_group", std::move(groups)}};
}

void from_json(const json& j, FractureReport& r) {
  r.m_actual = j.at("m_actual").get<double>();
  r.conflict = j.at("conflict").get<bool>();
  r.per_group.clear();
  for (const auto& g : j.at("per_group")) {
    r.per_group.push_back({g.at("label").get<std::string>(),
                           g.at("capacity").get<double>(),
                           g.at("m_star").get<double>(),
                           parse_enum(g.at("zone"), &parse_zone, "zone"),
                           g.at("welfare_at_actual").get<double>()});
  }
}

void to_json(json& j, const IndexSeries& s) {
  json counts = json::object();
  json totals = json::object();
  for (const auto& [year, n] : s.counts) counts[std::to_string(year)] = n;
  for (const auto& [year, n] : s.totals) totals[std::to_string(year)] = n;
  j = json{{"label", s.label}, {"counts", std::move(counts)}, {"totals", std::move(totals)}};
}

void from_json(const json& j, IndexSeries& s) {
  s.label = j.at("label").get<std::string>();
  s.counts.clear();
  s.totals.clear();
  for (const auto& [year, n] : j.at("counts").items()) s.counts[std::stoi(year)] = n.get<std::uint64_t>();
  for (const auto& [year, n] : j.at("totals").items()) s.totals[std::stoi(year)] = n.get<std::uint64_t>();
}

void to_json(json& j, const PlaceboComparison& p) {
  j = json{{"treatment_ratio", p.treatment_ratio},
           {"control_ratio", p.control_ratio},
           {"divergence", p.divergence}};
}

void from_json(const json& j, PlaceboComparison& p) {
  p.treatment_ratio = j.at("treatment_ratio").get<double>();
  p.control_ratio = j.at("control_ratio").get<double>();
  p.divergence = j.at("divergence").get<double>();
}

void to_json(json& j, const SolveReport& r) {
  j = r.equilibrium;
  j["scenario"] = r.scenario;
  j["params"] = r.params;
  if (r.diagnosis) {
    json d = *r.diagnosis;
    d["congestion_ratio"] = congestion_ratio(r.diagnosis->m_actual, r.params.capacity());
    j["diagnosis"] = std::move(d);
  }
}

// --------------------------------------------------------------------------
// CSV

void write_csv(std::ostream& out, const SolveReport& r) {
  const auto& e = r.equilibrium;
  out << "m_star,w_star,mb_at_star,mc_at_star,soc_value,method,m_actual,zone,gap,congestion_ratio\n";
  out << format_number(e.m_star) << ',' << format_number(e.w_star) << ','
      << format_number(e.mb_at_star) << ',' << format_number(e.mc_at_star) << ','
      << format_number(e.soc_value) << ',' << to_string(e.method) << ',';
  if (r.diagnosis) {
    const auto& d = *r.diagnosis;
    out << format_number(d.m_actual) << ',' << to_string(d.zone) << ','
        << format_number(d.gap) << ','
        << format_number(congestion_ratio(d.m_actual, r.params.capacity()));
  } else {
    out << ",,,";
  }
  out << '\n';
}

void write_csv(std::ostream& out, const CurveSample& c) {
  out << "m,benefit,cost,welfare\n";
  for (Eigen::Index i = 0; i < c.m_grid.size(); ++i) {
    out << format_number(c.m_grid[i]) << ',' << format_number(c.benefit_values[i]) << ','
        << format_number(c.cost_values[i]) << ',' << format_number(c.welfare_values[i])
        << '\n';
  }
}

void write_csv(std::ostream& out, const SweepResult& s) {
  out << "param_value,m_star,w_star,zone\n";
  for (const auto& row : s.rows) {
    out << format_number(row.parameter_value) << ',';
    if (row.ok()) {
      out << format_number(row.point->equilibrium.m_star) << ','
          << format_number(row.point->equilibrium.w_star) << ','
          << to_string(row.point->zone);
    } else {
      out << ",," << csv_field("error: " + row.error);
    }
    out << '\n';
  }
}

void write_csv(std::ostream& out, const FractureReport& r) {
  out << "label,capacity,m_star,zone,welfare_at_actual,conflict\n";
  for (const auto& g : r.per_group) {
    out << csv_field(g.label) << ',' << format_number(g.capacity) << ','
        << format_number(g.m_star) << ',' << to_string(g.zone) << ','
        << format_number(g.welfare_at_actual) << ',' << (r.conflict ? "true" : "false")
        << '\n';
  }
}

void write_csv(std::ostream& out, const IndexSeries& s) {
  out << "year,count,total\n";
  for (const auto& [year, total] : s.totals) {
    const auto it = s.counts.find(year);
    out << year << ',' << (it == s.counts.end() ? 0 : it->second) << ',' << total << '\n';
  }
  // Years with counts but no totals only arise from hand-built series.
  for (const auto& [year, count] : s.counts) {
    if (!s.totals.contains(year)) out << year << ',' << count << ",0\n";
  }
}

void write_csv(std::ostream& out, const PlaceboComparison& p, int year_from, int year_to) {
  out << "year_from,year_to,treatment_ratio,control_ratio,divergence\n";
  out << year_from << ',' << year_to << ',' << format_number(p.treatment_ratio) << ','
      << format_number(p.control_ratio) << ',' << format_number(p.divergence) << '\n';
}

IndexSeries read_index_csv(std::istream& in, std::string label) {
  IndexSeries s;
  s.label = std::move(label);
  std::string line;
  if (!std::getline(in, line)) throw IndexError(s.label + ": empty index file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "year,count,total") {
    throw IndexError(s.label + ": expected header year,count,total");
  }
  for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto bad = [&] {
      return IndexError(s.label + " line " + std::to_string(lineno) + ": malformed row");
    };
    long long fields[3];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int k = 0; k < 3; ++k) {
      const auto [next, ec] = std::from_chars(p, end, fields[k]);
      if (ec != std::errc{} || fields[k] < 0) throw bad();
      p = next;
      if (k < 2) {
        if (p == end || *p != ',') throw bad();
        ++p;
      }
    }
    if (p != end) throw bad();
    const int year = static_cast<int>(fields[0]);
    if (s.counts.contains(year)) {
      throw IndexError(s.label + ": duplicate year " + std::to_string(year));
    }
    s.counts[year] = static_cast<std::uint64_t>(fields[1]);
    s.totals[year] = static_cast<std::uint64_t>(fields[2]);
  }
  return s;
}

IndexSeries load_index_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IndexError("cannot read index file: " + path);
  return read_index_csv(in, path);
}

}  // namespace clubgood
