#include <clubgood/scenario.hpp>

#include <clubgood/parallel.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>

namespace clubgood {

namespace {

std::vector<ScenarioPreset> make_presets() {
  const auto us = ModelParams::make(2.0, 0.0, 0.6, 1.0, 2.5, 5.0);
  const auto cn = ModelParams::make(1.0, 0.5, 0.6, 1.0, 2.5, 8.0);
  return {
      {"us-baseline", us, 6.0},
      {"china-baseline", cn, 6.0},
      {"us-counterfactual-k8", us.with_capacity(8.0), 6.0},
      {"us-incumbents", us.with_capacity(4.0), 6.0},
      {"us-elites", us.with_capacity(7.0), 6.0},
  };
}

}  // namespace

const std::vector<ScenarioPreset>& builtin_presets() {
  static const std::vector<ScenarioPreset> presets = make_presets();
  return presets;
}

const ScenarioPreset& find_preset(std::string_view name) {
  for (const auto& p : builtin_presets()) {
    if (p.name == name) return p;
  }
  throw std::out_of_range("unknown preset: " + std::string(name));
}

CurveSample welfare_curve(const ModelParams& params, double m_max,
                          int n_points) {
  if (!(m_max > 0)) throw std::invalid_argument("m_max must be positive");
  if (n_points < 2) throw std::invalid_argument("n_points must be at least 2");

  CurveSample curve;
  curve.m_grid = Eigen::ArrayXd::LinSpaced(n_points, 0.0, m_max);
  curve.benefit_values = benefit(params, curve.m_grid);
  curve.cost_values = congestion_cost(params, curve.m_grid);
  curve.welfare_values = curve.benefit_values - curve.cost_values;
  curve.m_star_marker = optimal_m(params);
  return curve;
}

std::string_view to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::Phi: return "phi";
    case SweepParameter::Capacity: return "capacity";
    case SweepParameter::Delta: return "delta";
    case SweepParameter::Alpha: return "alpha";
    case SweepParameter::Gamma: return "gamma";
    case SweepParameter::Theta: return "theta";
  }
  return "unknown";
}

std::optional<SweepParameter> parse_sweep_parameter(std::string_view name) {
  for (auto p : {SweepParameter::Phi, SweepParameter::Capacity,
                 SweepParameter::Delta, SweepParameter::Alpha,
                 SweepParameter::Gamma, SweepParameter::Theta}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

ModelParams with_parameter(const ModelParams& base, SweepParameter which,
                           double value) {
  switch (which) {
    case SweepParameter::Phi: return base.with_phi(value);
    case SweepParameter::Capacity: return base.with_capacity(value);
    case SweepParameter::Delta: return base.with_delta(value);
    case SweepParameter::Alpha: return base.with_alpha(value);
    case SweepParameter::Gamma: return base.with_gamma(value);
    case SweepParameter::Theta: return base.with_theta(value);
  }
  throw std::logic_error("unhandled sweep parameter");
}

SweepResult sensitivity_sweep(const ModelParams& base, SweepParameter which,
                              const std::vector<double>& values,
                              double reference_m, unsigned threads) {
  if (!(reference_m >= 0)) {
    throw std::invalid_argument("reference m must be non-negative");
  }
  std::vector<double> sorted = values;
  std::stable_sort(sorted.begin(), sorted.end());

  SweepResult result{which, reference_m, std::vector<SweepRow>(sorted.size())};
  parallel_for(
      sorted.size(),
      [&](std::size_t i) {
        SweepRow& row = result.rows[i];
        row.parameter_value = sorted[i];
        try {
          const auto params = with_parameter(base, which, sorted[i]);
          const auto eq = optimal_m_closed_form(params);
          row.point = SweepPoint{eq, diagnose_zone(reference_m, eq.m_star).zone};
        } catch (const InvalidParameter& e) {
          row.error = e.what();
        }
      },
      threads);
  return result;
}

FracturedEconomy FracturedEconomy::make(const ModelParams& shape,
                                        std::vector<CapacityGroup> groups,
                                        double m_actual) {
  if (groups.size() < 2) {
    throw InvalidParameter("a fractured economy needs at least two groups");
  }
  std::set<std::string> labels;
  for (const auto& g : groups) {
    if (!labels.insert(g.label).second) {
      throw InvalidParameter("duplicate group label: " + g.label);
    }
    shape.with_capacity(g.capacity);  // validates
  }
  if (!(m_actual >= 0)) throw InvalidParameter("m_actual must be non-negative");
  return FracturedEconomy(shape, std::move(groups), m_actual);
}

FractureReport analyze_fracture(const FracturedEconomy& economy,
                                unsigned threads) {
  const auto& groups = economy.groups();
  const double m_actual = economy.m_actual();

  FractureReport report{m_actual, std::vector<GroupOutcome>(groups.size()), false};
  parallel_for(
      groups.size(),
      [&](std::size_t i) {
        const auto params = economy.group_params(i);
        const double m_star = optimal_m(params);
        report.per_group[i] = {groups[i].label, groups[i].capacity, m_star,
                               diagnose_zone(m_actual, m_star).zone,
                               welfare(params, m_actual)};
      },
      threads);

  const auto by_capacity = [](const GroupOutcome& a, const GroupOutcome& b) {
    return a.capacity < b.capacity;
  };
  const auto [low, high] = std::minmax_element(
      report.per_group.begin(), report.per_group.end(), by_capacity);
  report.conflict = low->m_star < m_actual && m_actual < high->m_star;
  return report;
}

}  // namespace clubgood
