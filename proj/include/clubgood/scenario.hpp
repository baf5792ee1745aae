#ifndef CLUBGOOD_SCENARIO_HPP
#define CLUBGOOD_SCENARIO_HPP

#include <clubgood/equilibrium.hpp>
#include <clubgood/model.hpp>

#include <Eigen/Core>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace clubgood {

struct ScenarioPreset {
  std::string name;
  ModelParams params;
  double m_actual;
};

/// The calibrated US / China economies, the US capacity counterfactual and
/// the two US capacity groups.
const std::vector<ScenarioPreset>& builtin_presets();

/// Throws std::out_of_range for an unknown name.
const ScenarioPreset& find_preset(std::string_view name);

/// B, C and W sampled on a uniform grid over [0, m_max], both ends included.
struct CurveSample {
  Eigen::ArrayXd m_grid;
  Eigen::ArrayXd benefit_values;
  Eigen::ArrayXd cost_values;
  Eigen::ArrayXd welfare_values;
  double m_star_marker;
};

CurveSample welfare_curve(const ModelParams& params, double m_max,
                          int n_points);

// ---------------------------------------------------------------------------
// Sensitivity sweeps

enum class SweepParameter { Phi, Capacity, Delta, Alpha, Gamma, Theta };

std::string_view to_string(SweepParameter p);
std::optional<SweepParameter> parse_sweep_parameter(std::string_view name);

/// Copy of `base` with one parameter replaced. Throws InvalidParameter.
ModelParams with_parameter(const ModelParams& base, SweepParameter which,
                           double value);

struct SweepPoint {
  EquilibriumResult equilibrium;
  Zone zone;
};

/// A sweep row holds either an equilibrium or the reason the value was
/// rejected.
struct SweepRow {
  double parameter_value;
  std::optional<SweepPoint> point;
  std::string error;

  bool ok() const { return point.has_value(); }
};

struct SweepResult {
  SweepParameter swept_parameter;
  double reference_m_actual;
  std::vector<SweepRow> rows;  // ascending by parameter_value
};

/// One closed-form equilibrium per value. Invalid values produce error rows
/// and do not stop the sweep. Rows are computed on up to `threads` workers
/// (0 = hardware concurrency); the result does not depend on that count.
SweepResult sensitivity_sweep(const ModelParams& base, SweepParameter which,
                              const std::vector<double>& values,
                              double reference_m, unsigned threads = 0);

// ---------------------------------------------------------------------------
// Heterogeneous capacity within one economy

struct CapacityGroup {
  std::string label;
  double capacity;
};

/// Groups sharing the benefit and cost shape (alpha, delta, theta, gamma,
/// phi) and differing only in capacity.
class FracturedEconomy {
 public:
  /// `shape` supplies everything except capacity. Throws InvalidParameter
  /// for fewer than two groups, duplicate labels, a non-positive capacity or
  /// a negative m_actual.
  static FracturedEconomy make(const ModelParams& shape,
                               std::vector<CapacityGroup> groups,
                               double m_actual);

  const ModelParams& shape() const { return shape_; }
  const std::vector<CapacityGroup>& groups() const { return groups_; }
  double m_actual() const { return m_actual_; }

  ModelParams group_params(std::size_t i) const {
    return shape_.with_capacity(groups_.at(i).capacity);
  }

 private:
  FracturedEconomy(ModelParams shape, std::vector<CapacityGroup> groups,
                   double m_actual)
      : shape_(shape), groups_(std::move(groups)), m_actual_(m_actual) {}

  ModelParams shape_;
  std::vector<CapacityGroup> groups_;
  double m_actual_;
};

struct GroupOutcome {
  std::string label;
  double capacity;
  double m_star;
  Zone zone;
  double welfare_at_actual;
};

struct FractureReport {
  double m_actual;
  std::vector<GroupOutcome> per_group;  // input order
  /// min-capacity group's M* < m_actual < max-capacity group's M*
  bool conflict;
};

FractureReport analyze_fracture(const FracturedEconomy& economy,
                                unsigned threads = 0);

}  // namespace clubgood

#endif  // CLUBGOOD_SCENARIO_HPP
