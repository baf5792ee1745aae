#ifndef CLUBGOOD_EQUILIBRIUM_HPP
#define CLUBGOOD_EQUILIBRIUM_HPP

#include <clubgood/golden_section.hpp>
#include <clubgood/model.hpp>

#include <cmath>
#include <stdexcept>
#include <string_view>

namespace clubgood {

enum class SolveMethod { ClosedForm, GoldenSection };

enum class Zone { Climbing, AtOptimum, Diseconomy };

constexpr std::string_view to_string(SolveMethod m) {
  return m == SolveMethod::ClosedForm ? "closed_form" : "golden_section";
}

constexpr std::string_view to_string(Zone z) {
  switch (z) {
    case Zone::Climbing: return "climbing";
    case Zone::AtOptimum: return "at_optimum";
    case Zone::Diseconomy: return "diseconomy";
  }
  return "unknown";
}

template <typename Scalar>
struct BasicEquilibrium {
  Scalar m_star;
  Scalar w_star;
  Scalar mb_at_star;
  Scalar mc_at_star;
  Scalar soc_value;
  SolveMethod method;

  friend bool operator==(const BasicEquilibrium&, const BasicEquilibrium&) = default;
};

using EquilibriumResult = BasicEquilibrium<double>;

template <typename Scalar>
struct BasicZoneDiagnosis {
  Zone zone;
  Scalar m_actual;
  Scalar m_star;
  Scalar gap;  // m_actual - m_star

  friend bool operator==(const BasicZoneDiagnosis&, const BasicZoneDiagnosis&) = default;
};

using ZoneDiagnosis = BasicZoneDiagnosis<double>;

/// Smallest flow the numeric solver considers; MB diverges at zero.
template <typename Scalar>
constexpr Scalar kMinFlow = Scalar(1e-9);

template <typename Scalar>
BasicEquilibrium<Scalar> evaluate_at(const BasicParams<Scalar>& p, Scalar m,
                                     SolveMethod method) {
  return {m, welfare(p, m), marginal_benefit(p, m), marginal_cost(p, m),
          soc_check(p, m), method};
}

/// Explicit solution of MB = MC:
///   M* = K^(phi / (phi - theta)) * [alpha (1 + delta) theta / (gamma phi)]^(1 / (phi - theta))
template <typename Scalar>
Scalar optimal_m(const BasicParams<Scalar>& p) {
  using std::pow;
  const Scalar spread = p.phi() - p.theta();
  const Scalar constant = p.benefit_scale() * p.theta() / (p.gamma() * p.phi());
  return pow(p.capacity(), p.phi() / spread) * pow(constant, 1 / spread);
}

template <typename Scalar>
BasicEquilibrium<Scalar> optimal_m_closed_form(const BasicParams<Scalar>& p) {
  return evaluate_at(p, optimal_m(p), SolveMethod::ClosedForm);
}

/// Maximizes W over [kMinFlow, bracket_hi] by golden-section search.
///
/// W is strictly concave, so the bracket only needs to reach past the peak.
/// The upper bound is doubled until W is decreasing there (at most 60 times).
template <typename Scalar>
BasicEquilibrium<Scalar> optimal_m_numeric(const BasicParams<Scalar>& p,
                                           Scalar bracket_hi, Scalar tol) {
  if (!(bracket_hi > kMinFlow<Scalar>)) {
    throw std::invalid_argument("bracket_hi must exceed the minimum flow");
  }
  if (!(tol > 0)) throw std::invalid_argument("tol must be positive");

  Scalar hi = bracket_hi;
  int doublings = 0;
  while (!(marginal_cost(p, hi) > marginal_benefit(p, hi))) {
    if (++doublings > 60) {
      throw std::runtime_error("no interior maximum found");
    }
    hi *= 2;
  }

  const auto neg_welfare = [&p](Scalar m) { return -welfare(p, m); };
  const Scalar m = golden_section_minimize(neg_welfare, kMinFlow<Scalar>, hi, tol);
  return evaluate_at(p, m, SolveMethod::GoldenSection);
}

/// Zone of m_actual relative to a known optimum; equality band 1e-9 (1 + M*).
template <typename Scalar>
BasicZoneDiagnosis<Scalar> diagnose_zone(Scalar m_actual, Scalar m_star) {
  const Scalar gap = m_actual - m_star;
  const Scalar tol = Scalar(1e-9) * (1 + m_star);
  Zone zone = Zone::AtOptimum;
  if (gap < -tol) {
    zone = Zone::Climbing;
  } else if (gap > tol) {
    zone = Zone::Diseconomy;
  }
  return {zone, m_actual, m_star, gap};
}

template <typename Scalar>
BasicZoneDiagnosis<Scalar> classify_zone(const BasicParams<Scalar>& p,
                                         Scalar m_actual) {
  return diagnose_zone(m_actual, optimal_m(p));
}

template <typename Scalar>
struct BasicCapacityDividend {
  Scalar m_star_old;
  Scalar m_star_new;
  Scalar delta_m_star;
};

using CapacityDividend = BasicCapacityDividend<double>;

/// Shift in M* from moving capacity K to k_new, all else fixed.
template <typename Scalar>
BasicCapacityDividend<Scalar> capacity_dividend(const BasicParams<Scalar>& p,
                                                Scalar k_new) {
  const Scalar before = optimal_m(p);
  const Scalar after = optimal_m(p.with_capacity(k_new));
  return {before, after, after - before};
}

}  // namespace clubgood

#endif  // CLUBGOOD_EQUILIBRIUM_HPP
