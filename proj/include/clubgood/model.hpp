#ifndef CLUBGOOD_MODEL_HPP
#define CLUBGOOD_MODEL_HPP

// Welfare model of globalization as a congestible club good.
//
// An economy opens to external flows of intensity M. Openness yields a
// concave benefit B(M) = alpha (1 + delta) M^theta, while the flows load a
// finite institutional capacity K and produce a convex disorder cost
// C(M) = gamma (M / K)^phi. Welfare is W = B - C.
//
// Every function is templated on the scalar type and has an overload for
// Eigen array expressions, so a whole grid can be evaluated in one call.

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>

namespace clubgood {

/// Raised when a parameter vector violates the model's admissible region.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Full parameter vector of one economy (or one group within an economy).
///
/// Only constructible through make(), which enforces the admissible region.
/// Instances are immutable.
template <typename Scalar>
class BasicParams {
 public:
  static BasicParams make(Scalar alpha, Scalar delta, Scalar theta,
                          Scalar gamma, Scalar phi, Scalar capacity) {
    using std::isfinite;
    if (!(isfinite(alpha) && isfinite(delta) && isfinite(theta) &&
          isfinite(gamma) && isfinite(phi) && isfinite(capacity))) {
      throw InvalidParameter("parameters must be finite");
    }
    if (!(alpha > 0)) throw InvalidParameter("alpha must be positive");
    if (!(delta >= 0)) throw InvalidParameter("delta must be non-negative");
    if (!(theta > 0 && theta < 1)) {
      throw InvalidParameter("theta must lie in (0, 1)");
    }
    if (!(gamma > 0)) throw InvalidParameter("gamma must be positive");
    if (!(phi > 1)) throw InvalidParameter("phi must exceed 1");
    if (!(capacity > 0)) throw InvalidParameter("capacity must be positive");
    return BasicParams(alpha, delta, theta, gamma, phi, capacity);
  }

  Scalar alpha() const { return alpha_; }
  Scalar delta() const { return delta_; }
  Scalar theta() const { return theta_; }
  Scalar gamma() const { return gamma_; }
  Scalar phi() const { return phi_; }
  Scalar capacity() const { return capacity_; }

  // Copy-with-change helpers; each re-validates.
  BasicParams with_alpha(Scalar v) const { return make(v, delta_, theta_, gamma_, phi_, capacity_); }
  BasicParams with_delta(Scalar v) const { return make(alpha_, v, theta_, gamma_, phi_, capacity_); }
  BasicParams with_theta(Scalar v) const { return make(alpha_, delta_, v, gamma_, phi_, capacity_); }
  BasicParams with_gamma(Scalar v) const { return make(alpha_, delta_, theta_, v, phi_, capacity_); }
  BasicParams with_phi(Scalar v) const { return make(alpha_, delta_, theta_, gamma_, v, capacity_); }
  BasicParams with_capacity(Scalar v) const { return make(alpha_, delta_, theta_, gamma_, phi_, v); }

  /// alpha (1 + delta): the benefit scale including catch-up.
  Scalar benefit_scale() const { return alpha_ * (1 + delta_); }

  template <typename Other>
  BasicParams<Other> cast() const {
    return BasicParams<Other>::make(Other(alpha_), Other(delta_), Other(theta_),
                                    Other(gamma_), Other(phi_), Other(capacity_));
  }

  friend bool operator==(const BasicParams&, const BasicParams&) = default;

 private:
  BasicParams(Scalar alpha, Scalar delta, Scalar theta, Scalar gamma,
              Scalar phi, Scalar capacity)
      : alpha_(alpha), delta_(delta), theta_(theta), gamma_(gamma),
        phi_(phi), capacity_(capacity) {}

  Scalar alpha_;
  Scalar delta_;
  Scalar theta_;
  Scalar gamma_;
  Scalar phi_;
  Scalar capacity_;
};

using ModelParams = BasicParams<double>;

/// Load relative to capacity, M / K.
template <typename Scalar>
Scalar congestion_ratio(Scalar m, Scalar capacity) {
  return m / capacity;
}

/// B(M) = alpha (1 + delta) M^theta.
template <typename Scalar>
Scalar benefit(const BasicParams<Scalar>& p, Scalar m) {
  using std::pow;
  return p.benefit_scale() * pow(m, p.theta());
}

/// C(M) = gamma (M / K)^phi.
template <typename Scalar>
Scalar congestion_cost(const BasicParams<Scalar>& p, Scalar m) {
  using std::pow;
  return p.gamma() * pow(congestion_ratio(m, p.capacity()), p.phi());
}

template <typename Scalar>
Scalar welfare(const BasicParams<Scalar>& p, Scalar m) {
  return benefit(p, m) - congestion_cost(p, m);
}

/// B'(M). Diverges at M = 0, which is rejected.
template <typename Scalar>
Scalar marginal_benefit(const BasicParams<Scalar>& p, Scalar m) {
  using std::pow;
  if (!(m > 0)) {
    throw std::domain_error("marginal benefit undefined at zero flow");
  }
  return p.benefit_scale() * p.theta() * pow(m, p.theta() - 1);
}

/// C'(M) = gamma phi K^-phi M^(phi - 1); zero at M = 0.
template <typename Scalar>
Scalar marginal_cost(const BasicParams<Scalar>& p, Scalar m) {
  using std::pow;
  return p.gamma() * p.phi() * pow(p.capacity(), -p.phi()) *
         pow(m, p.phi() - 1);
}

/// W''(M) = B''(M) - C''(M). Negative for every m > 0.
template <typename Scalar>
Scalar soc_check(const BasicParams<Scalar>& p, Scalar m) {
  using std::pow;
  const Scalar b2 = p.benefit_scale() * p.theta() * (p.theta() - 1) *
                    pow(m, p.theta() - 2);
  const Scalar c2 = p.gamma() * p.phi() * (p.phi() - 1) *
                    pow(p.capacity(), -p.phi()) * pow(m, p.phi() - 2);
  return b2 - c2;
}

// Array overloads. These return lazy Eigen expressions over the grid.

template <typename Derived>
auto benefit(const BasicParams<typename Derived::Scalar>& p,
             const Eigen::ArrayBase<Derived>& m) {
  return p.benefit_scale() * m.pow(p.theta());
}

template <typename Derived>
auto congestion_cost(const BasicParams<typename Derived::Scalar>& p,
                     const Eigen::ArrayBase<Derived>& m) {
  return p.gamma() * (m / p.capacity()).pow(p.phi());
}

template <typename Derived>
auto welfare(const BasicParams<typename Derived::Scalar>& p,
             const Eigen::ArrayBase<Derived>& m) {
  return benefit(p, m) - congestion_cost(p, m);
}

}  // namespace clubgood

#endif  // CLUBGOOD_MODEL_HPP
