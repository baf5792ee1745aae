#ifndef CLUBGOOD_GOLDEN_SECTION_HPP
#define CLUBGOOD_GOLDEN_SECTION_HPP

#include <cmath>

namespace clubgood {

/// Golden-section minimization of a unimodal f on [lo, hi].
///
/// Stops once the bracket width falls below rel_tol times its midpoint, or
/// after max_iter reductions. Reuses one interior evaluation per iteration.
template <typename Scalar, typename F>
Scalar golden_section_minimize(F&& f, Scalar lo, Scalar hi, Scalar rel_tol,
                               int max_iter = 500) {
  using std::abs;
  using std::sqrt;
  const Scalar inv_phi = (sqrt(Scalar(5)) - 1) / 2;

  Scalar a = lo;
  Scalar b = hi;
  Scalar c = b - inv_phi * (b - a);
  Scalar d = a + inv_phi * (b - a);
  Scalar fc = f(c);
  Scalar fd = f(d);

  for (int i = 0; i < max_iter; ++i) {
    if (b - a <= rel_tol * abs(a + b) / 2) break;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / 2;
}

}  // namespace clubgood

#endif  // CLUBGOOD_GOLDEN_SECTION_HPP
