#include "hometime/numerics.hpp"

#include <cmath>
#include <limits>

namespace hometime {

namespace {

constexpr double kBranchPoint = -0.36787944117144233;  // -1/e
constexpr double kBranchClamp = 1e-12;

// Series for W0 around the branch point in p = sqrt(2*(e*z + 1)),
// W = -1 + p - p^2/3 + 11 p^3/72 - 43 p^4/540 + ...
double branch_series(double p) {
  return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0))));
}

}  // namespace

double lambert_w0(double z) {
  if (std::isnan(z)) {
    throw std::domain_error("lambert_w0: argument is NaN");
  }
  if (z < kBranchPoint) {
    if (z < kBranchPoint - kBranchClamp) {
      throw std::domain_error("lambert_w0: argument " + std::to_string(z) +
                              " below the branch point -1/e");
    }
    z = kBranchPoint;  // floating-point noise just below the branch point
  }
  if (z == 0.0) return 0.0;

  const double p_sq = 2.0 * (std::exp(1.0) * z + 1.0);
  if (p_sq <= 0.0) return -1.0;  // exactly the branch point
  const double p = std::sqrt(p_sq);

  // The sqrt series alone already meets a ~1e-13 residual this close to the
  // branch point, where Halley's denominator degenerates.
  if (p < 1e-2) return branch_series(p);

  double w;
  if (p < 0.5) {
    w = branch_series(p);
  } else if (z < std::exp(1.0)) {
    w = 0.567 * z;  // crude but inside the Halley basin up to z = e
  } else {
    const double lz = std::log(z);
    const double llz = std::log(lz);  // lz >= 1 here
    w = lz - llz + llz / lz;
  }

  double last_diff = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 100; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    if (f == 0.0) return w;
    const double fp = ew * (w + 1.0);
    const double fpp = ew * (w + 2.0);
    const double step = f / (fp - 0.5 * f * fpp / fp);
    double next = w - step;
    if (next <= -1.0) next = 0.5 * (w - 1.0);  // keep iterates on the principal branch
    const double diff = std::abs(next - w);
    if (diff <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(next))) {
      return next;
    }
    // Rounding noise can keep tiny steps from shrinking further; with cubic
    // convergence a non-decreasing step this small means next is converged.
    if (diff >= last_diff && diff <= 1e-8 * (1.0 + std::abs(next))) {
      return next;
    }
    last_diff = diff;
    w = next;
  }
  throw std::runtime_error("lambert_w0: Halley iteration did not converge for z=" +
                           std::to_string(z));
}

ScalarMaximum maximize_scalar(const std::function<double(double)>& f,
                              const BracketedInterval& interval, const SolverSettings& settings) {
  settings.validate();

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = interval.lo;
  double b = interval.hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int evaluations = 2;

  int iterations = 0;
  while (b - a > settings.tolerance) {
    if (++iterations > settings.max_iterations) {
      throw std::runtime_error(
          "maximize_scalar: interval did not shrink below tolerance within " +
          std::to_string(settings.max_iterations) + " iterations");
    }
    if (fc > fd) {
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
    ++evaluations;
  }

  const double x = 0.5 * (a + b);
  ++evaluations;
  return {x, f(x), evaluations};
}

}  // namespace hometime
