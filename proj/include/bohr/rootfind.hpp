#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "bohr/stable_sum.hpp"

namespace bohr {

/// Thrown when a bracket cannot be certified (bad inputs, or truncation too
/// coarse for the requested tolerance).
class CertificateError : public std::runtime_error {
 public:
  enum class Kind { not_straddling, tail_too_large };

  CertificateError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// A monotone series equation sum_k term(k, x) = target. term(k, x) >= 0 and
/// increasing in x on [x_lo, x_hi]; tail_bound(p, x) >= sum_{k > p} term(k, x).
struct SeriesEquation {
  std::function<double(int, double)> term;
  std::function<double(int, double)> tail_bound;
  double target = 0.5;
  double x_lo = 0.0;
  double x_hi = 1.0;
};

/// Root bracket with machine-checkable evidence:
///   partial_lo + tail_lo < target  (the full series at lo stays below target)
///   partial_hi > target            (partial sums are lower bounds, so the
///                                   full series at hi is already above)
struct CertifiedRoot {
  double lo = 0.0;
  double hi = 0.0;
  int truncation_degree = 0;
  double partial_lo = 0.0;
  double tail_lo = 0.0;
  double partial_hi = 0.0;
  double target = 0.0;

  double width() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
};

/// Partial sum sum_{k=1}^{p} term(k, x), compensated, ascending k.
inline double series_partial_sum(const SeriesEquation& eq, int p, double x) {
  StableSum<double> s;
  for (int k = 1; k <= p; ++k) s.add(eq.term(k, x));
  return s.value();
}

namespace detail {

inline double ulp_slack(double target) {
  double mag = std::fabs(target) > 1.0 ? std::fabs(target) : 1.0;
  return 8.0 * (std::nextafter(mag, std::numeric_limits<double>::infinity()) - mag);
}

}  // namespace detail

/// Certified bisection for an increasing series equation. Runs two plain
/// bisections: one on the tail-padded partial sum (its lower end point keeps
/// the lower evidence), one on the bare partial sum (its upper end point
/// keeps the upper evidence). Comparisons carry an 8-ulp slack so the
/// evidence inequalities survive floating-point rounding.
inline CertifiedRoot bisect_increasing(const SeriesEquation& eq, int p, double tol) {
  if (p < 1) throw std::invalid_argument("bisect_increasing: p must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("bisect_increasing: tol must be > 0");

  const double target = eq.target;
  const double slack = detail::ulp_slack(target);

  auto below_with_tail = [&](double x) {
    return series_partial_sum(eq, p, x) + eq.tail_bound(p, x) < target - slack;
  };
  auto above_partial = [&](double x) {
    return series_partial_sum(eq, p, x) > target + slack;
  };

  const double s_lo = series_partial_sum(eq, p, eq.x_lo);
  if (s_lo >= target - slack)
    throw CertificateError(CertificateError::Kind::not_straddling,
                           "bisect_increasing: partial sum at x_lo does not stay below target");
  if (!below_with_tail(eq.x_lo))
    throw CertificateError(CertificateError::Kind::tail_too_large,
                           "bisect_increasing: tail bound at x_lo swallows the target gap; "
                           "increase the truncation degree");
  if (!above_partial(eq.x_hi))
    throw CertificateError(CertificateError::Kind::not_straddling,
                           "bisect_increasing: partial sum at x_hi does not exceed target");

  // Bracket A encloses the root of partial + tail = target,
  // bracket B the root of partial = target. The certified bracket is
  // [A.lo, B.hi]; its width approaches (gap between those roots) + phase
  // tolerances, so phases are refined until the combined width fits tol.
  double a_lo = eq.x_lo, a_hi = eq.x_hi;
  double b_lo = eq.x_lo, b_hi = eq.x_hi;
  double phase_tol = 0.5 * tol;
  while (true) {
    while (a_hi - a_lo > phase_tol) {
      double mid = 0.5 * (a_lo + a_hi);
      (below_with_tail(mid) ? a_lo : a_hi) = mid;
    }
    while (b_hi - b_lo > phase_tol) {
      double mid = 0.5 * (b_lo + b_hi);
      (above_partial(mid) ? b_hi : b_lo) = mid;
    }
    if (b_hi - a_lo <= tol) break;
    phase_tol *= 0.5;
    double floor_tol =
        4.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(b_hi), 1.0);
    if (phase_tol < floor_tol)
      throw CertificateError(CertificateError::Kind::tail_too_large,
                             "bisect_increasing: tail bound too wide for the requested "
                             "tolerance; increase the truncation degree or tol");
  }

  CertifiedRoot r;
  r.lo = a_lo;
  r.hi = b_hi;
  r.truncation_degree = p;
  r.partial_lo = series_partial_sum(eq, p, a_lo);
  r.tail_lo = eq.tail_bound(p, a_lo);
  r.partial_hi = series_partial_sum(eq, p, b_hi);
  r.target = target;
  return r;
}

/// Upper bound for sum_{k > p} x^k / k^k on 0 < x < 1: every k^k with k > p
/// is at least (p+1)^{p+1}, leaving a geometric tail.
inline double tail_geometric(int p, double x) {
  if (!(x > 0.0 && x < 1.0))
    throw std::invalid_argument("tail_geometric: x must lie in (0, 1)");
  double log_num = (p + 1) * (std::log(x) - std::log(static_cast<double>(p + 1)));
  return std::exp(log_num) / (1.0 - x);
}

/// Upper bound for sum_{k >= 26} (k^k / k!) x^k on 0 < x < 1/e:
/// (1/sqrt(52 pi)) (e x)^26 / (1 - e x), from k! >= sqrt(2 pi k) (k/e)^k.
inline double tail_stirling(double x) {
  const double ex = M_E * x;
  if (!(x > 0.0) || ex >= 1.0)
    throw std::invalid_argument("tail_stirling: requires 0 < x < 1/e");
  return std::pow(ex, 26) / (std::sqrt(52.0 * M_PI) * (1.0 - ex));
}

/// Same Stirling bound with a general cut: covers sum_{k > p} (k^k / k!) x^k.
inline double tail_stirling_at(int p, double x) {
  const double ex = M_E * x;
  if (!(x > 0.0) || ex >= 1.0)
    throw std::invalid_argument("tail_stirling_at: requires 0 < x < 1/e");
  double log_num = (p + 1) * std::log(ex);
  return std::exp(log_num) / (std::sqrt(2.0 * M_PI * (p + 1)) * (1.0 - ex));
}

}  // namespace bohr
