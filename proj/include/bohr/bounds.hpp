#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bohr/domains.hpp"
#include "bohr/multiindex.hpp"
#include "bohr/rootfind.hpp"
#include "bohr/stable_sum.hpp"

namespace bohr {

enum class Quantity { b_n, k_n, l_n };
enum class BoundDirection { lower, upper };

inline const char* quantity_name(Quantity q) {
  switch (q) {
    case Quantity::b_n: return "B_n";
    case Quantity::k_n: return "K_n";
    case Quantity::l_n: return "L_n";
  }
  return "?";
}

/// One side of a radius estimate, with enough metadata to print a table row
/// or re-check the certificate it came from.
struct RadiusBound {
  double value = 0.0;
  BoundDirection direction = BoundDirection::lower;
  Quantity quantity = Quantity::b_n;
  std::optional<DomainKind> domain;  // empty: any complete bounded Reinhardt domain
  int n = 0;                         // 0: independent of dimension
  std::string note;
  std::optional<CertifiedRoot> certificate;
  std::optional<double> asymptotic_value;  // stated for large n only, no threshold
  bool exact = false;
};

/// Round at `digits` decimals, directed. Used only for presentation: printed
/// upper bounds round up, printed lower bounds round down.
inline double round_up_at(double x, int digits) {
  double scale = std::pow(10.0, digits);
  return std::ceil(x * scale - 1e-6) / scale;
}

inline double round_down_at(double x, int digits) {
  double scale = std::pow(10.0, digits);
  return std::floor(x * scale + 1e-6) / scale;
}

inline double round_at(double x, int digits) {
  double scale = std::pow(10.0, digits);
  return std::round(x * scale) / scale;
}

// ---------------------------------------------------------------------------
// Series equations behind the equation-based bounds
// ---------------------------------------------------------------------------

/// sum_{k>=1} x^k / k^k = target. The target 1/2 gives the hypercone
/// threshold x_0; target a/(1+a) gives the finite-a threshold x_0(a).
inline SeriesEquation hypercone_threshold_equation(double target = 0.5) {
  if (!(target > 1e-5 && target <= 0.5))
    throw std::invalid_argument("hypercone_threshold_equation: target must lie in (1e-5, 1/2]");
  SeriesEquation eq;
  eq.term = [](int k, double x) { return std::pow(x / k, k); };
  eq.tail_bound = [](int p, double x) { return tail_geometric(p, x); };
  eq.target = target;
  eq.x_lo = 1e-6;
  eq.x_hi = 0.999;
  return eq;
}

/// sum_{k>=1} (k^k / k!) x^k = 1/2, the equation for the L1 lower bound on
/// the hypercone. Coefficients are exact rationals converted once to double;
/// the tail is the Stirling bound.
inline SeriesEquation cone_l1_equation(int max_terms = 200) {
  if (max_terms < 2) throw std::invalid_argument("cone_l1_equation: max_terms must be >= 2");
  auto coeffs = std::make_shared<std::vector<double>>();
  coeffs->push_back(0.0);  // k = 0 unused
  BigInt kfact = 1;
  for (int k = 1; k <= max_terms; ++k) {
    kfact *= k;
    coeffs->push_back(
        BigRat(boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(k)), kfact)
            .convert_to<double>());
  }
  SeriesEquation eq;
  eq.term = [coeffs](int k, double x) {
    if (k >= static_cast<int>(coeffs->size()))
      throw std::invalid_argument("cone_l1_equation: truncation degree beyond coefficient table");
    return (*coeffs)[static_cast<std::size_t>(k)] * std::pow(x, k);
  };
  eq.tail_bound = [](int p, double x) { return tail_stirling_at(p, x); };
  eq.target = 0.5;
  eq.x_lo = 1e-6;
  eq.x_hi = 0.36;  // keeps e*x < 1, and the partial sum already exceeds 1/2 here
  return eq;
}

/// T_k(n) = sum over |alpha| = k of multinomial(alpha) self_power(alpha) / k^k,
/// exact. T_1 = n and T_k >= n^k / k^k; T_k <= n^k gives the geometric tail
/// envelope used below.
inline BigRat cone_T(int k, int n) {
  if (k < 1) throw std::invalid_argument("cone_T: k must be >= 1");
  BigInt num = 0;
  for (const MultiIndex& alpha : enumerate_weight(n, k))
    num += multinomial(alpha) * self_power(alpha);
  return BigRat(num, boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(k)));
}

/// sum_{k>=1} T_k(n) x^k = 1/2, the sharpened hypercone upper-bound equation
/// that keeps the exact T_k instead of the crude bound T_k >= n^k k!/k^k.
inline SeriesEquation refined_cone_equation(int n, int K) {
  if (n < 1) throw std::invalid_argument("refined_cone_equation: n must be >= 1");
  if (K < 2) throw std::invalid_argument("refined_cone_equation: K must be >= 2");
  auto coeffs = std::make_shared<std::vector<double>>();
  coeffs->push_back(0.0);
  for (int k = 1; k <= K; ++k) coeffs->push_back(cone_T(k, n).convert_to<double>());
  SeriesEquation eq;
  eq.term = [coeffs](int k, double x) {
    if (k >= static_cast<int>(coeffs->size())) return 0.0;
    return (*coeffs)[static_cast<std::size_t>(k)] * std::pow(x, k);
  };
  eq.tail_bound = [n](int p, double x) {
    double nx = n * x;
    if (nx >= 1.0)
      throw CertificateError(CertificateError::Kind::tail_too_large,
                             "refined_cone_equation: tail envelope needs n*x < 1");
    return std::exp((p + 1) * std::log(nx)) / (1.0 - nx);
  };
  eq.target = 0.5;
  eq.x_lo = 1e-6;
  eq.x_hi = std::min(0.45, 0.98 / n);
  return eq;
}

/// Certified bracket for the hypercone threshold x_0 (root of the x^k/k^k
/// equation at target 1/2). Shared by every caller; the solve is deterministic.
inline const CertifiedRoot& hypercone_threshold_certificate() {
  static const CertifiedRoot cert =
      bisect_increasing(hypercone_threshold_equation(0.5), 25, 1e-8);
  return cert;
}

// ---------------------------------------------------------------------------
// Closed-form and equation-based bounds
// ---------------------------------------------------------------------------

/// 1 - (2/3)^{1/n}, a lower bound for the radius of every complete bounded
/// Reinhardt domain in dimension n.
inline RadiusBound general_lower(int n) {
  if (n < 1) throw std::invalid_argument("general_lower: n must be >= 1");
  RadiusBound b;
  // In one variable the closed form collapses to exactly 1/3; evaluating
  // 1 - 2/3 in doubles would land one ulp away from it.
  b.value = n == 1 ? 1.0 / 3.0 : 1.0 - std::pow(2.0 / 3.0, 1.0 / n);
  b.direction = BoundDirection::lower;
  b.quantity = Quantity::b_n;
  b.n = n;
  b.exact = n == 1;
  b.note = "valid for every complete bounded Reinhardt domain";
  return b;
}

/// Majorant bound c0 + (1 - c0^2)((1-r)^{-n} - 1) for any function bounded by
/// one on a complete Reinhardt domain. At r = general_lower(n) it collapses to
/// 1 - (1 - c0)^2 / 2 < 1.
inline double reinhardt_majorant_bound(double c0, int n, double r) {
  if (!(c0 >= 0.0 && c0 < 1.0))
    throw std::invalid_argument("reinhardt_majorant_bound: c0 must lie in [0, 1)");
  if (!(r > 0.0 && r < 1.0))
    throw std::invalid_argument("reinhardt_majorant_bound: r must lie in (0, 1)");
  return c0 + (1.0 - c0 * c0) * (std::pow(1.0 - r, -n) - 1.0);
}

/// Truncated ball majorant
/// c0 + (1-c0^2)(r sqrt(n) + sum_{k=2}^{K} sqrt(C(n+k-1, k)) (r sqrt(n))^k),
/// finite only for r sqrt(n) < 1.
inline double ball_majorant_bound(double c0, int n, double r, int K) {
  if (!(c0 >= 0.0 && c0 < 1.0))
    throw std::invalid_argument("ball_majorant_bound: c0 must lie in [0, 1)");
  if (K < 2) throw std::invalid_argument("ball_majorant_bound: K must be >= 2");
  const double q = r * std::sqrt(static_cast<double>(n));
  if (!(q >= 0.0 && q < 1.0))
    throw std::invalid_argument("ball_majorant_bound: requires r sqrt(n) < 1");
  StableSum<long double> s;
  double qk = q;
  for (int k = 2; k <= K; ++k) {
    qk *= q;
    s.add(std::sqrt(simplex_count(n, k).convert_to<double>()) * qk);
  }
  return c0 + (1.0 - c0 * c0) * (q + static_cast<double>(s.value()));
}

/// Ball lower bound 2/(5n) for n >= 2; the 1/(2n) branch holds for large
/// enough n with no effective threshold, so it rides along as metadata.
inline RadiusBound ball_lower(int n) {
  if (n < 1) throw std::invalid_argument("ball_lower: n must be >= 1");
  if (n == 1) {
    RadiusBound b = general_lower(1);
    b.domain = DomainKind::ball;
    b.note = "one-variable case: the disk constant 1/3";
    return b;
  }
  RadiusBound b;
  b.value = 2.0 / (5.0 * n);
  b.direction = BoundDirection::lower;
  b.quantity = Quantity::b_n;
  b.domain = DomainKind::ball;
  b.n = n;
  b.asymptotic_value = 1.0 / (2.0 * n);
  b.note = "asymptotic branch 1/(2n) valid for large n, no effective threshold";
  return b;
}

/// Polydisk radius bounds: lower max(1/(3 sqrt n), 2/(5 sqrt n)), upper
/// 2 sqrt(log n)/sqrt(n). The upper formula exceeds 1 for n <= 8 and is then
/// vacuous but still reported.
inline std::pair<RadiusBound, RadiusBound> kn_bounds(int n) {
  if (n < 2) throw std::invalid_argument("kn_bounds: n must be >= 2");
  const double rn = std::sqrt(static_cast<double>(n));
  RadiusBound lo;
  lo.value = std::max(1.0 / (3.0 * rn), 2.0 / (5.0 * rn));
  lo.direction = BoundDirection::lower;
  lo.quantity = Quantity::k_n;
  lo.domain = DomainKind::polydisk;
  lo.n = n;
  lo.note = "max of 1/(3 sqrt n) and the sharper 2/(5 sqrt n)";
  RadiusBound hi;
  hi.value = 2.0 * std::sqrt(std::log(static_cast<double>(n))) / rn;
  hi.direction = BoundDirection::upper;
  hi.quantity = Quantity::k_n;
  hi.domain = DomainKind::polydisk;
  hi.n = n;
  hi.note = "2 sqrt(log n)/sqrt(n)";
  return {lo, hi};
}

namespace detail {

/// Smallest 6-decimal step strictly above the certified root: the quotable
/// upper constant. The certificate is tight enough (width 1e-8) that the
/// rounding of its midpoint is unambiguous.
inline double printed_threshold_upper() {
  const CertifiedRoot& c = hypercone_threshold_certificate();
  return (std::round(c.midpoint() * 1e6) + 1.0) / 1e6;
}

}  // namespace detail

/// Hypercone upper bound: (6-decimal step above x_0) / n, rounded up at the
/// sixth decimal.
inline RadiusBound hypercone_upper(int n) {
  if (n < 1) throw std::invalid_argument("hypercone_upper: n must be >= 1");
  const double numerator = detail::printed_threshold_upper();
  RadiusBound b;
  b.value = n == 1 ? numerator : round_up_at(numerator / n, 6);
  b.direction = BoundDirection::upper;
  b.quantity = Quantity::b_n;
  b.domain = DomainKind::hypercone;
  b.n = n;
  b.certificate = hypercone_threshold_certificate();
  b.note = "printed threshold step over the certified root, divided by n";
  return b;
}

/// Sharpened hypercone upper bound from the exact-T_k equation; the returned
/// value is the certified upper end of the root bracket. In one variable the
/// equation collapses to the geometric one and the value is 1/3.
inline RadiusBound refined_cone_upper(int n, int K = 60) {
  CertifiedRoot cert = bisect_increasing(refined_cone_equation(n, K), K, 1e-9);
  RadiusBound b;
  b.value = cert.hi;
  b.direction = BoundDirection::upper;
  b.quantity = Quantity::b_n;
  b.domain = DomainKind::hypercone;
  b.n = n;
  b.certificate = cert;
  b.note = "root of the exact-coefficient threshold equation";
  return b;
}

/// Dimension-independent bounds for the hypercone L1 radius: certified lower
/// bracket of the k^k/k! equation, and the extremal-family threshold 1/3.
inline std::pair<RadiusBound, RadiusBound> l1_bounds() {
  static const CertifiedRoot cert = bisect_increasing(cone_l1_equation(), 25, 1e-6);
  RadiusBound lo;
  lo.value = cert.lo;
  lo.direction = BoundDirection::lower;
  lo.quantity = Quantity::l_n;
  lo.domain = DomainKind::hypercone;
  lo.n = 0;
  lo.certificate = cert;
  lo.note = "independent of dimension";
  if (!(lo.value >= 0.238843))
    throw std::logic_error("l1_bounds: certified lower bracket fell below 0.238843");
  RadiusBound hi;
  hi.value = 1.0 / 3.0;
  hi.direction = BoundDirection::upper;
  hi.quantity = Quantity::l_n;
  hi.domain = DomainKind::hypercone;
  hi.n = 0;
  hi.exact = true;
  hi.note = "extremal-family threshold 1/(1+2a) in the degenerate limit";
  return {lo, hi};
}

struct Asymptotics {
  double slope = 0.0;         // limit of n * general_lower(n)
  double ratio_limsup = 0.0;  // printed hypercone numerator over that slope
};

inline Asymptotics asymptotics() {
  Asymptotics a;
  a.slope = std::log(1.5);
  a.ratio_limsup = detail::printed_threshold_upper() / a.slope;
  return a;
}

/// n * general_lower(n); approaches the slope log(3/2) as n grows.
inline double scaled_general_lower(int n) { return n * general_lower(n).value; }

/// Exact radius (1/3)^{1/|beta|} of the domain {|z^beta| < 1} with coprime
/// exponents; bounded holomorphic functions there depend only on z^beta.
inline RadiusBound monomial_domain_radius(const MultiIndex& beta) {
  int g = 0;
  for (int p : beta.parts()) g = std::gcd(g, p);
  if (g != 1)
    throw std::invalid_argument("monomial_domain_radius: exponents must be coprime");
  RadiusBound b;
  const int w = beta.weight();
  b.value = w == 1 ? 1.0 / 3.0 : std::pow(1.0 / 3.0, 1.0 / w);
  b.direction = BoundDirection::lower;  // exact value: lower and upper agree
  b.quantity = Quantity::b_n;
  b.domain = DomainKind::monomial;
  b.n = beta.dimension();
  b.exact = true;
  b.note = "exact closed form (1/3)^(1/|beta|)";
  return b;
}

}  // namespace bohr
