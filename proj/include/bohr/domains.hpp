#pragma once

#include <cmath>
#include <complex>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bohr/multiindex.hpp"

namespace bohr {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

enum class DomainKind { polydisk, ball, hypercone, monomial, custom };

inline const char* domain_kind_name(DomainKind k) {
  switch (k) {
    case DomainKind::polydisk: return "polydisk";
    case DomainKind::ball: return "ball";
    case DomainKind::hypercone: return "hypercone";
    case DomainKind::monomial: return "monomial";
    case DomainKind::custom: return "custom";
  }
  return "?";
}

/// A complete bounded Reinhardt domain, described by the sup-norms it assigns
/// to monomials. Immutable; safe to share across threads.
class DomainSpec {
 public:
  static DomainSpec polydisk(int n) { return DomainSpec(DomainKind::polydisk, n); }
  static DomainSpec ball(int n) { return DomainSpec(DomainKind::ball, n); }
  static DomainSpec hypercone(int n) { return DomainSpec(DomainKind::hypercone, n); }

  /// Domain {|z^beta| < 1} with coprime exponents; bounded holomorphic
  /// functions there depend on z^beta only, so the radius has a closed form
  /// and no per-monomial sup-norm is defined.
  static DomainSpec monomial(MultiIndex beta) {
    int g = 0;
    for (int p : beta.parts()) g = std::gcd(g, p);
    if (g != 1)
      throw std::invalid_argument("DomainSpec::monomial: exponents must be coprime");
    DomainSpec d(DomainKind::monomial, beta.dimension());
    d.beta_ = std::move(beta);
    return d;
  }

  static DomainSpec custom(int n, std::map<MultiIndex, double> table) {
    DomainSpec d(DomainKind::custom, n);
    for (const auto& [a, v] : table) {
      if (a.dimension() != n)
        throw std::invalid_argument("DomainSpec::custom: index dimension mismatch");
      if (!(v > 0))
        throw std::invalid_argument("DomainSpec::custom: sup-norm values must be positive");
    }
    d.table_ = std::move(table);
    return d;
  }

  DomainKind kind() const { return kind_; }
  int dimension() const { return n_; }

  const MultiIndex& exponent() const {
    if (kind_ != DomainKind::monomial)
      throw std::logic_error("DomainSpec::exponent: not a monomial domain");
    return beta_;
  }

  const std::map<MultiIndex, double>& table() const { return table_; }

 private:
  DomainSpec(DomainKind k, int n) : kind_(k), n_(n) {
    if (n < 1) throw std::invalid_argument("DomainSpec: dimension must be >= 1");
  }

  DomainKind kind_;
  int n_;
  MultiIndex beta_;
  std::map<MultiIndex, double> table_;
};

/// Exact value of max |z^alpha| over the closed hypercone, self_power/|a|^|a|.
inline BigRat hypercone_sup_exact(const MultiIndex& alpha) {
  int k = alpha.weight();
  if (k == 0) return BigRat(1);
  return BigRat(self_power(alpha),
                boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(k)));
}

namespace detail {

// log(self_power(alpha) / |alpha|^|alpha|), with 0 log 0 = 0. Evaluating the
// ratio through logs avoids the integer blow-up at large weight.
inline double log_self_power_ratio(const MultiIndex& alpha) {
  int k = alpha.weight();
  if (k == 0) return 0.0;
  double s = 0.0;
  for (int p : alpha.parts())
    if (p > 1) s += p * std::log(static_cast<double>(p));
  return s - k * std::log(static_cast<double>(k));
}

}  // namespace detail

/// d_alpha(D) = max over the closure of D of |z^alpha|.
inline double monomial_sup(const DomainSpec& D, const MultiIndex& alpha) {
  if (alpha.dimension() != D.dimension())
    throw std::invalid_argument("monomial_sup: dimension mismatch");
  switch (D.kind()) {
    case DomainKind::polydisk:
      return 1.0;
    case DomainKind::ball:
      return std::exp(0.5 * detail::log_self_power_ratio(alpha));
    case DomainKind::hypercone:
      return std::exp(detail::log_self_power_ratio(alpha));
    case DomainKind::custom: {
      auto it = D.table().find(alpha);
      if (it == D.table().end())
        throw std::out_of_range("monomial_sup: custom table has no entry for " + alpha.str());
      return it->second;
    }
    case DomainKind::monomial:
      throw std::invalid_argument(
          "monomial_sup: not defined for monomial domains; use the closed-form radius");
  }
  throw std::logic_error("monomial_sup: unreachable");
}

/// d_alpha(D_r) = r^|alpha| d_alpha(D) for the homothety D_r = r * D.
inline double scaled_monomial_sup(const DomainSpec& D, const MultiIndex& alpha, double r) {
  if (!(r > 0.0) || r > 1.0)
    throw std::invalid_argument("scaled_monomial_sup: r must lie in (0, 1]");
  return std::pow(r, alpha.weight()) * monomial_sup(D, alpha);
}

/// Integral of |z^{2 alpha}| over the unit-sphere boundary measure:
/// alpha! (n-1)! / (|alpha|+n-1)!, exact.
inline BigRat sphere_moment(const MultiIndex& alpha, int n) {
  if (alpha.dimension() != n)
    throw std::invalid_argument("sphere_moment: dimension mismatch");
  BigInt num = factorial(n - 1);
  for (int p : alpha.parts()) num *= factorial(p);
  return BigRat(num, factorial(alpha.weight() + n - 1));
}

/// L1 weight of z^alpha on the boundary of the scaled hypercone:
/// alpha! (n-1)! / (|alpha|+n-1)! * r^|alpha|.
inline double cone_l1_weight(const MultiIndex& alpha, int n, double r) {
  if (!(r > 0.0) || r > 1.0)
    throw std::invalid_argument("cone_l1_weight: r must lie in (0, 1]");
  return sphere_moment(alpha, n).convert_to<double>() * std::pow(r, alpha.weight());
}

/// Deterministic grid on the boundary of a named domain. Moduli come from an
/// equal subdivision of the defining simplex, phases from an equal subdivision
/// of each circle; the grid refines as density grows. The max of |f| over it
/// is a lower estimate of the true boundary sup.
inline std::vector<CVector> boundary_sample(const DomainSpec& D, int density) {
  if (density < 1) throw std::invalid_argument("boundary_sample: density must be >= 1");
  const int n = D.dimension();
  const DomainKind kind = D.kind();
  if (kind == DomainKind::monomial || kind == DomainKind::custom)
    throw std::invalid_argument("boundary_sample: unsupported domain kind");

  std::vector<std::vector<double>> moduli;
  if (kind == DomainKind::polydisk) {
    moduli.push_back(std::vector<double>(static_cast<std::size_t>(n), 1.0));
  } else {
    for (const MultiIndex& c : enumerate_weight(n, density)) {
      std::vector<double> m(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) {
        double share = static_cast<double>(c[j]) / density;
        m[static_cast<std::size_t>(j)] =
            kind == DomainKind::ball ? std::sqrt(share) : share;
      }
      moduli.push_back(std::move(m));
    }
  }

  std::vector<CVector> points;
  const double step = 2.0 * M_PI / density;
  std::vector<int> phase(static_cast<std::size_t>(n), 0);
  for (const auto& m : moduli) {
    std::fill(phase.begin(), phase.end(), 0);
    while (true) {
      CVector z(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j)
        z[static_cast<std::size_t>(j)] =
            std::polar(m[static_cast<std::size_t>(j)], step * phase[static_cast<std::size_t>(j)]);
      points.push_back(std::move(z));
      int j = n - 1;
      while (j >= 0 && ++phase[static_cast<std::size_t>(j)] == density) {
        phase[static_cast<std::size_t>(j)] = 0;
        --j;
      }
      if (j < 0) break;
    }
  }
  return points;
}

/// Reads a custom-domain table: one entry per line, n exponent parts followed
/// by the sup-norm value; blank lines and lines starting with '#' are skipped.
/// The dimension is taken from the first entry.
inline DomainSpec load_custom_domain(std::istream& in) {
  std::map<MultiIndex, double> table;
  int n = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<double> tokens;
    double v;
    while (ls >> v) tokens.push_back(v);
    if (tokens.empty()) continue;
    if (!line.empty() && line[0] == '#') continue;
    if (tokens.size() < 2)
      throw std::runtime_error("custom domain: line " + std::to_string(lineno) +
                               ": expected parts followed by a value");
    if (n < 0) n = static_cast<int>(tokens.size()) - 1;
    if (static_cast<int>(tokens.size()) != n + 1)
      throw std::runtime_error("custom domain: line " + std::to_string(lineno) +
                               ": inconsistent dimension");
    std::vector<int> parts(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      double p = tokens[static_cast<std::size_t>(j)];
      if (p < 0 || p != std::floor(p))
        throw std::runtime_error("custom domain: line " + std::to_string(lineno) +
                                 ": parts must be non-negative integers");
      parts[static_cast<std::size_t>(j)] = static_cast<int>(p);
    }
    table[MultiIndex(parts)] = tokens.back();
  }
  if (n < 0) throw std::runtime_error("custom domain: empty table");
  return DomainSpec::custom(n, std::move(table));
}

}  // namespace bohr
