#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bohr/domains.hpp"
#include "bohr/multiindex.hpp"
#include "bohr/stable_sum.hpp"

namespace bohr {

/// Power series cut at total degree K: a finite map from multi-indices to
/// complex coefficients. Absent index means zero coefficient.
class TruncatedSeries {
 public:
  TruncatedSeries(int n, int K) : n_(n), cap_(K) {
    if (n < 1) throw std::invalid_argument("TruncatedSeries: dimension must be >= 1");
    if (K < 0) throw std::invalid_argument("TruncatedSeries: degree cap must be >= 0");
  }

  int dimension() const { return n_; }
  int degree_cap() const { return cap_; }

  void set(const MultiIndex& alpha, Complex c) {
    if (alpha.dimension() != n_)
      throw std::invalid_argument("TruncatedSeries::set: dimension mismatch");
    if (alpha.weight() > cap_)
      throw std::invalid_argument("TruncatedSeries::set: weight exceeds degree cap");
    if (c == Complex(0.0, 0.0))
      coeff_.erase(alpha);
    else
      coeff_[alpha] = c;
  }

  Complex at(const MultiIndex& alpha) const {
    auto it = coeff_.find(alpha);
    return it == coeff_.end() ? Complex(0.0, 0.0) : it->second;
  }

  /// Lexicographically ordered; every sum below iterates in this order.
  const std::map<MultiIndex, Complex>& coefficients() const { return coeff_; }

  std::size_t term_count() const { return coeff_.size(); }

  void scale(double s) {
    for (auto& [a, c] : coeff_) c *= s;
  }

 private:
  int n_;
  int cap_;
  std::map<MultiIndex, Complex> coeff_;
};

/// Layers P_0, ..., P_K of a series grouped by total degree.
class HomogeneousExpansion {
 public:
  HomogeneousExpansion(int n, int K)
      : n_(n), layers_(static_cast<std::size_t>(K) + 1) {
    if (n < 1) throw std::invalid_argument("HomogeneousExpansion: dimension must be >= 1");
    if (K < 0) throw std::invalid_argument("HomogeneousExpansion: degree cap must be >= 0");
  }

  int dimension() const { return n_; }
  int degree_cap() const { return static_cast<int>(layers_.size()) - 1; }

  std::map<MultiIndex, Complex>& layer(int k) { return layers_.at(static_cast<std::size_t>(k)); }
  const std::map<MultiIndex, Complex>& layer(int k) const {
    return layers_.at(static_cast<std::size_t>(k));
  }

 private:
  int n_;
  std::vector<std::map<MultiIndex, Complex>> layers_;
};

namespace detail {

inline Complex ipow(Complex z, int e) {
  Complex r(1.0, 0.0);
  while (e > 0) {
    if (e & 1) r *= z;
    z *= z;
    e >>= 1;
  }
  return r;
}

inline Complex monomial_value(const MultiIndex& alpha, const CVector& z) {
  Complex r(1.0, 0.0);
  for (int j = 0; j < alpha.dimension(); ++j)
    if (alpha[j] > 0) r *= ipow(z[static_cast<std::size_t>(j)], alpha[j]);
  return r;
}

}  // namespace detail

/// Expansion of (1+a)/2 * (1 - (z_1+...+z_n)) / (1 - a (z_1+...+z_n)),
/// the family whose majorant sums reach 1 at the hypercone thresholds:
/// c_0 = (1+a)/2 and c_alpha = -((1-a^2)/2) a^{k-1} multinomial(alpha).
inline TruncatedSeries extremal_cone_family(double a, int n, int K) {
  if (!(a > 0.0 && a < 1.0))
    throw std::invalid_argument("extremal_cone_family: a must lie in (0, 1)");
  if (K < 1) throw std::invalid_argument("extremal_cone_family: K must be >= 1");
  TruncatedSeries f(n, K);
  f.set(MultiIndex::zero(n), Complex((1.0 + a) / 2.0, 0.0));
  const double lead = -(1.0 - a * a) / 2.0;
  double apow = 1.0;  // a^{k-1}
  for (int k = 1; k <= K; ++k) {
    for (const MultiIndex& alpha : enumerate_weight(n, k))
      f.set(alpha, Complex(lead * apow * multinomial(alpha).convert_to<double>(), 0.0));
    apow *= a;
  }
  return f;
}

/// One-variable expansion of (a - z)/(1 - a z): c_0 = a,
/// c_k = -(1-a^2) a^{k-1}. Its modulus is 1 on the unit circle, and its
/// absolute-term sum crosses 1 exactly at r = 1/(1+2a).
inline TruncatedSeries mobius_witness(double a, int K) {
  if (!(a > 0.0 && a < 1.0))
    throw std::invalid_argument("mobius_witness: a must lie in (0, 1)");
  TruncatedSeries f(1, K);
  f.set(MultiIndex{0}, Complex(a, 0.0));
  double c = -(1.0 - a * a);
  for (int k = 1; k <= K; ++k) {
    f.set(MultiIndex{k}, Complex(c, 0.0));
    c *= a;
  }
  return f;
}

/// Substitution z -> a_1 z_1 + ... + a_n z_n into a one-variable series:
/// the coefficient of z^alpha is f_k multinomial(alpha) a^alpha, k = |alpha|.
inline TruncatedSeries compose_linear(const TruncatedSeries& f, const CVector& a) {
  if (f.dimension() != 1)
    throw std::invalid_argument("compose_linear: series must be one-dimensional");
  if (a.empty()) throw std::invalid_argument("compose_linear: direction must be non-empty");
  const int n = static_cast<int>(a.size());
  const int K = f.degree_cap();
  TruncatedSeries g(n, K);
  for (int k = 0; k <= K; ++k) {
    Complex fk = f.at(MultiIndex{k});
    if (fk == Complex(0.0, 0.0)) continue;
    for (const MultiIndex& alpha : k == 0 ? std::vector<MultiIndex>{MultiIndex::zero(n)}
                                          : enumerate_weight(n, k)) {
      Complex c = fk * multinomial(alpha).convert_to<double>() *
                  detail::monomial_value(alpha, a);
      if (c != Complex(0.0, 0.0)) g.set(alpha, c);
    }
  }
  return g;
}

/// Sum of c_alpha z^alpha over the stored coefficients, lexicographic order.
inline Complex evaluate(const TruncatedSeries& f, const CVector& z) {
  if (static_cast<int>(z.size()) != f.dimension())
    throw std::invalid_argument("evaluate: dimension mismatch");
  StableSum<double> re, im;
  for (const auto& [alpha, c] : f.coefficients()) {
    Complex t = c * detail::monomial_value(alpha, z);
    re.add(t.real());
    im.add(t.imag());
  }
  return {re.value(), im.value()};
}

/// A sum together with the truncation evidence callers need to judge it.
struct MajorantSum {
  double value = 0.0;
  double last_term = 0.0;   // magnitude of the lexicographically last term
  int top_weight = 0;       // largest stored weight
  double top_layer = 0.0;   // sum of term magnitudes at that weight
};

/// Sum over alpha of |c_alpha| d_alpha(D_r), the majorant checked by every
/// Bohr-type verdict here.
inline MajorantSum bohr_majorant_sum_detail(const TruncatedSeries& f, const DomainSpec& D,
                                            double r) {
  if (f.dimension() != D.dimension())
    throw std::invalid_argument("bohr_majorant_sum: dimension mismatch");
  MajorantSum out;
  for (const auto& [alpha, c] : f.coefficients())
    out.top_weight = std::max(out.top_weight, alpha.weight());
  StableSum<long double> acc;
  StableSum<long double> top;
  for (const auto& [alpha, c] : f.coefficients()) {
    double t = std::abs(c) * scaled_monomial_sup(D, alpha, r);
    acc.add(t);
    if (alpha.weight() == out.top_weight) top.add(t);
    out.last_term = t;
  }
  out.value = static_cast<double>(acc.value());
  out.top_layer = static_cast<double>(top.value());
  return out;
}

inline double bohr_majorant_sum(const TruncatedSeries& f, const DomainSpec& D, double r) {
  return bohr_majorant_sum_detail(f, D, r).value;
}

/// Sum over alpha of the L1 norms of c_alpha z^alpha on the boundary of the
/// scaled hypercone. Coincides with bohr_majorant_sum on the disk for n = 1.
inline MajorantSum cone_l1_sum_detail(const TruncatedSeries& f, double r) {
  if (!(r > 0.0) || r > 1.0)
    throw std::invalid_argument("cone_l1_sum: r must lie in (0, 1]");
  const int n = f.dimension();
  MajorantSum out;
  for (const auto& [alpha, c] : f.coefficients())
    out.top_weight = std::max(out.top_weight, alpha.weight());
  StableSum<long double> acc;
  StableSum<long double> top;
  for (const auto& [alpha, c] : f.coefficients()) {
    double t = std::abs(c) * cone_l1_weight(alpha, n, r);
    acc.add(t);
    if (alpha.weight() == out.top_weight) top.add(t);
    out.last_term = t;
  }
  out.value = static_cast<double>(acc.value());
  out.top_layer = static_cast<double>(top.value());
  return out;
}

inline double cone_l1_sum(const TruncatedSeries& f, double r) {
  return cone_l1_sum_detail(f, r).value;
}

inline HomogeneousExpansion to_homogeneous(const TruncatedSeries& f) {
  HomogeneousExpansion h(f.dimension(), f.degree_cap());
  for (const auto& [alpha, c] : f.coefficients()) h.layer(alpha.weight())[alpha] = c;
  return h;
}

inline TruncatedSeries from_homogeneous(const HomogeneousExpansion& h) {
  TruncatedSeries f(h.dimension(), h.degree_cap());
  for (int k = 0; k <= h.degree_cap(); ++k)
    for (const auto& [alpha, c] : h.layer(k)) f.set(alpha, c);
  return f;
}

/// Coefficients of t -> f(a t): entry k is P_k(a).
inline std::vector<Complex> slice_to_line(const HomogeneousExpansion& h, const CVector& a) {
  if (static_cast<int>(a.size()) != h.dimension())
    throw std::invalid_argument("slice_to_line: dimension mismatch");
  std::vector<Complex> out(static_cast<std::size_t>(h.degree_cap()) + 1, Complex(0.0, 0.0));
  for (int k = 0; k <= h.degree_cap(); ++k) {
    StableSum<double> re, im;
    for (const auto& [alpha, c] : h.layer(k)) {
      Complex t = c * detail::monomial_value(alpha, a);
      re.add(t.real());
      im.add(t.imag());
    }
    out[static_cast<std::size_t>(k)] = Complex(re.value(), im.value());
  }
  return out;
}

/// Sum over k of |P_k(z)|.
inline double homogeneous_bohr_sum(const HomogeneousExpansion& h, const CVector& z) {
  std::vector<Complex> values = slice_to_line(h, z);
  StableSum<long double> acc;
  for (const Complex& v : values) acc.add(std::abs(v));
  return static_cast<double>(acc.value());
}

namespace detail {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

/// Text form: header "n K", then one line per coefficient,
/// "a_1 ... a_n re im" with 17 significant digits. Round-trips exactly.
inline void write_series(std::ostream& os, const TruncatedSeries& f) {
  os << f.dimension() << ' ' << f.degree_cap() << '\n';
  for (const auto& [alpha, c] : f.coefficients()) {
    for (int j = 0; j < alpha.dimension(); ++j) os << alpha[j] << ' ';
    os << detail::fmt17(c.real()) << ' ' << detail::fmt17(c.imag()) << '\n';
  }
}

inline TruncatedSeries read_series(std::istream& is) {
  int n = 0, K = -1;
  if (!(is >> n >> K)) throw std::runtime_error("read_series: bad header");
  TruncatedSeries f(n, K);
  while (true) {
    std::vector<int> parts(static_cast<std::size_t>(n));
    if (!(is >> parts[0])) break;
    for (int j = 1; j < n; ++j)
      if (!(is >> parts[static_cast<std::size_t>(j)]))
        throw std::runtime_error("read_series: truncated index");
    double re, im;
    if (!(is >> re >> im)) throw std::runtime_error("read_series: truncated coefficient");
    f.set(MultiIndex(parts), Complex(re, im));
  }
  return f;
}

inline std::string to_text(const TruncatedSeries& f) {
  std::ostringstream os;
  write_series(os, f);
  return os.str();
}

inline TruncatedSeries from_text(const std::string& s) {
  std::istringstream is(s);
  return read_series(is);
}

}  // namespace bohr
