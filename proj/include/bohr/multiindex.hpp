#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace bohr {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Exponent vector of a monomial z^alpha. Immutable after construction.
class MultiIndex {
 public:
  MultiIndex() = default;

  explicit MultiIndex(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty())
      throw std::invalid_argument("MultiIndex: dimension must be >= 1");
    for (int p : parts_)
      if (p < 0)
        throw std::invalid_argument("MultiIndex: parts must be non-negative");
  }

  MultiIndex(std::initializer_list<int> parts)
      : MultiIndex(std::vector<int>(parts)) {}

  static MultiIndex zero(int n) {
    return MultiIndex(std::vector<int>(static_cast<std::size_t>(check_dim(n)), 0));
  }

  int dimension() const { return static_cast<int>(parts_.size()); }

  int weight() const {
    return std::accumulate(parts_.begin(), parts_.end(), 0);
  }

  int operator[](int j) const { return parts_[static_cast<std::size_t>(j)]; }

  const std::vector<int>& parts() const { return parts_; }

  bool is_zero() const {
    for (int p : parts_)
      if (p != 0) return false;
    return true;
  }

  // Lexicographic order; gives every index map a deterministic iteration order.
  auto operator<=>(const MultiIndex&) const = default;

  std::string str() const {
    std::string s = "(";
    for (std::size_t j = 0; j < parts_.size(); ++j) {
      if (j) s += ",";
      s += std::to_string(parts_[j]);
    }
    return s + ")";
  }

 private:
  static int check_dim(int n) {
    if (n < 1) throw std::invalid_argument("MultiIndex: dimension must be >= 1");
    return n;
  }

  std::vector<int> parts_;
};

inline BigInt factorial(int k) {
  BigInt r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact at every step
  }
  return r;
}

/// Number of multi-indices of dimension n with weight k: C(n+k-1, k).
inline BigInt simplex_count(int n, int k) {
  if (n < 1) throw std::invalid_argument("simplex_count: n must be >= 1");
  if (k < 0) throw std::invalid_argument("simplex_count: k must be >= 0");
  return binomial(n + k - 1, k);
}

/// All multi-indices of dimension n and weight exactly k, ascending
/// lexicographic. Size equals simplex_count(n, k).
inline std::vector<MultiIndex> enumerate_weight(int n, int k) {
  if (n < 1) throw std::invalid_argument("enumerate_weight: n must be >= 1");
  if (k < 0) throw std::invalid_argument("enumerate_weight: k must be >= 0");
  std::vector<MultiIndex> out;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  // Fill position j with 0..remaining; the tail position absorbs the rest.
  auto rec = [&](auto&& self, int j, int remaining) -> void {
    if (j == n - 1) {
      cur[static_cast<std::size_t>(j)] = remaining;
      out.emplace_back(cur);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      cur[static_cast<std::size_t>(j)] = v;
      self(self, j + 1, remaining - v);
    }
  };
  rec(rec, 0, k);
  return out;
}

/// |alpha|! / (alpha_1! ... alpha_n!), exact.
inline BigInt multinomial(const MultiIndex& alpha) {
  BigInt r = factorial(alpha.weight());
  for (int p : alpha.parts()) r /= factorial(p);
  return r;
}

/// alpha_1^alpha_1 * ... * alpha_n^alpha_n with 0^0 = 1, exact.
inline BigInt self_power(const MultiIndex& alpha) {
  BigInt r = 1;
  for (int p : alpha.parts())
    if (p > 0) r *= boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(p));
  return r;
}

}  // namespace bohr
