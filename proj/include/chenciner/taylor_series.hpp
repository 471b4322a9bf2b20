#pragma once

#include <map>
#include <utility>
#include <vector>

#include "chenciner/errors.hpp"
#include "chenciner/rational.hpp"

namespace chenciner {

// Degree-graded term order: by total degree i+j, then by i.
struct TermOrder {
  bool operator()(const std::pair<int, int>& a, const std::pair<int, int>& b) const {
    int da = a.first + a.second, db = b.first + b.second;
    if (da != db) return da < db;
    return a.first < b.first;
  }
};

// Sparse bivariate polynomial  sum c_ij x^i y^j  with deterministic term
// order. T is double for dynamics and Rational for exact series work.
template <class T>
class TaylorSeries2 {
 public:
  using TermMap = std::map<std::pair<int, int>, T, TermOrder>;

  TaylorSeries2() = default;

  explicit TaylorSeries2(std::initializer_list<std::pair<std::pair<int, int>, T>> init) {
    for (const auto& [ij, c] : init) set(ij.first, ij.second, c);
  }

  void set(int i, int j, const T& c) {
    if (i < 0 || j < 0) throw Error("series term with negative exponent");
    if (c == T(0)) {
      terms_.erase({i, j});
    } else {
      terms_[{i, j}] = c;
    }
  }

  void add(int i, int j, const T& c) { set(i, j, coefficient(i, j) + c); }

  T coefficient(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? T(0) : it->second;
  }

  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  // Highest total degree present, floored at 1 for the empty/constant case.
  int max_order() const {
    int m = 1;
    for (const auto& [ij, c] : terms_) m = std::max(m, ij.first + ij.second);
    return m;
  }

  T eval(const T& x, const T& y) const {
    int mi = 0, mj = 0;
    for (const auto& [ij, c] : terms_) {
      mi = std::max(mi, ij.first);
      mj = std::max(mj, ij.second);
    }
    std::vector<T> xp(static_cast<size_t>(mi) + 1, T(1));
    std::vector<T> yp(static_cast<size_t>(mj) + 1, T(1));
    for (int i = 1; i <= mi; ++i) xp[i] = xp[i - 1] * x;
    for (int j = 1; j <= mj; ++j) yp[j] = yp[j - 1] * y;
    T acc(0);
    for (const auto& [ij, c] : terms_) acc += c * xp[ij.first] * yp[ij.second];
    return acc;
  }

  TaylorSeries2 truncated(int max_total_order) const {
    TaylorSeries2 out;
    for (const auto& [ij, c] : terms_)
      if (ij.first + ij.second <= max_total_order) out.terms_[ij] = c;
    return out;
  }

  TaylorSeries2 scaled(const T& k) const {
    TaylorSeries2 out;
    if (k == T(0)) return out;
    for (const auto& [ij, c] : terms_) out.terms_[ij] = c * k;
    return out;
  }

  friend TaylorSeries2 operator+(const TaylorSeries2& a, const TaylorSeries2& b) {
    TaylorSeries2 out = a;
    for (const auto& [ij, c] : b.terms_) out.add(ij.first, ij.second, c);
    return out;
  }

  friend TaylorSeries2 operator-(const TaylorSeries2& a, const TaylorSeries2& b) {
    return a + b.scaled(T(-1));
  }

  // Product with all terms above max_total_order discarded.
  static TaylorSeries2 truncated_product(const TaylorSeries2& a, const TaylorSeries2& b,
                                         int max_total_order) {
    TaylorSeries2 out;
    for (const auto& [aij, ac] : a.terms_) {
      int da = aij.first + aij.second;
      if (da > max_total_order) continue;
      for (const auto& [bij, bc] : b.terms_) {
        if (da + bij.first + bij.second > max_total_order) continue;
        out.add(aij.first + bij.first, aij.second + bij.second, ac * bc);
      }
    }
    return out;
  }

  friend bool operator==(const TaylorSeries2& a, const TaylorSeries2& b) {
    return a.terms_ == b.terms_;
  }

 private:
  TermMap terms_;
};

using ExactSeries = TaylorSeries2<Rational>;
using DoubleSeries = TaylorSeries2<double>;

inline DoubleSeries to_double_series(const ExactSeries& s) {
  DoubleSeries out;
  for (const auto& [ij, c] : s.terms()) out.set(ij.first, ij.second, to_double(c));
  return out;
}

}  // namespace chenciner
