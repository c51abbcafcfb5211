#include "majorization.hpp"

#include <algorithm>
#include <cmath>

namespace exos::majorization {

namespace {

void validate(const RealVector& v, const char* who) {
  if (v.empty()) throw InvalidInput(std::string(who) + ": empty vector");
  for (double e : v) {
    if (!std::isfinite(e) || e < 0.0) {
      throw InvalidInput(std::string(who) + ": entries must be finite and >= 0");
    }
  }
}

void validate_pair(const RealVector& x, const RealVector& y, const char* who) {
  validate(x, who);
  validate(y, who);
  if (x.size() != y.size()) throw InvalidInput(std::string(who) + ": length mismatch");
}

RealVector sorted(const RealVector& v) {
  RealVector s = v;
  std::sort(s.begin(), s.end());
  return s;
}

RealVector prefix_sums(const RealVector& s) {
  RealVector p(s.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    acc += s[i];
    p[i] = acc;
  }
  return p;
}

RealVector tail_sums(const RealVector& s) {
  RealVector t(s.size());
  double acc = 0.0;
  for (std::size_t i = s.size(); i-- > 0;) {
    acc += s[i];
    t[i] = acc;
  }
  return t;
}

}  // namespace

RealVector order_coordinates(const RealVector& v) {
  validate(v, "order_coordinates");
  return sorted(v);
}

bool majorizes(const RealVector& x, const RealVector& y) {
  validate_pair(x, y, "majorizes");
  const RealVector px = prefix_sums(sorted(x));
  const RealVector py = prefix_sums(sorted(y));
  const std::size_t n = px.size();
  for (std::size_t l = 0; l + 1 < n; ++l) {
    if (py[l] < px[l] - kSumSlack) return false;
  }
  return std::abs(px[n - 1] - py[n - 1]) <= kSumSlack;
}

bool weakly_submajorizes(const RealVector& x, const RealVector& y) {
  validate_pair(x, y, "weakly_submajorizes");
  const RealVector tx = tail_sums(sorted(x));
  const RealVector ty = tail_sums(sorted(y));
  for (std::size_t l = 0; l < tx.size(); ++l) {
    if (ty[l] > tx[l] + kSumSlack) return false;
  }
  return true;
}

bool weakly_supermajorizes(const RealVector& x, const RealVector& y) {
  validate_pair(x, y, "weakly_supermajorizes");
  const RealVector px = prefix_sums(sorted(x));
  const RealVector py = prefix_sums(sorted(y));
  for (std::size_t l = 0; l < px.size(); ++l) {
    if (py[l] < px[l] - kSumSlack) return false;
  }
  return true;
}

RealVector expand_outlier_vector(double a, double b, int n1, int n2) {
  if (n1 < 1 || n2 < 1) throw InvalidInput("expand_outlier_vector: counts must be >= 1");
  if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b < 0.0) {
    throw InvalidInput("expand_outlier_vector: values must be finite and >= 0");
  }
  RealVector v;
  v.reserve(static_cast<std::size_t>(n1 + n2));
  v.insert(v.end(), static_cast<std::size_t>(n1), a);
  v.insert(v.end(), static_cast<std::size_t>(n2), b);
  return v;
}

bool in_increasing_cone(const RealVector& v) {
  if (v.empty()) return false;
  if (!(v.front() > 0.0)) return false;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i] > v[i + 1]) return false;
  }
  return true;
}

bool in_decreasing_cone(const RealVector& v) {
  if (v.empty()) return false;
  if (!(v.back() > 0.0)) return false;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i] < v[i + 1]) return false;
  }
  return true;
}

}  // namespace exos::majorization
