#include "gasbound/region1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gasbound {

Region1D Region1D::all() {
  Region1D r;
  r.parts_.push_back({-kInf, kInf, false, false});
  return r;
}

Region1D Region1D::interval(double lo, double hi, bool lo_closed, bool hi_closed) {
  Region1D r;
  Interval1D iv{lo, hi, lo_closed, hi_closed};
  if (iv.valid()) r.parts_.push_back(iv);
  return r;
}

Region1D Region1D::ball_complement(double center, double radius) {
  if (std::isinf(radius)) return Region1D();
  if (radius <= 0) return all();
  Region1D r;
  r.parts_.push_back({-kInf, center - radius, false, true});
  r.parts_.push_back({center + radius, kInf, true, false});
  return r;
}

bool Region1D::contains(double x) const {
  for (const auto& iv : parts_)
    if (iv.contains(x)) return true;
  return false;
}

double Region1D::measure() const {
  double m = 0.0;
  for (const auto& iv : parts_) m += iv.length();
  return m;
}

Region1D Region1D::intersect(const Region1D& other) const {
  Region1D out;
  for (const auto& a : parts_) {
    for (const auto& b : other.parts_) {
      Interval1D iv;
      if (a.lo > b.lo) {
        iv.lo = a.lo;
        iv.lo_closed = a.lo_closed;
      } else if (b.lo > a.lo) {
        iv.lo = b.lo;
        iv.lo_closed = b.lo_closed;
      } else {
        iv.lo = a.lo;
        iv.lo_closed = a.lo_closed && b.lo_closed;
      }
      if (a.hi < b.hi) {
        iv.hi = a.hi;
        iv.hi_closed = a.hi_closed;
      } else if (b.hi < a.hi) {
        iv.hi = b.hi;
        iv.hi_closed = b.hi_closed;
      } else {
        iv.hi = a.hi;
        iv.hi_closed = a.hi_closed && b.hi_closed;
      }
      if (iv.valid()) out.parts_.push_back(iv);
    }
  }
  out.normalize();
  return out;
}

bool Region1D::meets_open_ball(double center, double radius) const {
  if (radius <= 0) return false;
  double lo = center - radius, hi = center + radius;
  for (const auto& iv : parts_) {
    double a = std::max(iv.lo, lo), b = std::min(iv.hi, hi);
    if (a < b) return true;
    // a degenerate closed point strictly inside the open ball also counts
    if (iv.lo == iv.hi && iv.lo > lo && iv.lo < hi) return true;
  }
  return false;
}

std::vector<double> Region1D::endpoints() const {
  std::vector<double> e;
  for (const auto& iv : parts_) {
    if (std::isfinite(iv.lo)) e.push_back(iv.lo);
    if (std::isfinite(iv.hi)) e.push_back(iv.hi);
  }
  return e;
}

void Region1D::normalize() {
  std::sort(parts_.begin(), parts_.end(),
            [](const Interval1D& a, const Interval1D& b) { return a.lo < b.lo; });
  std::vector<Interval1D> merged;
  for (const auto& iv : parts_) {
    if (!merged.empty()) {
      auto& last = merged.back();
      bool overlap = iv.lo < last.hi || (iv.lo == last.hi && (iv.lo_closed || last.hi_closed));
      if (overlap) {
        if (iv.hi > last.hi) {
          last.hi = iv.hi;
          last.hi_closed = iv.hi_closed;
        } else if (iv.hi == last.hi) {
          last.hi_closed = last.hi_closed || iv.hi_closed;
        }
        continue;
      }
    }
    merged.push_back(iv);
  }
  parts_ = std::move(merged);
}

}  // namespace gasbound
