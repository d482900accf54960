#ifndef GASBOUND_REGION1D_HPP
#define GASBOUND_REGION1D_HPP

#include <cmath>
#include <limits>
#include <vector>

namespace gasbound {

// Finite union of intervals with per-endpoint open/closed flags, kept
// normalized (sorted, disjoint).  The flags matter for pointwise evaluation
// at exact boundary points, not for integrals.
struct Interval1D {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  // Closed endpoints absorb a few ulps of slack: boundary points constructed
  // through different arithmetic (e.g. center - |v - w|) must still register
  // as contained.  Open endpoints exclude exact equality only.
  bool contains(double x) const {
    double tol_lo = 1e-12 * (1.0 + std::fabs(lo));
    double tol_hi = 1e-12 * (1.0 + std::fabs(hi));
    if (lo_closed ? x < lo - tol_lo : x <= lo) return false;
    if (hi_closed ? x > hi + tol_hi : x >= hi) return false;
    return true;
  }
  double length() const { return hi - lo; }
  bool valid() const { return lo < hi || (lo == hi && lo_closed && hi_closed); }
};

class Region1D {
 public:
  Region1D() = default;

  static Region1D all();
  static Region1D empty_region() { return Region1D(); }
  static Region1D interval(double lo, double hi, bool lo_closed = true, bool hi_closed = true);
  // Complement of the open ball {|x - center| < radius}: closed, contains the
  // boundary.  radius may be infinite (empty result) or zero (everything).
  static Region1D ball_complement(double center, double radius);

  bool contains(double x) const;
  double measure() const;
  bool empty() const { return parts_.empty(); }
  Region1D intersect(const Region1D& other) const;
  // True if some point of the region lies strictly inside (center-r, center+r).
  bool meets_open_ball(double center, double radius) const;

  const std::vector<Interval1D>& parts() const { return parts_; }
  // Finite endpoints, for use as quadrature breakpoints.
  std::vector<double> endpoints() const;

  static constexpr double kInf = std::numeric_limits<double>::infinity();

 private:
  void normalize();
  std::vector<Interval1D> parts_;
};

}  // namespace gasbound

#endif
