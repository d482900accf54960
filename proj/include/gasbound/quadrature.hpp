#ifndef GASBOUND_QUADRATURE_HPP
#define GASBOUND_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <stdexcept>
#include <vector>

namespace gasbound {

// Adaptive Gauss-Kronrod (7-15) panel integration with mandatory breakpoints.
// Integrands here are piecewise analytic with kinks at known radii, so we
// seed the panel list with the breakpoints and let refinement handle the rest.

namespace detail {

// G7-K15 nodes/weights on [-1, 1] (positive half; node 0 included once).
inline constexpr double kKronrodNodes[8] = {
    0.000000000000000000000000000000000e+00, 2.077849550078984676006894037732449e-01,
    4.058451513773971669066064120769615e-01, 5.860872354676911302941448382587296e-01,
    7.415311855993944398638647732807884e-01, 8.648644233597690727897127886409262e-01,
    9.491079123427585245261896840478513e-01, 9.914553711208126392068546975263285e-01};
inline constexpr double kKronrodWeights[8] = {
    2.094821410847278280129991748917143e-01, 2.044329400752988924141619992346491e-01,
    1.903505780647854099132564024210137e-01, 1.690047266392679028265834265985503e-01,
    1.406532597155259187451895905102379e-01, 1.047900103222501838398763225415180e-01,
    6.309209262997855329070066318920429e-02, 2.293532201052922496373200805896959e-02};
inline constexpr double kGaussWeights[4] = {
    4.179591836734693877551020408163265e-01, 3.818300505051189449503697754889751e-01,
    2.797053914892766679014677714237796e-01, 1.294849661688696932706114326790820e-01};

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
};

template <class T, class F>
Panel<T> gk15(F&& f, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T fc = f(c);
  T kron = kKronrodWeights[0] * fc;
  T gauss = kGaussWeights[0] * fc;
  for (int i = 1; i < 8; ++i) {
    T lo = f(c - h * kKronrodNodes[i]);
    T hi = f(c + h * kKronrodNodes[i]);
    kron += kKronrodWeights[i] * (lo + hi);
    if (i % 2 == 0) gauss += kGaussWeights[i / 2] * (lo + hi);
  }
  kron *= h;
  gauss *= h;
  double err = std::abs(kron - gauss);
  return {a, b, kron, err};
}

}  // namespace detail

template <class T>
struct QuadratureResult {
  T value{};
  double error = 0.0;
  bool converged = false;
  int panels = 0;
};

template <class T, class F>
QuadratureResult<T> integrate(F&& f, double a, double b, const std::vector<double>& breakpoints,
                              double rel_tol, double abs_tol = 0.0, int max_panels = 4000) {
  QuadratureResult<T> out;
  if (!(b > a)) {
    out.converged = true;
    return out;
  }
  std::vector<double> edges{a, b};
  for (double x : breakpoints)
    if (x > a && x < b) edges.push_back(x);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](double x, double y) { return std::abs(x - y) < 1e-14 * (1 + std::abs(x)); }),
              edges.end());

  auto cmp = [](const detail::Panel<T>& x, const detail::Panel<T>& y) { return x.error < y.error; };
  std::priority_queue<detail::Panel<T>, std::vector<detail::Panel<T>>, decltype(cmp)> heap(cmp);
  T total{};
  double total_err = 0.0;
  int n_panels = 0;
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    auto p = detail::gk15<T>(f, edges[i], edges[i + 1]);
    total += p.value;
    total_err += p.error;
    heap.push(p);
    ++n_panels;
  }
  auto tol = [&]() { return std::max(abs_tol, rel_tol * std::abs(total)); };
  while (total_err > tol() && n_panels < max_panels && !heap.empty()) {
    auto worst = heap.top();
    heap.pop();
    if (worst.b - worst.a < 1e-15 * (1 + std::abs(worst.a))) continue;
    double m = 0.5 * (worst.a + worst.b);
    auto left = detail::gk15<T>(f, worst.a, m);
    auto right = detail::gk15<T>(f, m, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++n_panels;
  }
  out.value = total;
  out.error = total_err;
  out.converged = total_err <= tol() * 1.0001 + 1e-300;
  out.panels = n_panels;
  return out;
}

template <class F>
QuadratureResult<double> integrate_real(F&& f, double a, double b,
                                        const std::vector<double>& breakpoints, double rel_tol,
                                        double abs_tol = 0.0, int max_panels = 4000) {
  return integrate<double>(f, a, b, breakpoints, rel_tol, abs_tol, max_panels);
}

}  // namespace gasbound

#endif
