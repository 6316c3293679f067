#include "coulombgas/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coulombgas/measure.hpp"

namespace coulombgas::numerics {

namespace {

// 15-point Kronrod nodes (positive half, descending) with the embedded
// 7-point Gauss rule at the odd indices.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
  double integral;
  double error;
  double resabs;
};

PanelResult qk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fv1[7], fv2[7];
  const double fc = f(center);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  double resabs = kWgk[7] * std::abs(fc);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    fv1[i] = f(center - dx);
    fv2[i] = f(center + dx);
    const double sum = fv1[i] + fv2[i];
    resk += kWgk[i] * sum;
    resabs += kWgk[i] * (std::abs(fv1[i]) + std::abs(fv2[i]));
    if (i % 2 == 1) resg += kWg[i / 2] * sum;
  }
  // QUADPACK-style scaled error estimate
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int i = 0; i < 7; ++i)
    resasc += kWgk[i] * (std::abs(fv1[i] - mean) + std::abs(fv2[i] - mean));
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double round = 50.0 * std::numeric_limits<double>::epsilon() * resabs *
                       std::abs(half);
  err = std::max(err, round);
  return {resk * half, err, resabs * std::abs(half)};
}

struct Segment {
  double a, b, value, error;
};

constexpr std::size_t kMaxSegments = 2048;

}  // namespace

QuadratureResult integrate_interval(const std::function<double(double)>& f,
                                    double a, double b, double rel_tol,
                                    double abs_tol) {
  if (!(b >= a)) throw std::domain_error("integrate_interval: b < a");
  long evaluations = 15;
  std::vector<Segment> segments;
  PanelResult first = qk15(f, a, b);
  segments.push_back({a, b, first.integral, first.error});

  auto totals = [&segments] {
    double v = 0.0, e = 0.0;
    for (const Segment& s : segments) {
      v += s.value;
      e += s.error;
    }
    return std::pair<double, double>(v, e);
  };

  auto [value, error] = totals();
  while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
    if (segments.size() >= kMaxSegments)
      throw IntegrationError(
          "integrate_interval: subdivision limit reached with error estimate "
          "above tolerance");
    std::size_t worst = 0;
    for (std::size_t i = 1; i < segments.size(); ++i)
      if (segments[i].error > segments[worst].error) worst = i;
    const Segment s = segments[worst];
    const double mid = 0.5 * (s.a + s.b);
    if (mid <= s.a || mid >= s.b)
      throw IntegrationError(
          "integrate_interval: interval collapsed before reaching tolerance");
    PanelResult left = qk15(f, s.a, mid);
    PanelResult right = qk15(f, mid, s.b);
    evaluations += 30;
    segments[worst] = {s.a, mid, left.integral, left.error};
    segments.push_back({mid, s.b, right.integral, right.error});
    std::tie(value, error) = totals();
  }

  // Deterministic reduction: positional order, compensated.
  std::sort(segments.begin(), segments.end(),
            [](const Segment& x, const Segment& y) { return x.a < y.a; });
  std::vector<double> vals;
  vals.reserve(segments.size());
  double err_sum = 0.0;
  for (const Segment& s : segments) {
    vals.push_back(s.value);
    err_sum += s.error;
  }
  return {compensated_sum(vals), err_sum, evaluations};
}

QuadratureResult integrate_half_line(const std::function<double(double)>& f,
                                     double peak_hint, double rel_tol) {
  if (!(peak_hint > 0.0) || !std::isfinite(peak_hint))
    throw std::domain_error("integrate_half_line: peak_hint must be positive");
  const double peak = peak_hint;
  auto tail = [&f, peak](double u) {
    const double r = peak / u;
    return f(r) * peak / (u * u);
  };
  // Rough scale pass so both halves share one absolute budget; this keeps a
  // vanishing half from chasing an unreachable relative tolerance.
  PanelResult head0 = qk15(f, 0.0, peak);
  PanelResult tail0 = qk15(tail, 0.0, 1.0);
  const double scale = head0.resabs + tail0.resabs;
  if (scale == 0.0) return {0.0, 0.0, 30};
  const double abs_tol = 0.5 * rel_tol * scale;
  QuadratureResult head = integrate_interval(f, 0.0, peak, rel_tol, abs_tol);
  QuadratureResult rest = integrate_interval(tail, 0.0, 1.0, rel_tol, abs_tol);
  return {head.value + rest.value,
          head.abs_error_estimate + rest.abs_error_estimate,
          head.evaluations + rest.evaluations + 30};
}

double find_critical_point(const measure::RadialMeasure& m, double tau) {
  if (!(tau > 0.0 && tau < 1.0))
    throw std::domain_error("find_critical_point: tau must lie in (0,1)");
  const double target = 1.0 - tau;
  auto F = [&m](double t) { return m.mass_tail(t); };

  double lo = 1.0, hi = 1.0;
  int guard = 0;
  while (F(lo) < target) {
    lo *= 0.25;
    if (++guard > 600)
      throw IntegrationError(
          "find_critical_point: bracketing failed near the origin (tail mass "
          "not monotone?)");
  }
  guard = 0;
  while (F(hi) > target) {
    hi *= 4.0;
    if (++guard > 600)
      throw IntegrationError(
          "find_critical_point: bracketing failed toward infinity (tail mass "
          "not monotone?)");
  }

  const double residual_tol = 1e-14 * std::max(tau, 1.0 - tau);
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double fx = F(x);
    if (std::abs(fx - target) <= residual_tol) return x;
    if (fx > target)
      lo = x;
    else
      hi = x;
    const double slope = -2.0 * x * m.rho(x);
    double next = (slope != 0.0) ? x - (fx - target) / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 8.0 * std::numeric_limits<double>::epsilon() * x) return x;
    x = next;
  }
  return x;
}

double euler_maclaurin_sum(const SmoothSummand& s, long m, long n, int orders) {
  // B_{2k} for k = 1..7
  static constexpr double kBernoulli[] = {
      1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0,
      5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0};
  if (m > n) throw std::invalid_argument("euler_maclaurin_sum: m > n");
  if (!s.value) throw std::invalid_argument("euler_maclaurin_sum: no summand");
  if (orders < 0 || orders > 7 ||
      orders > static_cast<int>(s.odd_derivatives.size()))
    throw std::invalid_argument(
        "euler_maclaurin_sum: requested correction orders exceed supplied "
        "derivatives");
  const double a = static_cast<double>(m), b = static_cast<double>(n);
  double integral;
  if (s.integral)
    integral = s.integral(a, b);
  else
    integral = integrate_interval(s.value, a, b, 1e-14, 0.0).value;
  double acc = integral + 0.5 * (s.value(a) + s.value(b));
  double factorial = 1.0;  // running (2k)!
  for (int k = 1; k <= orders; ++k) {
    factorial *= (2.0 * k - 1.0) * (2.0 * k);
    const auto& d = s.odd_derivatives[k - 1];
    acc += kBernoulli[k - 1] / factorial * (d(b) - d(a));
  }
  return acc;
}

double compensated_sum(std::span<const double> values) {
  double sum = 0.0, compensation = 0.0;
  for (double x : values) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      compensation += (sum - t) + x;
    else
      compensation += (x - t) + sum;
    sum = t;
  }
  return sum + compensation;
}

}  // namespace coulombgas::numerics
