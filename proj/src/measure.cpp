#include "coulombgas/measure.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "coulombgas/numerics.hpp"

namespace coulombgas::measure {

using numerics::integrate_half_line;
using numerics::integrate_interval;
using numerics::IntegrationError;

RadialMeasure::RadialMeasure(std::string label, RealFn rho, RealFn drho,
                             RealFn d2rho, double tail_amplitude,
                             RealFn closed_form_mass_tail,
                             RealFn closed_form_potential)
    : label_(std::move(label)),
      rho_(std::move(rho)),
      drho_(std::move(drho)),
      d2rho_(std::move(d2rho)),
      tail_amplitude_(tail_amplitude),
      mass_tail_(std::move(closed_form_mass_tail)),
      potential_(std::move(closed_form_potential)) {
  if (!rho_ || !drho_ || !d2rho_)
    throw std::invalid_argument(
        "RadialMeasure: density and both radial derivatives are required");
  if (!(tail_amplitude_ > 0.0))
    throw std::invalid_argument("RadialMeasure: tail amplitude must be positive");
}

double RadialMeasure::mass_tail(double t) const {
  if (t < 0.0 || !std::isfinite(t))
    throw std::domain_error("mass_tail: t must be finite and nonnegative");
  if (mass_tail_) return mass_tail_(t);
  if (t == 0.0) return 1.0;
  if (t <= 1.0) {
    // complement of the enclosed mass, well conditioned for small t
    auto f = [this](double r) { return 2.0 * r * rho_(r); };
    return 1.0 - integrate_interval(f, 0.0, t, 1e-13, 1e-16).value;
  }
  auto g = [this, t](double u) {
    const double r = t / u;
    return 2.0 * r * rho_(r) * t / (u * u);
  };
  return integrate_interval(g, 0.0, 1.0, 1e-13, 0.0).value;
}

double RadialMeasure::log_potential(double r) const {
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::domain_error("log_potential: r must be finite and positive");
  if (potential_) return potential_(r);
  // int_r^inf F(s)/s ds pulled back to (0,1] via s = r/u
  auto f = [this, r](double u) { return mass_tail(r / u) / u; };
  const auto q = integrate_interval(f, 0.0, 1.0, 1e-12, 1e-14);
  return -std::log(r) - q.value;
}

double u_at_zero(const RadialMeasure& m) {
  auto f = [&m](double t) { return 2.0 * t * std::log(t) * m.rho(t); };
  const auto q = integrate_half_line(f, 1.0, 1e-12);
  if (q.abs_error_estimate > 1e-9)
    throw IntegrationError("u_at_zero: error estimate above 1e-9");
  return -q.value;
}

double energy(const RadialMeasure& m) {
  const double u0 = u_at_zero(m);
  auto f = [&m](double t) {
    const double F = m.mass_tail(t);
    return F * (1.0 - F) / t;
  };
  const auto q = integrate_half_line(f, 1.0, 1e-12);
  if (q.abs_error_estimate > 1e-9)
    throw IntegrationError("energy: error estimate above 1e-9");
  return -u0 + q.value;
}

double entropy(const RadialMeasure& m) {
  auto f = [&m](double t) {
    const double rho = m.rho(t);
    return 2.0 * t * rho * std::log(rho);
  };
  const auto q = integrate_half_line(f, 1.0, 1e-12);
  if (q.abs_error_estimate > 1e-9)
    throw IntegrationError("entropy: error estimate above 1e-9");
  return q.value;
}

double rho_tilde_zero(const RadialMeasure& m) {
  const double a = m.tail_amplitude();
  const double s = 1e-3;
  const double probe = m.rho(1.0 / s) / (s * s * s * s);
  if (!(std::abs(probe / a - 1.0) <= 0.01))
    throw std::runtime_error(
        "rho_tilde_zero: tail amplitude inconsistent with the density decay "
        "(measure mis-specified?)");
  return a;
}

double curvature_integral(const RadialMeasure& m) {
  auto f = [&m](double t) {
    const double rho = m.rho(t);
    const double ratio1 = m.drho(t) / rho;
    return (m.d2rho(t) / rho - 1.25 * ratio1 * ratio1) * t;
  };
  const auto q = integrate_half_line(f, 1.0, 1e-12);
  if (q.abs_error_estimate > 1e-9)
    throw IntegrationError("curvature_integral: error estimate above 1e-9");
  return q.value;
}

MeasureFunctionals functionals(const RadialMeasure& m) {
  return {energy(m),        entropy(m),        u_at_zero(m),
          m.rho(0.0),       rho_tilde_zero(m), curvature_integral(m)};
}

namespace {

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

RadialMeasure spherical() {
  auto rho = [](double r) {
    const double d = 1.0 + r * r;
    return 1.0 / (d * d);
  };
  auto drho = [](double r) {
    const double d = 1.0 + r * r;
    return -4.0 * r / (d * d * d);
  };
  auto d2rho = [](double r) {
    const double d = 1.0 + r * r;
    return (20.0 * r * r - 4.0) / (d * d * d * d);
  };
  auto mass = [](double t) { return 1.0 / (1.0 + t * t); };
  auto pot = [](double r) { return -0.5 * std::log1p(r * r); };
  return RadialMeasure("spherical", rho, drho, d2rho, 1.0, mass, pot);
}

RadialMeasure scaled(double a) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::invalid_argument("scaled: scale must be finite and positive");
  const double a2 = a * a;
  auto rho = [a2](double r) {
    const double d = a2 + r * r;
    return a2 / (d * d);
  };
  auto drho = [a2](double r) {
    const double d = a2 + r * r;
    return -4.0 * a2 * r / (d * d * d);
  };
  auto d2rho = [a2](double r) {
    const double d = a2 + r * r;
    return a2 * (20.0 * r * r - 4.0 * a2) / (d * d * d * d);
  };
  auto mass = [a2](double t) { return a2 / (a2 + t * t); };
  auto pot = [a2](double r) { return -0.5 * std::log(a2 + r * r); };
  return RadialMeasure("scaled:a=" + short_number(a), rho, drho, d2rho, a2,
                       mass, pot);
}

RadialMeasure mixture(double theta, double a) {
  if (!(theta >= 0.0 && theta <= 1.0))
    throw std::invalid_argument("mixture: theta must lie in [0,1]");
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::invalid_argument("mixture: scale must be finite and positive");
  const double a2 = a * a;
  const double w = 1.0 - theta;
  auto rho = [theta, w, a2](double r) {
    const double d1 = 1.0 + r * r, d2 = a2 + r * r;
    return theta / (d1 * d1) + w * a2 / (d2 * d2);
  };
  auto drho = [theta, w, a2](double r) {
    const double d1 = 1.0 + r * r, d2 = a2 + r * r;
    return -4.0 * r * (theta / (d1 * d1 * d1) + w * a2 / (d2 * d2 * d2));
  };
  auto d2rho = [theta, w, a2](double r) {
    const double d1 = 1.0 + r * r, d2 = a2 + r * r;
    return theta * (20.0 * r * r - 4.0) / (d1 * d1 * d1 * d1) +
           w * a2 * (20.0 * r * r - 4.0 * a2) / (d2 * d2 * d2 * d2);
  };
  auto mass = [theta, w, a2](double t) {
    return theta / (1.0 + t * t) + w * a2 / (a2 + t * t);
  };
  auto pot = [theta, w, a2](double r) {
    return -0.5 * (theta * std::log1p(r * r) + w * std::log(a2 + r * r));
  };
  return RadialMeasure(
      "mixture:theta=" + short_number(theta) + ",a=" + short_number(a),
      rho, drho, d2rho, theta + w * a2, mass, pot);
}

namespace {

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double value;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("measure spec: cannot parse " + what +
                                " from '" + text + "'");
  }
  if (used != text.size())
    throw std::invalid_argument("measure spec: trailing characters after " +
                                what + " in '" + text + "'");
  return value;
}

double parse_field(const std::string& body, const std::string& key,
                   const std::string& spec) {
  const std::string prefix = key + "=";
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t end = body.find(',', pos);
    if (end == std::string::npos) end = body.size();
    const std::string field = body.substr(pos, end - pos);
    if (field.rfind(prefix, 0) == 0)
      return parse_number(field.substr(prefix.size()), key);
    pos = end + 1;
  }
  throw std::invalid_argument("measure spec '" + spec + "': missing " + key);
}

}  // namespace

RadialMeasure parse_measure(const std::string& spec) {
  if (spec == "spherical") return spherical();
  const std::size_t colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string body =
      colon == std::string::npos ? std::string() : spec.substr(colon + 1);
  if (head == "scaled") return scaled(parse_field(body, "a", spec));
  if (head == "mixture")
    return mixture(parse_field(body, "theta", spec),
                   parse_field(body, "a", spec));
  throw std::invalid_argument(
      "measure spec '" + spec +
      "': expected spherical, scaled:a=<v>, or mixture:theta=<v>,a=<v>");
}

}  // namespace coulombgas::measure
