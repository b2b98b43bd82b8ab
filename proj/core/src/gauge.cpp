#include "mixrobust/gauge.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "detail/format.hpp"
#include "mixrobust/errors.hpp"

namespace mixrobust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double parse_number(std::string_view text, std::string_view context) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError("gauge descriptor '" + std::string(context) + "': bad number");
  return v;
}

}  // namespace

GaugeFunction GaugeFunction::one(Role role) {
  return GaugeFunction(Kind::one, role, 0.0, [](double) { return 1.0; }, "one");
}

GaugeFunction GaugeFunction::power(double p, Role role) {
  if (!(p >= 0.0) || !std::isfinite(p)) throw ConfigError("power gauge: exponent must be finite and >= 0");
  if (p == 0.0) return one(role);
  return GaugeFunction(Kind::power, role, p, [p](double y) { return std::pow(1.0 + std::abs(y), p); },
                       "power:" + detail::format_double(p));
}

GaugeFunction GaugeFunction::abs_value() {
  return GaugeFunction(Kind::abs, Role::psi_gauge, 1.0, [](double y) { return std::abs(y); }, "abs");
}

GaugeFunction GaugeFunction::square() {
  return GaugeFunction(Kind::square, Role::psi_gauge, 2.0, [](double y) { return y * y; }, "square");
}

GaugeFunction GaugeFunction::custom(Role role, std::function<double(double)> f, std::string descriptor) {
  return GaugeFunction(Kind::custom, role, 0.0, std::move(f), std::move(descriptor));
}

GaugeFunction GaugeFunction::parse(std::string_view d, Role role) {
  if (d == "one") return one(role);
  if (d.starts_with("power:")) return power(parse_number(d.substr(6), d), role);
  if (d == "abs" || d == "square") {
    if (role == Role::u_shaped_phi) throw ConfigError("gauge '" + std::string(d) + "' is not u-shaped (must be >= 1)");
    return d == "abs" ? abs_value() : square();
  }
  throw ConfigError("unknown gauge descriptor '" + std::string(d) + "'");
}

std::optional<double> GaugeFunction::bound() const {
  if (kind_ == Kind::one) return 1.0;
  return std::nullopt;
}

double GaugeFunction::radius(double level) const {
  switch (kind_) {
    case Kind::power: return level <= 1.0 ? 0.0 : std::pow(level, 1.0 / exponent_) - 1.0;
    case Kind::abs: return std::max(level, 0.0);
    case Kind::square: return level <= 0.0 ? 0.0 : std::sqrt(level);
    default: return 0.0;
  }
}

GaugeFunction::TailRegion GaugeFunction::tail_region(double level, bool strict) const {
  auto hit = [&](double v) { return strict ? v > level : v >= level; };
  TailRegion out;
  if (kind_ == Kind::one) {
    if (hit(1.0)) {
      out.left = Interval{-kInf, 0.0, false, false};
      out.right = Interval{0.0, kInf, true, false};
    }
    return out;
  }
  if (kind_ != Kind::custom) {
    // Symmetric and strictly increasing in |y| once above g(0).
    if (hit((*this)(0.0))) {
      out.left = Interval{-kInf, 0.0, false, false};
      out.right = Interval{0.0, kInf, true, false};
      return out;
    }
    const double r = radius(level);
    out.left = Interval{-kInf, -r, false, strict};
    out.right = Interval{r, kInf, strict, false};
    return out;
  }
  // Custom gauge: bracket each half by doubling, then bisect the crossing.
  if (hit((*this)(0.0))) {
    out.left = Interval{-kInf, 0.0, false, false};
    out.right = Interval{0.0, kInf, true, false};
    return out;
  }
  for (double sign : {-1.0, 1.0}) {
    double inside = 0.0, outside = 1.0;
    bool found = false;
    for (int i = 0; i < 1100; ++i) {
      if (hit((*this)(sign * outside))) {
        found = true;
        break;
      }
      inside = outside;
      outside *= 2.0;
      if (!std::isfinite(outside)) break;
    }
    if (!found) continue;
    for (int i = 0; i < 200 && outside - inside > 1e-12 * std::max(1.0, outside); ++i) {
      const double mid = 0.5 * (inside + outside);
      (hit((*this)(sign * mid)) ? outside : inside) = mid;
    }
    if (sign < 0)
      out.left = Interval{-kInf, -outside, false, false};
    else
      out.right = Interval{outside, kInf, false, false};
  }
  return out;
}

void GaugeFunction::check_invariants(std::span<const double> grid) const {
  std::vector<double> pts(grid.begin(), grid.end());
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double y = pts[i];
    const double v = (*this)(y);
    if (!std::isfinite(v)) throw InvariantViolation("gauge " + descriptor_ + ": non-finite value at " + detail::format_double(y));
    if (role_ == Role::u_shaped_phi && v < 1.0)
      throw InvariantViolation("gauge " + descriptor_ + ": value below 1 at " + detail::format_double(y));
    if (role_ == Role::psi_gauge && v < 0.0)
      throw InvariantViolation("gauge " + descriptor_ + ": negative value at " + detail::format_double(y));
    if (i == 0) continue;
    const double prev = (*this)(pts[i - 1]);
    if (y <= 0.0 && v > prev)
      throw InvariantViolation("gauge " + descriptor_ + ": increasing on the negative half-line at " + detail::format_double(y));
    if (pts[i - 1] >= 0.0 && v < prev)
      throw InvariantViolation("gauge " + descriptor_ + ": decreasing on the positive half-line at " + detail::format_double(y));
  }
}

// ---------------------------------------------------------------------------
// DenseFamily

double DenseFamily::Member::operator()(double x) const {
  const double d = std::abs(x - center);
  if (shape == Shape::bump) return std::max(0.0, 1.0 - d / width);
  if (d <= width) return 1.0;
  return std::max(0.0, 1.0 - (d - width));
}

Interval DenseFamily::Member::support() const {
  const double r = shape == Shape::bump ? width : width + 1.0;
  return {center - r, center + r};
}

std::vector<double> DenseFamily::Member::knots() const {
  if (shape == Shape::bump) return {center - width, center, center + width};
  return {center - width - 1.0, center - width, center + width, center + width + 1.0};
}

DenseFamily DenseFamily::standard(std::size_t k_max) {
  if (k_max == 0) throw ConfigError("dense family: k_max must be positive");
  DenseFamily fam;
  for (std::size_t block = 0; fam.members_.size() < k_max; ++block) {
    fam.members_.push_back({Member::Shape::plateau, 0.0, static_cast<double>(block + 1)});
    // 0, 1, -1, 2, -2, ...
    const double z = (block % 2 == 1) ? static_cast<double>((block + 1) / 2) : -static_cast<double>(block / 2);
    for (int j = -2; j <= 6 && fam.members_.size() < k_max; ++j)
      fam.members_.push_back({Member::Shape::bump, 0.5 * z, std::ldexp(1.0, j)});
  }
  fam.descriptor_ = "std-bumps-plateaus:k_max=" + std::to_string(k_max);
  return fam;
}

double DenseFamily::truncation_bound() const { return std::ldexp(1.0, -static_cast<int>(members_.size())); }

}  // namespace mixrobust
