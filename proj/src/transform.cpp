#include "bernmix/transform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bernmix::transform {

namespace {

// linear-interpolation quantile on a sorted copy (R type 7)
double quantile_sorted(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  const double pos = p * (n - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= n) return sorted.back();
  const double frac = pos - lo;
  return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

}  // namespace

SupportMap choose_support(std::span<const double> data, const SupportSpec& spec) {
  if (data.empty()) throw std::domain_error("choose_support: empty data");

  const auto [mn_it, mx_it] = std::minmax_element(data.begin(), data.end());
  const double lo = *mn_it;
  const double hi = *mx_it;

  if (spec.kind == SupportSpec::Kind::known) {
    if (!(spec.b > spec.a)) throw std::domain_error("choose_support: require b > a");
    if (lo < spec.a || hi > spec.b)
      throw std::domain_error("choose_support: data outside declared support");
    return {spec.a, spec.b};
  }

  if (!(hi > lo)) throw std::domain_error("choose_support: degenerate sample");

  const double eps = 1e-9 * (hi - lo);
  if (spec.kind == SupportSpec::Kind::data_range) {
    return {lo - eps, hi + eps};
  }

  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  const double margin = std::max(1.5 * iqr, eps);

  switch (spec.kind) {
    case SupportSpec::Kind::left_bounded:
      if (lo < spec.a) throw std::domain_error("choose_support: data below declared bound");
      return {spec.a, hi + margin};
    case SupportSpec::Kind::right_bounded:
      if (hi > spec.b) throw std::domain_error("choose_support: data above declared bound");
      return {lo - margin, spec.b};
    case SupportSpec::Kind::unbounded:
      return {lo - margin, hi + margin};
    default:
      throw std::logic_error("choose_support: unreachable");
  }
}

std::vector<double> to_unit(const SupportMap& map, std::span<const double> data) {
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i] < map.a || data[i] > map.b) bad.push_back(i);
  }
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << "to_unit: " << bad.size() << " point(s) outside [" << map.a << ", " << map.b
        << "], first offending indices:";
    for (std::size_t i = 0; i < bad.size() && i < 5; ++i) msg << ' ' << bad[i];
    throw std::domain_error(msg.str());
  }
  std::vector<double> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = map.to_unit(data[i]);
  return out;
}

double from_unit(const SupportMap& map, double t) { return map.from_unit(t); }

}  // namespace bernmix::transform
