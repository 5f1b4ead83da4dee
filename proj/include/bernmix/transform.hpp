#pragma once

#include <span>
#include <vector>

namespace bernmix::transform {

// Affine map between the raw data support [a, b] and the unit interval.
struct SupportMap {
  double a;
  double b;

  double to_unit(double x) const { return (x - a) / (b - a); }
  double from_unit(double t) const { return a + (b - a) * t; }
  double width() const { return b - a; }
};

// How the support should be determined from the data.
struct SupportSpec {
  enum class Kind { known, left_bounded, right_bounded, unbounded, data_range };

  Kind kind;
  double a = 0.0;
  double b = 0.0;

  static SupportSpec known(double a, double b) { return {Kind::known, a, b}; }
  static SupportSpec left_bounded(double a) { return {Kind::left_bounded, a, 0.0}; }
  static SupportSpec right_bounded(double b) { return {Kind::right_bounded, 0.0, b}; }
  static SupportSpec unbounded() { return {Kind::unbounded, 0.0, 0.0}; }
  static SupportSpec data_range() { return {Kind::data_range, 0.0, 0.0}; }
};

// Chooses [a, b] covering the sample.  known(a, b) is taken as given
// (data must lie inside); open sides get an IQR margin (c = 1.5);
// data_range widens [x_(1), x_(n)] by 1e-9 * range so no point lands
// exactly on 0 or 1 unless the bound was declared known.
SupportMap choose_support(std::span<const double> data, const SupportSpec& spec);

std::vector<double> to_unit(const SupportMap& map, std::span<const double> data);
double from_unit(const SupportMap& map, double t);

}  // namespace bernmix::transform
