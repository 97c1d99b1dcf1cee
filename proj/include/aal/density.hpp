#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aal/group.hpp"

namespace aal {

/// A function on the group, held either as exact 64-bit counts (indicators
/// and their convolutions) or as doubles (normalized mu_A and friends). The
/// mode is part of the value: exact thresholds only ever see counting mode.
class DensityMap {
public:
  enum class Mode { Counting, Real };

  static DensityMap zeros(const GroupSpec& g, Mode mode = Mode::Counting);
  static DensityMap indicator(const GSet& a);
  static DensityMap point_mass(const GroupSpec& g, Index x);
  /// mu_A = 1_A / |A| (Real mode, sums to 1). Throws EmptySet.
  static DensityMap normalized(const GSet& a);
  static DensityMap from_counts(const GroupSpec& g, std::vector<std::int64_t> values);
  static DensityMap from_reals(const GroupSpec& g, std::vector<double> values);

  const GroupSpec& group() const { return group_; }
  Mode mode() const { return mode_; }
  bool counting() const { return mode_ == Mode::Counting; }
  std::uint64_t size() const { return group_.size(); }

  std::int64_t count_at(Index x) const { return ivals_[x]; }
  double real_at(Index x) const { return counting() ? (double)ivals_[x] : rvals_[x]; }

  std::span<const std::int64_t> counts() const { return ivals_; }
  std::span<const double> reals() const { return rvals_; }
  std::span<std::int64_t> mutable_counts() { return ivals_; }
  std::span<double> mutable_reals() { return rvals_; }

  std::int64_t count_sum() const;
  double real_sum() const;

  DensityMap to_real() const;
  /// tau_x(f)(y) = f(y + x).
  DensityMap translate(Index x) const;
  /// Support as a set (nonzero entries).
  GSet support() const;

private:
  DensityMap(GroupSpec g, Mode mode) : group_(std::move(g)), mode_(mode) {}
  GroupSpec group_;
  Mode mode_;
  std::vector<std::int64_t> ivals_;
  std::vector<double> rvals_;
};

}  // namespace aal
