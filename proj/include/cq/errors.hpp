#pragma once

#include <stdexcept>
#include <string>

namespace cq {

/// A codebook whose consecutive bisector cuts are not strictly increasing
/// inside the support. Its distortion is still defined (via the min-integrand
/// fallback) but it has no valid first-order cell structure.
class DegeneratePartition : public std::runtime_error {
 public:
  explicit DegeneratePartition(const std::string& what) : std::runtime_error(what) {}
};

/// Progression parameters that push a code point past its side's feasible
/// window (or off the side entirely).
class InfeasibleProgression : public std::runtime_error {
 public:
  explicit InfeasibleProgression(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative solver exhausted its iteration budget.
class NoConvergence : public std::runtime_error {
 public:
  explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cq
