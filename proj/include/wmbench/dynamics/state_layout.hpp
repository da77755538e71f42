#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wmbench {

enum class DimRole {
  kPosition,
  kVelocity,
  kAngle,
  kAngularVelocity,
  kQuaternion,
  kPixel,
  kVisibility,
  kWorldPoint,
};

std::string_view to_string(DimRole role);
DimRole dim_role_from_string(std::string_view name);

/// One named state dimension.
struct DimSpec {
  std::string name;
  std::string unit;
  DimRole role = DimRole::kPosition;
  /// Name of the dimension holding this dimension's time derivative
  /// (a position's velocity), empty if none is observed.
  std::string rate;
  /// Name of a visibility flag gating this dimension in evaluation.
  std::string mask;

  bool operator==(const DimSpec&) const = default;
};

/// Four consecutive dims holding a unit quaternion (w, x, y, z).
struct QuaternionBlock {
  std::size_t offset = 0;
  /// Offset of the body-frame angular velocity driving q' = q (0, w) / 2.
  std::optional<std::size_t> rate_offset;

  bool operator==(const QuaternionBlock&) const = default;
};

struct StateLayout {
  std::vector<DimSpec> dims;
  std::vector<QuaternionBlock> quaternion_blocks;

  std::size_t size() const noexcept { return dims.size(); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::vector<std::size_t> quaternion_offsets() const;

  bool operator==(const StateLayout&) const = default;
};

/// One action dimension: unit-free value in [-1, 1] times `scale` `unit`.
struct ActionDim {
  std::string name;
  std::string unit;
  double scale = 1.0;

  bool operator==(const ActionDim&) const = default;
};

using ActionLayout = std::vector<ActionDim>;

}  // namespace wmbench
