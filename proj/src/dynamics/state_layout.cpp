#include "wmbench/dynamics/state_layout.hpp"

#include <array>
#include <string>
#include <utility>

#include "wmbench/core/error.hpp"

namespace wmbench {
namespace {
constexpr std::array<std::pair<DimRole, std::string_view>, 8> kRoleNames{{
    {DimRole::kPosition, "position"},
    {DimRole::kVelocity, "velocity"},
    {DimRole::kAngle, "angle"},
    {DimRole::kAngularVelocity, "angular_velocity"},
    {DimRole::kQuaternion, "quaternion"},
    {DimRole::kPixel, "pixel"},
    {DimRole::kVisibility, "visibility"},
    {DimRole::kWorldPoint, "world_point"},
}};
}  // namespace

std::string_view to_string(DimRole role) {
  for (const auto& [r, name] : kRoleNames)
    if (r == role) return name;
  return "unknown";
}

DimRole dim_role_from_string(std::string_view name) {
  for (const auto& [r, n] : kRoleNames)
    if (n == name) return r;
  throw FormatError("unknown dimension role '" + std::string(name) + "'");
}

std::optional<std::size_t> StateLayout::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < dims.size(); ++i)
    if (dims[i].name == name) return i;
  return std::nullopt;
}

std::vector<std::size_t> StateLayout::quaternion_offsets() const {
  std::vector<std::size_t> out;
  out.reserve(quaternion_blocks.size());
  for (const auto& b : quaternion_blocks) out.push_back(b.offset);
  return out;
}

}  // namespace wmbench
