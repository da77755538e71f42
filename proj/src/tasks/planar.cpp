#include <cmath>
#include <string>
#include <vector>

#include "wmbench/tasks/transitions.hpp"

namespace wmbench::tasks {
namespace {

// Four wall contacts for a disc whose position sits at (off, off + 1) and
// velocity at (off + 2, off + 3).
void add_walls(std::vector<EventSpec>& events, std::size_t off, double r, double box,
               const std::string& prefix) {
  const double hi = box - r;
  events.push_back({prefix + "wall_left", [=](std::span<const double> y) { return y[off] - r; },
                    [=](std::span<double> y) { y[off + 2] = -y[off + 2]; }});
  events.push_back({prefix + "wall_right", [=](std::span<const double> y) { return hi - y[off]; },
                    [=](std::span<double> y) { y[off + 2] = -y[off + 2]; }});
  events.push_back({prefix + "wall_bottom", [=](std::span<const double> y) { return y[off + 1] - r; },
                    [=](std::span<double> y) { y[off + 3] = -y[off + 3]; }});
  events.push_back({prefix + "wall_top", [=](std::span<const double> y) { return hi - y[off + 1]; },
                    [=](std::span<double> y) { y[off + 3] = -y[off + 3]; }});
}

// Uniform motion of every disc in the [px, py, vx, vy]* layout.
void uniform_motion(std::span<const double> y, std::span<double> d) {
  for (std::size_t off = 0; off < y.size(); off += 4) {
    d[off] = y[off + 2];
    d[off + 1] = y[off + 3];
    d[off + 2] = 0.0;
    d[off + 3] = 0.0;
  }
}

}  // namespace

StateVector step_bouncing_ball(std::span<const double> s, const TaskParams& params, double dt,
                               EventLog* log) {
  std::vector<EventSpec> events;
  add_walls(events, 0, param(params, "radius"), param(params, "box"), "");
  return step_with_events(uniform_motion, events, s, dt, {}, log);
}

void resolve_disc_contact(std::span<double> s, double mass_1, double mass_2) {
  const double dx = s[4] - s[0];
  const double dy = s[5] - s[1];
  const double dist = std::hypot(dx, dy);
  const double nx = dx / dist;
  const double ny = dy / dist;
  // Closing speed along the normal from disc 1 toward disc 2.
  const double closing = (s[2] - s[6]) * nx + (s[3] - s[7]) * ny;
  if (closing <= 0.0) return;
  const double total = mass_1 + mass_2;
  const double k1 = 2.0 * mass_2 / total * closing;
  const double k2 = 2.0 * mass_1 / total * closing;
  s[2] -= k1 * nx;
  s[3] -= k1 * ny;
  s[6] += k2 * nx;
  s[7] += k2 * ny;
}

StateVector step_elastic_collision(std::span<const double> s, const TaskParams& params, double dt,
                                   EventLog* log) {
  const double r = param(params, "radius");
  const double box = param(params, "box");
  const double m1 = param(params, "mass_1");
  const double m2 = param(params, "mass_2");

  std::vector<EventSpec> events;
  add_walls(events, 0, r, box, "disc1_");
  add_walls(events, 4, r, box, "disc2_");
  events.push_back({"disc_contact",
                    [r](std::span<const double> y) {
                      return std::hypot(y[4] - y[0], y[5] - y[1]) - 2.0 * r;
                    },
                    [m1, m2](std::span<double> y) { resolve_disc_contact(y, m1, m2); }});
  return step_with_events(uniform_motion, events, s, dt, {}, log);
}

}  // namespace wmbench::tasks
