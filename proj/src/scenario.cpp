#include "uavnet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "uavnet/error.hpp"

namespace uavnet {
namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::validation, path + ": " + what);
}

std::string at(const char* section, std::size_t i) {
  return std::string(section) + "[" + std::to_string(i) + "]";
}

}  // namespace

double Scenario::total_demand() const {
  double total = 0.0;
  for (const Demand& d : demand) total += d.kbps;
  return total;
}

std::vector<Point2> Scenario::positions() const {
  std::vector<Point2> out;
  out.reserve(users.size());
  for (const GroundUser& u : users) out.push_back(u.position);
  return out;
}

std::vector<double> Scenario::weights() const {
  std::vector<double> out;
  out.reserve(users.size());
  for (const GroundUser& u : users) out.push_back(u.demand_out);
  return out;
}

BoundingBox Scenario::bounds() const {
  if (users.empty()) return {};
  BoundingBox box{users.front().position, users.front().position};
  for (const GroundUser& u : users) {
    box.min.x = std::min(box.min.x, u.position.x);
    box.min.y = std::min(box.min.y, u.position.y);
    box.max.x = std::max(box.max.x, u.position.x);
    box.max.y = std::max(box.max.y, u.position.y);
  }
  return box;
}

void normalize_and_validate(Scenario& s) {
  validate(s.params);
  const int n = s.user_count();
  for (std::size_t i = 0; i < s.users.size(); ++i) {
    const GroundUser& u = s.users[i];
    if (u.id != static_cast<int>(i)) {
      fail(at("users", i) + ".id", "ids must be dense 0..N-1 in order, found " + std::to_string(u.id));
    }
    if (!std::isfinite(u.position.x) || !std::isfinite(u.position.y)) {
      fail(at("users", i), "position must be finite");
    }
  }

  std::set<GroundLink> seen_links;
  for (std::size_t i = 0; i < s.ground_links.size(); ++i) {
    auto& [a, b] = s.ground_links[i];
    if (a < 0 || a >= n || b < 0 || b >= n) {
      fail(at("ground_links", i), "endpoint is not a valid user id");
    }
    if (a == b) fail(at("ground_links", i), "self-link");
    if (a > b) std::swap(a, b);
    if (!seen_links.insert({a, b}).second) fail(at("ground_links", i), "duplicate link");
  }
  std::sort(s.ground_links.begin(), s.ground_links.end());

  std::set<std::pair<int, int>> seen_pairs;
  for (std::size_t i = 0; i < s.demand.size(); ++i) {
    const Demand& d = s.demand[i];
    if (d.src < 0 || d.src >= n || d.dst < 0 || d.dst >= n) {
      fail(at("demand", i), "src/dst is not a valid user id");
    }
    if (d.src == d.dst) fail(at("demand", i), "diagonal entry (src == dst)");
    if (!std::isfinite(d.kbps) || d.kbps < 0.0) fail(at("demand", i) + ".kbps", "must be finite and >= 0");
    if (!seen_pairs.insert({d.src, d.dst}).second) fail(at("demand", i), "duplicate OD pair");
  }
  std::sort(s.demand.begin(), s.demand.end(), [](const Demand& a, const Demand& b) {
    return std::pair(a.src, a.dst) < std::pair(b.src, b.dst);
  });

  for (GroundUser& u : s.users) u.demand_out = 0.0;
  for (const Demand& d : s.demand) s.users[static_cast<std::size_t>(d.src)].demand_out += d.kbps;
}

}  // namespace uavnet
