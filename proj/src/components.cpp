#include <numeric>
#include <vector>

#include "mrmp/errors.hpp"
#include "mrmp/free_space.hpp"
#include "mrmp/geodesics.hpp"

namespace mrmp {

std::vector<ComponentCount> components_with_counts(const FreeSpace& f, std::span<const Point> starts,
                                                   std::span<const Point> targets) {
  std::vector<Point> pts(starts.begin(), starts.end());
  pts.insert(pts.end(), targets.begin(), targets.end());
  for (const Point& p : pts) {
    if (!f.contains(p, 1e-7)) throw Error(ErrorKind::PositionOutsideFreeSpace, "position outside free space");
  }
  std::vector<std::size_t> parent(pts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  const GeodesicGraph graph(f);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<Point> rest;
    std::vector<std::size_t> ids;
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (find(i) == find(j)) continue;
      rest.push_back(pts[j]);
      ids.push_back(j);
    }
    if (rest.empty()) continue;
    const std::vector<double> d = graph.distances(pts[i], rest);
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (std::isfinite(d[k])) parent[find(ids[k])] = find(i);
    }
  }

  std::vector<ComponentCount> out;
  std::vector<int> id_of(pts.size(), -1);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::size_t root = find(i);
    if (id_of[root] < 0) {
      id_of[root] = static_cast<int>(out.size());
      out.push_back({id_of[root], 0, 0});
    }
    ComponentCount& c = out[static_cast<std::size_t>(id_of[root])];
    if (i < starts.size()) {
      ++c.starts;
    } else {
      ++c.targets;
    }
  }
  return out;
}

}  // namespace mrmp
