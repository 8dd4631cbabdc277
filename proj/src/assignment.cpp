#include "mrmp/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "mrmp/errors.hpp"

namespace mrmp {

namespace {

// Classic O(n^3) potentials formulation on a finite matrix. Returns row -> column.
std::vector<std::size_t> hungarian(const std::vector<std::vector<double>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_to_col(n);
  for (std::size_t j = 1; j <= n; ++j) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

double matching_cost(const std::vector<std::vector<double>>& a, const std::vector<std::size_t>& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) s += a[i][m[i]];
  return s;
}

// Optimal cost of the submatrix with the given rows and columns.
double sub_optimum(const std::vector<std::vector<double>>& a, const std::vector<std::size_t>& rows,
                   const std::vector<std::size_t>& cols) {
  std::vector<std::vector<double>> sub(rows.size(), std::vector<double>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) sub[r][c] = a[rows[r]][cols[c]];
  }
  return matching_cost(sub, hungarian(sub));
}

}  // namespace

Matching optimal_assignment(const CostMatrix& cost) {
  const std::size_t n = cost.size();
  for (const auto& row : cost) {
    if (row.size() != n) throw Error(ErrorKind::InfeasibleMatching, "cost matrix is not square");
  }
  if (n == 0) return {};
  double max_finite = 0.0;
  for (const auto& row : cost) {
    for (const double c : row) {
      if (std::isfinite(c)) max_finite = std::max(max_finite, std::abs(c));
    }
  }
  const double sentinel = (max_finite + 1.0) * static_cast<double>(n + 1) * 1e3;
  std::vector<std::vector<double>> a = cost;
  for (auto& row : a) {
    for (double& c : row) {
      if (!std::isfinite(c)) c = sentinel;
    }
  }

  const double opt = matching_cost(a, hungarian(a));
  const double slack = 1e-9 * std::max(1.0, std::abs(opt));

  // Fix rows one at a time to the smallest column that still admits an optimum.
  Matching m;
  m.target_of.assign(n, 0);
  std::vector<char> col_used(n, 0);
  double fixed = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> rows;
    for (std::size_t r = i + 1; r < n; ++r) rows.push_back(r);
    bool placed = false;
    for (std::size_t j = 0; j < n && !placed; ++j) {
      if (col_used[j]) continue;
      std::vector<std::size_t> cols;
      for (std::size_t c = 0; c < n; ++c) {
        if (!col_used[c] && c != j) cols.push_back(c);
      }
      const double rest = rows.empty() ? 0.0 : sub_optimum(a, rows, cols);
      if (fixed + a[i][j] + rest <= opt + slack) {
        m.target_of[i] = j;
        col_used[j] = 1;
        fixed += a[i][j];
        placed = true;
      }
    }
    if (!placed) {
      // Numerical corner case: fall back to the plain Hungarian answer.
      m.target_of = hungarian(a);
      break;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(cost[i][m.target_of[i]])) {
      throw Error(ErrorKind::InfeasibleMatching, "no perfect matching with finite cost");
    }
  }
  m.total = matching_cost(cost, m.target_of);
  return m;
}

CostMatrix geodesic_cost_matrix(const GeodesicGraph& g, std::span<const Point> starts,
                                std::span<const Point> targets) {
  CostMatrix out(starts.size());
  const long n = static_cast<long>(starts.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = g.distances(starts[static_cast<std::size_t>(i)], targets);
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

CostMatrix geodesic_cost_matrix_serial(const GeodesicGraph& g, std::span<const Point> starts,
                                       std::span<const Point> targets) {
  CostMatrix out;
  for (const Point& s : starts) out.push_back(g.distances(s, targets));
  return out;
}

CostMatrix geodesic_cost_matrix(const FreeSpace& f, std::span<const Point> starts, std::span<const Point> targets) {
  return geodesic_cost_matrix(GeodesicGraph(f), starts, targets);
}

AssignmentPathSet assignment_path_set(const GeodesicGraph& g, std::span<const Point> starts,
                                      std::span<const Point> targets) {
  const Matching m = optimal_assignment(geodesic_cost_matrix(g, starts, targets));
  AssignmentPathSet out;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    auto p = g.shortest_path(starts[i], targets[m.target_of[i]]);
    if (!p) throw Error(ErrorKind::InfeasibleMatching, "matched pair is disconnected");
    out.total_length += p->length();
    out.pairs.push_back({i, m.target_of[i], std::move(*p)});
  }
  return out;
}

AssignmentPathSet labeled_path_set(const GeodesicGraph& g, std::span<const Point> starts,
                                   std::span<const Point> targets) {
  AssignmentPathSet out;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    auto p = g.shortest_path(starts[i], targets[i]);
    if (!p) throw Error(ErrorKind::InfeasibleInstance, "labeled pair is disconnected");
    out.total_length += p->length();
    out.pairs.push_back({i, i, std::move(*p)});
  }
  return out;
}

}  // namespace mrmp
