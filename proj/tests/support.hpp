#pragma once

// Fixture surfaces written out by hand and brute-force oracles that recompute
// invariants without going through the library's algorithms.

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "surfends/core/complex.hpp"

namespace fixtures {

using surfends::SurfaceComplex;
using surfends::Triangle;

inline SurfaceComplex tetrahedron() { return SurfaceComplex(4, {{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {0, 2, 3}}); }

inline SurfaceComplex triangle() { return SurfaceComplex(3, {{0, 1, 2}}); }

inline SurfaceComplex torus7() {
  std::vector<Triangle> f;
  for (int i = 0; i < 7; ++i) {
    f.push_back({i, (i + 1) % 7, (i + 3) % 7});
    f.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return SurfaceComplex(7, f);
}

/// n x m grid with periodic identifications; `klein` flips y when wrapping x.
inline SurfaceComplex periodic_grid(int n, int m, bool klein) {
  auto id = [&](int x, int y) {
    if (x >= n) {
      x -= n;
      if (klein) y = (m - y) % m;
    }
    y %= m;
    return x * m + y;
  };
  std::vector<Triangle> f;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < m; ++y) {
      f.push_back({id(x, y), id(x + 1, y), id(x + 1, y + 1)});
      f.push_back({id(x, y), id(x + 1, y + 1), id(x, y + 1)});
    }
  return SurfaceComplex(n * m, f);
}

inline SurfaceComplex torus_grid() { return periodic_grid(3, 3, false); }
inline SurfaceComplex klein_bottle() { return periodic_grid(4, 4, true); }

inline SurfaceComplex mobius() {
  std::vector<Triangle> f;
  for (int i = 0; i < 5; ++i) f.push_back({i, (i + 1) % 5, (i + 2) % 5});
  return SurfaceComplex(5, f);
}

/// Flat w x h grid disk, vertices (x, y) -> y * (w + 1) + x.
inline SurfaceComplex grid_disk(int w, int h) {
  std::vector<Triangle> f;
  auto id = [&](int x, int y) { return y * (w + 1) + x; };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      f.push_back({id(x, y), id(x + 1, y), id(x + 1, y + 1)});
      f.push_back({id(x, y), id(x + 1, y + 1), id(x, y + 1)});
    }
  return SurfaceComplex((w + 1) * (h + 1), f);
}

/// Annulus between an outer 4-cycle ring of a 3x3 grid and its removed center.
inline SurfaceComplex annulus() {
  std::vector<Triangle> f;
  auto id = [](int x, int y) { return y * 4 + x; };
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 3; ++x) {
      if (x == 1 && y == 1) continue;
      f.push_back({id(x, y), id(x + 1, y), id(x + 1, y + 1)});
      f.push_back({id(x, y), id(x + 1, y + 1), id(x, y + 1)});
    }
  return SurfaceComplex(16, f);
}

/// 5x3 grid with cells (1,1) and (3,1) removed: a pair of pants.
inline SurfaceComplex pants() {
  std::vector<Triangle> f;
  auto id = [](int x, int y) { return y * 6 + x; };
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 5; ++x) {
      if (y == 1 && (x == 1 || x == 3)) continue;
      f.push_back({id(x, y), id(x + 1, y), id(x + 1, y + 1)});
      f.push_back({id(x, y), id(x + 1, y + 1), id(x, y + 1)});
    }
  return SurfaceComplex(24, f);
}

/// Octahedron: poles 0 (north) and 5 (south), equator 1-2-3-4.
inline SurfaceComplex octahedron() {
  return SurfaceComplex(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1},
                            {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}});
}

/// Sphere made from a c-periodic tube of h rows of cells, capped by cones.
/// Vertex (x, y) for y = 0..h is y * c + x; the caps are (h + 1) * c and
/// (h + 1) * c + 1.
inline SurfaceComplex capped_tube(int c, int h) {
  auto id = [&](int x, int y) { return y * c + (x % c); };
  std::vector<Triangle> f;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < c; ++x) {
      f.push_back({id(x, y), id(x + 1, y), id(x + 1, y + 1)});
      f.push_back({id(x, y), id(x + 1, y + 1), id(x, y + 1)});
    }
  const int bottom = (h + 1) * c, top = bottom + 1;
  for (int x = 0; x < c; ++x) {
    f.push_back({id(x + 1, 0), id(x, 0), bottom});
    f.push_back({id(x, h), id(x + 1, h), top});
  }
  return SurfaceComplex(top + 1, f);
}

/// Two triangles sharing only vertex 0.
inline SurfaceComplex bowtie() { return SurfaceComplex(5, {{0, 1, 2}, {0, 3, 4}}); }

}  // namespace fixtures

namespace oracle {

using surfends::SurfaceComplex;

struct Counts {
  long v = 0, e = 0, f = 0;
};

/// Counts used vertices, distinct vertex pairs and faces by direct enumeration.
inline Counts simplex_counts(const SurfaceComplex& s) {
  std::set<int> vs;
  std::set<std::pair<int, int>> es;
  for (const auto& t : s.faces())
    for (int i = 0; i < 3; ++i) {
      vs.insert(t[i]);
      int a = t[i], b = t[(i + 1) % 3];
      es.insert({std::min(a, b), std::max(a, b)});
    }
  return {static_cast<long>(vs.size()), static_cast<long>(es.size()), static_cast<long>(s.face_count())};
}

inline long euler(const SurfaceComplex& s) {
  auto c = simplex_counts(s);
  return c.v - c.e + c.f;
}

inline bool share_edge(const surfends::Triangle& a, const surfends::Triangle& b) {
  int common = 0;
  for (int x : a)
    for (int y : b) common += x == y;
  return common >= 2;
}

/// O(F^2) BFS over face pairs that share two vertices, restricted to `keep`.
inline int face_components(const SurfaceComplex& s, const std::vector<char>& keep = {}) {
  int n = s.face_count();
  std::vector<char> seen(n, 0);
  int comps = 0;
  for (int f = 0; f < n; ++f) {
    if (seen[f] || (!keep.empty() && !keep[f])) continue;
    ++comps;
    std::queue<int> q;
    q.push(f);
    seen[f] = 1;
    while (!q.empty()) {
      int a = q.front();
      q.pop();
      for (int b = 0; b < n; ++b)
        if (!seen[b] && (keep.empty() || keep[b]) && share_edge(s.face(a), s.face(b))) {
          seen[b] = 1;
          q.push(b);
        }
    }
  }
  return comps;
}

/// Number of edges with exactly one incident face.
inline int boundary_edge_count(const SurfaceComplex& s) {
  std::map<std::pair<int, int>, int> inc;
  for (const auto& t : s.faces())
    for (int i = 0; i < 3; ++i) {
      int a = t[i], b = t[(i + 1) % 3];
      ++inc[{std::min(a, b), std::max(a, b)}];
    }
  int n = 0;
  for (auto& [k, c] : inc) n += c == 1;
  return n;
}

/// Boundary circles counted as components of the graph of boundary edges
/// (valid for surfaces without pinched boundary vertices).
inline int boundary_circle_count(const SurfaceComplex& s) {
  std::map<std::pair<int, int>, int> inc;
  for (const auto& t : s.faces())
    for (int i = 0; i < 3; ++i) {
      int a = t[i], b = t[(i + 1) % 3];
      ++inc[{std::min(a, b), std::max(a, b)}];
    }
  std::map<int, std::vector<int>> adj;
  for (auto& [k, c] : inc)
    if (c == 1) {
      adj[k.first].push_back(k.second);
      adj[k.second].push_back(k.first);
    }
  std::set<int> seen;
  int comps = 0;
  for (auto& [v, _] : adj) {
    if (seen.count(v)) continue;
    ++comps;
    std::vector<int> stack{v};
    seen.insert(v);
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (int b : adj[a])
        if (seen.insert(b).second) stack.push_back(b);
    }
  }
  return comps;
}

/// Orientability through the orientation double cover: states (face, sign)
/// joined whenever the two signed faces induce opposite directions on a shared
/// edge. The surface is orientable iff (f,+) cannot reach (f,-).
inline bool orientable(const SurfaceComplex& s) {
  int n = s.face_count();
  auto dir = [&](int f, int a, int b) {
    const auto& t = s.face(f);
    for (int i = 0; i < 3; ++i) {
      if (t[i] == a && t[(i + 1) % 3] == b) return 1;
      if (t[i] == b && t[(i + 1) % 3] == a) return -1;
    }
    return 0;
  };
  std::vector<int> label(2 * n, -1);
  for (int start = 0; start < n; ++start) {
    if (label[2 * start] >= 0) continue;
    std::queue<int> q;
    q.push(2 * start);
    label[2 * start] = start;
    while (!q.empty()) {
      int st = q.front();
      q.pop();
      int f = st / 2, sf = st % 2 ? -1 : 1;
      for (int g = 0; g < n; ++g) {
        if (g == f || !share_edge(s.face(f), s.face(g))) continue;
        const auto& t = s.face(f);
        for (int i = 0; i < 3; ++i) {
          int a = t[i], b = t[(i + 1) % 3];
          int dg = dir(g, a, b);
          if (dg == 0) continue;
          int sg = -sf * dg;  // need sf*(+1) == -(sg*dg)
          int st2 = 2 * g + (sg < 0 ? 1 : 0);
          if (label[st2] < 0) {
            label[st2] = start;
            q.push(st2);
          }
        }
      }
    }
    if (label[2 * start + 1] == start) return false;
  }
  return true;
}

}  // namespace oracle
