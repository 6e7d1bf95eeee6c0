#pragma once

// Brute-force references for residual domains and their ends near K.
//
// Domains are recomputed by quadratic BFS. Ends near K are read off the
// second barycentric subdivision S'': the faces of U'' that avoid K'' form a
// compact surface W onto which U retracts, and each boundary circle of W not
// lying on the boundary of S is one end of U. Everything is keyed by vertex
// sets so no library code is involved.

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "support.hpp"

namespace oracle {

using Cell = std::set<int>;  // a simplex of S named by its vertices

inline Cell cell(std::initializer_list<int> vs) { return Cell(vs); }

/// Closure of listed cells.
inline std::set<Cell> closure(const std::set<Cell>& cells) {
  std::set<Cell> out;
  for (const auto& c : cells) {
    std::vector<int> v(c.begin(), c.end());
    const int n = static_cast<int>(v.size());
    for (int mask = 1; mask < (1 << n); ++mask) {
      Cell sub;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) sub.insert(v[i]);
      out.insert(sub);
    }
  }
  return out;
}

inline Cell face_cell(const SurfaceComplex& s, int f) {
  const auto& t = s.face(f);
  return Cell{t[0], t[1], t[2]};
}

/// Residual domains as sets of face ids, ordered by smallest face.
inline std::vector<std::set<int>> domains(const SurfaceComplex& s, const std::set<Cell>& k) {
  const int n = s.face_count();
  std::vector<int> label(n, -1);
  std::vector<std::set<int>> out;
  for (int f = 0; f < n; ++f) {
    if (label[f] >= 0 || k.count(face_cell(s, f))) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::queue<int> q;
    q.push(f);
    label[f] = id;
    while (!q.empty()) {
      int a = q.front();
      q.pop();
      out[id].insert(a);
      for (int b = 0; b < n; ++b) {
        if (label[b] >= 0 || k.count(face_cell(s, b))) continue;
        Cell common;
        for (int x : s.face(a))
          for (int y : s.face(b))
            if (x == y) common.insert(x);
        if (common.size() == 2 && !k.count(common)) {
          label[b] = id;
          q.push(b);
        }
      }
    }
  }
  return out;
}

/// Cells of K lying in the closure of the faces of U.
inline std::set<Cell> frontier(const SurfaceComplex& s, const std::set<int>& u, const std::set<Cell>& k) {
  std::set<Cell> out;
  for (const auto& c : k) {
    if (c.size() == 3) continue;
    for (int f : u) {
      auto fc = face_cell(s, f);
      if (std::includes(fc.begin(), fc.end(), c.begin(), c.end())) {
        out.insert(c);
        break;
      }
    }
  }
  return out;
}

struct Derived2 {
  std::vector<std::array<int, 3>> faces;
  std::vector<Cell> carrier;  // smallest cell of S containing each vertex
  std::vector<int> parent;    // face of S
};

/// Second barycentric subdivision with carriers and parents.
inline Derived2 second_derived(const SurfaceComplex& s) {
  std::map<Cell, int> id1;
  std::vector<Cell> carrier1;
  std::vector<std::array<int, 3>> faces1;
  std::vector<int> parent1;
  auto v1 = [&](const Cell& c) {
    auto [it, fresh] = id1.try_emplace(c, static_cast<int>(carrier1.size()));
    if (fresh) carrier1.push_back(c);
    return it->second;
  };
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (int f = 0; f < s.face_count(); ++f) {
    const auto& t = s.face(f);
    for (const auto& p : perms) {
      int a = t[p[0]], b = t[p[1]], c = t[p[2]];
      faces1.push_back({v1({a}), v1({a, b}), v1({a, b, c})});
      parent1.push_back(f);
    }
  }
  Derived2 out;
  std::map<std::set<int>, int> id2;
  auto v2 = [&](const std::set<int>& simplex) {
    auto [it, fresh] = id2.try_emplace(simplex, static_cast<int>(out.carrier.size()));
    if (fresh) {
      Cell c;
      for (int x : simplex) c.insert(carrier1[x].begin(), carrier1[x].end());
      out.carrier.push_back(c);
    }
    return it->second;
  };
  for (std::size_t i = 0; i < faces1.size(); ++i) {
    const auto& t = faces1[i];
    for (const auto& p : perms) {
      int a = t[p[0]], b = t[p[1]], c = t[p[2]];
      out.faces.push_back({v2({a}), v2({a, b}), v2({a, b, c})});
      out.parent.push_back(parent1[i]);
    }
  }
  return out;
}

/// Impressions (as sets of K cells) of the ends of U near K, one per end.
inline std::vector<std::set<Cell>> ends_near(const Derived2& d, const std::set<int>& u, const std::set<Cell>& k) {
  auto in_k = [&](int v) { return k.count(d.carrier[v]) > 0; };
  std::map<std::pair<int, int>, int> all_count, w_count;
  std::map<int, std::set<int>> neighbours;
  for (std::size_t i = 0; i < d.faces.size(); ++i) {
    const auto& t = d.faces[i];
    const bool in_w = u.count(d.parent[i]) && !in_k(t[0]) && !in_k(t[1]) && !in_k(t[2]);
    for (int j = 0; j < 3; ++j) {
      int a = std::min(t[j], t[(j + 1) % 3]), b = std::max(t[j], t[(j + 1) % 3]);
      ++all_count[{a, b}];
      if (in_w) ++w_count[{a, b}];
      neighbours[t[j]].insert(t[(j + 1) % 3]);
      neighbours[t[(j + 1) % 3]].insert(t[j]);
    }
  }
  std::map<int, std::vector<int>> adj;
  for (auto& [e, c] : w_count)
    if (c == 1 && all_count[e] == 2) {
      adj[e.first].push_back(e.second);
      adj[e.second].push_back(e.first);
    }
  std::set<int> seen;
  std::vector<std::set<Cell>> out;
  for (auto& [start, _] : adj) {
    if (seen.count(start)) continue;
    std::set<Cell> impression;
    std::vector<int> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (int nb : neighbours[a])
        if (in_k(nb)) impression.insert(d.carrier[nb]);
      for (int b : adj[a])
        if (seen.insert(b).second) stack.push_back(b);
    }
    out.push_back(impression);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
