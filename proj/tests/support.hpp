#pragma once

// Shared helpers for the unit tests and the acceptance run: seeded random
// finite sets and functions, and brute-force reference computations.

#include <random>
#include <string>
#include <vector>

#include "veq/category.hpp"
#include "veq/finset.hpp"

namespace veq::testing {

inline FinSet letters(std::size_t n, char first = 'a') {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>(first + i)));
  return FinSet(out);
}

inline FinFunction random_function(std::mt19937& rng, const FinSet& dom, const FinSet& cod) {
  std::vector<std::size_t> t(dom.size());
  std::uniform_int_distribution<std::size_t> pick(0, cod.size() - 1);
  for (auto& v : t) v = pick(rng);
  return FinFunction(dom, cod, t);
}

/// Elements x with p(x) = q(x) for every pair.
inline std::vector<std::string> agreeing(const std::vector<std::pair<FinFunction, FinFunction>>& eqs) {
  const FinSet& dom = eqs.front().first.dom();
  std::vector<std::string> out;
  for (std::size_t x = 0; x < dom.size(); ++x) {
    bool ok = true;
    for (const auto& [p, q] : eqs) ok = ok && p(x) == q(x);
    if (ok) out.push_back(dom.label(x));
  }
  return out;
}

/// Labels of the image of f, in codomain order.
inline std::vector<std::string> image_labels(const FinFunction& f) {
  std::vector<bool> hit(f.cod().size(), false);
  for (std::size_t x = 0; x < f.dom().size(); ++x) hit[f(x)] = true;
  std::vector<std::string> out;
  for (std::size_t y = 0; y < hit.size(); ++y)
    if (hit[y]) out.push_back(f.cod().label(y));
  return out;
}

/// Class index per element for the least equivalence containing the pairs,
/// by repeated relabeling until stable.
inline std::vector<std::size_t> naive_closure(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<std::size_t> cls(n);
  for (std::size_t i = 0; i < n; ++i) cls[i] = i;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [a, b] : pairs) {
      const std::size_t lo = std::min(cls[a], cls[b]), hi = std::max(cls[a], cls[b]);
      if (lo == hi) continue;
      for (auto& c : cls)
        if (c == hi) c = lo;
      changed = true;
    }
  }
  return cls;
}

inline bool same_partition(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
  return true;
}

/// Random partial order on n elements: a random relation compatible with
/// the index order, transitively closed.
inline CatPtr random_poset(std::mt19937& rng, std::size_t n, const std::string& name) {
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    leq[i][i] = true;
    for (std::size_t j = i + 1; j < n; ++j) leq[i][j] = rng() % 2 == 0;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return make_poset(name, labels, leq);
}

inline CatPtr chain(std::size_t n, const std::string& name) {
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i));
    for (std::size_t j = i; j < n; ++j) leq[i][j] = true;
  }
  return make_poset(name, labels, leq);
}

inline bool below(const FiniteCategory& p, std::size_t a, std::size_t b) { return !p.hom(a, b).empty(); }

/// h ⊣ g between posets: h(b) ≤ a iff b ≤ g(a).
inline bool galois(const Functor& h, const Functor& g) {
  for (std::size_t b = 0; b < h.src->object_count(); ++b)
    for (std::size_t a = 0; a < g.src->object_count(); ++a)
      if (below(*h.tgt, h.obj(b), a) != below(*g.tgt, b, g.obj(a))) return false;
  return true;
}

}  // namespace veq::testing
