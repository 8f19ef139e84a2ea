#include "lms/action.hpp"

#include <algorithm>

namespace lms::action {

EquivSet EquivSet::from_classes(std::vector<int> class_of, std::vector<std::string> labels) {
  EquivSet s;
  s.n = static_cast<int>(class_of.size());
  s.class_of = std::move(class_of);
  s.labels = std::move(labels);
  int nc = 0;
  for (int c : s.class_of) nc = std::max(nc, c + 1);
  s.classes.assign(nc, {});
  for (int i = 0; i < s.n; ++i) s.classes[s.class_of[i]].push_back(i);
  for (const auto& cls : s.classes)
    if (cls.empty()) throw PreconditionError("equivalence class indices must be contiguous");
  return s;
}

bool Perm::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (img[i] != i) return false;
  return true;
}

Perm Perm::inverse() const {
  Perm r(degree());
  for (int i = 0; i < degree(); ++i) r.img[img[i]] = i;
  return r;
}

Perm Perm::power(long long k) const {
  Perm base = k >= 0 ? *this : inverse();
  if (k < 0) k = -k;
  Perm acc(degree());
  while (k > 0) {
    if (k & 1) acc = compose(acc, base);
    base = compose(base, base);
    k >>= 1;
  }
  return acc;
}

Perm compose(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree()) throw PreconditionError("composing permutations of different sets");
  Perm r;
  r.img.resize(p.degree());
  for (int i = 0; i < p.degree(); ++i) r.img[i] = q.img[p.img[i]];
  return r;
}

Perm conj(const Perm& p, const Perm& g) { return compose(compose(g.inverse(), p), g); }

bool preserves_equivalence(const Perm& p, const EquivSet& X) {
  if (p.degree() != X.n) return false;
  std::vector<char> seen(X.n, 0);
  for (int i = 0; i < X.n; ++i) {
    if (seen[p.img[i]]) return false;
    seen[p.img[i]] = 1;
  }
  for (int i = 0; i < X.n; ++i)
    for (int j : X.classes[X.class_of[i]])
      if (X.class_of[p.img[i]] != X.class_of[p.img[j]]) return false;
  return true;
}

Perm induced(const Perm& p, const EquivSet& X) {
  Perm r(X.num_classes());
  for (int c = 0; c < X.num_classes(); ++c) r.img[c] = X.class_of[p.img[X.classes[c][0]]];
  return r;
}

void PermGroup::build_index() {
  index.clear();
  index.reserve(elems.size() * 2);
  for (size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], static_cast<int32_t>(i));
}

PermGroup closure(const std::vector<Perm>& gens, long long cap) {
  PermGroup g;
  g.gens = gens;
  int degree = gens.empty() ? 0 : gens[0].degree();
  for (const auto& p : gens)
    if (p.degree() != degree) throw PreconditionError("generators act on different sets");
  Perm id(degree);
  g.elems.push_back(id);
  g.index.emplace(id, 0);
  for (size_t head = 0; head < g.elems.size(); ++head) {
    Perm cur = g.elems[head];  // copy: elems may reallocate
    for (const auto& gen : gens) {
      Perm nxt = compose(cur, gen);
      if (g.index.count(nxt)) continue;
      if (static_cast<long long>(g.elems.size()) >= cap)
        throw CapExceeded("group closure exceeded cap " + std::to_string(cap));
      g.index.emplace(nxt, static_cast<int32_t>(g.elems.size()));
      g.elems.push_back(std::move(nxt));
    }
  }
  return g;
}

PermGroup stabilizer(const PermGroup& g, const std::vector<int>& points) {
  PermGroup s;
  for (const auto& p : g.elems) {
    bool fixes = true;
    for (int x : points)
      if (p.img[x] != x) {
        fixes = false;
        break;
      }
    if (fixes) s.elems.push_back(p);
  }
  s.gens = s.elems;
  s.build_index();
  return s;
}

}  // namespace lms::action
