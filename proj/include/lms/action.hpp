#ifndef LMS_ACTION_HPP
#define LMS_ACTION_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lms/errors.hpp"

namespace lms::action {

// A finite indexed point set carrying an equivalence relation.
struct EquivSet {
  int n = 0;
  std::vector<int> class_of;             // point -> class index
  std::vector<std::vector<int>> classes; // class index -> members
  std::vector<std::string> labels;

  static EquivSet from_classes(std::vector<int> class_of, std::vector<std::string> labels);
  int num_classes() const { return static_cast<int>(classes.size()); }
  bool equivalent(int x, int y) const { return class_of[x] == class_of[y]; }
  const std::string& label(int x) const { return labels[x]; }
};

// Dense image-array permutation; composition is a right action:
// x.(p*q) = (x.p).q
struct Perm {
  std::vector<int32_t> img;

  Perm() = default;
  explicit Perm(int n) : img(n) {
    for (int i = 0; i < n; ++i) img[i] = i;
  }
  explicit Perm(std::vector<int32_t> v) : img(std::move(v)) {}

  int degree() const { return static_cast<int>(img.size()); }
  int32_t operator()(int x) const { return img[x]; }
  bool is_identity() const;
  Perm inverse() const;
  Perm power(long long k) const;
  bool operator==(const Perm& o) const { return img == o.img; }
  bool operator<(const Perm& o) const { return img < o.img; }
};

Perm compose(const Perm& p, const Perm& q);            // p first, then q
Perm conj(const Perm& p, const Perm& g);               // g^-1 p g

struct PermHash {
  size_t operator()(const Perm& p) const {
    size_t h = 1469598103934665603ull;
    for (int32_t v : p.img) {
      h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Membership in Sym(X,~): bijective and maps classes onto classes.
bool preserves_equivalence(const Perm& p, const EquivSet& X);

// Faithful induced action on the set of classes.
Perm induced(const Perm& p, const EquivSet& X);

// Group of permutations, stored in deterministic BFS discovery order.
struct PermGroup {
  std::vector<Perm> elems;
  std::vector<Perm> gens;
  std::unordered_map<Perm, int32_t, PermHash> index;

  long long order() const { return static_cast<long long>(elems.size()); }
  bool contains(const Perm& p) const { return index.count(p) != 0; }
  void build_index();
};

// Breadth-first product closure of the generators; throws CapExceeded when
// more than `cap` elements appear.
PermGroup closure(const std::vector<Perm>& gens, long long cap);

// Pointwise stabilizer, obtained by filtering the element list.
PermGroup stabilizer(const PermGroup& g, const std::vector<int>& points);

}  // namespace lms::action

#endif
