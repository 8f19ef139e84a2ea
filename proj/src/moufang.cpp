#include "lms/moufang.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

namespace lms::moufang {

namespace {

std::string pt(const MoufangData& m, int x) { return m.X().label(x); }

bool perm_in(const std::vector<Perm>& sorted_group, const Perm& p) {
  return std::binary_search(sorted_group.begin(), sorted_group.end(), p);
}

std::vector<Perm> sorted(std::vector<Perm> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Perm> conjugate_group(const std::vector<Perm>& g, const Perm& c) {
  Perm cinv = c.inverse();
  std::vector<Perm> out;
  out.reserve(g.size());
  for (const auto& p : g) out.push_back(action::compose(action::compose(cinv, p), c));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Perm> induced_group(const std::vector<Perm>& g, const EquivSet& X) {
  std::set<Perm> s;
  for (const auto& p : g) s.insert(action::induced(p, X));
  return {s.begin(), s.end()};
}

Perm chain(std::initializer_list<Perm> ps) {
  auto it = ps.begin();
  Perm r = *it++;
  for (; it != ps.end(); ++it) r = action::compose(r, *it);
  return r;
}

}  // namespace

MoufangData MoufangData::construct(Seed seed) {
  MoufangData m;
  const EquivSet& X = seed.X;
  if (X.num_classes() <= 2) throw PreconditionError("(C1): |classes| must exceed 2");
  for (const auto& u : seed.U)
    if (!action::preserves_equivalence(u, X))
      throw PreconditionError("(C1): U contains a permutation outside Sym(X,~)");
  if (!action::preserves_equivalence(seed.tau, X))
    throw PreconditionError("(C2): tau is not in Sym(X,~)");

  std::set<Perm> uset(seed.U.begin(), seed.U.end());
  if (uset.size() != seed.U.size()) throw PreconditionError("(C1): U has repeated elements");
  if (!uset.count(Perm(X.n))) throw PreconditionError("(C1): U does not contain the identity");
  for (const auto& a : seed.U)
    for (const auto& b : seed.U)
      if (!uset.count(action::compose(a, b)))
        throw PreconditionError("(C1): U is not closed under composition");
  for (const auto& u : seed.U)
    if (u.img[seed.inf] != seed.inf) throw PreconditionError("(C1): U does not fix inf");

  int outside = X.n - static_cast<int>(X.classes[X.class_of[seed.inf]].size());
  if (static_cast<int>(seed.U.size()) != outside)
    throw PreconditionError("(C1): |U| differs from |X \\ class(inf)|");
  int base = -1;
  for (int x = 0; x < X.n; ++x)
    if (!X.equivalent(x, seed.inf)) {
      base = x;
      break;
    }
  {
    std::set<int> images;
    for (const auto& u : seed.U) {
      int y = u.img[base];
      if (X.equivalent(y, seed.inf)) throw PreconditionError("(C1): U moves a point into class(inf)");
      images.insert(y);
    }
    if (static_cast<int>(images.size()) != outside)
      throw PreconditionError("(C1): U is not sharply transitive on X \\ class(inf)");
  }
  {
    std::set<Perm> ind;
    for (const auto& u : seed.U) ind.insert(action::induced(u, X));
    if (static_cast<int>(ind.size()) != X.num_classes() - 1)
      throw PreconditionError("(C1'): induced U is not sharply transitive on the classes");
  }
  int zero = seed.tau.img[seed.inf];
  if (X.equivalent(zero, seed.inf)) throw PreconditionError("(C2): inf.tau ~ inf");
  if (seed.tau.img[zero] != seed.inf) throw PreconditionError("(C2): inf.tau^2 != inf");

  m.seed_ = std::move(seed);
  m.inf_ = m.seed_.inf;
  m.zero_ = zero;
  m.tau_inv_ = m.seed_.tau.inverse();
  const EquivSet& Xm = m.seed_.X;  // `seed` has been moved from

  m.alpha_idx_.assign(Xm.n, -1);
  for (size_t i = 0; i < m.seed_.U.size(); ++i) {
    int x = m.seed_.U[i].img[zero];
    m.alpha_idx_[x] = static_cast<int>(i);
  }
  m.U0_.reserve(m.seed_.U.size());
  for (const auto& u : m.seed_.U)
    m.U0_.push_back(action::compose(action::compose(m.tau_inv_, u), m.seed_.tau));
  m.u0_idx_.assign(Xm.n, -1);
  for (size_t i = 0; i < m.U0_.size(); ++i) m.u0_idx_[m.U0_[i].img[m.inf_]] = static_cast<int>(i);

  for (int x = 0; x < Xm.n; ++x)
    if (m.is_unit(x)) m.units_.push_back(x);

  m.root_.resize(Xm.n);
  return m;
}

std::vector<Perm> MoufangData::compute_root_group(int x) const {
  if (!X().equivalent(x, inf_)) return conjugate_group(U0_, alpha(x));
  int t = tau_inv_.img[x];  // ~ 0, so alpha(t) exists
  return conjugate_group(seed_.U, gamma(t));
}

const std::vector<Perm>& MoufangData::root_group(int x) const {
  if (root_[x].empty()) root_[x] = compute_root_group(x);
  return root_[x];
}

long long MoufangData::root_cache_weight() const {
  return static_cast<long long>(X().n) * static_cast<long long>(seed_.U.size()) * X().n;
}

int MoufangData::neg(int x) const {
  if (X().equivalent(x, inf_)) throw PreconditionError("neg: " + pt(*this, x) + " ~ inf");
  return alpha(x).inverse().img[zero_];
}

const Perm& MoufangData::alpha(int x) const {
  if (alpha_idx_[x] < 0) throw PreconditionError("alpha: " + pt(*this, x) + " ~ inf");
  return seed_.U[alpha_idx_[x]];
}

Perm MoufangData::gamma(int x) const {
  return action::compose(action::compose(tau_inv_, alpha(x)), seed_.tau);
}

const Perm& MoufangData::u0_to(int w) const {
  if (u0_idx_[w] < 0) throw PreconditionError("u0_to: " + pt(*this, w) + " ~ 0");
  return U0_[u0_idx_[w]];
}

Perm MoufangData::mu_formula(int x, const Perm& t) const {
  // alpha_{(-x) t^-1}^t  alpha_x  alpha_{-(x t^-1)}^t
  Perm tinv = t.inverse();
  auto conj_t = [&](const Perm& p) { return action::compose(action::compose(tinv, p), t); };
  int a = tinv.img[neg(x)];
  int b = neg(tinv.img[x]);
  return chain({conj_t(alpha(a)), alpha(x), conj_t(alpha(b))});
}

const Perm& MoufangData::mu(int x) const {
  auto it = mu_cache_.find(x);
  if (it != mu_cache_.end()) return it->second;
  if (!is_unit(x)) throw PreconditionError("mu: " + pt(*this, x) + " is not a unit");
  // Double coset search: the unique g,h in U_0 with inf.g = -x and x.h = inf.
  const Perm* g = nullptr;
  const Perm* h = nullptr;
  int nx = neg(x);
  for (const auto& u : U0_) {
    if (u.img[inf_] == nx) g = &u;
    if (u.img[x] == inf_) h = &u;
  }
  if (!g || !h) throw PreconditionError("mu: double coset search failed at " + pt(*this, x));
  Perm p = chain({*g, alpha(x), *h});
  if (!(p == mu_formula(x, seed_.tau)))
    throw PreconditionError("mu: double-coset and closed-form values differ at " + pt(*this, x));
  return mu_cache_.emplace(x, std::move(p)).first->second;
}

Perm MoufangData::hua(int x) const { return hua(x, seed_.tau); }

Perm MoufangData::hua(int x, const Perm& t) const {
  // h_x = t alpha_x t^-1 alpha_{-(x t^-1)} t alpha_{-((-(x t^-1)) t)}
  if (!is_unit(x)) throw PreconditionError("hua: " + pt(*this, x) + " is not a unit");
  Perm tinv = t.inverse();
  int xt = tinv.img[x];
  int til = t.img[neg(xt)];
  return chain({t, alpha(x), tinv, alpha(neg(xt)), t, alpha(neg(til))});
}

int MoufangData::tilde(int x) const {
  if (!is_unit(x)) throw PreconditionError("tilde: " + pt(*this, x) + " is not a unit");
  return seed_.tau.img[neg(tau_inv_.img[x])];
}

std::vector<Perm> MoufangData::U0_circ() const {
  std::vector<Perm> out;
  for (const auto& u : U0_)
    if (action::induced(u, X()).is_identity()) out.push_back(u);
  return out;
}

std::vector<Perm> MoufangData::Uinf_circ() const {
  std::vector<Perm> out;
  for (const auto& u : seed_.U)
    if (action::induced(u, X()).is_identity()) out.push_back(u);
  return out;
}

int MoufangData::times(int x, long long k) const { return alpha(x).power(k).img[zero_]; }

int MoufangData::times_tilde(int x, long long k) const {
  if (X().equivalent(x, zero_)) throw PreconditionError("times_tilde: " + pt(*this, x) + " ~ 0");
  return u0_to(x).power(k).img[inf_];
}

std::optional<int> MoufangData::div(int x, long long n) const {
  std::optional<int> found;
  for (int y = 0; y < X().n; ++y) {
    if (X().equivalent(y, inf_)) continue;
    if (times(y, n) == x) {
      if (found) return std::nullopt;  // not unique
      found = y;
    }
  }
  return found;
}

const PermGroup& MoufangData::little_projective(long long cap) const {
  if (G_ && G_cap_ >= cap) return *G_;
  std::vector<Perm> gens = seed_.U;
  gens.insert(gens.end(), U0_.begin(), U0_.end());
  G_ = action::closure(gens, cap);
  G_cap_ = cap;
  return *G_;
}

const PermGroup& MoufangData::hua_subgroup(long long cap) const {
  if (H_) return *H_;
  std::vector<Perm> gens;
  for (int x : units_)
    for (int y : units_) gens.push_back(action::compose(mu(x), mu(y)));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  H_ = action::closure(gens, cap);
  return *H_;
}

bool MoufangData::quasi_invertible(int x, int y) const {
  if (X().equivalent(x, inf_) || X().equivalent(y, inf_))
    throw PreconditionError("quasi_invertible: arguments must avoid class(inf)");
  if (X().equivalent(x, zero_) || X().equivalent(y, zero_)) return true;
  return !X().equivalent(seed_.tau.img[x], neg(y));
}

std::optional<std::pair<int, int>> MoufangData::quasi_inverse(int x, int y) const {
  if (!quasi_invertible(x, y)) return std::nullopt;
  // ^x y = (-y) alpha_{-x}^tau ;  x^y = -(x alpha_y^{tau^-1})
  Perm g = chain({tau_inv_, alpha(neg(x)), seed_.tau});
  int left = g.img[neg(y)];
  Perm h = chain({seed_.tau, alpha(y), tau_inv_});
  int right = neg(h.img[x]);
  return std::make_pair(left, right);
}

namespace {

// Deterministic sampled elements of <gens>: fixed-seed random words.
std::vector<Perm> sampled_elements(const std::vector<Perm>& gens, const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
  std::vector<Perm> out;
  int degree = gens[0].degree();
  for (int s = 0; s < opt.samples; ++s) {
    Perm w(degree);
    for (int i = 0; i < 16; ++i) w = action::compose(w, gens[pick(rng)]);
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace

CheckList is_local_moufang(const MoufangData& m, const VerifyOptions& opt) {
  CheckList out;
  const EquivSet& X = m.X();
  out.orders["|X|"] = X.n;
  out.orders["|classes|"] = X.num_classes();
  out.orders["|U|"] = static_cast<long long>(m.U_inf().size());

  // On large instances the full root-group cache would be prohibitive;
  // compute the groups on the fly instead of caching them.
  const bool big = m.root_cache_weight() > 32'000'000;
  auto root_of = [&](int x) -> std::vector<Perm> {
    return big ? m.compute_root_group(x) : m.root_group(x);
  };

  // Construction criterion: every Hua map normalizes U.
  {
    std::vector<Perm> u_sorted = sorted(m.U_inf());
    bool ok = true;
    std::string witness;
    for (int x : m.units()) {
      Perm hx = m.hua(x);
      Perm hxinv = hx.inverse();
      for (const auto& u : m.U_inf()) {
        Perm c = chain({hxinv, u, hx});
        if (!perm_in(u_sorted, c)) {
          ok = false;
          witness = "unit x=" + pt(m, x) + ", u=alpha_" + pt(m, u.img[m.zero()]) +
                    " with u^{h_x} outside U_inf";
          break;
        }
      }
      if (!ok) break;
    }
    out.set("hua-normalizes-U", "U^{h_x} = U for every unit x", ok, witness);
    if (!ok) return out;
  }

  // (LM0)
  {
    bool ok = true;
    std::string witness;
    for (int c = 0; c < X.num_classes() && ok; ++c) {
      const auto& cls = X.classes[c];
      auto ref = induced_group(root_of(cls[0]), X);
      for (size_t i = 1; i < cls.size() && ok; ++i) {
        if (induced_group(root_of(cls[i]), X) != ref) {
          ok = false;
          witness = "points " + pt(m, cls[0]) + " ~ " + pt(m, cls[i]);
        }
      }
    }
    out.set("LM0", "x ~ y implies induced U_x = induced U_y", ok, witness);
  }

  // (LM1)
  {
    bool ok = true;
    std::string witness;
    for (int x = 0; x < X.n && ok; ++x) {
      const std::vector<Perm> ux = root_of(x);
      if (static_cast<int>(ux.size()) != X.n - static_cast<int>(X.classes[X.class_of[x]].size())) {
        ok = false;
        witness = "|U_x| wrong at x=" + pt(m, x);
        break;
      }
      int base = -1;
      for (int y = 0; y < X.n; ++y)
        if (!X.equivalent(y, x)) {
          base = y;
          break;
        }
      std::set<int> images;
      for (const auto& u : ux) {
        if (u.img[x] != x) {
          ok = false;
          witness = "U_x does not fix x=" + pt(m, x);
          break;
        }
        images.insert(u.img[base]);
        if (X.equivalent(u.img[base], x)) {
          ok = false;
          witness = "U_x maps a point into class(x) at x=" + pt(m, x);
          break;
        }
      }
      if (ok && images.size() != ux.size()) {
        ok = false;
        witness = "U_x not sharply transitive at x=" + pt(m, x);
      }
    }
    out.set("LM1", "U_x fixes x and is sharply transitive on X \\ class(x)", ok, witness);
  }

  // (LM1')
  {
    bool ok = true;
    std::string witness;
    for (int x = 0; x < X.n && ok; ++x) {
      auto ind = induced_group(root_of(x), X);
      if (static_cast<int>(ind.size()) != X.num_classes() - 1) {
        ok = false;
        witness = "induced U_x has wrong order at x=" + pt(m, x);
        break;
      }
      int cx = X.class_of[x];
      int base = cx == 0 ? 1 : 0;
      std::set<int> images;
      for (const auto& u : ind) {
        if (u.img[cx] != cx) {
          ok = false;
          witness = "induced U_x moves class(x) at x=" + pt(m, x);
          break;
        }
        images.insert(u.img[base]);
      }
      if (ok && images.size() != ind.size()) {
        ok = false;
        witness = "induced U_x not sharply transitive at x=" + pt(m, x);
      }
    }
    out.set("LM1'", "induced U_x is sharply transitive on classes(X) \\ {class(x)}", ok, witness);
  }

  // (LM2)
  {
    bool have_G = true;
    try {
      m.little_projective(opt.cap);
    } catch (const CapExceeded&) {
      have_G = false;
    }
    bool ok = true;
    std::string witness;
    auto check_conj = [&](const Perm& g) {
      Perm ginv = g.inverse();
      for (int x = 0; x < X.n; ++x) {
        const std::vector<Perm> ux = root_of(x);
        std::vector<Perm> cj;
        cj.reserve(ux.size());
        for (const auto& u : ux) cj.push_back(chain({ginv, u, g}));
        std::sort(cj.begin(), cj.end());
        if (cj != root_of(g.img[x])) {
          witness = "x=" + pt(m, x) + " with U_x^g != U_{xg}";
          return false;
        }
      }
      return true;
    };
    if (have_G) {
      const PermGroup& G = m.little_projective(opt.cap);
      out.orders["|G|"] = G.order();
      for (const auto& g : G.elems)
        if (!check_conj(g)) {
          ok = false;
          break;
        }
      out.set("LM2", "U_x^g = U_{xg} for all x in X, g in G", ok, witness);
    } else {
      out.orders["|G|"] = -1;
      std::vector<Perm> gens = m.U_inf();
      gens.insert(gens.end(), m.U_0().begin(), m.U_0().end());
      // deterministic size-aware sample budget
      long long per_sample = 4LL * X.n * static_cast<long long>(m.U_inf().size()) * X.n;
      long long budget = 4'000'000'000LL;
      int effective = static_cast<int>(
          std::min<long long>(opt.samples, std::max<long long>(4, budget / std::max(1LL, per_sample))));
      VerifyOptions sopt = opt;
      sopt.samples = effective;
      for (const auto& g : sampled_elements(gens, sopt))
        if (!check_conj(g)) {
          ok = false;
          break;
        }
      if (ok)
        out.sampled("LM2", "U_x^g = U_{xg} for all x in X, g in G",
                    "|G| exceeds cap " + std::to_string(opt.cap) + "; checked " +
                        std::to_string(effective) + " seeded random words");
      else
        out.fail("LM2", "U_x^g = U_{xg} for all x in X, g in G", witness);
    }
  }

  try {
    out.orders["|H|"] = m.hua_subgroup(opt.cap).order();
  } catch (const CapExceeded&) {
    out.orders["|H|"] = -1;
  }
  return out;
}

CheckList mu_identity_suite(const MoufangData& m, const VerifyOptions&) {
  CheckList out;
  const Perm& tau = m.seed().tau;
  const Perm tau_inv = tau.inverse();
  const EquivSet& X = m.X();

  auto all_units = [&](const std::string& name, const std::string& stmt, auto&& pred) {
    for (int x : m.units()) {
      if (!pred(x)) {
        out.fail(name, stmt, "x=" + pt(m, x));
        return;
      }
    }
    out.pass(name, stmt);
  };

  // (i) mu_x does not depend on the choice of tau
  {
    std::vector<Perm> alts{m.mu(m.units()[0])};
    if (m.units().size() > 1) alts.push_back(m.mu(m.units()[1]));
    all_units("mu-i", "mu_x is independent of the choice of tau", [&](int x) {
      for (const auto& t : alts)
        if (!(m.mu_formula(x, t) == m.mu(x))) return false;
      return true;
    });
  }
  // (ii) closed form = double coset element (also asserted inside mu()).
  all_units("mu-ii", "mu_x = alpha_{(-x)tau^-1}^tau alpha_x alpha_{-(x tau^-1)}^tau",
            [&](int x) { return m.mu_formula(x, tau) == m.mu(x); });
  // (iii)
  all_units("mu-iii", "mu_{-x} = mu_x^{-1}",
            [&](int x) { return m.mu(m.neg(x)) == m.mu(x).inverse(); });
  // (iv)
  all_units("mu-iv", "mu_{x tau} = mu_{-x}^tau", [&](int x) {
    return m.mu(tau.img[x]) == chain({tau_inv, m.mu(m.neg(x)), tau});
  });
  // (v)
  all_units("mu-v", "mu_x = alpha_x alpha_{-(x tau^-1)}^tau alpha_{-(~x)}", [&](int x) {
    int b = m.neg(tau_inv.img[x]);
    Perm rhs = chain({m.alpha(x), tau_inv, m.alpha(b), tau, m.alpha(m.neg(m.tilde(x)))});
    return rhs == m.mu(x);
  });
  // (vi)
  all_units("mu-vi", "~x = -((-x) mu_x)",
            [&](int x) { return m.tilde(x) == m.neg(m.mu(x).img[m.neg(x)]); });
  // (vii) tilde is tau-independent: recompute through two mu-maps
  {
    std::vector<Perm> alts{m.mu(m.units()[0])};
    if (m.units().size() > 1) alts.push_back(m.mu(m.units()[1]));
    all_units("mu-vii", "~x is independent of the choice of tau", [&](int x) {
      for (const auto& t : alts) {
        int til = t.img[m.neg(t.inverse().img[x])];
        if (til != m.tilde(x)) return false;
      }
      return true;
    });
  }
  // (viii)
  all_units("mu-viii", "mu_{-x} = alpha_{-(~x)} mu_{-x} alpha_x mu_{-x} alpha_{~(-x)}", [&](int x) {
    const Perm& mux = m.mu(m.neg(x));
    Perm rhs = chain({m.alpha(m.neg(m.tilde(x))), mux, m.alpha(x), mux, m.alpha(m.tilde(m.neg(x)))});
    return rhs == mux;
  });

  // sum formula: z := x tau^-1 alpha_{-(y tau^-1)} tau for units x !~ y
  {
    bool ok = true;
    std::string witness;
    for (int x : m.units()) {
      for (int y : m.units()) {
        if (X.equivalent(x, y)) continue;
        int z = tau.img[m.alpha(m.neg(tau_inv.img[y])).img[tau_inv.img[x]]];
        if (!m.is_unit(z)) {
          ok = false;
          witness = "z not a unit at x=" + pt(m, x) + ", y=" + pt(m, y);
          break;
        }
        int z2 = chain({m.alpha(m.neg(y)), m.mu(y), m.alpha(m.tilde(y))}).img[x];
        int tz = chain({m.alpha(m.neg(x)), m.mu(x), m.alpha(m.tilde(x))}).img[y];
        if (z2 != z || tz != m.tilde(z)) {
          ok = false;
          witness = "alternate expressions for z, ~z at x=" + pt(m, x) + ", y=" + pt(m, y);
          break;
        }
        int w = m.alpha(m.neg(x)).img[y];  // y alpha_{-x}, a unit since x !~ y
        if (!(chain({m.mu(y), m.mu(z), m.mu(m.neg(x))}) == m.mu(w))) {
          ok = false;
          witness = "x=" + pt(m, x) + ", y=" + pt(m, y);
          break;
        }
      }
      if (!ok) break;
    }
    out.set("mu-sum", "mu_y mu_z mu_{-x} = mu_{y alpha_{-x}} with z = x tau^-1 alpha_{-(y tau^-1)} tau",
            ok, witness);
  }

  // quasi-inverses: flags and the coset identity
  {
    bool ok = true;
    std::string witness;
    for (int x = 0; x < X.n && ok; ++x) {
      if (X.equivalent(x, m.inf())) continue;
      for (int y = 0; y < X.n && ok; ++y) {
        if (X.equivalent(y, m.inf())) continue;
        auto qi = m.quasi_inverse(x, y);
        if (!qi) continue;
        auto [l, r] = *qi;
        if (X.equivalent(l, m.inf()) || X.equivalent(r, m.inf())) {
          ok = false;
          witness = "quasi-inverse lands in class(inf) at (" + pt(m, x) + "," + pt(m, y) + ")";
          break;
        }
        if (X.equivalent(x, m.zero()) != X.equivalent(r, m.zero()) ||
            X.equivalent(y, m.zero()) != X.equivalent(l, m.zero())) {
          ok = false;
          witness = "class flags at (" + pt(m, x) + "," + pt(m, y) + ")";
          break;
        }
        if (!X.equivalent(y, m.zero())) {
          Perm lhs = chain({m.alpha(l), tau_inv, m.alpha(x), tau, m.alpha(y), tau_inv, m.alpha(r), tau});
          if (!(lhs == action::compose(m.mu(l), m.mu(y)))) {
            ok = false;
            witness = "(" + pt(m, x) + "," + pt(m, y) + ")";
            break;
          }
        }
      }
    }
    out.set("mu-qi", "alpha_{^xy} alpha_x^tau alpha_y alpha_{x^y}^tau = mu_{^xy} mu_y for y !~ 0", ok,
            witness);
  }
  return out;
}

CheckList hua_identity_suite(const MoufangData& m, const VerifyOptions&) {
  CheckList out;
  const Perm& tau = m.seed().tau;
  const Perm tau_inv = tau.inverse();
  const EquivSet& X = m.X();

  {
    bool ok = true;
    std::string witness;
    for (int x : m.units())
      if (!(m.hua(x, tau_inv) == m.hua(tau.img[x], tau).inverse())) {
        ok = false;
        witness = "x=" + pt(m, x);
        break;
      }
    out.set("hua-i", "h_{x,tau^-1} = h_{x tau,tau}^{-1}", ok, witness);
  }
  {
    bool ok = true;
    std::string witness;
    for (int x : m.units()) {
      for (int y : m.units()) {
        Perm hy = m.hua(y);
        if (!(m.mu(hy.img[x]) == chain({hy.inverse(), m.mu(x), hy}))) {
          ok = false;
          witness = "x=" + pt(m, x) + ", y=" + pt(m, y);
          break;
        }
      }
      if (!ok) break;
    }
    out.set("hua-ii", "mu_{x h_y} = mu_x^{h_y}", ok, witness);
  }
  {
    bool ok = true;
    std::string witness;
    for (int x : m.units())
      if (!(m.hua(tau.img[x]) == chain({tau_inv, m.hua(m.neg(x)), tau}))) {
        ok = false;
        witness = "x=" + pt(m, x);
        break;
      }
    out.set("hua-iii", "h_{x tau} = h_{-x}^tau", ok, witness);
  }
  {
    bool ok = true;
    std::string witness;
    for (int x : m.units()) {
      for (int y : m.units()) {
        Perm hy = m.hua(y);
        Perm lhs = m.hua(hy.img[x]);
        Perm rhs = chain({m.hua(m.neg(y)), m.hua(tau.img[x]).inverse(), hy});
        if (!(lhs == rhs)) {
          ok = false;
          witness = "x=" + pt(m, x) + ", y=" + pt(m, y);
          break;
        }
      }
      if (!ok) break;
    }
    out.set("hua-iv", "h_{x h_y} = h_{-y} h_{x tau}^{-1} h_y", ok, witness);
  }
  {
    bool ok = true;
    std::string witness;
    for (int x : m.units()) {
      Perm hx = m.hua(x);
      Perm hxinv = hx.inverse();
      for (int y = 0; y < X.n; ++y) {
        if (X.equivalent(y, m.inf())) continue;
        if (!(chain({hxinv, m.alpha(y), hx}) == m.alpha(hx.img[y]))) {
          ok = false;
          witness = "x=" + pt(m, x) + ", y=" + pt(m, y);
          break;
        }
      }
      if (!ok) break;
    }
    out.set("hua-aut", "alpha_y^{h_x} = alpha_{y h_x}", ok, witness);
  }
  {
    bool ok = true;
    std::string witness;
    for (int x : m.units())
      if (!(m.hua(x) == action::compose(tau, m.mu(x)))) {
        ok = false;
        witness = "x=" + pt(m, x);
        break;
      }
    out.set("hua-word", "h_x = tau mu_x", ok, witness);
  }
  return out;
}

CheckList hua_theorem_suite(const MoufangData& m, const VerifyOptions& opt) {
  CheckList out;
  const PermGroup& G = m.little_projective(opt.cap);
  const PermGroup& H = m.hua_subgroup(opt.cap);
  out.orders["|G|"] = G.order();
  out.orders["|H|"] = H.order();

  PermGroup st2 = action::stabilizer(G, {m.zero(), m.inf()});
  {
    std::set<Perm> a(H.elems.begin(), H.elems.end());
    std::set<Perm> b(st2.elems.begin(), st2.elems.end());
    out.set("hua-2pt", "H = G_{0,inf}", a == b, a == b ? "" : "setwise difference");
  }
  {
    PermGroup st1 = action::stabilizer(G, {m.zero()});
    std::set<Perm> prod;
    for (const auto& u : m.U_0())
      for (const auto& h : H.elems) prod.insert(action::compose(u, h));
    std::set<Perm> b(st1.elems.begin(), st1.elems.end());
    out.set("hua-stab", "G_0 = U_0 H", prod == b, prod == b ? "" : "setwise difference");
  }

  // Bruhat decomposition with tau* = mu_e, e the least unit.
  out.notes["e"] = pt(m, m.least_unit());
  {
    Perm taustar = m.mu(m.least_unit());
    auto u0circ = m.U0_circ();
    out.orders["|U0o|"] = static_cast<long long>(u0circ.size());
    std::map<Perm, int> cnt_a, cnt_b;
    for (const auto& u0 : m.U_0())
      for (const auto& h : H.elems) {
        Perm u0h = action::compose(u0, h);
        for (const auto& ui : m.U_inf()) ++cnt_a[action::compose(u0h, ui)];
        Perm u0ht = action::compose(u0h, taustar);
        for (const auto& uc : u0circ) ++cnt_b[action::compose(u0ht, uc)];
      }
    long long na = static_cast<long long>(m.U_0().size()) * H.order() * m.U_inf().size();
    long long nb = static_cast<long long>(m.U_0().size()) * H.order() * u0circ.size();
    out.orders["bruhat-count-1"] = na;
    out.orders["bruhat-count-2"] = nb;
    bool unique_a = static_cast<long long>(cnt_a.size()) == na;
    bool unique_b = static_cast<long long>(cnt_b.size()) == nb;
    bool disjoint = true;
    for (const auto& [p, c] : cnt_a)
      if (cnt_b.count(p)) {
        disjoint = false;
        break;
      }
    bool covers = static_cast<long long>(cnt_a.size() + cnt_b.size()) == G.order();
    for (const auto& [p, c] : cnt_a)
      if (!G.contains(p)) covers = false;
    for (const auto& [p, c] : cnt_b)
      if (!G.contains(p)) covers = false;
    out.set("bruhat-unique", "the products u_0 h u_inf and u_0 h tau u_0^o have unique factors",
            unique_a && unique_b, "");
    out.set("bruhat-disjoint", "the two decomposition shapes are disjoint", disjoint, "");
    out.set("bruhat-covers", "G = U_0 H U_inf  |_|  U_0 H tau U_0^o", covers,
            covers ? "" : "coverage mismatch");
    bool id_ok = cnt_a.count(Perm(m.X().n)) == 1 && cnt_a[Perm(m.X().n)] == 1;
    out.set("bruhat-identity", "the identity decomposes with u_0 = h = u_inf = id", id_ok, "");
  }

  // improperness criterion
  {
    bool all_mu_equal = true;
    const Perm& mu0 = m.mu(m.least_unit());
    for (int x : m.units())
      if (!(m.mu(x) == mu0)) {
        all_mu_equal = false;
        break;
      }
    bool crit = (H.order() == 1) == all_mu_equal;
    out.set("improper-criterion", "H is trivial iff all mu-maps coincide", crit, "");
  }
  return out;
}

bool is_special(const MoufangData& m) {
  for (int x : m.units())
    if (m.tilde(x) != m.neg(x)) return false;
  return true;
}

bool has_abelian_root_groups(const MoufangData& m) {
  const auto& u = m.U_inf();
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = i + 1; j < u.size(); ++j)
      if (!(action::compose(u[i], u[j]) == action::compose(u[j], u[i]))) return false;
  return true;
}

CheckList special_suite(const MoufangData& m, const VerifyOptions&) {
  CheckList out;
  const EquivSet& X = m.X();
  bool special = is_special(m);
  bool abelian = has_abelian_root_groups(m);
  out.set("special", "~x = -x for all units", special, "");
  out.set("abelian-U", "U_inf is abelian", abelian, "");
  out.orders["|classes|"] = X.num_classes();
  if (!(special && abelian && X.num_classes() > 3)) {
    out.notes["special-extra"] = "identity block skipped: needs special + abelian + more than 3 classes";
    return out;
  }

  {
    bool ok = true;
    std::string witness;
    for (int x : m.units())
      if (!action::compose(m.mu(x), m.mu(x)).is_identity()) {
        ok = false;
        witness = "x=" + pt(m, x);
        break;
      }
    out.set("mu-involution", "mu_x^2 = id for all units", ok, witness);
  }
  {
    bool ok = true;
    std::string witness;
    for (int x : m.units())
      if (!(m.hua(x) == m.hua(m.neg(x)))) {
        ok = false;
        witness = "x=" + pt(m, x);
        break;
      }
    out.set("hua-neg", "h_x = h_{-x}", ok, witness);
  }
  {
    bool ok = true;
    std::string witness;
    for (int x : m.units()) {
      Perm hx = m.hua(x);
      for (int y : m.units()) {
        if (!(chain({hx, m.hua(y), hx}) == m.hua(hx.img[y]))) {
          ok = false;
          witness = "x=" + pt(m, x) + ", y=" + pt(m, y);
          break;
        }
      }
      if (!ok) break;
    }
    out.set("hua-conj", "h_x h_y h_x = h_{y h_x}", ok, witness);
  }
  {
    bool ok = true;
    std::string witness;
    for (int x = 0; x < X.n && ok; ++x) {
      if (X.equivalent(x, m.inf())) continue;
      int count = 0;
      for (int y = 0; y < X.n; ++y) {
        if (X.equivalent(y, m.inf())) continue;
        if (m.times(y, 2) == x) ++count;
      }
      if (count != 1) {
        ok = false;
        witness = "x=" + pt(m, x) + " has " + std::to_string(count) + " halves";
      }
    }
    out.set("uniquely-2-divisible", "U_inf is uniquely 2-divisible", ok, witness);
  }

  // l^2-scaling for l in {2, 1/2}; applicable when x.2 is a unit for units x.
  {
    bool applicable = true;
    for (int x : m.units())
      if (!m.is_unit(m.times(x, 2))) {
        applicable = false;
        break;
      }
    if (!applicable) {
      out.notes["mu-scaling"] = "skipped: x.2 is not always a unit";
    } else {
      bool ok = true;
      std::string witness;
      for (int x : m.units()) {
        int x2 = m.times(x, 2);
        auto xh = m.div(x, 2);
        if (!xh || !m.is_unit(*xh)) {
          ok = false;
          witness = "x/2 missing at x=" + pt(m, x);
          break;
        }
        if (m.times_tilde(x, 2) != *xh) {
          ok = false;
          witness = "x.~2 != x.(1/2) at x=" + pt(m, x);
          break;
        }
        const Perm& mux = m.mu(x);
        const Perm& mux2 = m.mu(x2);
        const Perm& muxh = m.mu(*xh);
        for (int y = 0; y < X.n; ++y) {
          if (X.equivalent(y, m.zero())) continue;
          if (mux2.img[y] != m.times(mux.img[y], 4)) {
            ok = false;
            witness = "l=2 at x=" + pt(m, x) + ", y=" + pt(m, y);
            break;
          }
          if (m.times(muxh.img[y], 4) != mux.img[y]) {
            ok = false;
            witness = "l=1/2 at x=" + pt(m, x) + ", y=" + pt(m, y);
            break;
          }
        }
        if (!ok) break;
      }
      out.set("mu-scaling", "y mu_{x.l} = y mu_x . l^2 for l in {2, 1/2} and y !~ 0", ok, witness);
    }
  }
  return out;
}

HomReport check_homomorphism(const MoufangData& m1, const MoufangData& m2, const std::vector<int>& phi) {
  HomReport rep;
  const EquivSet& X = m1.X();
  const EquivSet& Y = m2.X();
  if (static_cast<int>(phi.size()) != X.n) {
    rep.witness = "phi is not total";
    return rep;
  }
  for (int x = 0; x < X.n; ++x)
    for (int y = x + 1; y < X.n; ++y)
      if (X.equivalent(x, y) != Y.equivalent(phi[x], phi[y])) {
        rep.witness = "equivalence biconditional fails at (" + pt(m1, x) + "," + pt(m1, y) + ")";
        return rep;
      }
  rep.theta.resize(X.n);
  for (int x = 0; x < X.n; ++x) {
    const auto& ux = m1.root_group(x);
    const auto& vx = m2.root_group(phi[x]);
    for (const auto& u : ux) {
      const Perm* found = nullptr;
      for (const auto& v : vx) {
        bool match = true;
        for (int z = 0; z < X.n; ++z)
          if (phi[u.img[z]] != v.img[phi[z]]) {
            match = false;
            break;
          }
        if (match) {
          found = &v;
          break;
        }
      }
      if (!found) {
        rep.theta.clear();
        rep.witness = "no image for an element of U_x at x=" + pt(m1, x);
        return rep;
      }
      rep.theta[x].push_back(*found);
    }
    // theta_x is a group homomorphism
    for (size_t i = 0; i < ux.size(); ++i)
      for (size_t j = 0; j < ux.size(); ++j) {
        Perm prod = action::compose(ux[i], ux[j]);
        auto it = std::lower_bound(ux.begin(), ux.end(), prod);
        size_t k = static_cast<size_t>(it - ux.begin());
        if (!(action::compose(rep.theta[x][i], rep.theta[x][j]) == rep.theta[x][k])) {
          rep.theta.clear();
          rep.witness = "theta_x is not a homomorphism at x=" + pt(m1, x);
          return rep;
        }
      }
  }
  rep.ok = true;
  return rep;
}

std::pair<MoufangData, std::vector<int>> quotient(const MoufangData& m) {
  const EquivSet& X = m.X();
  int nc = X.num_classes();
  std::vector<int> cls(nc);
  std::vector<std::string> labels(nc);
  for (int c = 0; c < nc; ++c) {
    cls[c] = c;
    labels[c] = "[" + X.label(X.classes[c][0]) + "]";
  }
  EquivSet Xbar = EquivSet::from_classes(cls, labels);
  std::vector<Perm> ubar;
  std::set<Perm> seen;
  for (const auto& u : m.U_inf()) {
    Perm p = action::induced(u, X);
    if (seen.insert(p).second) ubar.push_back(std::move(p));
  }
  Seed s;
  s.X = Xbar;
  s.U = std::move(ubar);
  s.tau = action::induced(m.seed().tau, X);
  s.inf = X.class_of[m.inf()];
  s.name = m.name() + "/~";
  return {MoufangData::construct(std::move(s)), X.class_of};
}

namespace {

long long perm_order(const Perm& p) {
  Perm acc = p;
  long long o = 1;
  while (!acc.is_identity()) {
    acc = action::compose(acc, p);
    ++o;
  }
  return o;
}

// Greedy generating sequence for a full element list of a small group.
std::vector<Perm> generating_sequence(const std::vector<Perm>& elems) {
  std::vector<Perm> gens;
  std::set<Perm> span;
  span.insert(Perm(elems.empty() ? 0 : elems[0].degree()));
  for (const auto& e : elems) {
    if (span.count(e)) continue;
    gens.push_back(e);
    // rebuild span
    std::vector<Perm> g = gens;
    auto grp = action::closure(g, static_cast<long long>(elems.size()) + 1);
    span = std::set<Perm>(grp.elems.begin(), grp.elems.end());
    if (span.size() == elems.size()) break;
  }
  return gens;
}

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const MoufangData& m1, const MoufangData& m2) {
  const EquivSet& X = m1.X();
  const EquivSet& Y = m2.X();
  if (X.n != Y.n || X.num_classes() != Y.num_classes()) return std::nullopt;
  {
    std::vector<size_t> a, b;
    for (const auto& c : X.classes) a.push_back(c.size());
    for (const auto& c : Y.classes) b.push_back(c.size());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  if (m1.U_inf().size() != m2.U_inf().size()) return std::nullopt;

  const auto& u1 = m1.U_inf();
  const auto& u2 = m2.U_inf();
  std::vector<Perm> gens = generating_sequence(u1);
  std::vector<std::vector<Perm>> candidates(gens.size());
  for (size_t i = 0; i < gens.size(); ++i) {
    long long o = perm_order(gens[i]);
    for (const auto& v : u2)
      if (perm_order(v) == o) candidates[i].push_back(v);
  }

  int e1 = m1.least_unit();
  Perm tau1 = m1.mu(e1);
  Perm tau1_inv = tau1.inverse();

  std::vector<size_t> pick(gens.size(), 0);
  std::vector<Perm> u1_sorted = sorted(u1);
  // positions of u1 elements in sorted order, for theta lookup
  auto idx_of = [&](const Perm& p) {
    auto it = std::lower_bound(u1_sorted.begin(), u1_sorted.end(), p);
    return static_cast<size_t>(it - u1_sorted.begin());
  };

  std::function<bool(size_t, std::vector<int>&)> rec = [&](size_t gi, std::vector<int>& out) -> bool {
    if (gi == gens.size()) {
      // BFS the Cayley graph of U1 to extend the generator images to theta.
      std::vector<Perm> theta(u1.size());
      std::vector<char> known(u1.size(), 0);
      size_t id_idx = idx_of(Perm(X.n));
      theta[id_idx] = Perm(Y.n);
      known[id_idx] = 1;
      std::vector<size_t> queue{id_idx};
      for (size_t head = 0; head < queue.size(); ++head) {
        size_t cur = queue[head];
        const Perm& cp = u1_sorted[cur];
        for (size_t i = 0; i < gens.size(); ++i) {
          Perm nxt = action::compose(cp, gens[i]);
          size_t ni = idx_of(nxt);
          Perm img = action::compose(theta[cur], candidates[i][pick[i]]);
          if (known[ni]) {
            if (!(theta[ni] == img)) return false;
          } else {
            theta[ni] = std::move(img);
            known[ni] = 1;
            queue.push_back(ni);
          }
        }
      }
      if (queue.size() != u1.size()) return false;
      {
        std::set<Perm> image(theta.begin(), theta.end());
        if (image.size() != u1.size()) return false;
      }
      auto theta_of = [&](const Perm& p) -> const Perm& { return theta[idx_of(p)]; };

      int e2 = theta_of(m1.alpha(e1)).img[m2.zero()];
      if (!m2.is_unit(e2)) return false;
      Perm tau2 = m2.mu(e2);
      std::vector<int> phi(X.n, -1);
      for (int x = 0; x < X.n; ++x) {
        if (!X.equivalent(x, m1.inf()))
          phi[x] = theta_of(m1.alpha(x)).img[m2.zero()];
      }
      for (int x = 0; x < X.n; ++x) {
        if (X.equivalent(x, m1.inf())) {
          int pre = tau1_inv.img[x];  // ~ 0
          phi[x] = tau2.img[phi[pre]];
        }
      }
      std::vector<char> hit(Y.n, 0);
      for (int v : phi) {
        if (v < 0 || hit[v]) return false;
        hit[v] = 1;
      }
      // functional equations: u phi = phi theta(u), tau1 phi = phi tau2
      for (const auto& u : u1) {
        const Perm& v = theta_of(u);
        for (int z = 0; z < X.n; ++z)
          if (phi[u.img[z]] != v.img[phi[z]]) return false;
      }
      for (int z = 0; z < X.n; ++z)
        if (phi[tau1.img[z]] != tau2.img[phi[z]]) return false;
      if (!check_homomorphism(m1, m2, phi).ok) return false;
      out = phi;
      return true;
    }
    for (size_t c = 0; c < candidates[gi].size(); ++c) {
      pick[gi] = c;
      if (rec(gi + 1, out)) return true;
    }
    return false;
  };

  std::vector<int> phi;
  if (rec(0, phi)) return phi;
  return std::nullopt;
}

}  // namespace lms::moufang
