#include "lms/hermitian.hpp"

#include <algorithm>
#include <set>

namespace lms::hermitian {

using action::EquivSet;
using action::Perm;
using moufang::MoufangData;
using moufang::Seed;

Elt FormRing::lambda_canon(Elt r) const {
  Elt best = -1;
  for (Elt l : lambda) {
    Elt c = R.add(r, l);
    if (best < 0 || c < best) best = c;
  }
  return best;
}

std::vector<Elt> lambda_min(const Ring& r, Elt eps) {
  std::set<Elt> s;
  for (Elt a = 0; a < r.size(); ++a) s.insert(r.sub(a, r.mul(r.star(a), eps)));
  return {s.begin(), s.end()};
}

std::vector<Elt> lambda_max(const Ring& r, Elt eps) {
  std::vector<Elt> out;
  for (Elt a = 0; a < r.size(); ++a)
    if (r.mul(r.star(a), eps) == r.neg(a)) out.push_back(a);
  return out;
}

FormRing make_form_ring(Ring r, Elt eps, const std::string& lambda_spec) {
  if (!r.has_involution())
    throw PreconditionError("a form ring needs an involution (possibly trivial)");
  if (!r.is_unit(eps) || r.mul(eps, r.star(eps)) != r.one())
    throw PreconditionError("eps must satisfy eps eps* = 1");
  FormRing fr;
  fr.eps = eps;
  fr.lambda_spec = lambda_spec;
  if (lambda_spec == "min")
    fr.lambda = lambda_min(r, eps);
  else if (lambda_spec == "max")
    fr.lambda = lambda_max(r, eps);
  else if (lambda_spec == "zero")
    fr.lambda = {r.zero()};
  else
    throw ParseError("lambda spec must be min, max or zero");
  fr.in_lambda.assign(r.size(), 0);
  for (Elt l : fr.lambda) fr.in_lambda[l] = 1;
  fr.R = std::move(r);
  return fr;
}

CheckList form_ring_checks(const FormRing& fr) {
  CheckList out;
  const Ring& r = fr.R;
  auto lmin = lambda_min(r, fr.eps);
  auto lmax = lambda_max(r, fr.eps);
  {
    bool grp = fr.in_lambda[r.zero()] != 0;
    for (Elt a : fr.lambda)
      for (Elt b : fr.lambda)
        if (!fr.in_lambda[r.sub(a, b)]) grp = false;
    out.set("lambda-subgroup", "Lambda is an additive subgroup", grp, "");
  }
  {
    bool ok = true;
    for (Elt l : lmin)
      if (!fr.in_lambda[l]) ok = false;
    for (Elt l : fr.lambda)
      if (std::find(lmax.begin(), lmax.end(), l) == lmax.end()) ok = false;
    out.set("lambda-sandwich", "Lambda_min <= Lambda <= Lambda_max", ok, "");
  }
  {
    bool ok = true;
    std::string wit;
    for (Elt a = 0; a < r.size() && ok; ++a)
      for (Elt l : fr.lambda)
        if (!fr.in_lambda[r.mul(r.mul(r.star(a), l), a)]) {
          ok = false;
          wit = "r=" + r.elt_str(a) + ", l=" + r.elt_str(l);
          break;
        }
    out.set("lambda-stable", "r* Lambda r <= Lambda for all r", ok, wit);
  }
  {
    bool hyp = false;
    for (Elt a = 0; a < r.size(); ++a)
      if (r.is_unit(r.add(a, r.star(a)))) {
        hyp = true;
        break;
      }
    if (hyp)
      out.set("lambda-collapse", "some r has r+r* invertible, so Lambda_min = Lambda_max",
              lmin == lmax, "");
    else
      out.pass("lambda-collapse", "no r has r+r* invertible; no collapse required");
  }
  return out;
}

std::vector<Elt> HermModule::coords(int x) const {
  std::vector<Elt> c(rank_);
  for (int i = 0; i < rank_; ++i) {
    c[i] = x % fr_->R.size();
    x /= fr_->R.size();
  }
  return c;
}

HermModule::HermModule(const FormRing& fr, int rank) : fr_(&fr), rank_(rank) {
  const Ring& r = fr.R;
  n_ = 1;
  for (int i = 0; i < rank; ++i) n_ *= r.size();
  auto index_of = [&](const std::vector<Elt>& c) {
    int idx = 0;
    for (int i = rank - 1; i >= 0; --i) idx = idx * r.size() + c[i];
    return idx;
  };
  add_.assign(n_, std::vector<int>(n_));
  smul_.assign(n_, std::vector<int>(r.size()));
  neg_.resize(n_);
  h_.assign(n_, std::vector<Elt>(n_));
  f_.assign(n_, std::vector<Elt>(n_));
  qcanon_.resize(n_);
  wm_.resize(n_);
  for (int x = 0; x < n_; ++x) {
    auto cx = coords(x);
    std::vector<Elt> cn(rank_);
    for (int i = 0; i < rank_; ++i) cn[i] = r.neg(cx[i]);
    neg_[x] = index_of(cn);
    bool inm = true;
    for (int i = 0; i < rank_; ++i)
      if (r.is_unit(cx[i])) inm = false;
    wm_[x] = inm ? 1 : 0;
    for (Elt t = 0; t < r.size(); ++t) {
      std::vector<Elt> cs(rank_);
      for (int i = 0; i < rank_; ++i) cs[i] = r.mul(cx[i], t);
      smul_[x][t] = index_of(cs);
    }
    for (int y = 0; y < n_; ++y) {
      auto cy = coords(y);
      std::vector<Elt> cc(rank_);
      for (int i = 0; i < rank_; ++i) cc[i] = r.add(cx[i], cy[i]);
      add_[x][y] = index_of(cc);
      Elt hh = r.zero();
      for (int i = 0; i < rank_; ++i) hh = r.add(hh, r.mul(r.star(cx[i]), cy[i]));
      h_[x][y] = hh;
    }
  }
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y)
      f_[x][y] = fr.R.add(h_[x][y], fr.R.mul(fr.R.star(h_[y][x]), fr.eps));
  for (int x = 0; x < n_; ++x) qcanon_[x] = fr.lambda_canon(h_[x][x]);
}

std::string HermModule::label(int x) const {
  auto c = coords(x);
  std::string out = "(";
  for (int i = 0; i < rank_; ++i) out += (i ? "," : "") + fr_->R.elt_str(c[i]);
  return out + ")";
}

CheckList HermModule::quadratic_form_checks() const {
  CheckList out;
  const Ring& r = fr_->R;
  {
    bool ok = true;
    std::string wit;
    for (int x = 0; x < n_ && ok; ++x)
      for (int y = 0; y < n_; ++y) {
        if (f_[x][y] != r.add(h_[x][y], r.mul(r.star(h_[y][x]), fr_->eps)) ||
            f_[x][y] != r.mul(r.star(f_[y][x]), fr_->eps)) {
          ok = false;
          wit = "x=" + label(x) + ", y=" + label(y);
          break;
        }
      }
    out.set("f-hermitian", "f(x,y) = h(x,y) + h(y,x)* eps is eps-hermitian", ok, wit);
  }
  {
    bool ok = true;
    std::string wit;
    for (int x = 0; x < n_ && ok; ++x)
      for (int y = 0; y < n_ && ok; ++y)
        for (Elt s = 0; s < r.size() && ok; ++s)
          for (Elt t = 0; t < r.size(); ++t)
            if (h_[smul_[x][s]][smul_[y][t]] != r.mul(r.mul(r.star(s), h_[x][y]), t)) {
              ok = false;
              wit = "x=" + label(x) + ", y=" + label(y);
              break;
            }
    out.set("h-star-form", "h(xs,yt) = s* h(x,y) t", ok, wit);
  }
  {
    bool ok = true;
    std::string wit;
    for (int x = 0; x < n_ && ok; ++x)
      for (int y = 0; y < n_; ++y)
        if (fr_->lambda_canon(h_[add_[x][y]][add_[x][y]]) !=
            fr_->lambda_canon(r.add(r.add(h_[x][x], h_[y][y]), f_[x][y]))) {
          ok = false;
          wit = "x=" + label(x) + ", y=" + label(y);
          break;
        }
    out.set("LQ1", "q(x+y) = q(x) + q(y) + f(x,y) + Lambda", ok, wit);
  }
  {
    bool ok = true;
    std::string wit;
    for (int x = 0; x < n_ && ok; ++x)
      for (Elt t = 0; t < r.size(); ++t)
        if (fr_->lambda_canon(h_[smul_[x][t]][smul_[x][t]]) !=
            fr_->lambda_canon(r.mul(r.mul(r.star(t), h_[x][x]), t))) {
          ok = false;
          wit = "x=" + label(x) + ", t=" + r.elt_str(t);
          break;
        }
    out.set("LQ2", "q(xt) = t* q(x) t", ok, wit);
  }
  {
    bool ok = true;
    std::string wit;
    for (int x = 0; x < n_ && ok; ++x)
      for (Elt l : fr_->lambda) {
        Elt rep = r.add(h_[x][x], l);
        if (f_[x][x] != r.add(rep, r.mul(r.star(rep), fr_->eps))) {
          ok = false;
          wit = "x=" + label(x);
          break;
        }
      }
    out.set("LQ3", "f(x,x) = r + r* eps for every representative r of q(x)", ok, wit);
  }
  {
    // m + Lambda as a set of canonical representatives
    std::set<Elt> ml;
    for (Elt m : r.max_ideal()) ml.insert(fr_->lambda_canon(m));
    bool ok = true;
    std::string wit;
    for (int x = 0; x < n_; ++x)
      if (ml.count(qcanon_[x]) && !wm_[x]) {
        ok = false;
        wit = "isotropic vector x=" + label(x);
        break;
      }
    out.set("anisotropic", "q(x) in m + Lambda implies x in Wm", ok, wit);
  }
  return out;
}

HermSpace::HermSpace(const FormRing& fr, int rank) : fr_(&fr), w_(fr, rank) {
  const Ring& r = fr.R;
  first_idx_.assign(w_.size(), std::vector<int>(r.size(), -1));
  second_idx_.assign(w_.size(), std::vector<int>(r.size(), -1));
  for (int x = 0; x < w_.size(); ++x) {
    Elt q = w_.q_canon(x);
    for (Elt l : fr.lambda) {
      Elt rr = r.add(q, l);
      first_idx_[x][rr] = static_cast<int>(points_.size());
      points_.push_back({false, x, rr});
    }
  }
  for (int x = 0; x < w_.size(); ++x) {
    if (!w_.in_Wm(x)) continue;
    Elt q = w_.q_canon(x);
    for (Elt l : fr.lambda) {
      Elt rr = r.star(r.add(q, l));  // q(x) = r* + Lambda
      if (!r.is_unit(rr)) {
        second_idx_[x][rr] = static_cast<int>(points_.size());
        points_.push_back({true, x, rr});
      }
    }
  }
}

int HermSpace::index_of(const HPoint& p) const {
  int i = p.second ? second_idx_[p.x][p.r] : first_idx_[p.x][p.r];
  if (i < 0) throw PreconditionError("not a point of H(W,q)");
  return i;
}

int HermSpace::canon_triple(Elt a, int x, Elt c) const {
  const Ring& r = fr_->R;
  if (r.is_unit(a)) {
    Elt t = r.inv(a);
    return index_of({false, w_.smul(x, t), r.mul(c, t)});
  }
  if (!r.is_unit(c)) throw PreconditionError("triple with both outer coordinates non-invertible");
  Elt t = r.inv(c);
  return index_of({true, w_.smul(x, t), r.mul(a, t)});
}

std::string HermSpace::label(int i) const {
  const HPoint& p = points_[i];
  if (p.second) return "[" + fr_->R.elt_str(p.r) + "," + w_.label(p.x) + ",1]";
  return "[1," + w_.label(p.x) + "," + fr_->R.elt_str(p.r) + "]";
}

EquivSet HermSpace::equiv_set() const {
  // [1,x,r] ~ [1,y,s] iff x-y in Wm and r-s in m; same rule on the second
  // shape; the two shapes are never equivalent.
  const Ring& r = fr_->R;
  std::vector<int> cls(size(), -1);
  std::vector<std::string> labels(size());
  int next = 0;
  for (int i = 0; i < size(); ++i) {
    labels[i] = label(i);
    if (cls[i] >= 0) continue;
    cls[i] = next;
    for (int j = i + 1; j < size(); ++j) {
      if (cls[j] >= 0) continue;
      const HPoint& p = points_[i];
      const HPoint& o = points_[j];
      if (p.second == o.second && w_.in_Wm(w_.add(p.x, w_.neg(o.x))) && !r.is_unit(r.sub(p.r, o.r)))
        cls[j] = next;
    }
    ++next;
  }
  return EquivSet::from_classes(cls, labels);
}

Perm HermSpace::alpha(int ax, Elt ar) const {
  const Ring& r = fr_->R;
  Perm p(size());
  for (int i = 0; i < size(); ++i) {
    const HPoint& pt = points_[i];
    if (!pt.second) {
      // [1,y,s] -> [1, y+x, s+r+f(x,y)]
      p.img[i] = index_of({false, w_.add(pt.x, ax), r.add(r.add(pt.r, ar), w_.f(ax, pt.x))});
    } else {
      // [s,y,1] -> [s d^-1, (y+xs) d^-1, 1], d = 1+rs+f(x,y)
      Elt d = r.add(r.add(r.one(), r.mul(ar, pt.r)), w_.f(ax, pt.x));
      Elt dinv = r.inv(d);
      p.img[i] =
          canon_triple(r.mul(pt.r, dinv), w_.smul(w_.add(pt.x, w_.smul(ax, pt.r)), dinv), r.one());
    }
  }
  return p;
}

Perm HermSpace::zeta(Elt zr, int zx) const {
  const Ring& r = fr_->R;
  Elt epsstar = r.star(fr_->eps);
  Perm p(size());
  for (int i = 0; i < size(); ++i) {
    const HPoint& pt = points_[i];
    if (pt.second) {
      // [s,y,1] -> [s + r + eps* f(x,y), y + x, 1]
      p.img[i] = canon_triple(r.add(r.add(pt.r, zr), r.mul(epsstar, w_.f(zx, pt.x))),
                              w_.add(pt.x, zx), r.one());
    } else if (!r.is_unit(pt.r)) {
      // [1,y,s], s in m -> [1, (y+xs) d^-1, s d^-1], d = 1+rs+eps* f(x,y)
      Elt d = r.add(r.add(r.one(), r.mul(zr, pt.r)), r.mul(epsstar, w_.f(zx, pt.x)));
      Elt dinv = r.inv(d);
      p.img[i] =
          index_of({false, w_.smul(w_.add(pt.x, w_.smul(zx, pt.r)), dinv), r.mul(pt.r, dinv)});
    } else {
      // rescale [1,y,s] = [s^-1, y s^-1, 1] and use the second-shape rule
      Elt sinv = r.inv(pt.r);
      int y2 = w_.smul(pt.x, sinv);
      p.img[i] = canon_triple(r.add(r.add(sinv, zr), r.mul(epsstar, w_.f(zx, y2))),
                              w_.add(y2, zx), r.one());
    }
  }
  return p;
}

Perm HermSpace::tau() const {
  const Ring& r = fr_->R;
  Perm p(size());
  for (int i = 0; i < size(); ++i) {
    const HPoint& pt = points_[i];
    // [r,x,s] -> [s, x, r eps]
    if (pt.second)
      p.img[i] = canon_triple(r.one(), pt.x, r.mul(pt.r, fr_->eps));
    else
      p.img[i] = canon_triple(pt.r, pt.x, fr_->eps);
  }
  return p;
}

Perm HermSpace::mu_closed(int mx, Elt mr) const {
  const Ring& r = fr_->R;
  if (!r.is_unit(mr)) throw PreconditionError("mu needs an invertible third coordinate");
  Elt rinv = r.inv(mr);
  Elt rstar = r.star(mr);
  Elt rsinv = r.inv(rstar);
  Elt epsstar = r.star(fr_->eps);
  Perm p(size());
  for (int i = 0; i < size(); ++i) {
    const HPoint& pt = points_[i];
    // y - x r^-1 f(x,y)
    int core = w_.add(pt.x, w_.neg(w_.smul(mx, r.mul(rinv, w_.f(mx, pt.x)))));
    if (pt.second) {
      // [s,y,1] -> [1, (y - x r^-1 f(x,y)) r* eps, r s r* eps]
      p.img[i] = index_of({false, w_.smul(core, r.mul(rstar, fr_->eps)),
                           r.mul(r.mul(r.mul(mr, pt.r), rstar), fr_->eps)});
    } else {
      // [1,y,s] -> [eps* r^-* s r^-1, (y - x r^-1 f(x,y)) r^-1, 1]
      p.img[i] = canon_triple(r.mul(r.mul(r.mul(epsstar, rsinv), pt.r), rinv),
                              w_.smul(core, rinv), r.one());
    }
  }
  return p;
}

Perm HermSpace::mu_word(int mx, Elt mr) const {
  const Ring& r = fr_->R;
  Elt rsinv = r.inv(r.star(mr));
  Elt epsstar = r.star(fr_->eps);
  Elt er = r.mul(epsstar, rsinv);  // eps* r^-*
  Perm z1 = zeta(er, w_.neg(w_.smul(mx, er)));
  Perm a = alpha(mx, mr);
  Perm z2 = zeta(er, w_.neg(w_.smul(mx, r.inv(mr))));
  return action::compose(action::compose(z1, a), z2);
}

std::vector<std::pair<int, Elt>> HermSpace::alpha_params() const {
  std::vector<std::pair<int, Elt>> out;
  for (int i = 0; i < size(); ++i)
    if (!points_[i].second) out.emplace_back(points_[i].x, points_[i].r);
  return out;
}

std::vector<std::pair<Elt, int>> HermSpace::zeta_params() const {
  // all (r,x) with q(x) = r* + Lambda
  std::vector<std::pair<Elt, int>> out;
  const Ring& r = fr_->R;
  for (int x = 0; x < w_.size(); ++x)
    for (Elt l : fr_->lambda) out.emplace_back(r.star(r.add(w_.q_canon(x), l)), x);
  return out;
}

MoufangData build_hermitian(const FormRing& fr, int rank, CheckList* report) {
  CheckList frc = form_ring_checks(fr);
  HermSpace hs(fr, rank);
  CheckList qc = hs.module().quadratic_form_checks();
  for (const auto& c : frc.items)
    if (c.status == Status::Fail)
      throw PreconditionError(c.name + " fails: " + c.statement + " [" + c.witness + "]");
  for (const auto& c : qc.items)
    if (c.status == Status::Fail)
      throw PreconditionError(c.name + " fails: " + c.statement + " [" + c.witness + "]");
  if (report) {
    report->merge(frc);
    report->merge(qc);
    report->orders["|H|points"] = hs.size();
  }
  Seed s;
  s.X = hs.equiv_set();
  for (auto [x, rr] : hs.alpha_params()) s.U.push_back(hs.alpha(x, rr));
  s.tau = hs.tau();
  s.inf = hs.index_of({true, 0, fr.R.zero()});
  s.name = "MH(" + fr.R.name() + ",eps=" + fr.R.elt_str(fr.eps) + ",lambda=" + fr.lambda_spec +
           ",rank" + std::to_string(rank) + ")";
  return MoufangData::construct(std::move(s));
}

CheckList mu_action_check(const FormRing& fr, int rank) {
  CheckList out;
  const Ring& r = fr.R;
  HermSpace hs(fr, rank);
  MoufangData m = build_hermitian(fr, rank, nullptr);
  int zero_pt = m.zero();
  int inf_pt = m.inf();

  // units of the structure, as (x,r) parameters
  std::vector<std::pair<int, Elt>> units;
  for (int i = 0; i < hs.size(); ++i) {
    const HPoint& p = hs.point(i);
    if (!p.second && m.is_unit(i)) {
      if (!r.is_unit(p.r)) {
        out.fail("unit-third-coord", "unit points [1,x,r] have invertible r", hs.label(i));
        return out;
      }
      units.emplace_back(p.x, p.r);
    }
  }
  out.orders["|units|"] = static_cast<long long>(units.size());

  {
    bool ok = true;
    std::string wit;
    for (auto [x, rr] : units)
      if (!(hs.mu_closed(x, rr) == hs.mu_word(x, rr))) {
        ok = false;
        wit = "[1," + hs.module().label(x) + "," + r.elt_str(rr) + "]";
        break;
      }
    out.set("mu-closed-form", "the closed form of mu equals the word zeta alpha zeta", ok, wit);
  }
  {
    bool ok = true;
    std::string wit;
    for (auto [x, rr] : units) {
      Perm lhs = hs.mu_closed(x, rr).inverse();
      Perm rhs = hs.mu_closed(hs.module().neg(x), r.mul(r.star(rr), fr.eps));
      if (!(lhs == rhs)) {
        ok = false;
        wit = "[1," + hs.module().label(x) + "," + r.elt_str(rr) + "]";
        break;
      }
    }
    out.set("mu-inverse", "mu_{[1,x,r]}^{-1} = mu_{[1,-x,r* eps]}", ok, wit);
  }
  {
    bool ok = true;
    std::string wit;
    for (auto [x, rr] : hs.alpha_params()) {
      // gamma = alpha^tau = zeta_{[1,x,r] tau}
      Perm g = action::conj(hs.alpha(x, rr), hs.tau());
      Elt es = r.star(fr.eps);
      Perm z = hs.zeta(r.mul(rr, es), hs.module().smul(x, es));
      if (!(g == z)) {
        ok = false;
        wit = "[1," + hs.module().label(x) + "," + r.elt_str(rr) + "]";
        break;
      }
    }
    out.set("gamma-zeta", "gamma_{[1,x,r]} = zeta_{[1,x,r] tau}", ok, wit);
  }
  {
    bool ok = true;
    std::string wit;
    for (auto [x, rr] : units) {
      Perm mu = hs.mu_closed(x, rr);
      for (auto [y, ss] : hs.alpha_params()) {
        Perm lhs = action::conj(hs.alpha(y, ss), mu);
        // [1,y,s] mu = [eps* r^-* s r^-1, (y - x r^-1 f(x,y)) r^-1, 1]
        Elt zr = r.mul(r.mul(r.mul(r.star(fr.eps), r.inv(r.star(rr))), ss), r.inv(rr));
        int core = hs.module().add(
            y, hs.module().neg(hs.module().smul(x, r.mul(r.inv(rr), hs.module().f(x, y)))));
        int zx = hs.module().smul(core, r.inv(rr));
        Perm rhs = hs.zeta(zr, zx);
        if (!(lhs == rhs)) {
          ok = false;
          wit = "unit [1," + hs.module().label(x) + "," + r.elt_str(rr) + "], alpha [1," +
                hs.module().label(y) + "," + r.elt_str(ss) + "]";
          break;
        }
      }
      if (!ok) break;
    }
    out.set("alpha-conj", "alpha_{[1,y,s]}^{mu} = zeta_{[1,y,s] mu}", ok, wit);
  }
  {
    // mu swaps the basis and is an involution on points
    bool ok = true;
    std::string wit;
    for (auto [x, rr] : units) {
      Perm mu = hs.mu_closed(x, rr);
      if (mu.img[zero_pt] != inf_pt || mu.img[inf_pt] != zero_pt) {
        ok = false;
        wit = "basis swap at [1," + hs.module().label(x) + "," + r.elt_str(rr) + "]";
        break;
      }
      Perm muinv = hs.mu_closed(hs.module().neg(x), r.mul(r.star(rr), fr.eps));
      if (!action::compose(mu, muinv).is_identity()) {
        ok = false;
        wit = "mu mu^{-1} != id";
        break;
      }
    }
    out.set("mu-swap", "mu swaps [1,0,0] and [0,0,1]", ok, wit);
  }
  {
    // hinge of the final theorem: U^mu = U_0 setwise
    std::vector<Perm> u0;
    for (auto [zr, zx] : hs.zeta_params()) u0.push_back(hs.zeta(zr, zx));
    std::sort(u0.begin(), u0.end());
    bool ok = true;
    std::string wit;
    for (auto [x, rr] : units) {
      Perm mu = hs.mu_closed(x, rr);
      std::vector<Perm> conj;
      for (auto [y, ss] : hs.alpha_params()) conj.push_back(action::conj(hs.alpha(y, ss), mu));
      std::sort(conj.begin(), conj.end());
      if (conj != u0) {
        ok = false;
        wit = "[1," + hs.module().label(x) + "," + r.elt_str(rr) + "]";
        break;
      }
    }
    out.set("U-mu-U0", "U^{mu_{[1,x,r]}} = U_0 for all units", ok, wit);
  }
  {
    // well-definedness of ~ across the two representations
    bool ok = true;
    std::string wit;
    for (auto [x, rr] : units)
      for (auto [y, ss] : units) {
        bool first_form = hs.module().in_Wm(hs.module().add(x, hs.module().neg(y))) &&
                          !r.is_unit(r.sub(rr, ss));
        // rescaled second representatives [r^-1, x r^-1, 1], [s^-1, y s^-1, 1]
        int x2 = hs.module().smul(x, r.inv(rr));
        int y2 = hs.module().smul(y, r.inv(ss));
        bool second_form = hs.module().in_Wm(hs.module().add(x2, hs.module().neg(y2))) &&
                           !r.is_unit(r.sub(r.inv(rr), r.inv(ss)));
        if (first_form != second_form) {
          ok = false;
          wit = "[1," + hs.module().label(x) + "," + r.elt_str(rr) + "] vs [1," +
                hs.module().label(y) + "," + r.elt_str(ss) + "]";
          break;
        }
      }
    out.set("equiv-well-defined", "~ agrees on doubly representable points", ok, wit);
  }
  return out;
}

// ---- orthogonal ----

std::vector<Elt> OrthSpace::coords(int x) const {
  std::vector<Elt> c(rank_);
  for (int i = 0; i < rank_; ++i) {
    c[i] = x % r_->size();
    x /= r_->size();
  }
  return c;
}

OrthSpace::OrthSpace(const Ring& r, int rank, std::vector<Elt> diag) : r_(&r), rank_(rank) {
  n_ = 1;
  for (int i = 0; i < rank; ++i) n_ *= r.size();
  auto index_of = [&](const std::vector<Elt>& c) {
    int idx = 0;
    for (int i = rank - 1; i >= 0; --i) idx = idx * r.size() + c[i];
    return idx;
  };
  add_.assign(n_, std::vector<int>(n_));
  smul_.assign(n_, std::vector<int>(r.size()));
  neg_.resize(n_);
  q_.resize(n_);
  f_.assign(n_, std::vector<Elt>(n_));
  wm_.resize(n_);
  for (int x = 0; x < n_; ++x) {
    auto cx = coords(x);
    std::vector<Elt> cn(rank_);
    for (int i = 0; i < rank_; ++i) cn[i] = r.neg(cx[i]);
    neg_[x] = index_of(cn);
    bool inm = true;
    Elt q = r.zero();
    for (int i = 0; i < rank_; ++i) {
      if (r.is_unit(cx[i])) inm = false;
      q = r.add(q, r.mul(diag[i], r.mul(cx[i], cx[i])));
    }
    wm_[x] = inm ? 1 : 0;
    q_[x] = q;
    for (Elt t = 0; t < r.size(); ++t) {
      std::vector<Elt> cs(rank_);
      for (int i = 0; i < rank_; ++i) cs[i] = r.mul(cx[i], t);
      smul_[x][t] = index_of(cs);
    }
    for (int y = 0; y < n_; ++y) {
      auto cy = coords(y);
      std::vector<Elt> cc(rank_);
      for (int i = 0; i < rank_; ++i) cc[i] = r.add(cx[i], cy[i]);
      add_[x][y] = index_of(cc);
    }
  }
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y) f_[x][y] = r.sub(r.sub(q_[add_[x][y]], q_[x]), q_[y]);

  first_idx_.assign(n_, -1);
  second_idx_.assign(n_, -1);
  for (int x = 0; x < n_; ++x) {
    first_idx_[x] = static_cast<int>(points_.size());
    points_.push_back({false, x});
  }
  for (int x = 0; x < n_; ++x)
    if (wm_[x]) {
      second_idx_[x] = static_cast<int>(points_.size());
      points_.push_back({true, x});
    }
}

std::optional<int> OrthSpace::isotropic_witness() const {
  for (int x = 0; x < n_; ++x)
    if (!r_->is_unit(q_[x]) && !wm_[x]) return x;
  return std::nullopt;
}

std::string OrthSpace::label(int i) const {
  const OPoint& p = points_[i];
  auto c = coords(p.x);
  std::string w = "(";
  for (int j = 0; j < rank_; ++j) w += (j ? "," : "") + r_->elt_str(c[j]);
  w += ")";
  if (p.second) return "[" + r_->elt_str(q_[p.x]) + "," + w + ",1]";
  return "[1," + w + "," + r_->elt_str(q_[p.x]) + "]";
}

EquivSet OrthSpace::equiv_set() const {
  std::vector<int> cls(size(), -1);
  std::vector<std::string> labels(size());
  int next = 0;
  for (int i = 0; i < size(); ++i) {
    labels[i] = label(i);
    if (cls[i] >= 0) continue;
    cls[i] = next;
    for (int j = i + 1; j < size(); ++j) {
      if (cls[j] >= 0) continue;
      if (points_[i].second == points_[j].second && wm_[add_[points_[i].x][neg_[points_[j].x]]])
        cls[j] = next;
    }
    ++next;
  }
  return EquivSet::from_classes(cls, labels);
}

int OrthSpace::canon_triple(Elt a, int x, Elt c) const {
  if (r_->is_unit(a)) {
    Elt t = r_->inv(a);
    int x2 = smul_[x][t];
    if (q_[x2] != r_->mul(c, t)) throw PreconditionError("triple leaves the quadric");
    return first_idx_[x2];
  }
  if (!r_->is_unit(c)) throw PreconditionError("triple with both outer coordinates non-invertible");
  Elt t = r_->inv(c);
  int x2 = smul_[x][t];
  if (q_[x2] != r_->mul(a, t)) throw PreconditionError("triple leaves the quadric");
  return second_idx_[x2];
}

Perm OrthSpace::alpha(int ax) const {
  const Ring& r = *r_;
  Elt ar = q_[ax];
  Perm p(size());
  for (int i = 0; i < size(); ++i) {
    const OPoint& pt = points_[i];
    if (!pt.second) {
      p.img[i] = first_idx_[add_[pt.x][ax]];
    } else {
      Elt s = q_[pt.x];
      Elt d = r.add(r.add(r.one(), r.mul(ar, s)), f_[ax][pt.x]);
      Elt dinv = r.inv(d);
      p.img[i] = canon_triple(r.mul(s, dinv), smul_[add_[pt.x][smul_[ax][s]]][dinv], r.one());
    }
  }
  return p;
}

Perm OrthSpace::zeta(int zx) const {
  const Ring& r = *r_;
  Elt zr = q_[zx];
  Perm p(size());
  for (int i = 0; i < size(); ++i) {
    const OPoint& pt = points_[i];
    if (pt.second) {
      Elt s = q_[pt.x];
      p.img[i] = canon_triple(r.add(r.add(s, zr), f_[zx][pt.x]), add_[pt.x][zx], r.one());
    } else if (!r.is_unit(q_[pt.x])) {
      Elt s = q_[pt.x];
      Elt d = r.add(r.add(r.one(), r.mul(zr, s)), f_[zx][pt.x]);
      Elt dinv = r.inv(d);
      p.img[i] = first_idx_[smul_[add_[pt.x][smul_[zx][s]]][dinv]];
    } else {
      Elt sinv = r.inv(q_[pt.x]);
      int y2 = smul_[pt.x][sinv];
      p.img[i] = canon_triple(r.add(r.add(sinv, zr), f_[zx][y2]), add_[y2][zx], r.one());
    }
  }
  return p;
}

Perm OrthSpace::tau() const {
  const Ring& r = *r_;
  Perm p(size());
  for (int i = 0; i < size(); ++i) {
    const OPoint& pt = points_[i];
    if (pt.second)
      p.img[i] = canon_triple(r.one(), pt.x, q_[pt.x]);
    else
      p.img[i] = canon_triple(q_[pt.x], pt.x, r.one());
  }
  return p;
}

Perm OrthSpace::mu_closed(int mx) const {
  const Ring& r = *r_;
  if (wm_[mx]) throw PreconditionError("mu needs x outside Wm");
  Elt rr = q_[mx];
  Elt rinv = r.inv(rr);
  Perm p(size());
  for (int i = 0; i < size(); ++i) {
    const OPoint& pt = points_[i];
    int core = add_[pt.x][neg_[smul_[mx][r.mul(rinv, f_[mx][pt.x])]]];
    if (!pt.second) {
      // [1,y,s] -> [s/r^2, (y - x f(x,y)/r)(1/r), 1]
      Elt s = q_[pt.x];
      p.img[i] = canon_triple(r.mul(s, r.mul(rinv, rinv)), smul_[core][rinv], r.one());
    } else {
      // [s,y,1] -> [1, (y - x f(x,y)/r) r, r^2 s]
      Elt s = q_[pt.x];
      p.img[i] = canon_triple(r.one(), smul_[core][rr], r.mul(r.mul(rr, rr), s));
    }
  }
  return p;
}

Perm OrthSpace::mu_word(int mx) const {
  const Ring& r = *r_;
  Elt rinv = r.inv(q_[mx]);
  int zx = neg_[smul_[mx][rinv]];
  Perm z = zeta(zx);
  return action::compose(action::compose(z, alpha(mx)), z);
}

MoufangData build_orthogonal(const Ring& r, int rank, const std::vector<Elt>& diag,
                             CheckList* report) {
  if (static_cast<int>(diag.size()) != rank)
    throw ParseError("orthogonal form needs one coefficient per slot");
  OrthSpace os(r, rank, diag);
  if (auto w = os.isotropic_witness())
    throw PreconditionError("isotropic quadratic form; witness vector at " + os.label(*w) +
                            " has q(x) non-invertible outside Wm");
  if (report) {
    report->pass("anisotropic", "q(x) in m implies x in Wm");
    report->orders["|Q|points"] = os.size();
  }
  Seed s;
  s.X = os.equiv_set();
  for (int x = 0; x < os.wsize(); ++x) s.U.push_back(os.alpha(x));
  s.tau = os.tau();
  s.inf = 0;  // reassigned below: inf = [0,0,1], the second-shape point at x = 0
  for (int i = 0; i < os.size(); ++i)
    if (os.point(i).second && os.point(i).x == 0) s.inf = i;
  s.name = "MO(" + r.name() + ",rank" + std::to_string(rank) + ")";
  return MoufangData::construct(std::move(s));
}

}  // namespace lms::hermitian
