#include "lms/localring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lms::ring {

namespace {

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// n = p^k with p prime, or throws.
std::pair<long long, int> prime_power(long long n) {
  if (n < 2) throw ParseError("ring size must be >= 2");
  long long p = 0;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      p = d;
      break;
    }
  if (p == 0) p = n;
  int k = 0;
  long long m = n;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  if (m != 1) throw ParseError("zmod modulus " + std::to_string(n) + " is not a prime power");
  return {p, k};
}

std::vector<long long> poly_mod(std::vector<long long> a, const std::vector<long long>& g, long long p) {
  // g monic of degree dg; reduces a in place mod (g, p).
  int dg = static_cast<int>(g.size()) - 1;
  for (int i = static_cast<int>(a.size()) - 1; i >= dg; --i) {
    long long c = a[i] % p;
    if (c == 0) continue;
    for (int j = 0; j <= dg; ++j) {
      a[i - dg + j] = ((a[i - dg + j] - c * g[j]) % p + p) % p;
    }
  }
  a.resize(dg);
  for (auto& c : a) c = ((c % p) + p) % p;
  return a;
}

std::vector<long long> poly_mul_mod(const std::vector<long long>& a, const std::vector<long long>& b,
                                    const std::vector<long long>& g, long long p) {
  std::vector<long long> c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  return poly_mod(std::move(c), g, p);
}

bool poly_is_zero(const std::vector<long long>& a) {
  return std::all_of(a.begin(), a.end(), [](long long c) { return c == 0; });
}

// Monic polynomial irreducibility over F_p by trial division.
bool poly_irreducible(const std::vector<long long>& f, long long p) {
  int d = static_cast<int>(f.size()) - 1;
  if (d < 1) return false;
  if (d == 1) return true;
  // enumerate monic divisors of degree e <= d/2
  for (int e = 1; 2 * e <= d; ++e) {
    long long count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (long long idx = 0; idx < count; ++idx) {
      std::vector<long long> div(e + 1, 0);
      long long t = idx;
      for (int i = 0; i < e; ++i) {
        div[i] = t % p;
        t /= p;
      }
      div[e] = 1;
      if (poly_is_zero(poly_mod(f, div, p))) return false;
    }
  }
  return true;
}

std::string poly_label(const std::vector<long long>& c) {
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    if (c[i] == 0) continue;
    if (!first) os << "+";
    if (i == 0 || c[i] != 1) os << c[i];
    if (i >= 1) {
      os << "t";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

std::vector<long long> parse_poly(const std::string& s, long long p) {
  // Accepts sums of terms: <int>, <int>t, t, t^k, <int>t^k, with optional '*'.
  std::vector<long long> coef;
  auto bump = [&](int deg, long long c) {
    if (static_cast<int>(coef.size()) <= deg) coef.resize(deg + 1, 0);
    coef[deg] = (((coef[deg] + c) % p) + p) % p;
  };
  size_t i = 0;
  int sign = 1;
  if (s.empty()) throw ParseError("empty polynomial");
  while (i < s.size()) {
    if (s[i] == '+') {
      sign = 1;
      ++i;
      continue;
    }
    if (s[i] == '-') {
      sign = -1;
      ++i;
      continue;
    }
    long long c = 1;
    bool saw_digit = false;
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      c = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        c = c * 10 + (s[i] - '0');
        ++i;
      }
      saw_digit = true;
    }
    if (i < s.size() && s[i] == '*') ++i;
    int deg = 0;
    if (i < s.size() && s[i] == 't') {
      ++i;
      deg = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
          throw ParseError("bad exponent in polynomial: " + s);
        deg = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
          deg = deg * 10 + (s[i] - '0');
          ++i;
        }
      }
    } else if (!saw_digit) {
      throw ParseError("bad polynomial term in: " + s);
    }
    bump(deg, sign * c);
    sign = 1;
  }
  return coef;
}

}  // namespace

Ring Ring::zmod(long long p, int k) {
  if (!is_prime(p)) throw ParseError("zmod requires a prime base, got " + std::to_string(p));
  if (k < 1) throw ParseError("zmod exponent must be >= 1");
  long long n = 1;
  for (int i = 0; i < k; ++i) {
    n *= p;
    if (n > (1 << 14)) throw CapExceeded("ring size exceeds the enumeration cap 2^14");
  }
  Ring r;
  r.kind_ = Kind::Zmod;
  r.n_ = static_cast<int>(n);
  r.p_ = p;
  r.zero_ = 0;
  r.one_ = n > 1 ? 1 : 0;
  r.name_ = "zmod:" + std::to_string(n);
  r.labels_.resize(r.n_);
  for (int i = 0; i < r.n_; ++i) r.labels_[i] = std::to_string(i);
  r.finish_tables();
  r.build_residue();
  return r;
}

Ring Ring::poly_quotient(long long p, std::vector<long long> f, int m) {
  if (!is_prime(p)) throw ParseError("gfpoly requires a prime base, got " + std::to_string(p));
  if (m < 1) throw ParseError("gfpoly power must be >= 1");
  for (auto& c : f) c = ((c % p) + p) % p;
  while (f.size() > 1 && f.back() == 0) f.pop_back();
  if (f.size() < 2) throw ParseError("gfpoly modulus polynomial must have degree >= 1");
  if (f.back() != 1) throw ParseError("gfpoly modulus polynomial must be monic");
  if (!poly_irreducible(f, p)) throw ParseError("gfpoly modulus polynomial is not irreducible: " + poly_label(f));
  int d = static_cast<int>(f.size()) - 1;
  long long n = 1;
  for (int i = 0; i < d * m; ++i) {
    n *= p;
    if (n > (1 << 14)) throw CapExceeded("ring size exceeds the enumeration cap 2^14");
  }
  Ring r;
  r.kind_ = Kind::Poly;
  r.n_ = static_cast<int>(n);
  r.p_ = p;
  r.deg_ = d;
  r.mpow_ = m;
  r.fcoef_ = f;
  r.zero_ = 0;
  r.one_ = 1;
  r.gmod_ = {1};
  for (int i = 0; i < m; ++i) {
    std::vector<long long> nxt(r.gmod_.size() + f.size() - 1, 0);
    for (size_t x = 0; x < r.gmod_.size(); ++x)
      for (size_t y = 0; y < f.size(); ++y) nxt[x + y] = (nxt[x + y] + r.gmod_[x] * f[y]) % p;
    r.gmod_ = std::move(nxt);
  }
  r.name_ = "gfpoly:" + std::to_string(p) + ":" + poly_label(f) + ":" + std::to_string(m);
  r.labels_.resize(r.n_);
  for (int i = 0; i < r.n_; ++i) r.labels_[i] = poly_label(r.poly_coeffs(i));
  r.finish_tables();
  r.build_residue();
  return r;
}

Ring Ring::from_tables(std::vector<std::vector<Elt>> add, std::vector<std::vector<Elt>> mul,
                       std::vector<std::string> labels, Elt zero, Elt one, std::string name) {
  Ring r;
  r.kind_ = Kind::Table;
  r.n_ = static_cast<int>(add.size());
  r.add_ = std::move(add);
  r.mul_ = std::move(mul);
  r.labels_ = std::move(labels);
  r.zero_ = zero;
  r.one_ = one;
  r.name_ = std::move(name);
  r.finish_tables();
  // residue characteristic = additive order of 1 reduced to a prime
  int ord = 1;
  Elt acc = r.one_;
  while (acc != r.zero_) {
    acc = r.add(acc, r.one_);
    ++ord;
  }
  for (long long q = 2; q <= ord; ++q)
    if (ord % q == 0) {
      r.p_ = q;
      break;
    }
  r.build_residue();
  return r;
}

std::vector<long long> Ring::poly_coeffs(Elt a) const {
  std::vector<long long> c(deg_ * mpow_, 0);
  long long t = a;
  for (auto& ci : c) {
    ci = t % p_;
    t /= p_;
  }
  return c;
}

Elt Ring::poly_index(const std::vector<long long>& c) const {
  long long idx = 0, base = 1;
  for (int i = 0; i < deg_ * mpow_; ++i) {
    long long ci = i < static_cast<int>(c.size()) ? ((c[i] % p_) + p_) % p_ : 0;
    idx += ci * base;
    base *= p_;
  }
  return static_cast<Elt>(idx);
}

Elt Ring::add(Elt a, Elt b) const {
  switch (kind_) {
    case Kind::Zmod:
      return static_cast<Elt>((static_cast<long long>(a) + b) % n_);
    case Kind::Poly: {
      Elt out = 0;
      long long base = 1, ta = a, tb = b;
      for (int i = 0; i < deg_ * mpow_; ++i) {
        out += static_cast<Elt>(((ta % p_) + (tb % p_)) % p_ * base);
        ta /= p_;
        tb /= p_;
        base *= p_;
      }
      return out;
    }
    case Kind::Table:
      return add_[a][b];
  }
  return 0;
}

Elt Ring::mul(Elt a, Elt b) const {
  switch (kind_) {
    case Kind::Zmod:
      return static_cast<Elt>((static_cast<long long>(a) * b) % n_);
    case Kind::Poly: {
      auto c = poly_mul_mod(poly_coeffs(a), poly_coeffs(b), gmod_, p_);
      return poly_index(c);
    }
    case Kind::Table:
      return mul_[a][b];
  }
  return 0;
}

void Ring::finish_tables() {
  neg_.assign(n_, 0);
  unit_.assign(n_, 0);
  inv_.assign(n_, -1);
  for (Elt a = 0; a < n_; ++a) {
    for (Elt b = 0; b < n_; ++b) {
      if (add(a, b) == zero_) {
        neg_[a] = b;
        break;
      }
    }
  }
  for (Elt a = 0; a < n_; ++a) {
    for (Elt b = 0; b < n_; ++b) {
      if (mul(a, b) == one_ && mul(b, a) == one_) {
        unit_[a] = 1;
        inv_[a] = b;
        break;
      }
    }
  }
  units_.clear();
  max_ideal_.clear();
  for (Elt a = 0; a < n_; ++a) (unit_[a] ? units_ : max_ideal_).push_back(a);
  // local ring detection: the non-units must be closed under addition
  for (Elt a : max_ideal_)
    for (Elt b : max_ideal_)
      if (unit_[add(a, b)])
        throw PreconditionError("not a local ring: non-units are not closed under addition (" + labels_[a] +
                                " + " + labels_[b] + ")");
}

void Ring::build_residue() {
  residue_of_.assign(n_, 0);
  if (max_ideal_.size() == 1) {  // already a field
    residue_.reset();
    for (Elt a = 0; a < n_; ++a) residue_of_[a] = a;
    return;
  }
  switch (kind_) {
    case Kind::Zmod: {
      residue_ = std::make_shared<Ring>(zmod(p_, 1));
      for (Elt a = 0; a < n_; ++a) residue_of_[a] = static_cast<Elt>(a % p_);
      break;
    }
    case Kind::Poly: {
      residue_ = std::make_shared<Ring>(poly_quotient(p_, fcoef_, 1));
      for (Elt a = 0; a < n_; ++a) {
        auto c = poly_mod(poly_coeffs(a), fcoef_, p_);
        long long idx = 0, base = 1;
        for (int i = 0; i < deg_; ++i) {
          idx += c[i] * base;
          base *= p_;
        }
        residue_of_[a] = static_cast<Elt>(idx);
      }
      break;
    }
    case Kind::Table: {
      // residue classes a ~ b iff a - b in m; canonical representative = least index
      std::vector<Elt> rep(n_, -1);
      std::vector<Elt> cls;
      for (Elt a = 0; a < n_; ++a) {
        if (rep[a] != -1) continue;
        cls.push_back(a);
        for (Elt b = a; b < n_; ++b)
          if (rep[b] == -1 && !unit_[sub(a, b)] ) rep[b] = a;
        rep[a] = a;
      }
      std::vector<Elt> pos(n_, -1);
      for (size_t i = 0; i < cls.size(); ++i) pos[cls[i]] = static_cast<Elt>(i);
      std::vector<std::vector<Elt>> radd(cls.size(), std::vector<Elt>(cls.size()));
      std::vector<std::vector<Elt>> rmul(cls.size(), std::vector<Elt>(cls.size()));
      for (size_t i = 0; i < cls.size(); ++i)
        for (size_t j = 0; j < cls.size(); ++j) {
          radd[i][j] = pos[rep[add(cls[i], cls[j])]];
          rmul[i][j] = pos[rep[mul(cls[i], cls[j])]];
        }
      std::vector<std::string> rlabels(cls.size());
      for (size_t i = 0; i < cls.size(); ++i) rlabels[i] = labels_[cls[i]];
      residue_ = std::make_shared<Ring>(
          from_tables(radd, rmul, rlabels, pos[rep[zero_]], pos[rep[one_]], name_ + "/m"));
      for (Elt a = 0; a < n_; ++a) residue_of_[a] = pos[rep[a]];
      break;
    }
  }
}

const Ring& Ring::residue_field() const { return residue_ ? *residue_ : *this; }

Elt Ring::residue(Elt a) const { return residue_of_[a]; }

Elt Ring::inv(Elt a) const {
  if (!unit_[a]) throw PreconditionError("inv of a non-unit: " + labels_[a]);
  return inv_[a];
}

Elt Ring::pow(Elt a, long long e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  Elt acc = one_;
  while (e > 0) {
    if (e & 1) acc = mul(acc, a);
    a = mul(a, a);
    e >>= 1;
  }
  return acc;
}

Elt Ring::of_int(long long v) const {
  // additive image of |v| computed by doubling
  Elt acc = zero_;
  Elt base = one_;
  long long e = v >= 0 ? v : -v;
  while (e > 0) {
    if (e & 1) acc = add(acc, base);
    base = add(base, base);
    e >>= 1;
  }
  return v >= 0 ? acc : neg(acc);
}

Elt Ring::star(Elt a) const {
  if (star_.empty()) return a;  // trivial involution by default
  return star_[a];
}

void Ring::install_involution(const std::string& spec) {
  if (spec == "id" || spec == "trivial") {
    star_.resize(n_);
    for (Elt a = 0; a < n_; ++a) star_[a] = a;
    return;
  }
  if (spec != "frob") throw ParseError("unknown involution spec: " + spec);
  if (kind_ != Kind::Poly) throw ParseError("frob involution requires a polynomial quotient ring");
  // The involution is the order-2 ring automorphism determined by the image
  // of the generator t. Candidates c must satisfy f(c)^m = 0; we take the
  // least c (in canonical order) whose induced map is a non-identity
  // involution preserving m.
  Elt gen = poly_index({0, 1});
  for (Elt c = 0; c < n_; ++c) {
    Elt fc = zero_;
    Elt cpow = one_;
    for (size_t i = 0; i < fcoef_.size(); ++i) {
      fc = add(fc, mul(of_int(fcoef_[i]), cpow));
      cpow = mul(cpow, c);
    }
    if (pow(fc, mpow_) != zero_ && mpow_ > 1) continue;
    if (mpow_ == 1 && fc != zero_) continue;
    // build sigma from coefficients
    std::vector<Elt> sigma(n_);
    bool ok = true;
    for (Elt a = 0; a < n_ && ok; ++a) {
      auto coef = poly_coeffs(a);
      Elt img = zero_;
      Elt cpw = one_;
      for (int i = 0; i < deg_ * mpow_; ++i) {
        img = add(img, mul(of_int(coef[i]), cpw));
        cpw = mul(cpw, c);
      }
      sigma[a] = img;
    }
    if (sigma[gen] == gen) continue;  // identity is not the Frobenius here
    // bijective?
    std::vector<char> seen(n_, 0);
    for (Elt a = 0; a < n_ && ok; ++a) {
      if (seen[sigma[a]]) ok = false;
      seen[sigma[a]] = 1;
    }
    if (!ok) continue;
    // order 2, multiplicative, additive, unital, m-preserving
    for (Elt a = 0; a < n_ && ok; ++a) {
      if (sigma[sigma[a]] != a) ok = false;
      if (unit_[a] != unit_[sigma[a]]) ok = false;
    }
    for (Elt a = 0; a < n_ && ok; ++a)
      for (Elt b = 0; b < n_ && ok; ++b) {
        if (sigma[add(a, b)] != add(sigma[a], sigma[b])) ok = false;
        if (sigma[mul(a, b)] != mul(sigma[b], sigma[a])) ok = false;
      }
    if (!ok) continue;
    star_ = std::move(sigma);
    return;
  }
  throw ParseError("ring " + name_ + " admits no frob involution");
}

void Ring::install_eps(const std::string& spec) {
  Elt e = elt_from_str(spec);
  if (star_.empty()) install_involution("id");
  if (!is_unit(e)) throw ParseError("eps must be a unit");
  if (mul(e, star(e)) != one_) throw ParseError("eps must satisfy eps*eps^ast = 1");
  eps_ = e;
}

Elt Ring::elt_from_str(const std::string& s) const {
  switch (kind_) {
    case Kind::Zmod: {
      try {
        long long v = std::stoll(s);
        return of_int(v);
      } catch (const std::exception&) {
        throw ParseError("bad element of " + name_ + ": " + s);
      }
    }
    case Kind::Poly: {
      auto c = parse_poly(s, p_);
      if (static_cast<int>(c.size()) > deg_ * mpow_) c = poly_mod(std::move(c), gmod_, p_);
      return poly_index(c);
    }
    case Kind::Table: {
      for (Elt a = 0; a < n_; ++a)
        if (labels_[a] == s) return a;
      throw ParseError("bad element of " + name_ + ": " + s);
    }
  }
  throw ParseError("bad element: " + s);
}

Ring Ring::parse(const std::string& descriptor) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : descriptor) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else
      cur.push_back(ch);
  }
  parts.push_back(cur);
  if (parts.empty()) throw ParseError("empty ring descriptor");

  std::string inv_spec, eps_spec;
  // strip inv=/eps= suffixes and a bare frob/id segment
  std::vector<std::string> core;
  for (const auto& p : parts) {
    if (p.rfind("inv=", 0) == 0)
      inv_spec = p.substr(4);
    else if (p.rfind("eps=", 0) == 0)
      eps_spec = p.substr(4);
    else if (p == "frob" || p == "id")
      inv_spec = p;
    else
      core.push_back(p);
  }
  if (core.empty()) throw ParseError("empty ring descriptor");

  Ring r;
  if (core[0] == "zmod") {
    if (core.size() != 2) throw ParseError("zmod descriptor needs a modulus");
    auto caret = core[1].find('^');
    long long p;
    int k;
    try {
      if (caret != std::string::npos) {
        p = std::stoll(core[1].substr(0, caret));
        k = std::stoi(core[1].substr(caret + 1));
      } else {
        auto pk = prime_power(std::stoll(core[1]));
        p = pk.first;
        k = pk.second;
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("bad zmod modulus: " + core[1]);
    }
    r = zmod(p, k);
  } else if (core[0] == "gfpoly") {
    if (core.size() != 4) throw ParseError("gfpoly descriptor is gfpoly:<p>:<f(t)>:<m>");
    long long p;
    int m;
    try {
      p = std::stoll(core[1]);
      m = std::stoi(core[3]);
    } catch (const std::exception&) {
      throw ParseError("bad gfpoly descriptor: " + descriptor);
    }
    r = poly_quotient(p, parse_poly(core[2], p), m);
  } else if (core[0] == "gf") {
    if (core.size() != 2) throw ParseError("gf descriptor is gf:<q>");
    long long q;
    try {
      q = std::stoll(core[1]);
    } catch (const std::exception&) {
      throw ParseError("bad gf size: " + core[1]);
    }
    auto [p, d] = prime_power(q);
    if (d == 1) {
      r = zmod(p, 1);
    } else {
      // least monic irreducible of degree d over F_p, by coefficient order
      long long count = 1;
      for (int i = 0; i < d; ++i) count *= p;
      std::vector<long long> f;
      for (long long idx = 0; idx < count; ++idx) {
        std::vector<long long> cand(d + 1, 0);
        long long t = idx;
        for (int i = 0; i < d; ++i) {
          cand[i] = t % p;
          t /= p;
        }
        cand[d] = 1;
        if (poly_irreducible(cand, p)) {
          f = cand;
          break;
        }
      }
      r = poly_quotient(p, f, 1);
    }
  } else {
    throw ParseError("unknown ring kind: " + core[0]);
  }
  if (!inv_spec.empty()) r.install_involution(inv_spec);
  if (!eps_spec.empty()) r.install_eps(eps_spec);
  return r;
}

void Ring::check_invariants() const {
  for (Elt u : units_) {
    if (mul(u, inv_[u]) != one_ || mul(inv_[u], u) != one_)
      throw PreconditionError("unit without two-sided inverse: " + labels_[u]);
  }
  for (Elt a : max_ideal_) {
    for (Elt b : max_ideal_)
      if (unit_[add(a, b)]) throw PreconditionError("maximal ideal not closed under +");
    for (Elt rr = 0; rr < n_; ++rr)
      if (unit_[mul(rr, a)] || unit_[mul(a, rr)]) throw PreconditionError("maximal ideal not an ideal");
  }
  const Ring& rf = residue_field();
  std::vector<char> hit(rf.size(), 0);
  for (Elt a = 0; a < n_; ++a) {
    hit[residue(a)] = 1;
    if ((residue(a) == rf.zero()) != !unit_[a] && max_ideal_.size() > 1)
      throw PreconditionError("residue kernel differs from the maximal ideal");
    for (Elt b = 0; b < n_; ++b) {
      if (residue(add(a, b)) != rf.add(residue(a), residue(b)))
        throw PreconditionError("residue map is not additive");
      if (residue(mul(a, b)) != rf.mul(residue(a), residue(b)))
        throw PreconditionError("residue map is not multiplicative");
    }
  }
  if (!std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; }))
    throw PreconditionError("residue map is not surjective");
  if (has_involution()) {
    if (star(one_) != one_) throw PreconditionError("involution does not fix 1");
    for (Elt a = 0; a < n_; ++a) {
      if (star(star(a)) != a) throw PreconditionError("involution is not of order <= 2");
      if (is_unit(a) != is_unit(star(a))) throw PreconditionError("involution does not preserve m");
      for (Elt b = 0; b < n_; ++b) {
        if (star(add(a, b)) != add(star(a), star(b))) throw PreconditionError("involution is not additive");
        if (star(mul(a, b)) != mul(star(b), star(a)))
          throw PreconditionError("involution is not anti-multiplicative");
      }
    }
  }
  if (eps_) {
    if (mul(*eps_, star(*eps_)) != one_) throw PreconditionError("eps*eps^ast != 1");
  }
}

}  // namespace lms::ring
