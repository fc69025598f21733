#include "twistkit/witt.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <mutex>
#include <sstream>

namespace twistkit {

Json mpoly_to_json(const MPoly& p) {
  Json terms = Json::array();
  for (auto& [m, c] : p.terms()) {
    Json mono = Json::array();
    for (auto& [v, e] : m) mono.push_back(Json::array({var_name(v), e}));
    terms.push_back(Json::array({mono, c.get_str()}));
  }
  return terms;
}

MPoly mpoly_from_json(const Json& j) {
  MPoly p;
  for (auto& term : j) {
    Monomial m;
    for (auto& ve : term[0])
      m.emplace_back(var_id(ve[0].get<std::string>()), ve[1].get<int>());
    std::sort(m.begin(), m.end());
    p.set_term(m, Int(term[1].get<std::string>()));
  }
  return p;
}

}  // namespace twistkit

namespace twistkit::witt {

TruncSet TruncSet::p_typ(long p, long n) {
  TruncSet t;
  t.p_typical = true;
  t.p = p;
  t.n = n;
  return t;
}

TruncSet TruncSet::divisors_set(long m) {
  TruncSet t;
  t.p_typical = false;
  t.divisors = twistkit::divisors_of(m);
  return t;
}

size_t TruncSet::size() const {
  return p_typical ? static_cast<size_t>(n + 1) : divisors.size();
}

std::string TruncSet::key() const {
  if (p_typical)
    return "p" + std::to_string(p) + ":n" + std::to_string(n);
  std::ostringstream os;
  os << "div:";
  for (size_t i = 0; i < divisors.size(); ++i)
    os << (i ? "," : "") << divisors[i];
  return os.str();
}

size_t TruncSet::index_of(long d) const {
  auto it = std::find(divisors.begin(), divisors.end(), d);
  if (it == divisors.end()) throw LevelMismatch("divisor not in truncation set");
  return static_cast<size_t>(it - divisors.begin());
}

// ---------------------------------------------------------------------------
// Ghost polynomials

std::vector<Elem> ghost_of(const TruncSet& tr, const std::vector<Elem>& a) {
  if (a.size() != tr.size()) throw LevelMismatch("coordinate count");
  std::vector<Elem> w;
  w.reserve(a.size());
  if (tr.p_typical) {
    for (long k = 0; k <= tr.n; ++k) {
      Elem acc = a[0].pow(static_cast<long>(int_pow(tr.p, k).get_si()));
      Int pi(1);
      for (long i = 1; i <= k; ++i) {
        pi *= tr.p;
        acc = acc +
              pi * a[static_cast<size_t>(i)].pow(
                       static_cast<long>(int_pow(tr.p, k - i).get_si()));
      }
      w.push_back(acc);
    }
  } else {
    for (long k : tr.divisors) {
      Elem acc;
      bool first = true;
      for (long d : tr.divisors) {
        if (k % d != 0) continue;
        Elem t = Int(d) * a[tr.index_of(d)].pow(k / d);
        acc = first ? t : acc + t;
        first = false;
      }
      w.push_back(acc);
    }
  }
  return w;
}

std::vector<Elem> from_ghost(const TruncSet& tr, const RingPtr& base,
                             const std::vector<Elem>& w) {
  if (w.size() != tr.size()) throw LevelMismatch("ghost count");
  if (!base->torsion_free())
    throw NotInGhostImage("ghost inversion requires a torsion-free base");
  std::vector<Elem> a;
  a.reserve(w.size());
  if (tr.p_typical) {
    for (long k = 0; k <= tr.n; ++k) {
      Elem rest = w[static_cast<size_t>(k)];
      Int pi(1);
      for (long i = 0; i < k; ++i) {
        rest = rest -
               pi * a[static_cast<size_t>(i)].pow(
                        static_cast<long>(int_pow(tr.p, k - i).get_si()));
        pi *= tr.p;
      }
      auto q = base->div_exact_int(rest, pi);
      if (!q)
        throw NotInGhostImage(
            "ghost coordinate " + std::to_string(k) + ": " + rest.str() +
                " not divisible by " + pi.get_str(),
            k);
      a.push_back(*q);
    }
  } else {
    for (long k : tr.divisors) {
      Elem rest = w[tr.index_of(k)];
      for (long d : tr.divisors) {
        if (d == k || k % d != 0) continue;
        rest = rest - Int(d) * a[tr.index_of(d)].pow(k / d);
      }
      auto q = base->div_exact_int(rest, k);
      if (!q)
        throw NotInGhostImage("ghost coordinate " + std::to_string(k), k);
      a.push_back(*q);
    }
  }
  return a;
}

// ---------------------------------------------------------------------------
// Universal polynomials

namespace {

std::mutex g_cache_mutex;
std::map<std::string, std::vector<MPoly>>& cache() {
  static std::map<std::string, std::vector<MPoly>> c;
  return c;
}

std::vector<VarId> vars_for(const TruncSet& tr, const std::string& prefix) {
  std::vector<VarId> vs;
  if (tr.p_typical) {
    for (long i = 0; i <= tr.n; ++i)
      vs.push_back(var_id("_" + prefix + std::to_string(i)));
  } else {
    for (long d : tr.divisors)
      vs.push_back(var_id("_" + prefix + std::to_string(d)));
  }
  return vs;
}

const std::vector<MPoly>& get_universal(
    const std::string& key, const std::function<std::vector<MPoly>()>& make) {
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = cache().find(key);
    if (it != cache().end()) return it->second;
  }
  std::vector<MPoly> polys = make();
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  return cache().emplace(key, std::move(polys)).first->second;
}

Elem eval_mpoly(const MPoly& p, const std::map<VarId, Elem>& env,
                const RingPtr& R) {
  Elem acc = R->zero();
  std::map<std::pair<VarId, int>, Elem> powers;
  for (auto& [m, c] : p.terms()) {
    Elem t = R->from_int(c);
    for (auto& [v, e] : m) {
      auto kk = std::make_pair(v, e);
      auto it = powers.find(kk);
      if (it == powers.end()) it = powers.emplace(kk, env.at(v).pow(e)).first;
      t = t * it->second;
    }
    acc = acc + t;
  }
  return acc;
}

// Symbolic Witt coordinates over the cover Z[vars].
std::vector<Elem> symbolic_coords(const std::shared_ptr<const PolyRing>& SR,
                                  const std::vector<VarId>& vs) {
  std::vector<Elem> a;
  for (VarId v : vs) a.push_back(SR->var_elem(v));
  return a;
}

std::vector<MPoly> extract(const std::vector<Elem>& es) {
  std::vector<MPoly> ps;
  for (auto& e : es) ps.push_back(e.as<MPoly>());
  return ps;
}

// Universal polynomials for coordinatewise binary ops: ghost both inputs,
// combine, invert.
const std::vector<MPoly>& universal_binop(const std::string& op,
                                          const TruncSet& tr) {
  return get_universal(op + "|" + tr.key(), [&] {
    auto va = vars_for(tr, "a");
    auto vb = vars_for(tr, "b");
    std::vector<VarId> all = va;
    all.insert(all.end(), vb.begin(), vb.end());
    auto SR = PolyRing::create(all);
    auto ga = ghost_of(tr, symbolic_coords(SR, va));
    auto gb = ghost_of(tr, symbolic_coords(SR, vb));
    std::vector<Elem> gc;
    for (size_t i = 0; i < ga.size(); ++i) {
      if (op == "add")
        gc.push_back(ga[i] + gb[i]);
      else if (op == "mul")
        gc.push_back(ga[i] * gb[i]);
      else
        throw Precondition("unknown op");
    }
    return extract(from_ghost(tr, SR, gc));
  });
}

const std::vector<MPoly>& universal_neg(const TruncSet& tr) {
  return get_universal("neg|" + tr.key(), [&] {
    auto va = vars_for(tr, "a");
    auto SR = PolyRing::create(va);
    auto ga = ghost_of(tr, symbolic_coords(SR, va));
    std::vector<Elem> gc;
    for (auto& g : ga) gc.push_back(-g);
    return extract(from_ghost(tr, SR, gc));
  });
}

// Universal polynomials for a ghost-coordinate transformation taking the
// input truncation to the output truncation.
const std::vector<MPoly>& universal_map(
    const std::string& name, const TruncSet& in, const TruncSet& out,
    const std::function<std::vector<Elem>(const std::vector<Elem>&, const RingPtr&)>&
        ghost_map) {
  return get_universal(name + "|" + in.key() + "->" + out.key(), [&] {
    auto va = vars_for(in, "a");
    auto SR = PolyRing::create(va);
    auto ga = ghost_of(in, symbolic_coords(SR, va));
    auto gc = ghost_map(ga, SR);
    return extract(from_ghost(out, SR, gc));
  });
}

std::vector<Elem> specialize(const std::vector<MPoly>& polys,
                             const TruncSet& in_tr,
                             const std::vector<Elem>& a,
                             const std::vector<Elem>* b, const RingPtr& base) {
  std::map<VarId, Elem> env;
  auto va = vars_for(in_tr, "a");
  for (size_t i = 0; i < va.size(); ++i) env[va[i]] = a[i];
  if (b) {
    auto vb = vars_for(in_tr, "b");
    for (size_t i = 0; i < vb.size(); ++i) env[vb[i]] = (*b)[i];
  }
  std::vector<Elem> out;
  out.reserve(polys.size());
  for (auto& p : polys) out.push_back(eval_mpoly(p, env, base));
  return out;
}

const WittRing& wring(const Elem& x) {
  auto* w = dynamic_cast<const WittRing*>(&x.ring());
  if (!w) throw Precondition("Witt vector expected");
  return *w;
}

// Binary op: ghost route over torsion-free bases, universal polynomials
// otherwise (and always for the explicit *_via_universal entry points).
std::vector<Elem> binop_coords(const std::string& op, const TruncSet& tr,
                               const RingPtr& base, const std::vector<Elem>& a,
                               const std::vector<Elem>& b, bool force_universal) {
  if (base->torsion_free() && !force_universal) {
    auto ga = ghost_of(tr, a);
    auto gb = ghost_of(tr, b);
    std::vector<Elem> gc;
    for (size_t i = 0; i < ga.size(); ++i)
      gc.push_back(op == "add" ? ga[i] + gb[i] : ga[i] * gb[i]);
    return from_ghost(tr, base, gc);
  }
  auto& polys = universal_binop(op, tr);
  return specialize(polys, tr, a, &b, base);
}

std::vector<Elem> neg_coords(const TruncSet& tr, const RingPtr& base,
                             const std::vector<Elem>& a) {
  if (base->torsion_free()) {
    auto ga = ghost_of(tr, a);
    for (auto& g : ga) g = -g;
    return from_ghost(tr, base, ga);
  }
  auto& polys = universal_neg(tr);
  return specialize(polys, tr, a, nullptr, base);
}

std::vector<Elem> unary_map_coords(
    const std::string& name, const TruncSet& in, const TruncSet& out,
    const RingPtr& base, const std::vector<Elem>& a,
    const std::function<std::vector<Elem>(const std::vector<Elem>&,
                                          const RingPtr&)>& ghost_map) {
  if (base->torsion_free()) {
    auto ga = ghost_of(in, a);
    return from_ghost(out, base, ghost_map(ga, base));
  }
  auto& polys = universal_map(name, in, out, ghost_map);
  return specialize(polys, in, a, nullptr, base);
}

WittRingPtr shift_ring(const Elem& x, long dn) {
  auto& W = wring(x);
  auto tr = W.trunc();
  if (!tr.p_typical) throw Precondition("p-typical ring expected");
  return WittRing::create(W.base(), TruncSet::p_typ(tr.p, tr.n + dn));
}

}  // namespace

// ---------------------------------------------------------------------------
// WittRing

WittRing::WittRing(RingPtr base, TruncSet tr)
    : base_(std::move(base)), tr_(std::move(tr)) {
  key_ = "W[" + tr_.key() + "](" + base_->key() + ")";
}

WittRingPtr WittRing::create(RingPtr base, TruncSet tr) {
  return WittRingPtr(new WittRing(std::move(base), std::move(tr)));
}

Elem WittRing::make(std::vector<Elem> coords) const {
  if (coords.size() != tr_.size())
    throw LevelMismatch("Witt coordinate count for " + key());
  return Elem(shared_from_this(),
              std::make_shared<std::vector<Elem>>(std::move(coords)));
}

Elem WittRing::zero() const {
  std::vector<Elem> c(tr_.size(), base_->zero());
  return make(std::move(c));
}

Elem WittRing::one() const {
  std::vector<Elem> c(tr_.size(), base_->zero());
  c[0] = base_->one();
  return make(std::move(c));
}

Elem WittRing::from_int(const Int& k) const {
  if (k < 0) return neg(from_int(-k));
  Elem r = zero();
  if (k == 0) return r;
  long bits = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2));
  Elem uno = one();
  for (long i = bits - 1; i >= 0; --i) {
    r = add(r, r);
    if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) r = add(r, uno);
  }
  return r;
}

Elem WittRing::add(const Elem& a, const Elem& b) const {
  return make(binop_coords("add", tr_, base_, coords(a), coords(b), false));
}

Elem WittRing::mul(const Elem& a, const Elem& b) const {
  return make(binop_coords("mul", tr_, base_, coords(a), coords(b), false));
}

Elem WittRing::neg(const Elem& a) const {
  return make(neg_coords(tr_, base_, coords(a)));
}

Elem WittRing::sub(const Elem& a, const Elem& b) const {
  return add(a, neg(b));
}

bool WittRing::is_zero(const Elem& a) const {
  for (auto& c : coords(a))
    if (!c.is_zero()) return false;
  return true;
}

bool WittRing::equal(const Elem& a, const Elem& b) const {
  auto& ca = coords(a);
  auto& cb = coords(b);
  for (size_t i = 0; i < ca.size(); ++i)
    if (!(ca[i] == cb[i])) return false;
  return true;
}

std::optional<Elem> WittRing::div_exact_int(const Elem&, const Int&) const {
  return std::nullopt;
}

std::string WittRing::str(const Elem& a) const {
  std::ostringstream os;
  os << "(";
  auto& c = coords(a);
  for (size_t i = 0; i < c.size(); ++i) os << (i ? ", " : "") << c[i].str();
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Structure maps

std::vector<Elem> ghost(const Elem& w) {
  auto& W = wring(w);
  return ghost_of(W.trunc(), W.coords(w));
}

Elem from_ghost_elem(const WittRingPtr& W, const std::vector<Elem>& g) {
  return W->make(from_ghost(W->trunc(), W->base(), g));
}

Elem F(const Elem& x) {
  auto& W = wring(x);
  auto in = W.trunc();
  if (in.n < 1) throw LevelMismatch("F needs level >= 1");
  auto out = TruncSet::p_typ(in.p, in.n - 1);
  auto coords = unary_map_coords(
      "F", in, out, W.base(), W.coords(x), [&](auto& g, const RingPtr&) {
        return std::vector<Elem>(g.begin() + 1, g.end());
      });
  return shift_ring(x, -1)->make(std::move(coords));
}

Elem V(const Elem& x) {
  auto& W = wring(x);
  auto in = W.trunc();
  auto out = TruncSet::p_typ(in.p, in.n + 1);
  auto coords = unary_map_coords(
      "V", in, out, W.base(), W.coords(x), [&](auto& g, const RingPtr& SR) {
        std::vector<Elem> o;
        o.push_back(SR->zero());
        for (auto& gi : g) o.push_back(Int(in.p) * gi);
        return o;
      });
  return shift_ring(x, 1)->make(std::move(coords));
}

Elem N(const Elem& x) {
  auto& W = wring(x);
  auto in = W.trunc();
  auto out = TruncSet::p_typ(in.p, in.n + 1);
  auto coords = unary_map_coords(
      "N", in, out, W.base(), W.coords(x), [&](auto& g, const RingPtr&) {
        std::vector<Elem> o;
        o.push_back(g[0]);
        for (auto& gi : g) o.push_back(gi.pow(in.p));
        return o;
      });
  return shift_ring(x, 1)->make(std::move(coords));
}

Elem norm_selfmap(const Elem& x) {
  auto& W = wring(x);
  auto in = W.trunc();
  auto coords = unary_map_coords(
      "Nself", in, in, W.base(), W.coords(x), [&](auto& g, const RingPtr&) {
        std::vector<Elem> o;
        o.push_back(g[0]);
        for (size_t i = 0; i + 1 < g.size(); ++i) o.push_back(g[i].pow(in.p));
        return o;
      });
  auto ring = WittRing::create(W.base(), in);
  return ring->make(std::move(coords));
}

Elem truncate(const Elem& x, long lv) {
  auto& W = wring(x);
  auto in = W.trunc();
  if (!in.p_typical || lv > in.n) throw LevelMismatch("truncate");
  auto out = WittRing::create(W.base(), TruncSet::p_typ(in.p, lv));
  auto& c = W.coords(x);
  return out->make(std::vector<Elem>(c.begin(), c.begin() + lv + 1));
}

Elem F_int(const Elem& x, long mn, long n) {
  auto& W = wring(x);
  auto in = W.trunc();
  if (in.p_typical || mn % n != 0) throw LevelMismatch("F_int");
  long m = mn / n;
  auto out = TruncSet::divisors_set(n);
  auto name = "Fint:" + std::to_string(mn) + ":" + std::to_string(n);
  auto coords = unary_map_coords(
      name, in, out, W.base(), W.coords(x), [&](auto& g, const RingPtr&) {
        std::vector<Elem> o;
        for (long k : out.divisors) o.push_back(g[in.index_of(m * k)]);
        return o;
      });
  auto ring = WittRing::create(W.base(), out);
  return ring->make(std::move(coords));
}

Elem V_int(const Elem& x, long n, long mn) {
  auto& W = wring(x);
  auto in = W.trunc();
  if (in.p_typical || mn % n != 0) throw LevelMismatch("V_int");
  long m = mn / n;
  auto out = TruncSet::divisors_set(mn);
  auto name = "Vint:" + std::to_string(n) + ":" + std::to_string(mn);
  auto coords = unary_map_coords(
      name, in, out, W.base(), W.coords(x), [&](auto& g, const RingPtr& SR) {
        std::vector<Elem> o;
        for (long k : out.divisors) {
          if (k % m != 0)
            o.push_back(SR->zero());
          else
            o.push_back(Int(m) * g[in.index_of(k / m)]);
        }
        return o;
      });
  auto ring = WittRing::create(W.base(), out);
  return ring->make(std::move(coords));
}

Elem N_int(const Elem& x, long n, long mn) {
  auto& W = wring(x);
  auto in = W.trunc();
  if (in.p_typical || mn % n != 0) throw LevelMismatch("N_int");
  long m = mn / n;
  auto out = TruncSet::divisors_set(mn);
  auto name = "Nint:" + std::to_string(n) + ":" + std::to_string(mn);
  auto coords = unary_map_coords(
      name, in, out, W.base(), W.coords(x), [&](auto& g, const RingPtr&) {
        std::vector<Elem> o;
        for (long k : out.divisors) {
          long gg = gcd_long(m, k);
          o.push_back(g[in.index_of(k / gg)].pow(gg));
        }
        return o;
      });
  auto ring = WittRing::create(W.base(), out);
  return ring->make(std::move(coords));
}

// ---------------------------------------------------------------------------
// delta structure of W(R), phi = F

Elem witt_delta(const Elem& x) {
  auto& W = wring(x);
  auto in = W.trunc();
  if (in.n < 1) throw LevelMismatch("witt_delta needs level >= 1");
  auto g = ghost(x);
  std::vector<Elem> dg;
  for (long j = 0; j < in.n; ++j) {
    Elem num = g[static_cast<size_t>(j + 1)] - g[static_cast<size_t>(j)].pow(in.p);
    auto q = W.base()->div_exact_int(num, in.p);
    if (!q) throw NotDivisible("witt_delta ghost " + std::to_string(j));
    dg.push_back(*q);
  }
  auto out = WittRing::create(W.base(), TruncSet::p_typ(in.p, in.n - 1));
  return from_ghost_elem(out, dg);
}

Elem witt_theta(const Elem& x, long i) {
  auto& W = wring(x);
  auto in = W.trunc();
  if (i < 1 || in.n < i) throw LevelMismatch("witt_theta");
  auto g = ghost(x);
  Int pi = int_pow(in.p, static_cast<unsigned long>(i));
  long pim1 = static_cast<long>(int_pow(in.p, static_cast<unsigned long>(i - 1)).get_si());
  std::vector<Elem> tg;
  for (long j = 0; j + i <= in.n; ++j) {
    Elem num = g[static_cast<size_t>(j + 1)].pow(pim1) -
               g[static_cast<size_t>(j)].pow(pim1 * in.p);
    auto q = W.base()->div_exact_int(num, pi);
    if (!q) throw NotDivisible("witt_theta ghost " + std::to_string(j));
    tg.push_back(*q);
  }
  auto out = WittRing::create(W.base(), TruncSet::p_typ(in.p, in.n - i));
  return from_ghost_elem(out, tg);
}

bool norm_formula_check(const Elem& x) {
  auto& W = wring(x);
  Elem lhs = norm_selfmap(x);
  Elem rhs = W.sub(x, V(witt_delta(x)));
  return W.equal(lhs, rhs);
}

bool norm_theta_check(const Elem& f, long n) {
  auto& W = wring(f);
  if (n == 0) return true;
  if (W.trunc().n < n) throw LevelMismatch("norm_theta_check needs levels >= n");
  Elem lhs = f;
  for (long i = 0; i < n; ++i) lhs = norm_selfmap(lhs);
  Elem rhs = f;
  for (long i = 1; i <= n; ++i) {
    Elem t = witt_theta(f, i);
    for (long j = 0; j < i; ++j) t = V(t);
    rhs = W.sub(rhs, t);
  }
  return W.equal(lhs, rhs);
}

Elem delta_bullet_witt(const delta::DeltaRing& R, const Elem& f, long levels) {
  auto coords = delta::delta_bullet(R, f, levels);
  auto W = WittRing::create(R.carrier(), TruncSet::p_typ(R.p(), levels));
  return W->make(std::move(coords));
}

Elem add_via_universal(const Elem& a, const Elem& b) {
  auto& W = wring(a);
  return W.make(binop_coords("add", W.trunc(), W.base(), W.coords(a),
                             W.coords(b), true));
}

Elem mul_via_universal(const Elem& a, const Elem& b) {
  auto& W = wring(a);
  return W.make(binop_coords("mul", W.trunc(), W.base(), W.coords(a),
                             W.coords(b), true));
}

// ---------------------------------------------------------------------------
// Cache persistence

Json universal_cache_dump() {
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  Json entries = Json::array();
  for (auto& [key, polys] : cache()) {
    Json jp = Json::array();
    for (auto& p : polys) jp.push_back(mpoly_to_json(p));
    entries.push_back(Json{{"key", key}, {"polys", jp}});
  }
  return Json{{"universal_witt_polynomials", entries}};
}

void universal_cache_load(const Json& j) {
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  for (auto& entry : j.at("universal_witt_polynomials")) {
    std::vector<MPoly> polys;
    for (auto& jp : entry.at("polys")) polys.push_back(mpoly_from_json(jp));
    cache()[entry.at("key").get<std::string>()] = std::move(polys);
  }
}

void universal_cache_save_file(const std::string& path) {
  std::ofstream out(path);
  out << universal_cache_dump().dump(1) << "\n";
}

bool universal_cache_load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return false;
  Json j;
  in >> j;
  universal_cache_load(j);
  return true;
}

}  // namespace twistkit::witt
