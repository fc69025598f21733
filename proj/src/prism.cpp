#include "twistkit/prism.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace twistkit::prism {

struct Presentation::Impl {
  std::string model;
  long p = 2;
  long P = 16;  // p-adic digits
  long series_order = 64;
  VarId t = 0;
  MPoly d;
  bool pi_closed_form = false;
  Int coeff_mod = 0;  // 0 = exact quotients; p^P for Eisenstein
  std::shared_ptr<const PolyRing> ambient;

  mutable std::mutex mu;
  mutable std::map<std::pair<long, long>, MPoly> gens;
  mutable std::map<std::pair<long, long>, std::shared_ptr<const QuotRing>>
      levels;
  mutable std::map<std::pair<long, long>, std::shared_ptr<const QuotRing>>
      comps;
  mutable std::map<std::pair<long, long>, MPoly> pis;

  MPoly phi(const MPoly& f, long k) const {
    if (k == 0) return f;
    long pk = 1;
    for (long i = 0; i < k; ++i) pk *= p;
    return f.subst_pow(t, pk);
  }
};

namespace {

MPoly q_analogue(VarId v, long n, long stretch = 1) {
  // (n)_{v^stretch} = 1 + v^stretch + ... + v^{stretch*(n-1)}
  MPoly r;
  for (long i = 0; i < n; ++i)
    r += i == 0 ? MPoly::constant(1)
                : MPoly::variable(v, static_cast<int>(i * stretch));
  return r;
}

}  // namespace

Presentation::Presentation(std::shared_ptr<Impl> impl)
    : impl_(std::move(impl)) {}

static void finish_setup(std::shared_ptr<Presentation::Impl>& im,
                         long series_order) {
  im->ambient = PolyRing::create({im->t});
  MPoly g = MPoly::constant(1);
  for (long i = 0; i <= 3; ++i) g = g * im->phi(im->d, i);
  long need = g.degree(im->t);
  im->series_order = series_order > 0 ? series_order : std::max(64L, need + 1);
  if (im->series_order <= need)
    throw Precondition("series_order too small for the level-3 tower");
}

Presentation Presentation::q_de_rham(long p, long series_order,
                                     long padic_digits) {
  auto im = std::make_shared<Impl>();
  im->model = "q-de-rham";
  im->p = p;
  im->P = padic_digits;
  im->t = var_id("q");
  im->d = q_analogue(im->t, p);
  im->pi_closed_form = true;
  im->coeff_mod = 0;
  finish_setup(im, series_order);
  Presentation A(im);
  A.delta_poly(im->d);  // Frobenius-lift law on d
  A.pi(0, 1);           // prism condition p in (d, phi(d))
  return A;
}

Presentation Presentation::eisenstein(long p, long series_order,
                                      long padic_digits) {
  auto im = std::make_shared<Impl>();
  im->model = "eisenstein";
  im->p = p;
  im->P = padic_digits;
  im->t = var_id("z");
  im->d = MPoly::variable(im->t) - MPoly::constant(p);
  im->pi_closed_form = false;
  im->coeff_mod = int_pow(p, static_cast<unsigned long>(padic_digits));
  finish_setup(im, series_order);
  Presentation A(im);
  A.delta_poly(im->d);
  A.pi(0, 1);
  return A;
}

Presentation Presentation::from_config(const Json& j) {
  std::string model = j.at("model").get<std::string>();
  long p = j.at("p").get<long>();
  long so = j.value("series_order", 0L);
  long pd = j.value("padic_digits", 16L);
  if (model == "q-de-rham") return q_de_rham(p, so, pd);
  if (model == "eisenstein") return eisenstein(p, so, pd);
  throw Precondition("unknown model " + model);
}

Json Presentation::config() const {
  return Json{{"model", impl_->model},
              {"p", impl_->p},
              {"series_order", impl_->series_order},
              {"padic_digits", impl_->P}};
}

const std::string& Presentation::model() const { return impl_->model; }
long Presentation::p() const { return impl_->p; }
long Presentation::padic_digits() const { return impl_->P; }
long Presentation::series_order() const { return impl_->series_order; }
Int Presentation::pmod() const {
  return int_pow(impl_->p, static_cast<unsigned long>(impl_->P));
}
const Int& Presentation::coeff_mod() const { return impl_->coeff_mod; }
VarId Presentation::var() const { return impl_->t; }
const MPoly& Presentation::d() const { return impl_->d; }
std::shared_ptr<const PolyRing> Presentation::ambient() const {
  return impl_->ambient;
}

delta::DeltaRing Presentation::delta_ring() const {
  auto im = impl_;
  return delta::DeltaRing(im->ambient, im->p, [im](const Elem& f) {
    return im->ambient->make(im->phi(f.as<MPoly>(), 1));
  });
}

MPoly Presentation::phi(const MPoly& f, long k) const {
  return impl_->phi(f, k);
}

MPoly Presentation::delta_poly(const MPoly& f) const {
  MPoly num = impl_->phi(f, 1) - f.pow(impl_->p);
  return num.div_exact_int(impl_->p);
}

MPoly Presentation::theta_poly(const MPoly& f, long i) const {
  if (i < 1) throw Precondition("theta needs i >= 1");
  long pim1 = 1;
  for (long j = 0; j < i - 1; ++j) pim1 *= impl_->p;
  MPoly num = impl_->phi(f.pow(pim1), 1) - f.pow(pim1 * impl_->p);
  return num.div_exact_int(int_pow(impl_->p, static_cast<unsigned long>(i)));
}

MPoly Presentation::gen_ideal(long shift, long n) const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  auto key = std::make_pair(shift, n);
  auto it = impl_->gens.find(key);
  if (it != impl_->gens.end()) return it->second;
  MPoly g = MPoly::constant(1);
  for (long i = shift; i <= shift + n; ++i) g = g * impl_->phi(impl_->d, i);
  impl_->gens.emplace(key, g);
  return g;
}

std::shared_ptr<const QuotRing> Presentation::level_ring(long shift,
                                                         long n) const {
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto it = impl_->levels.find({shift, n});
    if (it != impl_->levels.end()) return it->second;
  }
  auto ring = QuotRing::create(impl_->t, gen_ideal(shift, n), impl_->coeff_mod);
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->levels.emplace(std::make_pair(shift, n), ring).first->second;
}

std::shared_ptr<const QuotRing> Presentation::comp_ring(long shift,
                                                        long i) const {
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto it = impl_->comps.find({shift, i});
    if (it != impl_->comps.end()) return it->second;
  }
  auto ring =
      QuotRing::create(impl_->t, impl_->phi(impl_->d, shift + i), impl_->coeff_mod);
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->comps.emplace(std::make_pair(shift, i), ring).first->second;
}

MPoly Presentation::pi(long shift, long j) const {
  if (j < 1) throw Precondition("pi_n defined for n >= 1");
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto it = impl_->pis.find({shift, j});
    if (it != impl_->pis.end()) return it->second;
  }
  MPoly g = gen_ideal(shift, j - 1);
  MPoly h = impl_->phi(impl_->d, shift + j);
  MPoly result;
  if (impl_->pi_closed_form) {
    result = h;  // u_n = 1
    MPoly check = (result - MPoly::constant(impl_->p)).rem_monic(g, impl_->t);
    if (!check.is_zero())
      throw Error("Internal", "closed-form pi fails its congruence");
  } else {
    // Solve u * h == p mod (g, p^P) with u in the free module basis of A/(g).
    long D = g.degree(impl_->t);
    MPoly hred = h.rem_monic(g, impl_->t);
    IntMatrix M(static_cast<size_t>(D), IntVector(static_cast<size_t>(D)));
    for (long c = 0; c < D; ++c) {
      MPoly col = (hred * MPoly::variable(impl_->t, static_cast<int>(c)))
                      .rem_monic(g, impl_->t);
      for (long r = 0; r < D; ++r)
        M[static_cast<size_t>(r)][static_cast<size_t>(c)] =
            col.coeff_of(impl_->t, r).constant_term();
    }
    IntVector b(static_cast<size_t>(D), Int(0));
    b[0] = impl_->p;
    IntVector u = linear_solve_mod(M, b, Int(impl_->p), impl_->P);
    MPoly upoly;
    for (long c = 0; c < D; ++c)
      upoly += MPoly::constant(u[static_cast<size_t>(c)]) *
               MPoly::variable(impl_->t, static_cast<int>(c));
    result = (upoly * h).reduce_coeffs(pmod());
    MPoly check = (result - MPoly::constant(impl_->p)).rem_monic(g, impl_->t);
    if (!check.reduce_coeffs(pmod()).is_zero())
      throw Error("Internal", "pi solve fails its congruence");
  }
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->pis.emplace(std::make_pair(shift, j), result).first->second;
}

bool Presentation::pi_exact() const { return impl_->pi_closed_form; }

// ---------------------------------------------------------------------------
// Transversal coordinates

std::vector<Elem> Presentation::to_transversal(const Elem& x, long n,
                                               long shift) const {
  auto lvl = level_ring(shift, n);
  const MPoly& lift = lvl->lift(x);
  std::vector<Elem> comps;
  for (long i = 0; i <= n; ++i)
    comps.push_back(comp_ring(shift, i)->make(lift));
  return comps;
}

namespace {

// Solve g*y == r mod h for y (h monic in t). Exact integer solve when
// coeff_mod == 0, p-adic solve mod p^P otherwise. nullopt: no solution.
std::optional<MPoly> solve_crt_step(const MPoly& g, const MPoly& r,
                                    const MPoly& h, VarId t, const Int& p,
                                    long P, bool padic) {
  long D = h.degree(t);
  MPoly gred = g.rem_monic(h, t);
  IntMatrix M(static_cast<size_t>(D), IntVector(static_cast<size_t>(D)));
  for (long c = 0; c < D; ++c) {
    MPoly col = (gred * MPoly::variable(t, static_cast<int>(c))).rem_monic(h, t);
    for (long row = 0; row < D; ++row)
      M[static_cast<size_t>(row)][static_cast<size_t>(c)] =
          col.coeff_of(t, row).constant_term();
  }
  MPoly rred = r.rem_monic(h, t);
  IntVector b(static_cast<size_t>(D), Int(0));
  for (long row = 0; row < D; ++row)
    b[static_cast<size_t>(row)] = rred.coeff_of(t, row).constant_term();

  IntVector y;
  if (padic) {
    try {
      y = linear_solve_mod(M, b, p, P);
    } catch (const NoSolution&) {
      return std::nullopt;
    }
  } else {
    auto sol = linear_solve_exact(M, b);
    if (!sol) return std::nullopt;
    y = *sol;
  }
  MPoly out;
  for (long c = 0; c < D; ++c)
    out += MPoly::constant(y[static_cast<size_t>(c)]) *
           MPoly::variable(t, static_cast<int>(c));
  return out;
}

}  // namespace

bool Presentation::membership_check(const std::vector<Elem>& comps,
                                    long shift) const {
  long n = static_cast<long>(comps.size()) - 1;
  VarId t = impl_->t;
  bool padic = impl_->coeff_mod != 0;
  MPoly x = comp_ring(shift, 0)->lift(comps[0]);
  for (long j = 1; j <= n; ++j) {
    MPoly g = gen_ideal(shift, j - 1);
    const MPoly& tj = comp_ring(shift, j)->lift(comps[static_cast<size_t>(j)]);
    MPoly diff = (x - tj).rem_monic(g, t);
    if (!diff.divisible_int(impl_->p)) return false;
    auto y = solve_crt_step(g, tj - x, impl_->phi(impl_->d, shift + j), t,
                            Int(impl_->p), impl_->P, padic);
    if (!y)
      throw Error("Internal",
                  "membership congruence passed but CRT step failed");
    x = x + g * (*y);
    if (padic) x = x.reduce_coeffs(impl_->coeff_mod);
  }
  return true;
}

Elem Presentation::from_transversal(const std::vector<Elem>& comps,
                                    long shift) const {
  long n = static_cast<long>(comps.size()) - 1;
  VarId t = impl_->t;
  bool padic = impl_->coeff_mod != 0;
  MPoly x = comp_ring(shift, 0)->lift(comps[0]);
  for (long j = 1; j <= n; ++j) {
    MPoly g = gen_ideal(shift, j - 1);
    const MPoly& tj = comp_ring(shift, j)->lift(comps[static_cast<size_t>(j)]);
    MPoly diff = (x - tj).rem_monic(g, t);
    if (!diff.divisible_int(impl_->p))
      throw NotInImage(
          "transversal membership fails at level " + std::to_string(j), j);
    auto y = solve_crt_step(g, tj - x, impl_->phi(impl_->d, shift + j), t,
                            Int(impl_->p), impl_->P, padic);
    if (!y)
      throw NotInImage(
          "CRT step has no solution at level " + std::to_string(j), j);
    x = x + g * (*y);
    if (padic) x = x.reduce_coeffs(impl_->coeff_mod);
  }
  return level_ring(shift, n)->make(x);
}

bool Presentation::congruent(const Elem& a, const Elem& b, long shift, long n,
                             long drop) const {
  if (pi_exact()) return a == b;
  const MPoly& la = static_cast<const QuotRing&>(a.ring()).lift(a);
  const MPoly& lb = static_cast<const QuotRing&>(b.ring()).lift(b);
  MPoly diff = la - lb;
  Int prec = int_pow(impl_->p, static_cast<unsigned long>(impl_->P - drop));
  for (long i = 0; i <= n; ++i) {
    MPoly c = diff.rem_monic(impl_->phi(impl_->d, shift + i), impl_->t);
    if (!c.reduce_coeffs(prec).is_zero()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Tambara structure

Elem Presentation::tamb_F(const Elem& x, long n) const {
  if (n < 1) throw LevelMismatch("F needs n >= 1");
  return level_ring(0, n - 1)->make(level_ring(0, n)->lift(x));
}

Elem Presentation::tamb_V(const Elem& x, long n) const {
  auto comps = to_transversal(x, n - 1);
  std::vector<Elem> out;
  for (long i = 0; i < n; ++i)
    out.push_back(comps[static_cast<size_t>(i)].scaled(impl_->p));
  out.push_back(comp_ring(0, n)->zero());
  if (!membership_check(out))
    throw Error("Internal", "V output fails membership");
  return from_transversal(out);
}

Elem Presentation::tamb_N(const Elem& x, long n) const {
  auto comps = to_transversal(x, n - 1);
  std::vector<Elem> out;
  for (long i = 0; i < n; ++i)
    out.push_back(comps[static_cast<size_t>(i)].pow(impl_->p));
  const MPoly& last =
      comp_ring(0, n - 1)->lift(comps[static_cast<size_t>(n - 1)]);
  out.push_back(comp_ring(0, n)->make(impl_->phi(last, 1)));
  if (!membership_check(out))
    throw Error("Internal", "N output fails membership");
  return from_transversal(out);
}

Elem Presentation::intrinsic_V(const Elem& x, long n) const {
  MPoly prod = pi(0, n) * level_ring(0, n - 1)->lift(x);
  return level_ring(0, n)->make(prod);
}

bool Presentation::v_agreement(const Elem& x, long n) const {
  return congruent(tamb_V(x, n), intrinsic_V(x, n), 0, n);
}

// ---------------------------------------------------------------------------
// Lifts

MPoly Presentation::lift_V(const MPoly& f, long m, long n) const {
  MPoly r = f;
  for (long j = n + 1; j <= m + n; ++j) r = r * pi(0, j);
  if (impl_->coeff_mod != 0) r = r.reduce_coeffs(impl_->coeff_mod);
  return r;
}

MPoly Presentation::lift_N(const MPoly& f, long m, long n) const {
  MPoly r = impl_->phi(f, m);
  for (long i = 1; i <= m; ++i) {
    MPoly term = impl_->phi(theta_poly(f, i), m - i);
    for (long j = m + n - i + 1; j <= m + n; ++j) term = term * pi(0, j);
    r = r - term;
  }
  if (impl_->coeff_mod != 0) r = r.reduce_coeffs(impl_->coeff_mod);
  return r;
}

bool Presentation::lift_V_check(const MPoly& f, long m, long n) const {
  Elem x = level_ring(0, n)->make(f);
  Elem expect = x;
  for (long l = n + 1; l <= m + n; ++l) expect = tamb_V(expect, l);
  Elem got = level_ring(0, m + n)->make(lift_V(f, m, n));
  return congruent(got, expect, 0, m + n);
}

bool Presentation::lift_N_check(const MPoly& f, long m, long n) const {
  Elem x = level_ring(0, n)->make(f);
  Elem expect = x;
  for (long l = n + 1; l <= m + n; ++l) expect = tamb_N(expect, l);
  Elem got = level_ring(0, m + n)->make(lift_N(f, m, n));
  return congruent(got, expect, 0, m + n);
}

bool Presentation::refraction_check(const MPoly& f) const {
  if (impl_->model != "q-de-rham")
    throw Precondition("refraction check needs the rooted q-de Rham model");
  if (!f.rem_monic(impl_->d, impl_->t).is_zero())
    throw Precondition("refraction predicate is only claimed for d | f");
  MPoly val = impl_->phi(f, 1) - impl_->phi(impl_->d, 1) * delta_poly(f) -
              f.pow(impl_->p);
  return val.rem_monic(impl_->d.pow(impl_->p), impl_->t).is_zero();
}

Elem Presentation::cohomological_defect(long n) const {
  MPoly diff = pi(0, n) - MPoly::constant(impl_->p);
  return level_ring(0, n)->make(diff);
}

// ---------------------------------------------------------------------------
// Realization

long PrismRealization::level_of(long label) const {
  long p = A_.p();
  long lvl = 0;
  long v = label;
  while (v > 1) {
    if (v % p != 0) throw LevelMismatch("prism levels are p-power labels");
    v /= p;
    ++lvl;
  }
  return lvl;
}

RingPtr PrismRealization::level_ring(long label) const {
  return A_.level_ring(0, level_of(label));
}

Elem PrismRealization::norm(long from, long to, const Elem& x) const {
  Elem r = x;
  for (long l = level_of(from); l < level_of(to); ++l) r = A_.tamb_N(r, l + 1);
  return r;
}

Elem PrismRealization::transfer(long from, long to, const Elem& x) const {
  Elem r = x;
  for (long l = level_of(from); l < level_of(to); ++l) r = A_.tamb_V(r, l + 1);
  return r;
}

Elem PrismRealization::sample(long label, Rng& rng) const {
  return sample_ring_elem(level_ring(label), rng);
}

}  // namespace twistkit::prism
