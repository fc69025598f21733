#pragma once

#include <memory>
#include <mutex>

#include "twistkit/delta.hpp"
#include "twistkit/jsonio.hpp"
#include "twistkit/linalg.hpp"
#include "twistkit/ring.hpp"
#include "twistkit/tambara.hpp"

namespace twistkit::prism {

// A transversal prism presentation: ambient Z[t] (sitting inside the
// (p, t-1)- or t-adically completed ring), Frobenius t -> t^p, and a monic
// distinguished element d. Towers of twisted ideals with an optional shift:
// gen(shift, n) = prod_{i=shift}^{shift+n} phi^i(d).
class Presentation {
 public:
  static Presentation q_de_rham(long p, long series_order = 0,
                                long padic_digits = 16);
  static Presentation eisenstein(long p, long series_order = 0,
                                 long padic_digits = 16);
  static Presentation from_config(const Json& j);
  Json config() const;

  const std::string& model() const;
  long p() const;
  long padic_digits() const;
  long series_order() const;
  Int pmod() const;  // p^P
  VarId var() const;
  const MPoly& d() const;
  std::shared_ptr<const PolyRing> ambient() const;
  delta::DeltaRing delta_ring() const;

  MPoly phi(const MPoly& f, long k = 1) const;
  MPoly delta_poly(const MPoly& f) const;
  MPoly theta_poly(const MPoly& f, long i) const;

  MPoly gen_ideal(long shift, long n) const;
  std::shared_ptr<const QuotRing> level_ring(long shift, long n) const;
  std::shared_ptr<const QuotRing> comp_ring(long shift, long i) const;

  // pi_j of the shifted tower: pi_j = u * phi^{shift+j}(d) with pi_j == p
  // mod (gen(shift, j-1)); exact for the q-de Rham closed form, solved mod
  // p^P otherwise. j >= 1.
  MPoly pi(long shift, long j) const;
  bool pi_exact() const;

  // Quotient coefficient modulus: 0 (exact) for q-de Rham, p^P for the
  // Eisenstein model whose tower is inherently p-adic.
  const Int& coeff_mod() const;

  // Transversal coordinates on the shifted tower (shift 0 = the prism
  // tower itself).
  std::vector<Elem> to_transversal(const Elem& x, long n, long shift = 0) const;
  Elem from_transversal(const std::vector<Elem>& comps, long shift = 0) const;
  bool membership_check(const std::vector<Elem>& comps, long shift = 0) const;

  // Equality in A/I-type quotients at the presentation's precision: exact
  // when pi is exact, componentwise in transversal coordinates mod
  // p^(P-drop) otherwise.
  bool congruent(const Elem& a, const Elem& b, long shift, long n,
                 long drop = 0) const;

  // Tambara structure maps on the quotient tower (shift 0).
  Elem tamb_F(const Elem& x, long n) const;  // A/I_n -> A/I_{n-1}
  Elem tamb_V(const Elem& x, long n) const;  // A/I_{n-1} -> A/I_n
  Elem tamb_N(const Elem& x, long n) const;  // A/I_{n-1} -> A/I_n
  Elem intrinsic_V(const Elem& x, long n) const;
  // Intrinsic and transversal V agree (exactly when pi is exact, mod p^P
  // otherwise).
  bool v_agreement(const Elem& x, long n) const;

  // Ambient lifts of V^{m+n}_n and N^{m+n}_n.
  MPoly lift_V(const MPoly& f, long m, long n) const;
  MPoly lift_N(const MPoly& f, long m, long n) const;
  bool lift_V_check(const MPoly& f, long m, long n) const;
  bool lift_N_check(const MPoly& f, long m, long n) const;

  // phi(f) - (p)_{t^p} delta(f) - f^p in (d^p); pre: d | f, q-de Rham model.
  bool refraction_check(const MPoly& f) const;

  // V(1) - p in A/I_n.
  Elem cohomological_defect(long n) const;

  struct Impl;

 private:
  explicit Presentation(std::shared_ptr<Impl> impl);
  std::shared_ptr<Impl> impl_;
};

// Tambara realization on the prism tower; level labels are p-powers
// (divisor labels of reciprocity rules), p^a meaning A/I_a.
class PrismRealization : public tambara::Realization {
 public:
  explicit PrismRealization(Presentation A) : A_(std::move(A)) {}
  RingPtr level_ring(long level) const override;
  Elem norm(long from, long to, const Elem& x) const override;
  Elem transfer(long from, long to, const Elem& x) const override;
  Elem sample(long level, Rng& rng) const override;

 private:
  long level_of(long label) const;
  Presentation A_;
};

}  // namespace twistkit::prism
