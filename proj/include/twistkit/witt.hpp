#pragma once

#include <map>
#include <string>
#include <vector>

#include "twistkit/delta.hpp"
#include "twistkit/jsonio.hpp"
#include "twistkit/ring.hpp"

namespace twistkit::witt {

// Truncation data: p-typical levels 0..n, or a divisor-closed finite subset
// of N (containing 1) for big Witt vectors.
struct TruncSet {
  bool p_typical = true;
  long p = 2;
  long n = 0;
  std::vector<long> divisors;  // sorted, divisor-closed

  static TruncSet p_typ(long p, long n);
  static TruncSet divisors_set(long m);  // all divisors of m

  size_t size() const;
  std::string key() const;
  size_t index_of(long d) const;  // integral only
};

// W(base) at a fixed truncation. Elements are Witt-coordinate vectors;
// arithmetic goes through universal polynomials computed once over the
// symbolic cover and cached, so it is valid over torsion bases too.
class WittRing : public Ring {
 public:
  static std::shared_ptr<const WittRing> create(RingPtr base, TruncSet tr);

  const RingPtr& base() const { return base_; }
  const TruncSet& trunc() const { return tr_; }
  Elem make(std::vector<Elem> coords) const;
  const std::vector<Elem>& coords(const Elem& e) const {
    return e.as<std::vector<Elem>>();
  }

  Elem zero() const override;
  Elem one() const override;
  Elem from_int(const Int& k) const override;
  Elem add(const Elem& a, const Elem& b) const override;
  Elem sub(const Elem& a, const Elem& b) const override;
  Elem mul(const Elem& a, const Elem& b) const override;
  Elem neg(const Elem& a) const override;
  bool is_zero(const Elem& a) const override;
  bool equal(const Elem& a, const Elem& b) const override;
  std::optional<Elem> div_exact_int(const Elem& a, const Int& k) const override;
  bool torsion_free() const override { return base_->torsion_free(); }
  std::string str(const Elem& a) const override;

 private:
  WittRing(RingPtr base, TruncSet tr);
  RingPtr base_;
  TruncSet tr_;
};

using WittRingPtr = std::shared_ptr<const WittRing>;

// Ghost polynomials on raw coordinate vectors.
std::vector<Elem> ghost_of(const TruncSet& tr, const std::vector<Elem>& witt);
// Inverse; requires a torsion-free base. Throws NotInGhostImage with the
// failing index when a division fails.
std::vector<Elem> from_ghost(const TruncSet& tr, const RingPtr& base,
                             const std::vector<Elem>& ghost);

std::vector<Elem> ghost(const Elem& w);  // ghost coords of a Witt element
Elem from_ghost_elem(const WittRingPtr& W, const std::vector<Elem>& ghost);

// p-typical structure maps between adjacent levels (Witt coordinates in and
// out; transported by universal polynomials).
Elem F(const Elem& x);                  // W_n -> W_{n-1}
Elem V(const Elem& x);                  // W_{n-1} -> W_n
Elem N(const Elem& x);                  // W_{n-1} -> W_n
Elem norm_selfmap(const Elem& x);       // W_n -> W_n
Elem truncate(const Elem& x, long lv);  // W_n -> W_lv (drop coords)

// Integral (big Witt) structure maps between divisor truncations.
Elem F_int(const Elem& x, long mn, long n);  // W_{div(mn)} -> W_{div(n)}
Elem V_int(const Elem& x, long n, long mn);  // W_{div(n)} -> W_{div(mn)}
Elem N_int(const Elem& x, long n, long mn);

// Witt-vector delta structure (phi = F). Torsion-free base required.
Elem witt_delta(const Elem& x);          // W_n -> W_{n-1}
Elem witt_theta(const Elem& x, long i);  // W_n -> W_{n-i}

// N(x) = x - V(delta(x)) as a self-map identity at the top level.
bool norm_formula_check(const Elem& x);
// N^n(f) = f - sum_{i=1}^n V^i theta_i(f).
bool norm_theta_check(const Elem& f, long n);

// Witt coordinates (f, delta f, ..., delta_n f) as an element of
// W_n(carrier); ghost coordinates are (f, phi f, ..., phi^n f).
Elem delta_bullet_witt(const delta::DeltaRing& R, const Elem& f, long levels);

// Arithmetic forced through the cached universal polynomials (the default
// dispatch uses them only over torsion bases; these entry points let tests
// cross-validate the two routes on torsion-free bases).
Elem add_via_universal(const Elem& a, const Elem& b);
Elem mul_via_universal(const Elem& a, const Elem& b);

// Universal polynomial cache persistence (bit-exact round-trip).
Json universal_cache_dump();
void universal_cache_load(const Json& j);
void universal_cache_save_file(const std::string& path);
bool universal_cache_load_file(const std::string& path);

}  // namespace twistkit::witt
