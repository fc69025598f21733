#pragma once

#include "twistkit/prism.hpp"
#include "twistkit/witt.hpp"

namespace twistkit::sandwich {

// One rung of the ladder W_m(A/I_n) -> A/I_{m+n} -> W_m(A/phi^m(I_n)),
// on the tower shifted by `shift`.
class Context {
 public:
  Context(prism::Presentation A, long m, long n, long shift = 0);

  const prism::Presentation& presentation() const { return A_; }
  long m() const { return m_; }
  long n() const { return n_; }
  long shift() const { return shift_; }

  std::shared_ptr<const QuotRing> source_base() const { return src_; }
  std::shared_ptr<const QuotRing> middle() const { return mid_; }
  std::shared_ptr<const QuotRing> target_base() const { return tgt_; }

  // Comparison map, ghost coordinates on the source. The w_i are elements
  // of A/I_n; canonical polynomial lifts are used.
  Elem c_ghost(const std::vector<Elem>& w) const;
  // Same, with explicit ambient lifts (for representative-independence
  // tests).
  Elem c_ghost_lifts(const std::vector<MPoly>& lifts) const;
  // Comparison map in Witt coordinates, via the ambient transfer/norm lifts.
  Elem c_witt(const std::vector<Elem>& a) const;
  Elem c_witt_lifts(const std::vector<MPoly>& a) const;

  // Prismatic ghost polynomial v_m^{(n)}(b_0..b_m).
  Elem prismatic_ghost(const std::vector<Elem>& b) const;
  Elem prismatic_ghost_lifts(const std::vector<MPoly>& b) const;
  // Images agree: v_m(b) = c(a) under a_k = b_k + sum theta_i(a_{k-i}).
  bool prismatic_image_check(const std::vector<MPoly>& b) const;

  // delta_bullet: A/I_{m+n} -> W_m(A/phi^m(I_n)), Witt coordinates.
  std::vector<Elem> delta_bullet_quotient(const Elem& x) const;
  // delta_bullet is independent of the representative of x.
  bool delta_bullet_well_defined(const Elem& x, Rng& rng) const;

  // Ghost coordinates over the target.
  std::vector<Elem> target_ghost(const std::vector<Elem>& witt) const;
  std::vector<Elem> source_ghost(const std::vector<Elem>& witt) const;

  // epsilon_m in target ghost coordinates (closed form).
  std::vector<Elem> epsilon_closed(const std::vector<Elem>& a) const;
  // ghost(delta_bullet(c_witt(a))): in ghost coordinates the composite is
  // (phi^i of a lift of c(a)), which is how it is computed; the delta-chain
  // route is exposed separately for cross-validation.
  std::vector<Elem> composite_ghost(const std::vector<Elem>& a) const;
  std::vector<Elem> composite_ghost_delta_route(const std::vector<Elem>& a) const;
  // ghost of W_m(phi^m) applied to a.
  std::vector<Elem> wm_phi_ghost(const std::vector<Elem>& a) const;

  // --- checks ------------------------------------------------------------
  bool c_routes_agree(const std::vector<Elem>& a) const;
  bool c_representative_independent(const std::vector<Elem>& w, Rng& rng) const;
  // composite == W_m(phi^m) + epsilon (ghostwise, exact closed form).
  bool epsilon_matches_composite(const std::vector<Elem>& a) const;
  bool epsilon_last_coordinate_zero(const std::vector<Elem>& a) const;
  bool epsilon_all_zero(const std::vector<Elem>& a) const;  // e.g. n = 0
  // epsilon vanishes on the image of delta_bullet: a_i = delta_i(f) mod I_n.
  bool epsilon_vanishes_on_delta_image(const MPoly& f) const;
  // c of the next rung composed with delta_bullet equals phi^m on A/I_{m+n}.
  bool composite_corollary(const Elem& x) const;
  // Corollary at this rung and the epsilon theorem at the next rung.
  bool ladder_check(const std::vector<Elem>& a) const;
  // c commutes with F / V / N where defined.
  bool commutes_with_F(const std::vector<Elem>& a) const;
  bool commutes_with_V(const std::vector<Elem>& a) const;
  bool commutes_with_N(const std::vector<Elem>& a) const;

  std::vector<Elem> sample_witt(Rng& rng) const;

  bool ghost_equal(const std::vector<Elem>& x, const std::vector<Elem>& y,
                   long drop) const;

 private:
  MPoly lift_of(const Elem& e) const;
  MPoly v_tilde_unit(long k) const;  // pi_{m+n-k+1} ... pi_{m+n} (shifted)
  std::vector<MPoly> bracket_lifts(const std::vector<Elem>& a) const;

  prism::Presentation A_;
  long m_, n_, shift_;
  std::shared_ptr<const QuotRing> src_, mid_, tgt_;
};

// delta_k(I_n) subset phi^k(I_{n-k}): spot check on random multiples of the
// ideal generator.
bool delta_ideal_check(const prism::Presentation& A, long k, long n, Rng& rng,
                       long samples);

}  // namespace twistkit::sandwich
