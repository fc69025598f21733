#include "twistkit/sandwich.hpp"

namespace twistkit::sandwich {

namespace {
long pos_part(long x) { return x > 0 ? x : 0; }
}  // namespace

Context::Context(prism::Presentation A, long m, long n, long shift)
    : A_(std::move(A)), m_(m), n_(n), shift_(shift) {
  src_ = A_.level_ring(shift_, n_);
  mid_ = A_.level_ring(shift_, m_ + n_);
  tgt_ = A_.level_ring(shift_ + m_, n_);
}

MPoly Context::lift_of(const Elem& e) const {
  return static_cast<const QuotRing&>(e.ring()).lift(e);
}

MPoly Context::v_tilde_unit(long k) const {
  MPoly r = MPoly::constant(1);
  for (long j = m_ + n_ - k + 1; j <= m_ + n_; ++j) r = r * A_.pi(shift_, j);
  return r;
}

Elem Context::c_ghost(const std::vector<Elem>& w) const {
  std::vector<MPoly> lifts;
  for (auto& wi : w) lifts.push_back(lift_of(wi));
  return c_ghost_lifts(lifts);
}

Elem Context::c_ghost_lifts(const std::vector<MPoly>& lifts) const {
  if (static_cast<long>(lifts.size()) != m_ + 1)
    throw LevelMismatch("ghost coordinate count");
  std::vector<Elem> comps;
  for (long j = 0; j <= m_ + n_; ++j) {
    long k = pos_part(j - n_);
    MPoly v = A_.phi(lifts[static_cast<size_t>(m_ - k)], k);
    comps.push_back(A_.comp_ring(shift_, j)->make(v));
  }
  return A_.from_transversal(comps, shift_);
}

std::vector<MPoly> Context::bracket_lifts(const std::vector<Elem>& a) const {
  // S_k = a_k - sum_{i=1}^k theta_i(a_{k-i}), on canonical lifts.
  std::vector<MPoly> lifts;
  for (auto& ai : a) lifts.push_back(lift_of(ai));
  std::vector<MPoly> s;
  for (long k = 0; k <= m_; ++k) {
    MPoly v = lifts[static_cast<size_t>(k)];
    for (long i = 1; i <= k; ++i)
      v = v - A_.theta_poly(lifts[static_cast<size_t>(k - i)], i);
    s.push_back(v);
  }
  return s;
}

Elem Context::c_witt(const std::vector<Elem>& a) const {
  if (static_cast<long>(a.size()) != m_ + 1)
    throw LevelMismatch("Witt coordinate count");
  auto s = bracket_lifts(a);
  MPoly acc;
  for (long k = 0; k <= m_; ++k)
    acc += v_tilde_unit(k) * A_.phi(s[static_cast<size_t>(k)], m_ - k);
  return mid_->make(acc);
}

Elem Context::c_witt_lifts(const std::vector<MPoly>& a) const {
  std::vector<Elem> wrapped;
  for (auto& ai : a) wrapped.push_back(src_->make(ai));
  // Brackets on the given ambient lifts, not the canonical ones.
  std::vector<MPoly> s;
  for (long k = 0; k <= m_; ++k) {
    MPoly v = a[static_cast<size_t>(k)];
    for (long i = 1; i <= k; ++i)
      v = v - A_.theta_poly(a[static_cast<size_t>(k - i)], i);
    s.push_back(v);
  }
  MPoly acc;
  for (long k = 0; k <= m_; ++k)
    acc += v_tilde_unit(k) * A_.phi(s[static_cast<size_t>(k)], m_ - k);
  return mid_->make(acc);
}

Elem Context::prismatic_ghost(const std::vector<Elem>& b) const {
  if (static_cast<long>(b.size()) != m_ + 1)
    throw LevelMismatch("argument count");
  std::vector<MPoly> lifts;
  for (auto& bk : b) lifts.push_back(lift_of(bk));
  return prismatic_ghost_lifts(lifts);
}

Elem Context::prismatic_ghost_lifts(const std::vector<MPoly>& b) const {
  if (static_cast<long>(b.size()) != m_ + 1)
    throw LevelMismatch("argument count");
  MPoly acc;
  for (long k = 0; k <= m_; ++k)
    acc += v_tilde_unit(k) * A_.phi(b[static_cast<size_t>(k)], m_ - k);
  return mid_->make(acc);
}

bool Context::prismatic_image_check(const std::vector<MPoly>& b) const {
  // Invert b_k = a_k - sum theta_i(a_{k-i}) over the ambient ring.
  std::vector<MPoly> a;
  for (long k = 0; k <= m_; ++k) {
    MPoly v = b[static_cast<size_t>(k)];
    for (long i = 1; i <= k; ++i)
      v += A_.theta_poly(a[static_cast<size_t>(k - i)], i);
    a.push_back(v);
  }
  Elem lhs = prismatic_ghost_lifts(b);
  Elem rhs = c_witt_lifts(a);
  return A_.congruent(lhs, rhs, shift_, m_ + n_, 0);
}

std::vector<Elem> Context::delta_bullet_quotient(const Elem& x) const {
  auto R = A_.delta_ring();
  auto deltas =
      delta::delta_bullet(R, A_.ambient()->make(lift_of(x)), m_);
  std::vector<Elem> witt;
  for (auto& d : deltas) witt.push_back(tgt_->make(d.as<MPoly>()));
  return witt;
}

std::vector<Elem> Context::target_ghost(const std::vector<Elem>& witt) const {
  return witt::ghost_of(witt::TruncSet::p_typ(A_.p(), m_), witt);
}

std::vector<Elem> Context::source_ghost(const std::vector<Elem>& witt) const {
  return witt::ghost_of(witt::TruncSet::p_typ(A_.p(), m_), witt);
}

std::vector<Elem> Context::epsilon_closed(const std::vector<Elem>& a) const {
  auto s = bracket_lifts(a);
  std::vector<Elem> eps;
  for (long i = 0; i <= m_; ++i) {
    MPoly acc;
    Int pi_pow = int_pow(A_.p(), static_cast<unsigned long>(i));
    for (long k = i + 1; k <= m_; ++k) {
      MPoly term = v_tilde_unit(k - i) * A_.phi(s[static_cast<size_t>(k)],
                                                m_ - k + i);
      acc += pi_pow * term;
    }
    eps.push_back(tgt_->make(acc));
  }
  return eps;
}

std::vector<Elem> Context::composite_ghost(const std::vector<Elem>& a) const {
  // ghost_i(delta_bullet(y)) = phi^i(y); reduce a lift of c(a) directly.
  MPoly lift = lift_of(c_witt(a));
  std::vector<Elem> out;
  for (long i = 0; i <= m_; ++i) out.push_back(tgt_->make(A_.phi(lift, i)));
  return out;
}

std::vector<Elem> Context::composite_ghost_delta_route(
    const std::vector<Elem>& a) const {
  Elem x = c_witt(a);
  return target_ghost(delta_bullet_quotient(x));
}

bool Context::delta_bullet_well_defined(const Elem& x, Rng& rng) const {
  auto w1 = delta_bullet_quotient(x);
  MPoly h;
  h.set_term(Monomial{}, Int(rng.uniform(-3, 3)));
  h.set_term(Monomial{{A_.var(), 1}}, Int(rng.uniform(-3, 3)));
  MPoly perturbed = lift_of(x) + A_.gen_ideal(shift_, m_ + n_) * h;
  auto R = A_.delta_ring();
  auto deltas = delta::delta_bullet(R, A_.ambient()->make(perturbed), m_);
  for (long i = 0; i <= m_; ++i) {
    Elem other = tgt_->make(deltas[static_cast<size_t>(i)].as<MPoly>());
    if (!A_.congruent(other, w1[static_cast<size_t>(i)], shift_ + m_, n_, m_))
      return false;
  }
  return true;
}

std::vector<Elem> Context::wm_phi_ghost(const std::vector<Elem>& a) const {
  auto tr = witt::TruncSet::p_typ(A_.p(), m_);
  auto g = witt::ghost_of(tr, a);
  std::vector<Elem> out;
  for (auto& gi : g)
    out.push_back(tgt_->make(A_.phi(lift_of(gi), m_)));
  return out;
}

bool Context::ghost_equal(const std::vector<Elem>& x,
                          const std::vector<Elem>& y, long drop) const {
  if (x.size() != y.size()) return false;
  for (size_t i = 0; i < x.size(); ++i)
    if (!A_.congruent(x[i], y[i], shift_ + m_, n_, drop)) return false;
  return true;
}

bool Context::c_routes_agree(const std::vector<Elem>& a) const {
  auto tr = witt::TruncSet::p_typ(A_.p(), m_);
  auto w = witt::ghost_of(tr, a);
  Elem viaghost = c_ghost(w);
  Elem viawitt = c_witt(a);
  return A_.congruent(viaghost, viawitt, shift_, m_ + n_, 0);
}

bool Context::c_representative_independent(const std::vector<Elem>& w,
                                           Rng& rng) const {
  std::vector<MPoly> lifts, perturbed;
  MPoly gen = A_.gen_ideal(shift_, n_);
  for (auto& wi : w) {
    MPoly l = lift_of(wi);
    lifts.push_back(l);
    MPoly h;
    h.set_term(Monomial{}, Int(rng.uniform(-3, 3)));
    MPoly h2;
    h2.set_term(Monomial{{A_.var(), 1}}, Int(rng.uniform(-3, 3)));
    perturbed.push_back(l + gen * (h + h2));
  }
  Elem a = c_ghost_lifts(lifts);
  Elem b = c_ghost_lifts(perturbed);
  return A_.congruent(a, b, shift_, m_ + n_, 0);
}

bool Context::epsilon_matches_composite(const std::vector<Elem>& a) const {
  auto comp = composite_ghost(a);
  auto base = wm_phi_ghost(a);
  auto eps = epsilon_closed(a);
  std::vector<Elem> rhs;
  for (size_t i = 0; i < base.size(); ++i) rhs.push_back(base[i] + eps[i]);
  return ghost_equal(comp, rhs, m_);
}

bool Context::epsilon_last_coordinate_zero(const std::vector<Elem>& a) const {
  auto comp = composite_ghost(a);
  auto base = wm_phi_ghost(a);
  return A_.congruent(comp.back(), base.back(), shift_ + m_, n_, m_);
}

bool Context::epsilon_all_zero(const std::vector<Elem>& a) const {
  auto comp = composite_ghost(a);
  auto base = wm_phi_ghost(a);
  return ghost_equal(comp, base, m_);
}

bool Context::epsilon_vanishes_on_delta_image(const MPoly& f) const {
  auto R = A_.delta_ring();
  auto deltas = delta::delta_bullet(R, A_.ambient()->make(f), m_);
  std::vector<Elem> a;
  for (auto& d : deltas) a.push_back(src_->make(d.as<MPoly>()));
  auto eps = epsilon_closed(a);
  for (auto& e : eps)
    if (!A_.congruent(e, tgt_->zero(), shift_ + m_, n_, m_)) return false;
  return epsilon_matches_composite(a);
}

bool Context::composite_corollary(const Elem& x) const {
  Context next(A_, m_, n_, shift_ + m_);
  auto witt = delta_bullet_quotient(x);
  Elem via = next.c_witt(witt);
  Elem direct = next.middle()->make(A_.phi(lift_of(x), m_));
  return A_.congruent(via, direct, shift_ + m_, m_ + n_, m_);
}

bool Context::ladder_check(const std::vector<Elem>& a) const {
  Elem x1 = c_witt(a);
  if (!composite_corollary(x1)) return false;
  Context next(A_, m_, n_, shift_ + m_);
  auto w1 = delta_bullet_quotient(x1);
  return next.epsilon_matches_composite(w1);
}

bool Context::commutes_with_F(const std::vector<Elem>& a) const {
  if (m_ < 1) return true;
  auto W = witt::WittRing::create(src_, witt::TruncSet::p_typ(A_.p(), m_));
  Elem fa = witt::F(W->make(a));
  Context lower(A_, m_ - 1, n_, shift_);
  Elem lhs = lower.c_witt(
      static_cast<const witt::WittRing&>(fa.ring()).coords(fa));
  // Prism restriction is the natural quotient map.
  Elem rhs = lower.middle()->make(lift_of(c_witt(a)));
  return A_.congruent(lhs, rhs, shift_, m_ - 1 + n_, m_);
}

bool Context::commutes_with_V(const std::vector<Elem>& b) const {
  if (m_ < 1) return true;
  Context lower(A_, m_ - 1, n_, shift_);
  auto W = witt::WittRing::create(src_, witt::TruncSet::p_typ(A_.p(), m_ - 1));
  Elem vb = witt::V(W->make(b));
  Elem lhs = c_witt(static_cast<const witt::WittRing&>(vb.ring()).coords(vb));
  Elem rhs = A_.tamb_V(lower.c_witt(b), m_ + n_);
  return A_.congruent(lhs, rhs, shift_, m_ + n_, m_);
}

bool Context::commutes_with_N(const std::vector<Elem>& b) const {
  if (m_ < 1) return true;
  Context lower(A_, m_ - 1, n_, shift_);
  auto W = witt::WittRing::create(src_, witt::TruncSet::p_typ(A_.p(), m_ - 1));
  Elem nb = witt::N(W->make(b));
  Elem lhs = c_witt(static_cast<const witt::WittRing&>(nb.ring()).coords(nb));
  Elem rhs = A_.tamb_N(lower.c_witt(b), m_ + n_);
  return A_.congruent(lhs, rhs, shift_, m_ + n_, m_);
}

std::vector<Elem> Context::sample_witt(Rng& rng) const {
  std::vector<Elem> a;
  for (long i = 0; i <= m_; ++i)
    a.push_back(sample_ring_elem(std::static_pointer_cast<const Ring>(src_), rng));
  return a;
}

bool delta_ideal_check(const prism::Presentation& A, long k, long n, Rng& rng,
                       long samples) {
  auto R = A.delta_ring();
  for (long s = 0; s < samples; ++s) {
    Elem r = sample_ring_elem(std::static_pointer_cast<const Ring>(A.ambient()),
                              rng);
    MPoly x = r.as<MPoly>() * A.gen_ideal(0, n);
    auto deltas = delta::delta_bullet(R, A.ambient()->make(x), k);
    MPoly dk = deltas.back().as<MPoly>();
    // Ideal membership against a monic generator is decided by the exact
    // polynomial remainder for both models.
    MPoly red = dk.rem_monic(A.gen_ideal(k, n - k), A.var());
    if (!red.is_zero()) return false;
  }
  return true;
}

}  // namespace twistkit::sandwich
