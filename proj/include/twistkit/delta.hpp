#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>

#include "twistkit/ring.hpp"

namespace twistkit::delta {

// A ring together with a Frobenius lift phi at the prime p. phi must be a
// ring endomorphism with phi(f) == f^p mod p (checked lazily: delta throws
// NotDivisible otherwise).
class DeltaRing {
 public:
  DeltaRing(RingPtr carrier, long p, std::function<Elem(const Elem&)> phi,
            bool use_cache = true)
      : carrier_(std::move(carrier)),
        p_(p),
        phi_(std::move(phi)),
        memo_(use_cache ? std::make_shared<Memo>() : nullptr) {}

  const RingPtr& carrier() const { return carrier_; }
  long p() const { return p_; }
  Elem phi(const Elem& f) const { return phi_(f); }
  Elem phi_iter(const Elem& f, long k) const;

  // Cache access; nullptr when caching is disabled.
  Elem cached(const std::string& key, const std::function<Elem()>& compute) const;

 private:
  struct Memo {
    std::mutex mu;
    std::map<std::string, Elem> values;
  };
  RingPtr carrier_;
  long p_;
  std::function<Elem(const Elem&)> phi_;
  std::shared_ptr<Memo> memo_;
};

// delta(f) = (phi(f) - f^p)/p, exactly.
Elem delta_op(const DeltaRing& R, const Elem& f);

// Witt coordinates of delta_bullet(f): (f, delta f, delta_2 f, ..., delta_n f),
// defined by ghost coordinates (f, phi f, phi^2 f, ...).
std::vector<Elem> delta_bullet(const DeltaRing& R, const Elem& f, long n);
Elem delta_n(const DeltaRing& R, const Elem& f, long n);

// theta_n(f) defined by phi(f^{p^{n-1}}) = f^{p^n} + p^n theta_n(f).
Elem theta_n(const DeltaRing& R, const Elem& f, long n);

// phi^n(f) = f^{p^n} + sum_{i=1}^n p^i phi^{n-i}(theta_i(f)).
bool phi_n_expand_check(const DeltaRing& R, const Elem& f, long n);

// delta_n(f) = sum_{k=0}^{n-1} theta_{n-k}(delta_k(f)).
bool delta_theta_check(const DeltaRing& R, const Elem& f, long n);

// delta(f^{n+1}) = delta(f) * sum_{i=0}^{n} phi(f)^{n-i} f^{p i}.
bool delta_power_identity_check(const DeltaRing& R, const Elem& f, long n);

// A commuting family of Adams/Frobenius lifts psi^m.
class LambdaContext {
 public:
  LambdaContext(RingPtr carrier, std::function<Elem(const Elem&, long)> psi)
      : carrier_(std::move(carrier)), psi_(std::move(psi)) {}
  const RingPtr& carrier() const { return carrier_; }
  Elem psi(const Elem& f, long m) const { return psi_(f, m); }

 private:
  RingPtr carrier_;
  std::function<Elem(const Elem&, long)> psi_;
};

// vartheta_d is constructed for d a prime power or a product of two distinct
// primes; other d throw UnsupportedVartheta.
bool vartheta_supported(long d);
Elem vartheta(const LambdaContext& L, const Elem& f, long d);

// psi^m(f^n) = f^{mn} + sum_{d | mn, d !| n} d * psi^{mn/d}(vartheta_d(f)).
bool vartheta_conjecture_check(const LambdaContext& L, const Elem& f, long m,
                               long n);

}  // namespace twistkit::delta
