#include "twistkit/delta.hpp"

namespace twistkit::delta {

Elem DeltaRing::phi_iter(const Elem& f, long k) const {
  Elem r = f;
  for (long i = 0; i < k; ++i) r = phi_(r);
  return r;
}

Elem DeltaRing::cached(const std::string& key,
                       const std::function<Elem()>& compute) const {
  if (!memo_) return compute();
  {
    std::lock_guard<std::mutex> lock(memo_->mu);
    auto it = memo_->values.find(key);
    if (it != memo_->values.end()) return it->second;
  }
  Elem v = compute();
  std::lock_guard<std::mutex> lock(memo_->mu);
  memo_->values.emplace(key, v);
  return v;
}

namespace {
Elem div_exact_or_throw(const RingPtr& R, const Elem& a, const Int& k,
                        const char* what) {
  auto q = R->div_exact_int(a, k);
  if (!q)
    throw NotDivisible(std::string(what) + ": " + a.str() +
                       " not divisible by " + k.get_str());
  return *q;
}
}  // namespace

Elem delta_op(const DeltaRing& R, const Elem& f) {
  return R.cached("delta:" + f.str(), [&] {
    Elem num = R.phi(f) - f.pow(R.p());
    return div_exact_or_throw(R.carrier(), num, R.p(), "delta");
  });
}

std::vector<Elem> delta_bullet(const DeltaRing& R, const Elem& f, long n) {
  // Invert the ghost coordinates (f, phi f, phi^2 f, ...).
  std::vector<Elem> a;
  a.push_back(f);
  Elem ghost = f;
  for (long k = 1; k <= n; ++k) {
    ghost = R.phi(ghost);  // phi^k(f)
    Elem rest = ghost;
    Int pk(1);
    for (long i = 0; i < k; ++i) {
      rest = rest - pk * a[static_cast<size_t>(i)].pow(
                        static_cast<long>(int_pow(R.p(), k - i).get_si()));
      pk *= R.p();
    }
    a.push_back(div_exact_or_throw(R.carrier(), rest, pk, "delta_n"));
  }
  return a;
}

Elem delta_n(const DeltaRing& R, const Elem& f, long n) {
  return R.cached("delta_n:" + std::to_string(n) + ":" + f.str(), [&] {
    return delta_bullet(R, f, n).back();
  });
}

Elem theta_n(const DeltaRing& R, const Elem& f, long n) {
  if (n < 1) throw Precondition("theta_n needs n >= 1");
  return R.cached("theta_n:" + std::to_string(n) + ":" + f.str(), [&] {
    long pn1 = static_cast<long>(int_pow(R.p(), n - 1).get_si());
    long pn = pn1 * R.p();
    Elem num = R.phi(f.pow(pn1)) - f.pow(pn);
    return div_exact_or_throw(R.carrier(), num, int_pow(R.p(), n), "theta_n");
  });
}

bool phi_n_expand_check(const DeltaRing& R, const Elem& f, long n) {
  Elem lhs = R.phi_iter(f, n);
  long pn = static_cast<long>(int_pow(R.p(), n).get_si());
  Elem rhs = f.pow(pn);
  Int pi(1);
  for (long i = 1; i <= n; ++i) {
    pi *= R.p();
    rhs = rhs + pi * R.phi_iter(theta_n(R, f, i), n - i);
  }
  return lhs == rhs;
}

bool delta_theta_check(const DeltaRing& R, const Elem& f, long n) {
  if (n < 1) throw Precondition("needs n >= 1");
  auto deltas = delta_bullet(R, f, n);
  Elem rhs = R.carrier()->zero();
  for (long k = 0; k <= n - 1; ++k)
    rhs = rhs + theta_n(R, deltas[static_cast<size_t>(k)], n - k);
  return deltas[static_cast<size_t>(n)] == rhs;
}

bool delta_power_identity_check(const DeltaRing& R, const Elem& f, long n) {
  Elem lhs = delta_op(R, f.pow(n + 1));
  Elem phif = R.phi(f);
  Elem sum = R.carrier()->zero();
  for (long i = 0; i <= n; ++i)
    sum = sum + phif.pow(n - i) * f.pow(R.p() * i);
  return lhs == delta_op(R, f) * sum;
}

bool vartheta_supported(long d) {
  auto fs = factorize(d);
  if (fs.size() == 1) return true;                            // prime power
  if (fs.size() == 2 && fs[0].second == 1 && fs[1].second == 1) return true;
  return false;
}

Elem vartheta(const LambdaContext& L, const Elem& f, long d) {
  if (d < 2 || !vartheta_supported(d)) throw UnsupportedVartheta(d);
  auto fs = factorize(d);
  const RingPtr& C = L.carrier();
  if (fs.size() == 1) {
    // d = p^r: psi^{p^r}(f) = f^{p^r} + sum_{i=1}^r p^i psi^{p^{r-i}}(vt_{p^i}(f))
    long p = fs[0].first;
    int r = fs[0].second;
    Elem rest = L.psi(f, d) - f.pow(d);
    long pi = 1;
    for (int i = 1; i < r; ++i) {
      pi *= p;
      long sub = pi;                     // p^i
      long outer = d / sub;              // p^{r-i}
      rest = rest - Int(pi) * L.psi(vartheta(L, f, sub), outer);
    }
    auto q = C->div_exact_int(rest, int_pow(p, static_cast<unsigned long>(r)));
    if (!q) throw NotDivisible("vartheta_{p^r}: lambda structure invalid");
    return *q;
  }
  // d = p*q distinct primes.
  long p = fs[0].first, q = fs[1].first;
  Elem rest = L.psi(f, d) - f.pow(d) - Int(p) * L.psi(vartheta(L, f, p), q) -
              Int(q) * L.psi(vartheta(L, f, q), p);
  auto qq = C->div_exact_int(rest, Int(p) * Int(q));
  if (!qq) throw NotDivisible("vartheta_{pq}: lambda structure invalid");
  return *qq;
}

bool vartheta_conjecture_check(const LambdaContext& L, const Elem& f, long m,
                               long n) {
  Elem lhs = L.psi(f.pow(n), m);
  Elem rhs = f.pow(m * n);
  for (long d : divisors_of(m * n)) {
    if (d == 1 || n % d == 0) continue;
    rhs = rhs + Int(d) * L.psi(vartheta(L, f, d), (m * n) / d);
  }
  return lhs == rhs;
}

}  // namespace twistkit::delta
