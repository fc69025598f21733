#include "twistkit/ring.hpp"

#include <cassert>
#include <sstream>

namespace twistkit {

Elem Elem::operator+(const Elem& o) const { return ring().add(*this, o); }
Elem Elem::operator-(const Elem& o) const { return ring().sub(*this, o); }
Elem Elem::operator*(const Elem& o) const { return ring().mul(*this, o); }
Elem Elem::operator-() const { return ring().neg(*this); }
bool Elem::operator==(const Elem& o) const { return ring().equal(*this, o); }
bool Elem::is_zero() const { return ring().is_zero(*this); }
Elem Elem::pow(long e) const { return ring().pow(*this, e); }
Elem Elem::scaled(const Int& k) const { return ring().mul_int(*this, k); }
std::string Elem::str() const { return ring().str(*this); }

Elem operator*(const Int& k, const Elem& e) { return e.scaled(k); }

Elem Ring::pow(const Elem& a, long e) const {
  if (e < 0) throw Precondition("negative exponent");
  Elem r = one();
  Elem b = a;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

// ---------------------------------------------------------------------------
// ZRing

ZRing::ZRing(Int m) : m_(std::move(m)) {
  key_ = m_ == 0 ? "Z" : "Z/" + m_.get_str();
}

std::shared_ptr<const ZRing> ZRing::integers() {
  static std::shared_ptr<const ZRing> z(new ZRing(Int(0)));
  return z;
}

std::shared_ptr<const ZRing> ZRing::mod(const Int& m) {
  return std::shared_ptr<const ZRing>(new ZRing(m));
}

Elem ZRing::make(Int v) const {
  if (m_ != 0) v = mod_canonical(v, m_);
  return Elem(shared_from_this(), std::make_shared<Int>(std::move(v)));
}

Elem ZRing::zero() const { return make(0); }
Elem ZRing::from_int(const Int& k) const { return make(k); }
Elem ZRing::add(const Elem& a, const Elem& b) const {
  return make(a.as<Int>() + b.as<Int>());
}
Elem ZRing::sub(const Elem& a, const Elem& b) const {
  return make(a.as<Int>() - b.as<Int>());
}
Elem ZRing::mul(const Elem& a, const Elem& b) const {
  return make(a.as<Int>() * b.as<Int>());
}
bool ZRing::is_zero(const Elem& a) const { return a.as<Int>() == 0; }

std::optional<Elem> ZRing::div_exact_int(const Elem& a, const Int& k) const {
  if (m_ != 0) {
    // In Z/m only handle the torsion-free-style case gcd(k, m) | a with a
    // canonical witness; callers in this library never need it.
    return std::nullopt;
  }
  if (!divisible(a.as<Int>(), k)) return std::nullopt;
  return make(twistkit::div_exact(a.as<Int>(), k));
}

std::optional<Elem> ZRing::div_exact(const Elem& a, const Elem& b) const {
  if (m_ != 0) return std::nullopt;
  if (b.as<Int>() == 0 || !divisible(a.as<Int>(), b.as<Int>()))
    return std::nullopt;
  return make(twistkit::div_exact(a.as<Int>(), b.as<Int>()));
}

std::string ZRing::str(const Elem& a) const { return a.as<Int>().get_str(); }

// ---------------------------------------------------------------------------
// PolyRing

PolyRing::PolyRing(std::vector<VarId> vars, Int m)
    : vars_(std::move(vars)), m_(std::move(m)) {
  std::ostringstream os;
  os << (m_ == 0 ? "Z[" : "Z/" + m_.get_str() + "[");
  for (size_t i = 0; i < vars_.size(); ++i)
    os << (i ? "," : "") << var_name(vars_[i]);
  os << "]";
  key_ = os.str();
}

std::shared_ptr<const PolyRing> PolyRing::create(std::vector<VarId> vars,
                                                 Int coeff_mod) {
  return std::shared_ptr<const PolyRing>(
      new PolyRing(std::move(vars), std::move(coeff_mod)));
}

std::shared_ptr<const PolyRing> PolyRing::over_z(
    const std::vector<std::string>& names) {
  std::vector<VarId> vs;
  for (auto& n : names) vs.push_back(var_id(n));
  return create(std::move(vs));
}

Elem PolyRing::make(MPoly p) const {
  if (m_ != 0) p = p.reduce_coeffs(m_);
  return Elem(shared_from_this(), std::make_shared<MPoly>(std::move(p)));
}

Elem PolyRing::subst(const Elem& a, VarId v, const MPoly& g) const {
  return make(a.as<MPoly>().subst(v, g));
}

Elem PolyRing::zero() const { return make(MPoly()); }
Elem PolyRing::from_int(const Int& k) const { return make(MPoly::constant(k)); }
Elem PolyRing::add(const Elem& a, const Elem& b) const {
  return make(a.as<MPoly>() + b.as<MPoly>());
}
Elem PolyRing::sub(const Elem& a, const Elem& b) const {
  return make(a.as<MPoly>() - b.as<MPoly>());
}
Elem PolyRing::mul(const Elem& a, const Elem& b) const {
  return make(a.as<MPoly>() * b.as<MPoly>());
}
bool PolyRing::is_zero(const Elem& a) const { return a.as<MPoly>().is_zero(); }

std::optional<Elem> PolyRing::div_exact_int(const Elem& a,
                                            const Int& k) const {
  if (m_ != 0) return std::nullopt;
  if (!a.as<MPoly>().divisible_int(k)) return std::nullopt;
  return make(a.as<MPoly>().div_exact_int(k));
}

std::optional<Elem> PolyRing::div_exact(const Elem& a, const Elem& b) const {
  if (m_ != 0) return std::nullopt;
  const MPoly& g = b.as<MPoly>();
  if (g.is_zero()) return std::nullopt;
  if (g.is_constant()) {
    if (!a.as<MPoly>().divisible_int(g.constant_term())) return std::nullopt;
    return make(a.as<MPoly>().div_exact_int(g.constant_term()));
  }
  // Division by a polynomial monic in one of its variables.
  for (VarId v : g.vars()) {
    long d = g.degree(v);
    MPoly lead = g.coeff_of(v, d);
    if (lead.is_constant() && lead.constant_term() == 1) {
      auto q = a.as<MPoly>().div_exact(g, v);
      if (!q) return std::nullopt;
      return make(*q);
    }
  }
  return std::nullopt;
}

std::string PolyRing::str(const Elem& a) const { return a.as<MPoly>().str(); }

// ---------------------------------------------------------------------------
// QuotRing

QuotRing::QuotRing(VarId var, MPoly mod, Int m)
    : var_(var), mod_(std::move(mod)), m_(std::move(m)) {
  deg_ = mod_.degree(var_);
  if (deg_ < 1) throw NonMonicModulus("modulus must be nonconstant");
  MPoly lead = mod_.coeff_of(var_, deg_);
  if (!(lead.is_constant() && lead.constant_term() == 1))
    throw NonMonicModulus("quotient modulus not monic: " + mod_.str());
  std::ostringstream os;
  os << (m_ == 0 ? "Z" : "Z/" + m_.get_str()) << "[" << var_name(var_) << "]/("
     << mod_.str() << ")";
  key_ = os.str();
}

std::shared_ptr<const QuotRing> QuotRing::create(VarId var, MPoly modulus,
                                                 Int coeff_mod) {
  return std::shared_ptr<const QuotRing>(
      new QuotRing(var, std::move(modulus), std::move(coeff_mod)));
}

MPoly QuotRing::reduce(const MPoly& p) const {
  MPoly r = p.rem_monic(mod_, var_);
  if (m_ != 0) r = r.reduce_coeffs(m_);
  return r;
}

Elem QuotRing::make(const MPoly& p) const {
  return Elem(shared_from_this(), std::make_shared<MPoly>(reduce(p)));
}

Elem QuotRing::zero() const { return make(MPoly()); }
Elem QuotRing::from_int(const Int& k) const { return make(MPoly::constant(k)); }
Elem QuotRing::add(const Elem& a, const Elem& b) const {
  return make(a.as<MPoly>() + b.as<MPoly>());
}
Elem QuotRing::sub(const Elem& a, const Elem& b) const {
  return make(a.as<MPoly>() - b.as<MPoly>());
}
Elem QuotRing::mul(const Elem& a, const Elem& b) const {
  return make(a.as<MPoly>() * b.as<MPoly>());
}
bool QuotRing::is_zero(const Elem& a) const { return a.as<MPoly>().is_zero(); }

std::optional<Elem> QuotRing::div_exact_int(const Elem& a,
                                            const Int& k) const {
  // The modulus is monic over Z, so the quotient is a free module over the
  // coefficient ring and divisibility is coefficientwise on canonical reps.
  if (m_ != 0) return std::nullopt;
  if (!a.as<MPoly>().divisible_int(k)) return std::nullopt;
  return make(a.as<MPoly>().div_exact_int(k));
}

std::string QuotRing::str(const Elem& a) const { return a.as<MPoly>().str(); }

// ---------------------------------------------------------------------------
// SeriesRing

SeriesRing::SeriesRing(long order) : order_(order) {
  key_ = "Z[[u]]/u^" + std::to_string(order);
}

std::shared_ptr<const SeriesRing> SeriesRing::create(long order) {
  return std::shared_ptr<const SeriesRing>(new SeriesRing(order));
}

Elem SeriesRing::make(Series s) const {
  return Elem(shared_from_this(), std::make_shared<Series>(std::move(s)));
}

Elem SeriesRing::zero() const { return make(Series(order_)); }
Elem SeriesRing::from_int(const Int& k) const {
  return make(Series::constant(k, order_));
}
Elem SeriesRing::add(const Elem& a, const Elem& b) const {
  return make(a.as<Series>() + b.as<Series>());
}
Elem SeriesRing::sub(const Elem& a, const Elem& b) const {
  return make(a.as<Series>() - b.as<Series>());
}
Elem SeriesRing::mul(const Elem& a, const Elem& b) const {
  return make(a.as<Series>() * b.as<Series>());
}
bool SeriesRing::is_zero(const Elem& a) const { return a.as<Series>().is_zero(); }

std::optional<Elem> SeriesRing::div_exact_int(const Elem& a,
                                              const Int& k) const {
  if (!a.as<Series>().divisible_int(k)) return std::nullopt;
  return make(a.as<Series>().div_exact_int(k));
}

std::optional<Elem> SeriesRing::div_exact(const Elem& a, const Elem& b) const {
  auto q = a.as<Series>().div_exact(b.as<Series>());
  if (!q) return std::nullopt;
  return make(*q);
}

std::string SeriesRing::str(const Elem& a) const { return a.as<Series>().str(); }

}  // namespace twistkit
