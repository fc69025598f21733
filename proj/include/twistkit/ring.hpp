#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twistkit/poly.hpp"
#include "twistkit/series.hpp"

namespace twistkit {

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

// A value paired with the ring it lives in. Immutable; all operations are
// pure and dispatch through the ring.
class Elem {
 public:
  Elem() = default;
  Elem(RingPtr r, std::shared_ptr<const void> v)
      : ring_(std::move(r)), v_(std::move(v)) {}

  bool valid() const { return static_cast<bool>(ring_); }
  const Ring& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  template <class T>
  const T& as() const {
    return *static_cast<const T*>(v_.get());
  }

  Elem operator+(const Elem& o) const;
  Elem operator-(const Elem& o) const;
  Elem operator*(const Elem& o) const;
  Elem operator-() const;
  bool operator==(const Elem& o) const;
  bool operator!=(const Elem& o) const { return !(*this == o); }

  bool is_zero() const;
  Elem pow(long e) const;
  Elem scaled(const Int& k) const;
  std::string str() const;

 private:
  RingPtr ring_;
  std::shared_ptr<const void> v_;
};

class Ring : public std::enable_shared_from_this<Ring> {
 public:
  virtual ~Ring() = default;

  // Structural identity; rings with equal keys are interoperable.
  const std::string& key() const { return key_; }

  virtual Elem zero() const = 0;
  virtual Elem one() const { return from_int(1); }
  virtual Elem from_int(const Int& k) const = 0;
  virtual Elem add(const Elem& a, const Elem& b) const = 0;
  virtual Elem sub(const Elem& a, const Elem& b) const = 0;
  virtual Elem mul(const Elem& a, const Elem& b) const = 0;
  virtual Elem neg(const Elem& a) const { return sub(zero(), a); }
  virtual Elem mul_int(const Elem& a, const Int& k) const {
    return mul(a, from_int(k));
  }
  virtual bool is_zero(const Elem& a) const = 0;
  virtual bool equal(const Elem& a, const Elem& b) const {
    return is_zero(sub(a, b));
  }
  // Exact division by an integer; nullopt when not divisible.
  virtual std::optional<Elem> div_exact_int(const Elem& a,
                                            const Int& k) const = 0;
  // Exact ring division where supported.
  virtual std::optional<Elem> div_exact(const Elem& a, const Elem& b) const {
    (void)a, (void)b;
    return std::nullopt;
  }
  virtual bool torsion_free() const = 0;
  virtual std::string str(const Elem& a) const = 0;

  Elem pow(const Elem& a, long e) const;

 protected:
  std::string key_;
};

// Z (modulus 0) or Z/m.
class ZRing : public Ring {
 public:
  static std::shared_ptr<const ZRing> integers();
  static std::shared_ptr<const ZRing> mod(const Int& m);

  const Int& modulus() const { return m_; }
  Elem make(Int v) const;
  const Int& value(const Elem& e) const { return e.as<Int>(); }

  Elem zero() const override;
  Elem from_int(const Int& k) const override;
  Elem add(const Elem& a, const Elem& b) const override;
  Elem sub(const Elem& a, const Elem& b) const override;
  Elem mul(const Elem& a, const Elem& b) const override;
  bool is_zero(const Elem& a) const override;
  std::optional<Elem> div_exact_int(const Elem& a, const Int& k) const override;
  std::optional<Elem> div_exact(const Elem& a, const Elem& b) const override;
  bool torsion_free() const override { return m_ == 0; }
  std::string str(const Elem& a) const override;

 private:
  explicit ZRing(Int m);
  Int m_;
};

// Z[vars...] or (Z/m)[vars...]; vars are advisory (sampling/printing), the
// representation is a plain multivariate polynomial.
class PolyRing : public Ring {
 public:
  static std::shared_ptr<const PolyRing> create(std::vector<VarId> vars,
                                                Int coeff_mod = 0);
  static std::shared_ptr<const PolyRing> over_z(
      const std::vector<std::string>& names);

  const std::vector<VarId>& vars() const { return vars_; }
  const Int& coeff_mod() const { return m_; }
  Elem make(MPoly p) const;
  const MPoly& poly(const Elem& e) const { return e.as<MPoly>(); }
  Elem var_elem(VarId v) const { return make(MPoly::variable(v)); }
  // Ring endomorphism by substitution in one variable.
  Elem subst(const Elem& a, VarId v, const MPoly& g) const;

  Elem zero() const override;
  Elem from_int(const Int& k) const override;
  Elem add(const Elem& a, const Elem& b) const override;
  Elem sub(const Elem& a, const Elem& b) const override;
  Elem mul(const Elem& a, const Elem& b) const override;
  bool is_zero(const Elem& a) const override;
  std::optional<Elem> div_exact_int(const Elem& a, const Int& k) const override;
  std::optional<Elem> div_exact(const Elem& a, const Elem& b) const override;
  bool torsion_free() const override { return m_ == 0; }
  std::string str(const Elem& a) const override;

 private:
  PolyRing(std::vector<VarId> vars, Int m);
  std::vector<VarId> vars_;
  Int m_;
};

// (Z or Z/m)[var] / (modulus), modulus monic in var with integer
// coefficients. Elements are canonical representatives of degree <
// deg(modulus) in var; they may involve other (symbolic) variables.
class QuotRing : public Ring {
 public:
  static std::shared_ptr<const QuotRing> create(VarId var, MPoly modulus,
                                                Int coeff_mod = 0);

  VarId var() const { return var_; }
  const MPoly& modulus() const { return mod_; }
  long rank() const { return deg_; }  // free module rank over coefficients
  const Int& coeff_mod() const { return m_; }

  Elem make(const MPoly& p) const;  // reduces
  const MPoly& lift(const Elem& e) const { return e.as<MPoly>(); }
  MPoly reduce(const MPoly& p) const;

  Elem zero() const override;
  Elem from_int(const Int& k) const override;
  Elem add(const Elem& a, const Elem& b) const override;
  Elem sub(const Elem& a, const Elem& b) const override;
  Elem mul(const Elem& a, const Elem& b) const override;
  bool is_zero(const Elem& a) const override;
  std::optional<Elem> div_exact_int(const Elem& a, const Int& k) const override;
  bool torsion_free() const override { return m_ == 0; }
  std::string str(const Elem& a) const override;

 private:
  QuotRing(VarId var, MPoly mod, Int m);
  VarId var_;
  MPoly mod_;
  Int m_;
  long deg_;
};

// Truncated power series ring.
class SeriesRing : public Ring {
 public:
  static std::shared_ptr<const SeriesRing> create(long order);

  long order() const { return order_; }
  Elem make(Series s) const;
  const Series& series(const Elem& e) const { return e.as<Series>(); }

  Elem zero() const override;
  Elem from_int(const Int& k) const override;
  Elem add(const Elem& a, const Elem& b) const override;
  Elem sub(const Elem& a, const Elem& b) const override;
  Elem mul(const Elem& a, const Elem& b) const override;
  bool is_zero(const Elem& a) const override;
  std::optional<Elem> div_exact_int(const Elem& a, const Int& k) const override;
  std::optional<Elem> div_exact(const Elem& a, const Elem& b) const override;
  bool torsion_free() const override { return true; }
  std::string str(const Elem& a) const override;

 private:
  explicit SeriesRing(long order);
  long order_;
};

// Helpers used across modules.
Elem operator*(const Int& k, const Elem& e);

// Small random element of a ring (for property tests and sample sweeps):
// integers in [-9,9], sparse low-degree polynomials, and coordinatewise
// samples for composite rings.
Elem sample_ring_elem(const RingPtr& R, Rng& rng);

}  // namespace twistkit
