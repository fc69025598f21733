#pragma once

#include <map>
#include <optional>
#include <string>

#include "twistkit/int_util.hpp"
#include "twistkit/poly.hpp"

namespace twistkit {

// Truncated power series in one variable with exact integer coefficients.
// A value represents an element known modulo u^order; order propagates as
// the min over operands.
class Series {
 public:
  Series() : order_(0) {}
  explicit Series(long order) : order_(order) {}
  static Series constant(const Int& c, long order);
  static Series variable(long order);  // u
  static Series from_poly(const MPoly& p, VarId v, long order);

  long order() const { return order_; }
  bool is_zero() const { return c_.empty(); }
  const std::map<long, Int>& coeffs() const { return c_; }
  Int coeff(long k) const;
  void set_coeff(long k, Int v);
  // Smallest k with nonzero coefficient; -1 when zero (to stated order).
  long valuation() const;

  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator-() const;
  Series operator*(const Series& o) const;
  bool operator==(const Series& o) const;  // compares to min order

  Series mul_int(const Int& k) const;
  Series pow(long e) const;
  Series truncated(long order) const;

  // Substitute g (valuation >= 1) for the variable.
  Series compose(const Series& g) const;

  // Exact division: returns f/g when g's lowest coefficient divides
  // recursively; result order = min(order, g.order) - val(g).
  std::optional<Series> div_exact(const Series& g) const;
  Series div_exact_int(const Int& k) const;
  bool divisible_int(const Int& k) const;

  // Multiplicative inverse when the constant term is +-1.
  Series inverse() const;

  std::string str() const;

 private:
  long order_;
  std::map<long, Int> c_;
};

}  // namespace twistkit
