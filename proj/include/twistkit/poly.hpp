#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistkit/int_util.hpp"

namespace twistkit {

// Interned polynomial variables. Ids are stable for the lifetime of the
// process; names are only used for printing and serialization.
using VarId = int;
VarId var_id(const std::string& name);
const std::string& var_name(VarId v);

// Monomial: sorted (var, exponent) pairs, exponents > 0.
using Monomial = std::vector<std::pair<VarId, int>>;

Monomial mono_mul(const Monomial& a, const Monomial& b);
int mono_deg(const Monomial& m, VarId v);
long mono_total_deg(const Monomial& m);

// Sparse multivariate polynomial with exact integer coefficients.
// Invariant: no stored zero coefficients.
class MPoly {
 public:
  MPoly() = default;
  static MPoly constant(const Int& c);
  static MPoly variable(VarId v, int exp = 1);

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  const Int& constant_term() const;  // coefficient of the empty monomial
  Int leading_unit_check() const;    // for diagnostics

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator-() const;
  MPoly operator*(const MPoly& o) const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  bool operator==(const MPoly& o) const { return t_ == o.t_; }
  bool operator!=(const MPoly& o) const { return t_ != o.t_; }
  bool operator<(const MPoly& o) const { return t_ < o.t_; }

  MPoly mul_int(const Int& k) const;
  MPoly pow(long e) const;

  // Degree in one variable (-1 for the zero polynomial).
  long degree(VarId v) const;
  long total_degree() const;
  // Coefficient of v^k, a polynomial in the remaining variables.
  MPoly coeff_of(VarId v, long k) const;
  // Dense coefficient list in v: index i holds the coefficient of v^i.
  std::vector<MPoly> var_coeffs(VarId v) const;
  static MPoly from_var_coeffs(VarId v, const std::vector<MPoly>& cs);
  bool contains_var(VarId v) const;
  std::vector<VarId> vars() const;

  // Substitute g for v.
  MPoly subst(VarId v, const MPoly& g) const;
  // Fast path for v -> v^k.
  MPoly subst_pow(VarId v, long k) const;

  // Remainder of this by g, viewed as polynomials in v; g must be monic in v
  // (integer leading coefficient 1). Throws NonMonicModulus otherwise.
  MPoly rem_monic(const MPoly& g, VarId v) const;
  // Quotient+remainder; exact division helper returns nullopt when the
  // remainder is nonzero.
  std::pair<MPoly, MPoly> divmod_monic(const MPoly& g, VarId v) const;
  std::optional<MPoly> div_exact(const MPoly& g, VarId v) const;

  // Coefficientwise exact division; throws NotDivisible with the offending
  // total degree.
  MPoly div_exact_int(const Int& k) const;
  bool divisible_int(const Int& k) const;
  // Coefficientwise canonical reduction mod m (no-op when m == 0).
  MPoly reduce_coeffs(const Int& m) const;

  const std::map<Monomial, Int>& terms() const { return t_; }
  void set_term(const Monomial& m, Int c);  // normalizing

  std::string str() const;

 private:
  std::map<Monomial, Int> t_;
};

inline MPoly operator*(const Int& k, const MPoly& p) { return p.mul_int(k); }

}  // namespace twistkit
