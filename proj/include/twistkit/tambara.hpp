#pragma once

#include <map>
#include <string>
#include <vector>

#include "twistkit/jsonio.hpp"
#include "twistkit/ring.hpp"

namespace twistkit::tambara {

// One summand V^{top}_{v_from} N^{v_from}_{n_from}(word). The word lists
// letter indices; with trivial Weyl actions it evaluates as a plain monomial.
struct Term {
  long v_from = 1;
  long n_from = 1;
  std::vector<int> word;
  Int mult = 1;
};

// A formal sum of transfer-of-norm terms. `labels` of levels are divisors
// (generated reciprocity rules) or p-typical levels (Brun decompositions);
// the paired realization interprets them.
struct Expression {
  enum class Kind { Sum, Transfer, Generic };
  Kind kind = Kind::Generic;
  long m = 1;  // top level
  long n = 1;  // middle level (transfer rules)
  long k = 1;  // source level
  std::vector<std::string> letters;
  std::vector<Term> terms;

  std::string word_str(const Term& t) const;
  std::string str() const;
  Json to_json() const;
  static Expression from_json(const Json& j);
  bool operator==(const Expression& o) const;
};

// N^m_k(x + y) expanded by orbit enumeration; k | m. Letters are {x, y}.
// Each orbit of binary words of length m/k under rotation, with stabilizer
// C_d, contributes V^m_d N^d_k(one primitive period).
Expression generate_sum_rule(long m, long k, long cap = 24);

// N^m_n V^n_k(x) expanded; k | n | m. Letters: {x}. Orbits of the twisted
// rotation action on choice functions Z/(m/n) -> Z/(n/k).
Expression generate_transfer_rule(long m, long n, long k, long cap = 24);

// Orbit count sanity for sum rules: sum_d #orbits(stab C_d) * (m/d) = 2^{m/k}.
bool orbit_count_check(const Expression& e);

// A realized Tambara structure with trivial Weyl actions. Levels are labeled
// by longs matching the expression's convention.
class Realization {
 public:
  virtual ~Realization() = default;
  virtual RingPtr level_ring(long level) const = 0;
  virtual Elem norm(long from, long to, const Elem& x) const = 0;
  virtual Elem transfer(long from, long to, const Elem& x) const = 0;
  virtual Elem sample(long level, Rng& rng) const = 0;
};

Elem evaluate(const Expression& e, const Realization& R,
              const std::vector<Elem>& letter_values);

struct RuleReport {
  bool pass = true;
  long samples = 0;
  std::string counterexample;  // empty when pass
};

// Check a generated rule against the direct norm in a realization.
RuleReport verify_rule(const Expression& e, const Realization& R, long samples,
                       Rng& rng);

// Trivial-functor specialization: V^m_d -> (m/d)*, N^d_k -> (.)^{d/k};
// the expression must collapse to (x+y)^{m/k} (sum) or ((n/k)x)^{m/n}
// (transfer) as an exact polynomial identity.
bool trivial_specialization_check(const Expression& e);

// Big Witt vectors over `base`; level d is W_{divisors(d)}(base).
class BigWittRealization : public Realization {
 public:
  explicit BigWittRealization(RingPtr base) : base_(std::move(base)) {}
  RingPtr level_ring(long level) const override;
  Elem norm(long from, long to, const Elem& x) const override;
  Elem transfer(long from, long to, const Elem& x) const override;
  Elem sample(long level, Rng& rng) const override;

 private:
  RingPtr base_;
};

// p-typical Witt vectors; level labels are levels 0..n (used by Brun
// decompositions).
class PTypicalWittRealization : public Realization {
 public:
  PTypicalWittRealization(RingPtr base, long p) : base_(std::move(base)), p_(p) {}
  RingPtr level_ring(long level) const override;
  Elem norm(long from, long to, const Elem& x) const override;
  Elem transfer(long from, long to, const Elem& x) const override;
  Elem sample(long level, Rng& rng) const override;

 private:
  RingPtr base_;
  long p_;
};

// Brun decomposition of a p-typical Witt vector: (a_0,...,a_n) =
// sum_i V^i N^{n-i}(a_i), with level labels 0..n and letters a0..an.
Expression brun_decompose_expression(long n);
// The decomposition of a concrete vector; evaluating the expression with
// the vector's own coordinates as letters reproduces it (brun_check).
Expression brun_decompose(const Elem& witt_vec);
bool brun_check(const Elem& witt_vec);

}  // namespace twistkit::tambara
