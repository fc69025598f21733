#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twistkit/linalg.hpp"
#include "twistkit/parse.hpp"
#include "twistkit/ring.hpp"

using namespace twistkit;

namespace {
VarId Q() { return var_id("q"); }

MPoly q_an(long n, long stretch = 1) {
  MPoly r;
  for (long i = 0; i < n; ++i)
    r += i == 0 ? MPoly::constant(1)
                : MPoly::variable(Q(), static_cast<int>(i * stretch));
  return r;
}
}  // namespace

TEST_CASE("polynomial remainder by monic moduli") {
  MPoly q = MPoly::variable(Q());
  MPoly q3 = MPoly::variable(Q(), 3);
  CHECK(q3.rem_monic(q + MPoly::constant(1), Q()) == MPoly::constant(-1));

  // q^6 - 1 is divisible by the 6th cyclotomic; verify by re-multiplying.
  MPoly q6m1 = MPoly::variable(Q(), 6) - MPoly::constant(1);
  MPoly phi6 = MPoly::variable(Q(), 2) - q + MPoly::constant(1);
  CHECK(q6m1.rem_monic(phi6, Q()).is_zero());
  auto quot = q6m1.div_exact(phi6, Q());
  REQUIRE(quot.has_value());
  CHECK(*quot * phi6 == q6m1);

  // (4)_q = (2)_q (2)_{q^2}, so the remainder is exactly zero; the nearby
  // fact is (2)_{q^2} = 2 mod (2)_q.
  CHECK(q_an(4).rem_monic(q_an(2), Q()).is_zero());
  CHECK(q_an(2, 2).rem_monic(q_an(2), Q()) == MPoly::constant(2));

  CHECK_THROWS_AS(q3.rem_monic(MPoly::constant(2) * q, Q()), NonMonicModulus);
}

TEST_CASE("remainder is linear and multiplicative") {
  Rng rng(7);
  auto PR = PolyRing::over_z({"q"});
  MPoly m = q_an(4);
  for (int s = 0; s < 30; ++s) {
    MPoly f = sample_ring_elem(PR, rng).as<MPoly>();
    MPoly g = sample_ring_elem(PR, rng).as<MPoly>();
    CHECK((f + g).rem_monic(m, Q()) ==
          (f.rem_monic(m, Q()) + g.rem_monic(m, Q())).rem_monic(m, Q()));
    CHECK((f * g).rem_monic(m, Q()) ==
          (f.rem_monic(m, Q()) * g.rem_monic(m, Q())).rem_monic(m, Q()));
  }
}

TEST_CASE("coefficientwise exact division") {
  MPoly f = MPoly::constant(2) * MPoly::variable(Q()) + MPoly::constant(4);
  CHECK(f.div_exact_int(2) == MPoly::variable(Q()) + MPoly::constant(2));
  CHECK(f.div_exact_int(1) == f);
  MPoly bad = MPoly::constant(3) * MPoly::variable(Q()) + MPoly::constant(4);
  CHECK_THROWS_AS(bad.div_exact_int(2), NotDivisible);
  try {
    bad.div_exact_int(2);
  } catch (const NotDivisible& e) {
    CHECK(e.degree >= 0);  // carries the offending degree
  }
  // phi(q) - q^2 over phi(q) = q^2 is zero; dividing by 2 stays zero.
  MPoly z = MPoly::variable(Q(), 2) - MPoly::variable(Q()).subst_pow(Q(), 2);
  CHECK(z.div_exact_int(2).is_zero());
}

TEST_CASE("quotient rings are free modules of the modulus degree") {
  for (long p : {2L, 3L}) {
    for (long n = 1; n <= 3; ++n) {
      long pn = 1;
      for (long i = 0; i < n; ++i) pn *= p;
      auto R = QuotRing::create(Q(), q_an(pn));
      CHECK(R->rank() == pn - 1);
      Rng rng(11);
      for (int s = 0; s < 10; ++s) {
        Elem x = sample_ring_elem(R, rng);
        CHECK(R->lift(x).degree(Q()) < R->rank());
      }
    }
  }
  // coefficient modulus reduces representatives
  auto Rm = QuotRing::create(Q(), q_an(3), Int(8));
  Elem e = Rm->make(MPoly::constant(13) * MPoly::variable(Q()));
  CHECK(Rm->lift(e) == MPoly::constant(5) * MPoly::variable(Q()));
}

TEST_CASE("p-adic linear solve") {
  // identity system
  IntMatrix id{{1, 0}, {0, 1}};
  IntVector b{3, 5};
  auto x = linear_solve_mod(id, b, 2, 8);
  CHECK(x[0] == 3);
  CHECK(x[1] == 5);

  // u * 2 == 2 mod 2^3 -> u in {1, 5}; substitution check
  IntMatrix m{{2}};
  IntVector rhs{2};
  auto u = linear_solve_mod(m, rhs, 2, 3);
  CHECK(mod_canonical(u[0] * 2 - 2, int_pow(2, 3)) == 0);

  // inconsistent: 2u == 1 mod 8
  CHECK_THROWS_AS(linear_solve_mod(m, IntVector{1}, 2, 3), NoSolution);

  // random substitution property
  Rng rng(3);
  for (int s = 0; s < 20; ++s) {
    IntMatrix M(3, IntVector(3));
    IntVector xs(3), bb(3, Int(0));
    for (int i = 0; i < 3; ++i) {
      xs[static_cast<size_t>(i)] = rng.uniform(-20, 20);
      for (int j = 0; j < 3; ++j) M[i][j] = rng.uniform(-9, 9);
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) bb[i] += M[i][j] * xs[static_cast<size_t>(j)];
    Int p3 = int_pow(3, 10);
    auto sol = linear_solve_mod(M, bb, 3, 10);
    for (int i = 0; i < 3; ++i) {
      Int acc = 0;
      for (int j = 0; j < 3; ++j) acc += M[i][j] * sol[static_cast<size_t>(j)];
      CHECK(mod_canonical(acc - bb[i], p3) == 0);
    }
  }
}

TEST_CASE("exact integer linear solve") {
  IntMatrix M{{2, 1}, {1, 1}};
  auto sol = linear_solve_exact(M, IntVector{5, 3});
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] == 2);
  CHECK((*sol)[1] == 1);
  // non-integral unique solution
  CHECK(!linear_solve_exact(IntMatrix{{2}}, IntVector{1}).has_value());
  // inconsistent
  CHECK(!linear_solve_exact(IntMatrix{{1}, {1}}, IntVector{1, 2}).has_value());
}

TEST_CASE("mobius") {
  CHECK(mobius(1) == 1);
  CHECK(mobius(6) == 1);
  CHECK(mobius(12) == 0);
  CHECK(mobius(30) == -1);
  CHECK_THROWS_AS(mobius(0), Precondition);
}

TEST_CASE("series arithmetic") {
  long N = 16;
  Series u = Series::variable(N);
  Series two_u = u.mul_int(2) + Series::constant(4, N) * u * u;
  auto half = two_u.div_exact_int(2);
  CHECK(half == u + Series::constant(2, N) * u * u);

  // inverse of 1 + u
  Series inv = (Series::constant(1, N) + u).inverse();
  CHECK(inv * (Series::constant(1, N) + u) == Series::constant(1, N));

  // exact series division with non-unit lowest coefficient:
  // 4u / (2u + 4u^4) = 2 - 4u^3 + 8u^6 - ...
  Series num = u.mul_int(4);
  Series den = u.mul_int(2) + (u * u * u * u).mul_int(4);
  auto q = num.div_exact(den);
  REQUIRE(q.has_value());
  CHECK((*q * den) == num);
  CHECK(q->coeff(0) == 2);
  CHECK(q->coeff(3) == -4);
  // 4u / (2u + u^4) is not integral
  CHECK(!num.div_exact(u.mul_int(2) + u * u * u * u).has_value());

  // composition
  Series g = u.mul_int(1) + u * u;  // u + u^2
  Series f = u * u;                 // u^2
  CHECK(f.compose(g) == g * g);
}

TEST_CASE("polynomial expression parser") {
  CHECK(parse_poly("q^2-3*q+1") ==
        MPoly::variable(Q(), 2) - MPoly::constant(3) * MPoly::variable(Q()) +
            MPoly::constant(1));
  CHECK(parse_poly("(q+1)^2") ==
        MPoly::variable(Q(), 2) + MPoly::constant(2) * MPoly::variable(Q()) +
            MPoly::constant(1));
  CHECK(parse_poly("-5") == MPoly::constant(-5));
  auto pieces = parse_poly_list("3,5,q+1");
  CHECK(pieces.size() == 3);
  CHECK(pieces[2] == MPoly::variable(Q()) + MPoly::constant(1));
  CHECK_THROWS_AS(parse_poly("q+"), Precondition);
}

TEST_CASE("deterministic rng") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform(-50, 50) == b.uniform(-50, 50));
}
