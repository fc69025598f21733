#include "twistkit/tambara.hpp"

#include <algorithm>
#include <sstream>

#include "twistkit/witt.hpp"

namespace twistkit {

Elem sample_ring_elem(const RingPtr& R, Rng& rng) {
  if (auto z = dynamic_cast<const ZRing*>(R.get()))
    return z->make(Int(rng.uniform(-9, 9)));
  if (auto pr = dynamic_cast<const PolyRing*>(R.get())) {
    MPoly p;
    long nterms = rng.uniform(1, 3);
    for (long t = 0; t < nterms; ++t) {
      Monomial m;
      for (VarId v : pr->vars()) {
        int e = static_cast<int>(rng.uniform(0, 2));
        if (e > 0) m.emplace_back(v, e);
      }
      std::sort(m.begin(), m.end());
      Int c(rng.uniform(-9, 9));
      if (c == 0) c = 1;
      MPoly term;
      term.set_term(m, c);
      p += term;
    }
    return pr->make(p);
  }
  if (auto qr = dynamic_cast<const QuotRing*>(R.get())) {
    MPoly p;
    long maxdeg = std::min(qr->rank() - 1, 4L);
    long nterms = rng.uniform(1, 3);
    for (long t = 0; t < nterms; ++t) {
      int e = static_cast<int>(rng.uniform(0, maxdeg));
      Int c(rng.uniform(-9, 9));
      if (c == 0) c = 1;
      MPoly term;
      term.set_term(e == 0 ? Monomial{} : Monomial{{qr->var(), e}}, c);
      p += term;
    }
    return qr->make(p);
  }
  if (auto sr = dynamic_cast<const SeriesRing*>(R.get())) {
    Series s(sr->order());
    long nterms = rng.uniform(1, 3);
    for (long t = 0; t < nterms; ++t)
      s.set_coeff(rng.uniform(0, 4), Int(rng.uniform(-9, 9)));
    return sr->make(s);
  }
  if (auto wr = dynamic_cast<const witt::WittRing*>(R.get())) {
    std::vector<Elem> coords;
    for (size_t i = 0; i < wr->trunc().size(); ++i)
      coords.push_back(sample_ring_elem(wr->base(), rng));
    return wr->make(std::move(coords));
  }
  throw Precondition("no sampler for ring " + R->key());
}

}  // namespace twistkit

namespace twistkit::tambara {

std::string Expression::word_str(const Term& t) const {
  bool compact = true;
  for (auto& l : letters)
    if (l.size() != 1) compact = false;
  std::ostringstream os;
  for (size_t i = 0; i < t.word.size(); ++i) {
    if (!compact && i) os << "*";
    os << letters[static_cast<size_t>(t.word[i])];
  }
  return os.str();
}

std::string Expression::str() const {
  std::ostringstream os;
  if (kind == Kind::Sum)
    os << "N^" << m << "_" << k << "(x+y) = ";
  else if (kind == Kind::Transfer)
    os << "N^" << m << "_" << n << " V^" << n << "_" << k << "(x) = ";
  bool first = true;
  for (auto& t : terms) {
    if (!first) os << " + ";
    first = false;
    if (t.mult != 1) os << t.mult.get_str() << "*";
    if (t.v_from != m) os << "V^" << m << "_" << t.v_from << " ";
    if (t.n_from != t.v_from)
      os << "N^" << t.v_from << "_" << t.n_from << "(" << word_str(t) << ")";
    else
      os << "(" << word_str(t) << ")";
  }
  return os.str();
}

Json Expression::to_json() const {
  Json jt = Json::array();
  for (auto& t : terms)
    jt.push_back(Json{{"v_from", t.v_from},
                      {"n_from", t.n_from},
                      {"word", word_str(t)},
                      {"mult", t.mult.get_str()}});
  const char* ks = kind == Kind::Sum       ? "sum"
                   : kind == Kind::Transfer ? "transfer"
                                            : "generic";
  Json j{{"kind", ks}, {"m", m}, {"k", k}, {"letters", letters}, {"terms", jt}};
  if (kind == Kind::Transfer) j["n"] = n;
  return j;
}

Expression Expression::from_json(const Json& j) {
  Expression e;
  std::string ks = j.at("kind").get<std::string>();
  e.kind = ks == "sum"       ? Kind::Sum
           : ks == "transfer" ? Kind::Transfer
                              : Kind::Generic;
  e.m = j.at("m").get<long>();
  e.k = j.at("k").get<long>();
  if (j.contains("n")) e.n = j.at("n").get<long>();
  e.letters = j.at("letters").get<std::vector<std::string>>();
  bool compact = true;
  for (auto& l : e.letters)
    if (l.size() != 1) compact = false;
  for (auto& jt : j.at("terms")) {
    Term t;
    t.v_from = jt.at("v_from").get<long>();
    t.n_from = jt.at("n_from").get<long>();
    t.mult = Int(jt.at("mult").get<std::string>());
    std::string w = jt.at("word").get<std::string>();
    if (compact) {
      for (char c : w) {
        for (size_t i = 0; i < e.letters.size(); ++i)
          if (e.letters[i][0] == c) t.word.push_back(static_cast<int>(i));
      }
    } else {
      std::istringstream is(w);
      std::string part;
      while (std::getline(is, part, '*'))
        for (size_t i = 0; i < e.letters.size(); ++i)
          if (e.letters[i] == part) t.word.push_back(static_cast<int>(i));
    }
    e.terms.push_back(std::move(t));
  }
  return e;
}

bool Expression::operator==(const Expression& o) const {
  if (kind != o.kind || m != o.m || k != o.k || letters != o.letters ||
      terms.size() != o.terms.size())
    return false;
  if (kind == Kind::Transfer && n != o.n) return false;
  for (size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].v_from != o.terms[i].v_from ||
        terms[i].n_from != o.terms[i].n_from ||
        terms[i].word != o.terms[i].word || terms[i].mult != o.terms[i].mult)
      return false;
  }
  return true;
}

namespace {

void sort_terms(Expression& e) {
  std::sort(e.terms.begin(), e.terms.end(), [](const Term& a, const Term& b) {
    if (a.v_from != b.v_from) return a.v_from > b.v_from;
    if (a.word != b.word) return a.word < b.word;
    return a.n_from < b.n_from;
  });
}

}  // namespace

Expression generate_sum_rule(long m, long k, long cap) {
  if (k < 1 || m % k != 0) throw Precondition("need k | m");
  if (m > cap) throw Precondition("index above enumeration cap");
  long r = m / k;
  if (r > 30) throw Precondition("word length too large");
  Expression e;
  e.kind = Expression::Kind::Sum;
  e.m = m;
  e.k = k;
  e.letters = {"x", "y"};

  const unsigned long total = 1UL << r;
  std::vector<bool> seen(total, false);
  std::map<std::pair<long, std::vector<int>>, Int> acc;

  auto rotate = [&](unsigned long w) {
    // position i -> i+1; new[i] = old[i-1]
    return ((w << 1) & (total - 1)) | (w >> (r - 1));
  };
  auto word_of = [&](unsigned long w) {
    std::vector<int> v(static_cast<size_t>(r));
    for (long i = 0; i < r; ++i) v[static_cast<size_t>(i)] = (w >> i) & 1;
    return v;
  };

  for (unsigned long w0 = 0; w0 < total; ++w0) {
    if (seen[w0]) continue;
    std::vector<unsigned long> orbit;
    unsigned long w = w0;
    do {
      seen[w] = true;
      orbit.push_back(w);
      w = rotate(w);
    } while (w != w0);
    long period = static_cast<long>(orbit.size());
    long d = m / period;
    // canonical representative: lexicographically least rotation
    std::vector<int> best = word_of(orbit[0]);
    for (auto ww : orbit) best = std::min(best, word_of(ww));
    std::vector<int> head(best.begin(), best.begin() + period);
    acc[{d, head}] += 1;
  }

  for (auto& [key, mult] : acc) {
    Term t;
    t.v_from = key.first;
    t.n_from = k;
    t.word = key.second;
    t.mult = mult;
    e.terms.push_back(std::move(t));
  }
  sort_terms(e);
  return e;
}

Expression generate_transfer_rule(long m, long n, long k, long cap) {
  if (k < 1 || n % k != 0 || m % n != 0) throw Precondition("need k | n | m");
  if (m > cap) throw Precondition("index above enumeration cap");
  const long P = m / n;   // positions
  const long A = n / k;   // letters per position
  const long M = m / k;   // slot space
  double count = 1;
  for (long i = 0; i < P; ++i) count *= static_cast<double>(A);
  if (count > (1 << 24)) throw Precondition("enumeration too large");
  const long total = static_cast<long>(count);

  Expression e;
  e.kind = Expression::Kind::Transfer;
  e.m = m;
  e.n = n;
  e.k = k;
  e.letters = {"x"};

  auto decode = [&](long code) {
    std::vector<long> c(static_cast<size_t>(P));
    for (long i = 0; i < P; ++i) {
      c[static_cast<size_t>(i)] = code % A;
      code /= A;
    }
    return c;
  };
  auto encode = [&](const std::vector<long>& c) {
    long code = 0;
    for (long i = P - 1; i >= 0; --i) code = code * A + c[static_cast<size_t>(i)];
    return code;
  };
  // One step of the twisted rotation: slots t -> t+1 mod M.
  auto step = [&](const std::vector<long>& c) {
    std::vector<long> out(static_cast<size_t>(P));
    for (long i = 0; i < P; ++i) {
      long t = (i + P * c[static_cast<size_t>(i)] + 1) % M;
      out[static_cast<size_t>(t % P)] = t / P;
    }
    return out;
  };

  std::vector<bool> seen(static_cast<size_t>(total), false);
  std::map<std::pair<long, std::vector<int>>, Int> acc;
  for (long c0 = 0; c0 < total; ++c0) {
    if (seen[static_cast<size_t>(c0)]) continue;
    long size = 0;
    std::vector<long> c = decode(c0);
    long cur = c0;
    do {
      seen[static_cast<size_t>(cur)] = true;
      ++size;
      c = step(c);
      cur = encode(c);
    } while (cur != c0);
    long d = m / size;
    if (gcd_long(n, d) != k)
      throw Error("Internal", "transfer orbit with unexpected stabilizer");
    long cnt = (m / d) / (n / k);  // letters in one fundamental domain
    std::vector<int> word(static_cast<size_t>(cnt), 0);
    acc[{d, word}] += 1;
  }

  for (auto& [key, mult] : acc) {
    Term t;
    t.v_from = key.first;
    t.n_from = k;
    t.word = key.second;
    t.mult = mult;
    e.terms.push_back(std::move(t));
  }
  sort_terms(e);
  return e;
}

bool orbit_count_check(const Expression& e) {
  if (e.kind != Expression::Kind::Sum) return true;
  Int total(0);
  for (auto& t : e.terms) total += t.mult * Int(e.m / t.v_from);
  return total == int_pow(2, static_cast<unsigned long>(e.m / e.k));
}

Elem evaluate(const Expression& e, const Realization& R,
              const std::vector<Elem>& letter_values) {
  if (letter_values.size() != e.letters.size())
    throw LevelMismatch("letter count");
  RingPtr top = R.level_ring(e.m);
  Elem acc = top->zero();
  for (auto& t : e.terms) {
    RingPtr src = R.level_ring(t.n_from);
    Elem prod = src->one();
    for (int li : t.word)
      prod = prod * letter_values[static_cast<size_t>(li)];
    Elem nv = t.v_from == t.n_from ? prod : R.norm(t.n_from, t.v_from, prod);
    Elem tv = t.v_from == e.m ? nv : R.transfer(t.v_from, e.m, nv);
    acc = acc + tv.scaled(t.mult);
  }
  return acc;
}

RuleReport verify_rule(const Expression& e, const Realization& R, long samples,
                       Rng& rng) {
  RuleReport rep;
  rep.samples = samples;
  for (long s = 0; s < samples; ++s) {
    std::vector<Elem> letters;
    for (size_t i = 0; i < e.letters.size(); ++i)
      letters.push_back(R.sample(e.k, rng));
    Elem direct;
    if (e.kind == Expression::Kind::Sum) {
      direct = R.norm(e.k, e.m, letters[0] + letters[1]);
    } else if (e.kind == Expression::Kind::Transfer) {
      Elem v = e.n == e.k ? letters[0] : R.transfer(e.k, e.n, letters[0]);
      direct = e.m == e.n ? v : R.norm(e.n, e.m, v);
    } else {
      throw Precondition("verify_rule needs a sum or transfer rule");
    }
    Elem expanded = evaluate(e, R, letters);
    if (!(direct == expanded)) {
      rep.pass = false;
      std::ostringstream os;
      os << "letters:";
      for (auto& l : letters) os << " " << l.str();
      os << " direct=" << direct.str() << " expanded=" << expanded.str();
      rep.counterexample = os.str();
      return rep;
    }
  }
  return rep;
}

bool trivial_specialization_check(const Expression& e) {
  auto PR = PolyRing::over_z({"x", "y"});
  Elem x = PR->var_elem(var_id("x"));
  Elem y = PR->var_elem(var_id("y"));
  std::vector<Elem> letters;
  for (auto& name : e.letters) letters.push_back(name == "y" ? y : x);
  Elem acc = PR->zero();
  for (auto& t : e.terms) {
    Elem prod = PR->one();
    for (int li : t.word) prod = prod * letters[static_cast<size_t>(li)];
    Elem nv = prod.pow(t.v_from / t.n_from);
    Elem tv = nv.scaled(Int(e.m / t.v_from));
    acc = acc + tv.scaled(t.mult);
  }
  Elem expected;
  if (e.kind == Expression::Kind::Sum) {
    expected = (x + y).pow(e.m / e.k);
  } else {
    expected = x.scaled(Int(e.n / e.k)).pow(e.m / e.n);
  }
  return acc == expected;
}

// ---------------------------------------------------------------------------
// Realizations

RingPtr BigWittRealization::level_ring(long level) const {
  return witt::WittRing::create(base_, witt::TruncSet::divisors_set(level));
}

Elem BigWittRealization::norm(long from, long to, const Elem& x) const {
  return witt::N_int(x, from, to);
}

Elem BigWittRealization::transfer(long from, long to, const Elem& x) const {
  return witt::V_int(x, from, to);
}

Elem BigWittRealization::sample(long level, Rng& rng) const {
  return sample_ring_elem(level_ring(level), rng);
}

RingPtr PTypicalWittRealization::level_ring(long level) const {
  return witt::WittRing::create(base_, witt::TruncSet::p_typ(p_, level));
}

Elem PTypicalWittRealization::norm(long from, long to, const Elem& x) const {
  Elem r = x;
  for (long l = from; l < to; ++l) r = witt::N(r);
  return r;
}

Elem PTypicalWittRealization::transfer(long from, long to, const Elem& x) const {
  Elem r = x;
  for (long l = from; l < to; ++l) r = witt::V(r);
  return r;
}

Elem PTypicalWittRealization::sample(long level, Rng& rng) const {
  return sample_ring_elem(level_ring(level), rng);
}

// ---------------------------------------------------------------------------
// Brun decomposition

Expression brun_decompose_expression(long n) {
  Expression e;
  e.kind = Expression::Kind::Generic;
  e.m = n;
  e.k = 0;
  for (long i = 0; i <= n; ++i) e.letters.push_back("a" + std::to_string(i));
  for (long i = 0; i <= n; ++i) {
    Term t;
    t.v_from = n - i;  // N^{n-i} lands here, then V^i up to n
    t.n_from = 0;
    t.word = {static_cast<int>(i)};
    t.mult = 1;
    e.terms.push_back(std::move(t));
  }
  return e;
}

Expression brun_decompose(const Elem& witt_vec) {
  auto& W = static_cast<const witt::WittRing&>(witt_vec.ring());
  if (!W.trunc().p_typical) throw Precondition("p-typical expected");
  return brun_decompose_expression(W.trunc().n);
}

bool brun_check(const Elem& witt_vec) {
  auto& W = static_cast<const witt::WittRing&>(witt_vec.ring());
  if (!W.trunc().p_typical) throw Precondition("p-typical expected");
  long n = W.trunc().n;
  auto expr = brun_decompose_expression(n);
  PTypicalWittRealization R(W.base(), W.trunc().p);
  auto W0 = R.level_ring(0);
  auto& w0r = static_cast<const witt::WittRing&>(*W0);
  std::vector<Elem> letters;
  for (auto& c : W.coords(witt_vec)) letters.push_back(w0r.make({c}));
  Elem rebuilt = evaluate(expr, R, letters);
  return rebuilt == witt_vec;
}

}  // namespace twistkit::tambara
