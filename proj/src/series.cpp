#include "twistkit/series.hpp"

#include <algorithm>
#include <sstream>

namespace twistkit {

Series Series::constant(const Int& c, long order) {
  Series s(order);
  if (c != 0 && order > 0) s.c_[0] = c;
  return s;
}

Series Series::variable(long order) {
  Series s(order);
  if (order > 1) s.c_[1] = 1;
  return s;
}

Series Series::from_poly(const MPoly& p, VarId v, long order) {
  Series s(order);
  for (auto& [m, c] : p.terms()) {
    if (m.size() > 1 || (m.size() == 1 && m[0].first != v))
      throw Precondition("series conversion needs a univariate polynomial");
    long k = m.empty() ? 0 : m[0].second;
    if (k < order) s.c_[k] = c;
  }
  return s;
}

Int Series::coeff(long k) const {
  auto it = c_.find(k);
  return it == c_.end() ? Int(0) : it->second;
}

void Series::set_coeff(long k, Int v) {
  if (v == 0)
    c_.erase(k);
  else if (k < order_)
    c_[k] = std::move(v);
}

long Series::valuation() const { return c_.empty() ? -1 : c_.begin()->first; }

Series Series::operator+(const Series& o) const {
  Series r(std::min(order_, o.order_));
  for (auto& [k, v] : c_)
    if (k < r.order_) r.c_[k] = v;
  for (auto& [k, v] : o.c_) {
    if (k >= r.order_) continue;
    auto it = r.c_.find(k);
    if (it == r.c_.end())
      r.c_[k] = v;
    else {
      it->second += v;
      if (it->second == 0) r.c_.erase(it);
    }
  }
  return r;
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator-() const {
  Series r(order_);
  for (auto& [k, v] : c_) r.c_[k] = -v;
  return r;
}

Series Series::operator*(const Series& o) const {
  Series r(std::min(order_, o.order_));
  for (auto& [ka, va] : c_) {
    for (auto& [kb, vb] : o.c_) {
      long k = ka + kb;
      if (k >= r.order_) break;
      auto it = r.c_.find(k);
      if (it == r.c_.end())
        r.c_[k] = va * vb;
      else {
        it->second += va * vb;
        if (it->second == 0) r.c_.erase(it);
      }
    }
  }
  return r;
}

bool Series::operator==(const Series& o) const {
  long n = std::min(order_, o.order_);
  for (long k = 0; k < n; ++k)
    if (coeff(k) != o.coeff(k)) return false;
  return true;
}

Series Series::mul_int(const Int& k) const {
  Series r(order_);
  if (k == 0) return r;
  for (auto& [d, v] : c_) r.c_[d] = v * k;
  return r;
}

Series Series::pow(long e) const {
  Series r = constant(1, order_);
  Series b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Series Series::truncated(long order) const {
  Series r(std::min(order, order_));
  for (auto& [k, v] : c_)
    if (k < r.order_) r.c_[k] = v;
  return r;
}

Series Series::compose(const Series& g) const {
  if (g.valuation() == 0)
    throw Precondition("series composition needs valuation >= 1");
  long ord = std::min(order_, g.order_);
  Series r = Series(ord);
  // Horner over the (finitely many) stored coefficients, highest first.
  if (c_.empty()) return r;
  long top = c_.rbegin()->first;
  for (long k = top; k >= 0; --k) {
    r = r * g;
    Int ck = coeff(k);
    if (ck != 0) r = r + constant(ck, ord);
  }
  return r;
}

std::optional<Series> Series::div_exact(const Series& g) const {
  long vg = g.valuation();
  if (vg < 0) return std::nullopt;  // division by zero series
  long ord = std::min(order_, g.order_) - vg;
  Series q(ord);
  const Int& c0 = g.c_.begin()->second;
  for (long k = 0; k < ord; ++k) {
    Int acc = coeff(k + vg);
    for (auto& [j, qj] : q.c_) {
      if (j >= k) break;
      acc -= qj * g.coeff(k + vg - j);
    }
    if (acc == 0) continue;
    if (!divisible(acc, c0)) return std::nullopt;
    q.c_[k] = twistkit::div_exact(acc, c0);
  }
  // check: valuation of numerator at least vg
  for (auto& [k, v] : c_) {
    if (k >= vg) break;
    if (v != 0) return std::nullopt;
  }
  return q;
}

Series Series::div_exact_int(const Int& k) const {
  Series r(order_);
  for (auto& [d, v] : c_) {
    if (!divisible(v, k))
      throw NotDivisible("series coefficient at degree " + std::to_string(d), d);
    r.c_[d] = twistkit::div_exact(v, k);
  }
  return r;
}

bool Series::divisible_int(const Int& k) const {
  for (auto& [d, v] : c_)
    if (!divisible(v, k)) return false;
  return true;
}

Series Series::inverse() const {
  Int c0 = coeff(0);
  if (c0 != 1 && c0 != -1)
    throw Precondition("series inverse needs constant term +-1");
  Series q(order_);
  for (long k = 0; k < order_; ++k) {
    Int acc = (k == 0) ? Int(1) : Int(0);
    for (auto& [j, qj] : q.c_) {
      if (j >= k) break;
      acc -= qj * coeff(k - j);
    }
    if (acc == 0) continue;
    q.c_[k] = acc * c0;  // 1/c0 == c0 for +-1
  }
  return q;
}

std::string Series::str() const {
  std::ostringstream os;
  bool first = true;
  for (auto& [k, v] : c_) {
    if (first) {
      if (v < 0) os << "-";
      first = false;
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    Int ab = abs(v);
    if (ab != 1 || k == 0) os << ab.get_str();
    if (k > 0) {
      if (ab != 1) os << "*";
      os << "u";
      if (k > 1) os << "^" << k;
    }
  }
  if (first) os << "0";
  os << " + O(u^" << order_ << ")";
  return os.str();
}

}  // namespace twistkit
