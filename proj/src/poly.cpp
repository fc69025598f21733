#include "twistkit/poly.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace twistkit {

namespace {
std::mutex g_var_mutex;
std::unordered_map<std::string, VarId>& var_table() {
  static std::unordered_map<std::string, VarId> t;
  return t;
}
std::vector<std::string>& name_table() {
  static std::vector<std::string> t;
  return t;
}
}  // namespace

VarId var_id(const std::string& name) {
  std::lock_guard<std::mutex> lock(g_var_mutex);
  auto& tab = var_table();
  auto it = tab.find(name);
  if (it != tab.end()) return it->second;
  VarId id = static_cast<VarId>(name_table().size());
  name_table().push_back(name);
  tab.emplace(name, id);
  return id;
}

const std::string& var_name(VarId v) {
  std::lock_guard<std::mutex> lock(g_var_mutex);
  return name_table().at(static_cast<size_t>(v));
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first == b[j].first) {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i, ++j;
    } else if (a[i].first < b[j].first) {
      r.push_back(a[i++]);
    } else {
      r.push_back(b[j++]);
    }
  }
  for (; i < a.size(); ++i) r.push_back(a[i]);
  for (; j < b.size(); ++j) r.push_back(b[j]);
  return r;
}

int mono_deg(const Monomial& m, VarId v) {
  for (auto& [var, e] : m)
    if (var == v) return e;
  return 0;
}

long mono_total_deg(const Monomial& m) {
  long d = 0;
  for (auto& [var, e] : m) d += e;
  return d;
}

MPoly MPoly::constant(const Int& c) {
  MPoly p;
  if (c != 0) p.t_[Monomial{}] = c;
  return p;
}

MPoly MPoly::variable(VarId v, int exp) {
  MPoly p;
  if (exp == 0) return constant(1);
  p.t_[Monomial{{v, exp}}] = 1;
  return p;
}

bool MPoly::is_constant() const {
  return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty());
}

const Int& MPoly::constant_term() const {
  static const Int zero(0);
  auto it = t_.find(Monomial{});
  return it == t_.end() ? zero : it->second;
}

MPoly MPoly::operator+(const MPoly& o) const {
  MPoly r = *this;
  r += o;
  return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (auto& [m, c] : o.t_) {
    auto it = t_.find(m);
    if (it == t_.end()) {
      t_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) t_.erase(it);
    }
  }
  return *this;
}

MPoly MPoly::operator-(const MPoly& o) const {
  MPoly r = *this;
  r -= o;
  return r;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (auto& [m, c] : o.t_) {
    auto it = t_.find(m);
    if (it == t_.end()) {
      t_.emplace(m, -c);
    } else {
      it->second -= c;
      if (it->second == 0) t_.erase(it);
    }
  }
  return *this;
}

MPoly MPoly::operator-() const {
  MPoly r;
  for (auto& [m, c] : t_) r.t_.emplace(m, -c);
  return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
  MPoly r;
  for (auto& [ma, ca] : t_) {
    for (auto& [mb, cb] : o.t_) {
      Monomial m = mono_mul(ma, mb);
      auto it = r.t_.find(m);
      if (it == r.t_.end()) {
        Int prod = ca * cb;
        if (prod != 0) r.t_.emplace(std::move(m), std::move(prod));
      } else {
        it->second += ca * cb;
        if (it->second == 0) r.t_.erase(it);
      }
    }
  }
  return r;
}

MPoly MPoly::mul_int(const Int& k) const {
  MPoly r;
  if (k == 0) return r;
  for (auto& [m, c] : t_) r.t_.emplace(m, c * k);
  return r;
}

MPoly MPoly::pow(long e) const {
  if (e < 0) throw Precondition("negative exponent");
  MPoly r = constant(1);
  MPoly b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

long MPoly::degree(VarId v) const {
  long d = -1;
  for (auto& [m, c] : t_) d = std::max(d, static_cast<long>(mono_deg(m, v)));
  return d;
}

long MPoly::total_degree() const {
  long d = -1;
  for (auto& [m, c] : t_) d = std::max(d, mono_total_deg(m));
  return d;
}

MPoly MPoly::coeff_of(VarId v, long k) const {
  MPoly r;
  for (auto& [m, c] : t_) {
    if (mono_deg(m, v) != k) continue;
    Monomial rest;
    for (auto& [var, e] : m)
      if (var != v) rest.emplace_back(var, e);
    r.t_.emplace(std::move(rest), c);
  }
  return r;
}

std::vector<MPoly> MPoly::var_coeffs(VarId v) const {
  long d = degree(v);
  std::vector<MPoly> cs(static_cast<size_t>(std::max(d + 1, 1L)));
  for (auto& [m, c] : t_) {
    int k = mono_deg(m, v);
    Monomial rest;
    for (auto& [var, e] : m)
      if (var != v) rest.emplace_back(var, e);
    cs[static_cast<size_t>(k)].t_.emplace(std::move(rest), c);
  }
  return cs;
}

MPoly MPoly::from_var_coeffs(VarId v, const std::vector<MPoly>& cs) {
  MPoly r;
  for (size_t k = 0; k < cs.size(); ++k) {
    if (cs[k].is_zero()) continue;
    MPoly vk = k == 0 ? constant(1) : variable(v, static_cast<int>(k));
    r += cs[k] * vk;
  }
  return r;
}

bool MPoly::contains_var(VarId v) const {
  for (auto& [m, c] : t_)
    if (mono_deg(m, v) > 0) return true;
  return false;
}

std::vector<VarId> MPoly::vars() const {
  std::vector<VarId> vs;
  for (auto& [m, c] : t_)
    for (auto& [var, e] : m)
      if (std::find(vs.begin(), vs.end(), var) == vs.end()) vs.push_back(var);
  std::sort(vs.begin(), vs.end());
  return vs;
}

MPoly MPoly::subst(VarId v, const MPoly& g) const {
  // Group terms by exponent of v, then Horner in g.
  auto cs = var_coeffs(v);
  MPoly r;
  for (size_t k = cs.size(); k-- > 0;) {
    r = r * g;
    r += cs[k];
  }
  return r;
}

MPoly MPoly::subst_pow(VarId v, long k) const {
  MPoly r;
  for (auto& [m, c] : t_) {
    Monomial mm;
    for (auto& [var, e] : m)
      mm.emplace_back(var, var == v ? static_cast<int>(e * k) : e);
    std::sort(mm.begin(), mm.end());
    r.t_.emplace(std::move(mm), c);
  }
  return r;
}

std::pair<MPoly, MPoly> MPoly::divmod_monic(const MPoly& g, VarId v) const {
  long dg = g.degree(v);
  if (dg < 0) throw NonMonicModulus("zero modulus");
  MPoly lead = g.coeff_of(v, dg);
  if (!(lead.is_constant() && lead.constant_term() == 1))
    throw NonMonicModulus("modulus not monic in " + var_name(v) + ": " +
                          g.str());
  auto cs = var_coeffs(v);
  auto gs = g.var_coeffs(v);
  MPoly q;
  for (long d = static_cast<long>(cs.size()) - 1; d >= dg; --d) {
    MPoly c = cs[static_cast<size_t>(d)];
    if (c.is_zero()) continue;
    cs[static_cast<size_t>(d)] = MPoly();
    long shift = d - dg;
    q += c * (shift == 0 ? constant(1) : variable(v, static_cast<int>(shift)));
    for (long j = 0; j < dg; ++j) {
      if (gs[static_cast<size_t>(j)].is_zero()) continue;
      cs[static_cast<size_t>(shift + j)] -= c * gs[static_cast<size_t>(j)];
    }
  }
  cs.resize(static_cast<size_t>(std::max(dg, 1L)));
  return {q, from_var_coeffs(v, cs)};
}

MPoly MPoly::rem_monic(const MPoly& g, VarId v) const {
  return divmod_monic(g, v).second;
}

std::optional<MPoly> MPoly::div_exact(const MPoly& g, VarId v) const {
  auto [q, r] = divmod_monic(g, v);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

MPoly MPoly::div_exact_int(const Int& k) const {
  MPoly r;
  for (auto& [m, c] : t_) {
    if (!divisible(c, k))
      throw NotDivisible("coefficient " + c.get_str() + " at total degree " +
                             std::to_string(mono_total_deg(m)) +
                             " not divisible by " + k.get_str(),
                         mono_total_deg(m));
    r.t_.emplace(m, twistkit::div_exact(c, k));
  }
  return r;
}

bool MPoly::divisible_int(const Int& k) const {
  for (auto& [m, c] : t_)
    if (!divisible(c, k)) return false;
  return true;
}

MPoly MPoly::reduce_coeffs(const Int& m) const {
  if (m == 0) return *this;
  MPoly r;
  for (auto& [mo, c] : t_) {
    Int cc = mod_canonical(c, m);
    if (cc != 0) r.t_.emplace(mo, std::move(cc));
  }
  return r;
}

void MPoly::set_term(const Monomial& m, Int c) {
  if (c == 0)
    t_.erase(m);
  else
    t_[m] = std::move(c);
}

std::string MPoly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Print highest total degree first for readability.
  std::vector<std::pair<Monomial, Int>> terms(t_.begin(), t_.end());
  std::stable_sort(terms.begin(), terms.end(), [](auto& a, auto& b) {
    long da = mono_total_deg(a.first), db = mono_total_deg(b.first);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  for (auto& [m, c] : terms) {
    Int ab = abs(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool printed = false;
    if (ab != 1 || m.empty()) {
      os << ab.get_str();
      printed = true;
    }
    for (auto& [v, e] : m) {
      if (printed) os << "*";
      os << var_name(v);
      if (e != 1) os << "^" << e;
      printed = true;
    }
  }
  return os.str();
}

Int MPoly::leading_unit_check() const { return constant_term(); }

}  // namespace twistkit
