#include "zetafock/fock.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "zetafock/bernoulli.hpp"

namespace zetafock::fock {

namespace {

long floor_mod(long a, long m) { return ((a % m) + m) % m; }

}  // namespace

TwistSetup TwistSetup::make(int p, std::vector<int> dims) {
  if (p < 1) throw InvalidSetup("p must be positive");
  if (static_cast<int>(dims.size()) != p)
    throw InvalidSetup("dims must list one dimension per eigenvalue index (expected " + std::to_string(p) + ")");
  int d = 0;
  for (int k = 0; k < p; ++k) {
    if (dims[static_cast<std::size_t>(k)] < 0) throw InvalidSetup("dims must be nonnegative");
    d += dims[static_cast<std::size_t>(k)];
  }
  if (d < 1) throw InvalidSetup("total dimension must be at least 1");
  for (int k = 0; k < p; ++k) {
    const int kb = (p - k) % p;
    if (dims[static_cast<std::size_t>(k)] != dims[static_cast<std::size_t>(kb)])
      throw InvalidSetup("invariant d_k = d_{(p-k) mod p} violated at k=" + std::to_string(k) + ": " +
                         std::to_string(dims[static_cast<std::size_t>(k)]) + " != " +
                         std::to_string(dims[static_cast<std::size_t>(kb)]));
  }
  return TwistSetup{p, std::move(dims)};
}

int TwistSetup::total_dim() const {
  int d = 0;
  for (int x : dims) d += x;
  return d;
}

void to_json(nlohmann::json& j, const TwistSetup& s) { j = {{"p", s.p}, {"dims", s.dims}}; }

void from_json(const nlohmann::json& j, TwistSetup& s) {
  s = TwistSetup::make(j.at("p").get<int>(), j.at("dims").get<std::vector<int>>());
}

ModeSpace::ModeSpace(const TwistSetup& setup, int q) : setup_(setup), q_(q) {
  for (int k = 0; k < setup.p; ++k)
    for (int a = 1; a <= setup.dims[static_cast<std::size_t>(k)]; ++a) species_.push_back({k, a});
  for (const auto& s : species_) partner_.push_back(index_of(setup.dual(s.k), s.a));
}

ModeSpace ModeSpace::twisted(const TwistSetup& setup) { return ModeSpace(setup, setup.p); }
ModeSpace ModeSpace::untwisted(const TwistSetup& setup) { return ModeSpace(setup, 1); }

int ModeSpace::index_of(int k, int a) const {
  for (std::size_t i = 0; i < species_.size(); ++i)
    if (species_[i].k == k && species_[i].a == a) return static_cast<int>(i);
  throw std::out_of_range("no species with k=" + std::to_string(k) + ", a=" + std::to_string(a));
}

long ModeSpace::level_class(int sigma) const {
  return q_ == 1 ? 0 : species_[static_cast<std::size_t>(sigma)].k;
}

bool ModeSpace::allowed(int sigma, long lnum) const { return floor_mod(lnum, q_) == level_class(sigma); }

long degree_num(const Monomial& m) {
  long d = 0;
  for (const auto& mode : m) d -= mode.lnum;
  return d;
}

FockVector FockVector::vacuum(int p) { return basis(p, {}, Cyclotomic(p, Rational(1))); }

FockVector FockVector::basis(int p, Monomial m, const Cyclotomic& c) {
  FockVector v(p);
  v.add(std::move(m), c);
  return v;
}

Cyclotomic FockVector::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Cyclotomic(p_) : it->second;
}

void FockVector::add(const Monomial& m, const Cyclotomic& c) { add(Monomial(m), c); }

void FockVector::add(Monomial&& m, const Cyclotomic& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(std::move(m), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

FockVector& FockVector::operator+=(const FockVector& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

FockVector& FockVector::operator-=(const FockVector& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

FockVector& FockVector::operator*=(const Cyclotomic& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, x] : terms_) x *= c;
  return *this;
}

FockVector& FockVector::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, x] : terms_) x *= c;
  return *this;
}

std::string FockVector::str(const ModeSpace& space) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    os << (first ? "" : " + ") << "(" << c << ")";
    first = false;
    for (const auto& mode : m) {
      const auto& s = space.species()[static_cast<std::size_t>(mode.species)];
      os << " b[" << s.k << "," << s.a << "](" << space.level(mode.lnum) << ")";
    }
    if (m.empty()) os << " vac";
  }
  return os.str();
}

nlohmann::json cyclotomic_json(const Cyclotomic& c) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& q : c.coefficients()) out.push_back(q.str());
  return out;
}

nlohmann::json monomial_json(const ModeSpace& space, const Monomial& m) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& mode : m) {
    const auto& s = space.species()[static_cast<std::size_t>(mode.species)];
    out.push_back({s.k, s.a, space.level(mode.lnum).str()});
  }
  return out;
}

nlohmann::json to_json(const ModeSpace& space, const FockVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [m, c] : v.terms())
    out.push_back({{"monomial", monomial_json(space, m)}, {"coeff", cyclotomic_json(c)}});
  return out;
}

namespace {

void insert_mode(Monomial& m, const Mode& mode) { m.insert(std::upper_bound(m.begin(), m.end(), mode), mode); }

// Contracts an annihilation mode (lnum > 0) against m. Returns false when the
// result vanishes; otherwise removes one partner mode and scales `coef`.
bool contract(const ModeSpace& space, const Mode& mode, Monomial& m, Rational& coef) {
  const Mode target{space.partner(mode.species), -mode.lnum};
  const auto [lo, hi] = std::equal_range(m.begin(), m.end(), target);
  const long count = hi - lo;
  if (count == 0) return false;
  coef *= Rational(count) * space.level(mode.lnum);
  m.erase(lo);
  return true;
}

// :a b: applied to a monomial; at most one monomial results.
bool normal_ordered_pair(const ModeSpace& space, const Mode& a, const Mode& b, Monomial& m, Rational& coef) {
  if (a.lnum == 0 || b.lnum == 0) return false;
  if (a.lnum > 0 && !contract(space, a, m, coef)) return false;
  if (b.lnum > 0 && !contract(space, b, m, coef)) return false;
  if (a.lnum < 0) insert_mode(m, a);
  if (b.lnum < 0) insert_mode(m, b);
  return true;
}

bool single_mode(const ModeSpace& space, const Mode& a, Monomial& m, Rational& coef) {
  if (a.lnum == 0) return false;
  if (a.lnum > 0) return contract(space, a, m, coef);
  insert_mode(m, a);
  return true;
}

Cyclotomic eval_kernel(const std::vector<Cyclotomic>& k, const Rational& j, int p) {
  Cyclotomic acc(p);
  for (auto it = k.rbegin(); it != k.rend(); ++it) acc = acc * j + *it;
  return acc;
}

void trim(std::vector<Cyclotomic>& k) {
  while (!k.empty() && k.back().is_zero()) k.pop_back();
}

}  // namespace

FockVector apply_mode(const ModeSpace& space, const Mode& mode, const FockVector& v) {
  FockVector out(v.p());
  if (!space.allowed(mode.species, mode.lnum)) throw std::invalid_argument("apply_mode: level not allowed");
  for (const auto& [m, c] : v.terms()) {
    Monomial mm = m;
    Rational coef(1);
    if (single_mode(space, mode, mm, coef)) out.add(std::move(mm), c * coef);
  }
  return out;
}

std::vector<std::vector<Monomial>> enumerate_basis(const ModeSpace& space, long max_degree_num) {
  std::vector<std::vector<Monomial>> out(static_cast<std::size_t>(std::max(0L, max_degree_num)) + 1);
  std::vector<Mode> parts;
  for (long l = 1; l <= max_degree_num; ++l)
    for (int s = 0; s < static_cast<int>(space.species().size()); ++s)
      if (space.allowed(s, -l)) parts.push_back({s, -l});
  Monomial current;
  // Chooses multiplicities part by part; `current` stays sorted after the final sort.
  auto rec = [&](auto&& self, std::size_t idx, long remaining) -> void {
    if (idx == parts.size()) {
      Monomial m = current;
      std::sort(m.begin(), m.end());
      out[static_cast<std::size_t>(max_degree_num - remaining)].push_back(std::move(m));
      return;
    }
    const long size = -parts[idx].lnum;
    self(self, idx + 1, remaining);
    long used = 0;
    while (remaining - used >= size) {
      used += size;
      current.push_back(parts[idx]);
      self(self, idx + 1, remaining - used);
    }
    for (long u = used; u > 0; u -= size) current.pop_back();
  };
  if (max_degree_num >= 0) rec(rec, 0, max_degree_num);
  for (auto& level : out) std::sort(level.begin(), level.end());
  return out;
}

bool QuadOperator::is_zero() const {
  if (!scalar.is_zero()) return false;
  for (const auto& [s, c] : linear)
    if (!c.is_zero()) return false;
  for (const auto& [st, k] : bilinear)
    for (const auto& c : k)
      if (!c.is_zero()) return false;
  return true;
}

QuadOperator& QuadOperator::operator+=(const QuadOperator& o) {
  if (o.n_num != n_num && !o.is_zero() && !is_zero())
    throw std::invalid_argument("QuadOperator: sum of operators of different degree");
  if (is_zero()) n_num = o.n_num;
  scalar += o.scalar;
  for (const auto& [s, c] : o.linear) {
    auto [it, ins] = linear.try_emplace(s, c);
    if (!ins) it->second += c;
  }
  for (const auto& [st, k] : o.bilinear) {
    auto& mine = bilinear.try_emplace(st).first->second;
    if (mine.size() < k.size()) mine.resize(k.size(), Cyclotomic(scalar.order()));
    for (std::size_t i = 0; i < k.size(); ++i) mine[i] += k[i];
  }
  return *this;
}

QuadOperator& QuadOperator::operator*=(const Cyclotomic& c) {
  scalar *= c;
  for (auto& [s, x] : linear) x *= c;
  for (auto& [st, k] : bilinear)
    for (auto& x : k) x *= c;
  return *this;
}

QuadOperator QuadOperator::canonical() const {
  const int p = scalar.order();
  QuadOperator out(p, n_num);
  out.scalar = scalar;
  for (const auto& [s, c] : linear)
    if (!c.is_zero()) out.linear.emplace(s, c);
  for (const auto& [st, k] : bilinear) {
    auto& mine = out.bilinear.try_emplace(st).first->second;
    if (mine.size() < k.size()) mine.resize(k.size(), Cyclotomic(p));
    for (std::size_t i = 0; i < k.size(); ++i) mine[i] += k[i];
  }
  for (auto it = out.bilinear.begin(); it != out.bilinear.end();) {
    trim(it->second);
    it = it->second.empty() ? out.bilinear.erase(it) : std::next(it);
  }
  return out;
}

bool operator==(const QuadOperator& a, const QuadOperator& b) {
  const QuadOperator ca = a.canonical();
  const QuadOperator cb = b.canonical();
  if (ca.is_zero() && cb.is_zero()) return true;
  return ca.n_num == cb.n_num && ca.scalar == cb.scalar && ca.linear == cb.linear && ca.bilinear == cb.bilinear;
}

Rational correction_scalar(const TwistSetup& setup, long r, Variant variant) {
  Rational sum(0);
  const Rational b = bernoulli_number(2 * r + 2);
  for (int k = 0; k < setup.p; ++k) {
    Rational term = bernoulli_poly(2 * r + 2, Rational(k, setup.p));
    if (variant == Variant::Plain) term -= b;
    sum += Rational(setup.dims[static_cast<std::size_t>(k)]) * term;
  }
  return -Rational(r % 2 == 0 ? 1 : -1, 4 * (r + 1)) * sum;
}

QuadOperator quad_operator(const TwistSetup& setup, long r1, long r2, long n, Variant variant) {
  const ModeSpace space = ModeSpace::twisted(setup);
  const int p = setup.p;
  QuadOperator op(p, n * space.q());
  // (-j)^r1 (j - n)^r2 as a polynomial in j.
  std::vector<Cyclotomic> kernel(static_cast<std::size_t>(r1 + r2) + 1, Cyclotomic(p));
  for (long i = 0; i <= r2; ++i) {
    const Rational c = Rational(r1 % 2 == 0 ? 1 : -1) * binomial(Rational(r2), i) * pow(Rational(-n), r2 - i);
    kernel[static_cast<std::size_t>(r1 + i)] += Cyclotomic(p, c * Rational(1, 2));
  }
  for (int s = 0; s < static_cast<int>(space.species().size()); ++s)
    op.bilinear[{s, space.partner(s)}] = kernel;
  if (n == 0 && r1 == r2) op.scalar = Cyclotomic(p, correction_scalar(setup, r1, variant));
  return op;
}

FockVector apply_operator(const ModeSpace& space, const QuadOperator& op, const Monomial& m) {
  const int p = space.p();
  const long n = op.n_num;
  const long q = space.q();
  FockVector out(p);
  if (!op.scalar.is_zero() && n == 0) out.add(m, op.scalar);
  for (const auto& [s, c] : op.linear) {
    if (c.is_zero() || !space.allowed(s, n)) continue;
    Monomial mm = m;
    Rational coef(1);
    if (single_mode(space, {s, n}, mm, coef)) out.add(std::move(mm), c * coef);
  }
  for (const auto& [st, kernel] : op.bilinear) {
    const auto [sigma, tau] = st;
    if (floor_mod(space.level_class(sigma) + space.level_class(tau) - n, q) != 0) continue;
    std::set<long> js;
    // Both creation: n < j < 0.
    for (long j = n + 1; j < 0; ++j)
      if (space.allowed(sigma, j)) js.insert(j);
    for (const auto& mode : m) {
      if (mode.species == space.partner(sigma)) js.insert(-mode.lnum);
      if (mode.species == space.partner(tau)) js.insert(n + mode.lnum);
    }
    for (long j : js) {
      const Cyclotomic kj = eval_kernel(kernel, space.level(j), p);
      if (kj.is_zero()) continue;
      Monomial mm = m;
      Rational coef(1);
      if (normal_ordered_pair(space, {sigma, j}, {tau, n - j}, mm, coef)) out.add(std::move(mm), kj * coef);
    }
  }
  return out;
}

FockVector apply_operator(const ModeSpace& space, const QuadOperator& op, const FockVector& v) {
  FockVector out(v.p());
  for (const auto& [m, c] : v.terms()) out += apply_operator(space, op, m) * c;
  return out;
}

const FockVector& OperatorCache::apply(const std::string& key, const QuadOperator& op, const Monomial& m) {
  auto k = std::make_pair(key, m);
  auto it = memo_.find(k);
  if (it != memo_.end()) return it->second;
  return memo_.emplace(std::move(k), apply_operator(space_, op, m)).first->second;
}

FockVector OperatorCache::apply(const std::string& key, const QuadOperator& op, const FockVector& v) {
  FockVector out(v.p());
  for (const auto& [m, c] : v.terms()) out += apply(key, op, m) * c;
  return out;
}

}  // namespace zetafock::fock
