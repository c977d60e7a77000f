#include "moduli_census/poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>

#include "moduli_census/errors.hpp"

namespace census {

namespace {

void require_same_field(const Poly& a, const Poly& b) {
  if (a.field() != b.field()) {
    throw FieldMismatchError("polynomials over " + a.field().describe() + " and " + b.field().describe());
  }
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(FieldHandle f, std::vector<Code> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
  for (Code c : c_) {
    if (c >= f_.order()) throw DomainError("coefficient outside " + f_.describe());
  }
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(const FieldHandle& f, Code c) { return Poly(f, {c}); }
Poly Poly::x(const FieldHandle& f) { return Poly(f, {0, 1}); }

Code Poly::eval(Code at) const {
  Code acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = f_.add(f_.mul(acc, at), c_[i]);
  return acc;
}

Poly operator+(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  const auto& f = a.field();
  std::vector<Code> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.add(a[i], b[i]);
  return Poly(f, std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  const auto& f = a.field();
  std::vector<Code> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.sub(a[i], b[i]);
  return Poly(f, std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  const auto& f = a.field();
  if (a.is_zero() || b.is_zero()) return Poly(f);
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<Code> c(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) c[i + j] = f.add(c[i + j], f.mul(x[i], y[j]));
  }
  return Poly(f, std::move(c));
}

Poly scale(const Poly& a, Code s) {
  std::vector<Code> c(a.coeffs());
  for (auto& v : c) v = a.field().mul(v, s);
  return Poly(a.field(), std::move(c));
}

DivMod divmod(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  const auto& f = a.field();
  if (a.degree() < b.degree()) return {Poly(f), a};
  std::vector<Code> r(a.coeffs());
  const auto& d = b.coeffs();
  const int db = b.degree();
  const Code inv_lead = f.inv(b.lead());
  std::vector<Code> quo(a.degree() - db + 1, 0);
  for (int k = a.degree(); k >= db; --k) {
    const Code c = r[k];
    if (c == 0) continue;
    const Code t = inv_lead == 1 ? c : f.mul(c, inv_lead);
    quo[k - db] = t;
    for (int i = 0; i <= db; ++i) r[k - db + i] = f.sub(r[k - db + i], f.mul(t, d[i]));
  }
  r.resize(db);
  return {Poly(f, std::move(quo)), Poly(f, std::move(r))};
}

Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).remainder; }
Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).quotient; }

Poly make_monic(const Poly& a) {
  if (a.is_zero() || a.lead() == 1) return a;
  return scale(a, a.field().inv(a.lead()));
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return make_monic(x);
}

Poly derivative(const Poly& a) {
  const auto& f = a.field();
  if (a.degree() < 1) return Poly(f);
  std::vector<Code> c(a.coeffs().size() - 1);
  for (std::size_t i = 1; i < a.coeffs().size(); ++i) c[i - 1] = f.mul(f.from_int(static_cast<long>(i)), a[i]);
  return Poly(f, std::move(c));
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

Poly powmod(const Poly& base, std::uint64_t e, const Poly& m) {
  Poly acc = Poly::constant(base.field(), 1) % m;
  Poly b = base % m;
  while (e) {
    if (e & 1) acc = mulmod(acc, b, m);
    e >>= 1;
    if (e) b = mulmod(b, b, m);
  }
  return acc;
}

Poly powmod(const Poly& base, const BigInt& e, const Poly& m) {
  if (e < 0) throw DomainError("negative exponent");
  Poly acc = Poly::constant(base.field(), 1) % m;
  Poly b = base % m;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    acc = mulmod(acc, acc, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = mulmod(acc, b, m);
  }
  return acc;
}

Poly pth_root(const Poly& f) {
  const auto& k = f.field();
  const std::uint32_t p = k.characteristic();
  const std::uint64_t root_exp = k.order() / p;  // a^(q/p) is the p-th root in F_q
  std::vector<Code> c;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (i % p != 0) {
      if (f[i] != 0) throw DomainError("pth_root of a polynomial that is not a p-th power");
      continue;
    }
    c.push_back(k.pow(f[i], root_exp));
  }
  return Poly(k, std::move(c));
}

// ---------------------------------------------------------------------------
// MonicPoly

MonicPoly::MonicPoly(Poly p) : p_(std::move(p)) {
  if (p_.is_zero()) throw DomainError("the zero polynomial is not monic");
  if (p_.lead() != 1) throw DomainError("leading coefficient must be 1");
}

MonicPoly MonicPoly::parse(const FieldHandle& f, std::string_view text) {
  std::vector<Code> c;
  std::size_t start = 0;
  std::size_t index = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto token = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (token.empty()) throw ParseError("empty coefficient", index);
    std::uint64_t v = 0;
    for (char ch : token) {
      if (ch < '0' || ch > '9') throw ParseError("coefficient is not a nonnegative integer", index);
      v = v * 10 + static_cast<std::uint64_t>(ch - '0');
      if (v >= f.order()) throw ParseError("coefficient outside [0, " + std::to_string(f.order()) + ")", index);
    }
    c.push_back(static_cast<Code>(v));
    ++index;
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (c.back() != 1) throw ParseError("leading coefficient must be 1", c.size() - 1);
  return MonicPoly(Poly(f, std::move(c)));
}

std::string MonicPoly::str() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs().size(); ++i) {
    if (i) out += ',';
    out += std::to_string(coeffs()[i]);
  }
  return out;
}

BigInt MonicPoly::norm() const { return big_pow(static_cast<long>(field().order()), static_cast<unsigned long>(degree())); }

// ---------------------------------------------------------------------------
// predicates

bool is_squarefree(const Poly& f) {
  if (f.degree() < 1) return !f.is_zero();
  return gcd(f, derivative(f)).degree() == 0;
}

bool is_squarefree(const MonicPoly& f) { return is_squarefree(f.poly()); }

bool is_irreducible(const Poly& g) {
  if (g.degree() < 1) return false;
  if (g.degree() == 1) return true;
  const Poly f = make_monic(g);
  const auto& k = f.field();
  const std::uint64_t q = k.order();
  const int n = f.degree();
  const Poly x = Poly::x(k);
  // frob[i] = x^(q^i) mod f
  std::vector<Poly> frob;
  frob.reserve(n + 1);
  frob.push_back(x % f);
  for (int i = 1; i <= n; ++i) frob.push_back(powmod(frob.back(), q, f));
  if (frob[n] != frob[0]) return false;
  for (auto l : distinct_prime_factors(static_cast<std::uint64_t>(n))) {
    const Poly h = frob[n / l] - x;
    if (gcd(h, f).degree() != 0) return false;
  }
  return true;
}

bool is_irreducible(const MonicPoly& f) { return is_irreducible(f.poly()); }

int von_mangoldt(const MonicPoly& f) {
  if (f.degree() < 1) return 0;
  Poly g = f.poly();
  Poly d = derivative(g);
  while (d.is_zero()) {
    g = pth_root(g);
    d = derivative(g);
  }
  const Poly w = g / gcd(g, d);  // product of the primes whose multiplicity is prime to p
  if (!is_irreducible(w)) return 0;
  // g must be a pure power of w
  Poly rest = g;
  while (rest.degree() > 0) {
    auto [quo, rem] = divmod(rest, w);
    if (!rem.is_zero()) return 0;
    rest = std::move(quo);
  }
  return w.degree();
}

// ---------------------------------------------------------------------------
// factorization

namespace {

void equal_degree_split(const Poly& g, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  const auto& k = g.field();
  const std::uint64_t q = k.order();
  const BigInt e = (big_pow(static_cast<long>(q), static_cast<unsigned long>(d)) - 1) / 2;
  while (true) {
    std::vector<Code> c(g.degree());
    for (auto& v : c) v = static_cast<Code>(rng() % q);
    Poly a(k, std::move(c));
    if (a.degree() < 1) continue;
    Poly b = powmod(a, e, g) - Poly::constant(k, 1);
    Poly h = gcd(b, g);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree_split(h, d, rng, out);
      equal_degree_split(g / h, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<MonicPoly> factor_squarefree(const MonicPoly& f) {
  if (!is_squarefree(f)) throw DomainError("factor_squarefree on a polynomial with repeated factors");
  const auto& k = f.field();
  const std::uint64_t q = k.order();
  std::mt19937_64 rng(0x5eedf00dULL);
  std::vector<Poly> parts;
  Poly rest = f.poly();
  const Poly x = Poly::x(k);
  Poly h = x % rest;
  for (int d = 1; rest.degree() >= 2 * d; ++d) {
    h = powmod(h, q, rest);
    Poly g = gcd(h - x, rest);
    if (g.degree() > 0) {
      equal_degree_split(g, d, rng, parts);
      rest = rest / g;
      h = h % rest;
    }
  }
  if (rest.degree() > 0) parts.push_back(make_monic(rest));
  std::vector<MonicPoly> out;
  out.reserve(parts.size());
  for (auto& p : parts) out.emplace_back(make_monic(p));
  std::sort(out.begin(), out.end(), [](const MonicPoly& a, const MonicPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.coeffs().rbegin(), a.coeffs().rend(), b.coeffs().rbegin(),
                                        b.coeffs().rend());
  });
  return out;
}

// ---------------------------------------------------------------------------
// Jacobi symbol

int jacobi_reciprocity(const Poly& a_in, const Poly& g_in) {
  require_same_field(a_in, g_in);
  if (g_in.is_zero() || g_in.lead() != 1) throw DomainError("Jacobi symbol modulus must be monic");
  const auto& k = a_in.field();
  const bool half_odd = ((k.order() - 1) / 2) % 2 == 1;
  Poly a = a_in;
  Poly g = g_in;
  int result = 1;
  while (g.degree() > 0) {
    a = a % g;
    if (a.is_zero()) return 0;
    const Code c = a.lead();
    if (c != 1) {
      if (g.degree() % 2 == 1) result *= k.chi(c);
      a = scale(a, k.inv(c));
    }
    if (half_odd && (a.degree() % 2 == 1) && (g.degree() % 2 == 1)) result = -result;
    std::swap(a, g);
  }
  return result;
}

int jacobi_symbol(const MonicPoly& f, const MonicPoly& big_f) {
  if (big_f.degree() < 1 || !is_squarefree(big_f)) throw DomainError("Jacobi symbol needs a square-free modulus of degree >= 1");
  return jacobi_reciprocity(f.poly(), big_f.poly());
}

int jacobi_symbol_by_factoring(const MonicPoly& f, const MonicPoly& big_f) {
  if (big_f.degree() < 1 || !is_squarefree(big_f)) throw DomainError("Jacobi symbol needs a square-free modulus of degree >= 1");
  const auto& k = f.field();
  const Code minus_one = k.neg(1);
  int result = 1;
  for (const auto& prime : factor_squarefree(big_f)) {
    const Poly r = f.poly() % prime.poly();
    if (r.is_zero()) return 0;
    const BigInt e = (prime.norm() - 1) / 2;
    const Poly v = powmod(r, e, prime.poly());
    if (v.is_one()) continue;
    if (v.degree() == 0 && v.lead() == minus_one) {
      result = -result;
      continue;
    }
    throw ConsistencyError("Euler criterion produced a non-unit residue");
  }
  return result;
}

// ---------------------------------------------------------------------------
// counting and enumeration

std::uint64_t prime_count(std::uint64_t q, int n) {
  if (n < 1) throw DomainError("prime_count needs n >= 1");
  auto mobius = [](int m) {
    int result = 1;
    for (int d = 2; d * d <= m; ++d) {
      if (m % d == 0) {
        m /= d;
        if (m % d == 0) return 0;
        result = -result;
      }
    }
    if (m > 1) result = -result;
    return result;
  };
  __int128 total = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    const int mu = mobius(d);
    if (mu == 0) continue;
    __int128 pw = 1;
    for (int i = 0; i < n / d; ++i) {
      pw *= q;
      if (pw > (static_cast<__int128>(1) << 100)) throw BudgetError("prime_count overflow");
    }
    total += mu * pw;
  }
  if (total % n != 0) throw ConsistencyError("Moebius sum not divisible by n");
  const __int128 r = total / n;
  if (r > static_cast<__int128>(UINT64_MAX)) throw BudgetError("prime_count exceeds 64 bits");
  return static_cast<std::uint64_t>(r);
}

MonicPoly monic_from_index(const FieldHandle& f, int n, std::uint64_t index) {
  const std::uint64_t q = f.order();
  std::vector<Code> c(n + 1);
  for (int i = 0; i < n; ++i) {
    c[i] = static_cast<Code>(index % q);
    index /= q;
  }
  c[n] = 1;
  return MonicPoly(Poly(f, std::move(c)));
}

const std::vector<MonicPoly>& monic_irreducibles(const FieldHandle& f, int n) {
  static std::mutex mu;
  static std::map<std::pair<const void*, int>, std::vector<MonicPoly>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(static_cast<const void*>(f.data()), n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    total *= f.order();
    if (total > 50'000'000) throw BudgetError("too many monic polynomials to enumerate irreducibles");
  }
  std::vector<MonicPoly> out;
  for (std::uint64_t i = 0; i < total; ++i) {
    auto m = monic_from_index(f, n, i);
    if (is_irreducible(m)) out.push_back(std::move(m));
  }
  return cache.emplace(key, std::move(out)).first->second;
}

}  // namespace census
