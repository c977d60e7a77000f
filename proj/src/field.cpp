#include "moduli_census/field.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "moduli_census/errors.hpp"
#include "moduli_census/poly.hpp"

namespace census {

namespace detail {

struct FieldData {
  std::uint32_t p = 0;
  int m = 1;  // absolute degree
  int r = 1;  // degree over base
  std::uint64_t q = 0;
  std::uint32_t q_minus_1 = 0;
  bool prime = true;
  std::shared_ptr<const FieldData> base;
  std::vector<Code> modulus;
  std::vector<Code> exp;            // length 2(q-1): exp[i] = g^i
  std::vector<std::uint32_t> log;   // log[0] unused
  std::vector<std::int32_t> zech;   // zech[d] = log(1 + g^d), -1 when 1 + g^d = 0
};

}  // namespace detail

namespace {

using detail::FieldData;

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
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

// Digit-wise +1 in the lowest p-adic digit, i.e. adding the field's 1.
Code add_one(const FieldData& d, Code a) {
  const Code low = a % d.p;
  return a - low + (low + 1) % d.p;
}

void build_zech(FieldData& d) {
  d.zech.assign(d.q_minus_1, -1);
  for (std::uint32_t i = 0; i < d.q_minus_1; ++i) {
    const Code s = add_one(d, d.exp[i]);
    d.zech[i] = s == 0 ? -1 : static_cast<std::int32_t>(d.log[s]);
  }
}

void fill_log(FieldData& d) {
  d.log.assign(d.q, 0);
  for (std::uint32_t i = 0; i < d.q_minus_1; ++i) d.log[d.exp[i]] = i;
  for (std::uint32_t i = 0; i < d.q_minus_1; ++i) d.exp[i + d.q_minus_1] = d.exp[i];
}

std::shared_ptr<FieldData> build_prime_field(std::uint32_t p) {
  auto d = std::make_shared<FieldData>();
  d->p = p;
  d->q = p;
  d->q_minus_1 = p - 1;
  const auto factors = prime_factors(p - 1);
  auto powmod = [p](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    b %= p;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  std::uint32_t g = 1;
  for (std::uint32_t cand = 2; cand < p; ++cand) {
    bool ok = true;
    for (auto l : factors) ok = ok && powmod(cand, (p - 1) / l) != 1;
    if (ok) {
      g = cand;
      break;
    }
  }
  d->exp.assign(2 * std::size_t{d->q_minus_1}, 0);
  std::uint64_t cur = 1;
  for (std::uint32_t i = 0; i < d->q_minus_1; ++i) {
    d->exp[i] = static_cast<Code>(cur);
    cur = cur * g % p;
  }
  fill_log(*d);
  build_zech(*d);
  return d;
}

class Registry {
 public:
  static Registry& instance() {
    static Registry r;
    return r;
  }
  std::mutex mu;
  std::map<std::tuple<const FieldData*, std::uint32_t, int>, std::shared_ptr<const FieldData>> fields;
};

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// FieldHandle

std::uint32_t FieldHandle::characteristic() const { return d_->p; }
int FieldHandle::absolute_degree() const { return d_->m; }
int FieldHandle::degree_over_base() const { return d_->r; }
std::uint64_t FieldHandle::order() const { return d_->q; }
bool FieldHandle::is_prime_field() const { return d_->prime; }
const std::vector<Code>& FieldHandle::modulus() const { return d_->modulus; }

std::optional<FieldHandle> FieldHandle::base() const {
  if (!d_->base) return std::nullopt;
  return FieldHandle(d_->base);
}

Code FieldHandle::add(Code a, Code b) const {
  if (d_->prime) {
    const Code s = a + b;
    return s >= d_->p ? s - d_->p : s;
  }
  if (a == 0) return b;
  if (b == 0) return a;
  const std::uint32_t la = d_->log[a];
  const std::uint32_t lb = d_->log[b];
  const std::uint32_t diff = lb >= la ? lb - la : lb + d_->q_minus_1 - la;
  const std::int32_t z = d_->zech[diff];
  if (z < 0) return 0;
  return d_->exp[la + static_cast<std::uint32_t>(z)];
}

Code FieldHandle::neg(Code a) const {
  if (a == 0) return 0;
  if (d_->prime) return d_->p - a;
  // -1 = g^((q-1)/2)
  const std::uint32_t l = d_->log[a] + d_->q_minus_1 / 2;
  return d_->exp[l];
}

Code FieldHandle::sub(Code a, Code b) const { return add(a, neg(b)); }

Code FieldHandle::mul(Code a, Code b) const {
  if (a == 0 || b == 0) return 0;
  return d_->exp[d_->log[a] + d_->log[b]];
}

Code FieldHandle::inv(Code a) const {
  if (a == 0) throw DomainError("inverse of zero in " + describe());
  const std::uint32_t l = d_->log[a];
  return d_->exp[l == 0 ? 0 : d_->q_minus_1 - l];
}

Code FieldHandle::pow(Code a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t l = (static_cast<std::uint64_t>(d_->log[a]) * (e % d_->q_minus_1)) % d_->q_minus_1;
  return d_->exp[l];
}

int FieldHandle::chi(Code a) const {
  if (a == 0) return 0;
  return (d_->log[a] & 1u) == 0 ? 1 : -1;
}

Code FieldHandle::from_int(long v) const {
  const long p = d_->p;
  return static_cast<Code>(((v % p) + p) % p);
}

std::vector<Code> FieldHandle::coords(Code a) const {
  if (!d_->base) return {a};
  const Code bq = static_cast<Code>(d_->base->q);
  std::vector<Code> out(d_->r);
  for (int i = 0; i < d_->r; ++i) {
    out[i] = a % bq;
    a /= bq;
  }
  return out;
}

Code FieldHandle::from_coords(std::span<const Code> coords) const {
  if (!d_->base) {
    if (coords.size() != 1 || coords[0] >= d_->q) throw DomainError("bad prime-field coordinates");
    return coords[0];
  }
  if (coords.size() != static_cast<std::size_t>(d_->r)) throw DomainError("coordinate vector has wrong length");
  const std::uint64_t bq = d_->base->q;
  std::uint64_t code = 0;
  for (std::size_t i = coords.size(); i-- > 0;) {
    if (coords[i] >= bq) throw DomainError("coordinate outside base field");
    code = code * bq + coords[i];
  }
  return static_cast<Code>(code);
}

Code FieldHandle::embed(Code base_code) const {
  if (!d_->base) throw DomainError("prime field has no base to embed from");
  if (base_code >= d_->base->q) throw DomainError("element outside base field");
  return base_code;
}

FieldElement FieldHandle::element(Code c) const { return FieldElement(*this, c); }
FieldElement FieldHandle::zero() const { return FieldElement(*this, 0); }
FieldElement FieldHandle::one() const { return FieldElement(*this, 1); }

std::string FieldHandle::describe() const {
  std::ostringstream os;
  os << "F_" << d_->q;
  if (d_->base) os << " (degree " << d_->r << " over F_" << d_->base->q << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// construction

namespace {

// Raw multiplication in base[y]/(modulus) on coordinate vectors, used only while the
// extension's own tables are being built.
struct SlowExtension {
  FieldHandle base;
  std::vector<Code> modulus;  // monic, length r + 1
  int r;

  std::vector<Code> mul(const std::vector<Code>& a, const std::vector<Code>& b) const {
    std::vector<Code> t(2 * r - 1, 0);
    for (int i = 0; i < r; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < r; ++j) t[i + j] = base.add(t[i + j], base.mul(a[i], b[j]));
    }
    for (int k = 2 * r - 2; k >= r; --k) {
      const Code c = t[k];
      if (c == 0) continue;
      t[k] = 0;
      for (int i = 0; i < r; ++i) t[k - r + i] = base.sub(t[k - r + i], base.mul(c, modulus[i]));
    }
    t.resize(r);
    return t;
  }

  std::vector<Code> pow(std::vector<Code> b, std::uint64_t e) const {
    std::vector<Code> acc(r, 0);
    acc[0] = 1;
    while (e) {
      if (e & 1) acc = mul(acc, b);
      b = mul(b, b);
      e >>= 1;
    }
    return acc;
  }
};

std::shared_ptr<FieldData> build_extension(const FieldHandle& base, int r) {
  const std::uint64_t bq = base.order();
  std::uint64_t q = 1;
  for (int i = 0; i < r; ++i) {
    q *= bq;
    if (q > kFieldOrderBudget) {
      throw BudgetError("field of order " + std::to_string(bq) + "^" + std::to_string(r) +
                        " exceeds the table budget");
    }
  }

  // Least monic irreducible of degree r over base.
  std::vector<Code> modulus;
  const std::uint64_t candidates = q;  // bq^r
  for (std::uint64_t idx = 0; idx < candidates; ++idx) {
    std::vector<Code> c(r + 1);
    std::uint64_t t = idx;
    for (int i = 0; i < r; ++i) {
      c[i] = static_cast<Code>(t % bq);
      t /= bq;
    }
    c[r] = 1;
    if (c[0] == 0) continue;  // divisible by y
    if (is_irreducible(Poly(base, c))) {
      modulus = std::move(c);
      break;
    }
  }
  if (modulus.empty()) throw ConsistencyError("no irreducible modulus found");

  auto d = std::make_shared<FieldData>();
  d->p = base.characteristic();
  d->m = base.absolute_degree() * r;
  d->r = r;
  d->q = q;
  d->q_minus_1 = static_cast<std::uint32_t>(q - 1);
  d->prime = false;
  d->modulus = modulus;

  SlowExtension slow{base, modulus, r};
  auto to_coords = [&](std::uint64_t code) {
    std::vector<Code> v(r);
    for (int i = 0; i < r; ++i) {
      v[i] = static_cast<Code>(code % bq);
      code /= bq;
    }
    return v;
  };
  auto to_code = [&](const std::vector<Code>& v) {
    std::uint64_t code = 0;
    for (int i = r; i-- > 0;) code = code * bq + v[i];
    return static_cast<Code>(code);
  };

  const auto factors = prime_factors(q - 1);
  std::vector<Code> gen;
  // Try y first, then every other element in code order.
  for (std::uint64_t cand = bq; cand < q + bq; ++cand) {
    const std::uint64_t code = cand < q ? cand : cand - q;
    if (code == 0 || code == 1) continue;
    auto g = to_coords(code);
    bool ok = true;
    for (auto l : factors) {
      auto v = slow.pow(g, (q - 1) / l);
      if (to_code(v) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      gen = std::move(g);
      break;
    }
  }
  if (gen.empty()) throw ConsistencyError("no primitive element found");

  d->exp.assign(2 * std::size_t{d->q_minus_1}, 0);
  std::vector<Code> cur(r, 0);
  cur[0] = 1;
  for (std::uint32_t i = 0; i < d->q_minus_1; ++i) {
    d->exp[i] = to_code(cur);
    cur = slow.mul(cur, gen);
  }
  if (to_code(cur) != 1) throw ConsistencyError("generator order mismatch");
  fill_log(*d);
  build_zech(*d);
  return d;
}

}  // namespace

FieldHandle make_field(std::uint32_t p, int m) {
  if (p % 2 == 0 || !is_prime(p)) {
    throw InvalidCharacteristicError("characteristic must be an odd prime, got " + std::to_string(p));
  }
  if (m < 1) throw DomainError("extension degree must be positive");
  std::shared_ptr<const FieldData> prime;
  {
    auto& reg = Registry::instance();
    std::lock_guard lock(reg.mu);
    auto key = std::make_tuple(static_cast<const FieldData*>(nullptr), p, 1);
    auto it = reg.fields.find(key);
    if (it == reg.fields.end()) {
      if (p > kFieldOrderBudget) throw BudgetError("prime exceeds the table budget");
      it = reg.fields.emplace(key, build_prime_field(p)).first;
    }
    prime = it->second;
  }
  FieldHandle fp(prime);
  return m == 1 ? fp : extend_field(fp, m);
}

FieldHandle extend_field(const FieldHandle& base, int r) {
  if (r < 1) throw DomainError("extension degree must be positive");
  if (r == 1) return base;
  auto& reg = Registry::instance();
  auto key = std::make_tuple(base.data(), base.characteristic(), r);
  {
    std::lock_guard lock(reg.mu);
    auto it = reg.fields.find(key);
    if (it != reg.fields.end()) return FieldHandle(it->second);
  }
  // Built outside the lock: construction recurses into polynomial arithmetic over base.
  auto built = build_extension(base, r);
  built->base = base.d_;
  std::lock_guard lock(reg.mu);
  auto [it, inserted] = reg.fields.emplace(key, std::move(built));
  return FieldHandle(it->second);
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(FieldHandle f, Code c) : f_(std::move(f)), c_(c) {
  if (c_ >= f_.order()) throw DomainError("element code outside " + f_.describe());
}

namespace {
void check_same(const FieldElement& a, const FieldElement& b) {
  if (a.field() != b.field()) {
    throw FieldMismatchError("elements of " + a.field().describe() + " and " + b.field().describe());
  }
}
}  // namespace

FieldElement FieldElement::inverse() const { return {f_, f_.inv(c_)}; }

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  check_same(a, b);
  return {a.f_, a.f_.add(a.c_, b.c_)};
}
FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  check_same(a, b);
  return {a.f_, a.f_.sub(a.c_, b.c_)};
}
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  check_same(a, b);
  return {a.f_, a.f_.mul(a.c_, b.c_)};
}
FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  check_same(a, b);
  return {a.f_, a.f_.div(a.c_, b.c_)};
}
bool operator==(const FieldElement& a, const FieldElement& b) {
  check_same(a, b);
  return a.c_ == b.c_;
}

int quadratic_character(const FieldHandle& k, const FieldElement& a) {
  if (a.field() != k) throw FieldMismatchError("element of " + a.field().describe() + " passed with " + k.describe());
  return k.chi(a.code());
}

}  // namespace census
