#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace census {

/// Canonical form of a field element: its coordinate vector over the prime field read as
/// base-p digits (lowest coordinate least significant). In a tower the code of a base-field
/// element is unchanged by the embedding.
using Code = std::uint32_t;

/// Largest field order for which tables are built.
inline constexpr std::uint64_t kFieldOrderBudget = std::uint64_t{1} << 22;

namespace detail {
struct FieldData;
}

class FieldElement;

/// Shared, immutable handle to a finite field F_q with q odd.
///
/// Fields are interned: constructing the same field twice returns the same handle, so
/// handle equality is field identity. All arithmetic goes through precomputed log/exp and
/// Zech tables, which makes every operation O(1).
class FieldHandle {
 public:
  std::uint32_t characteristic() const;
  /// Degree over the prime field.
  int absolute_degree() const;
  /// Degree over base() (equals absolute_degree() for extensions of the prime field).
  int degree_over_base() const;
  std::uint64_t order() const;
  bool is_prime_field() const;
  /// The field this one extends, if any.
  std::optional<FieldHandle> base() const;
  /// Defining monic irreducible over base(), coefficients ascending; empty for prime fields.
  const std::vector<Code>& modulus() const;

  Code add(Code a, Code b) const;
  Code sub(Code a, Code b) const;
  Code neg(Code a) const;
  Code mul(Code a, Code b) const;
  Code inv(Code a) const;
  Code div(Code a, Code b) const { return mul(a, inv(b)); }
  Code pow(Code a, std::uint64_t e) const;
  /// Quadratic character: 0 at 0, +1 on nonzero squares, -1 otherwise.
  int chi(Code a) const;
  /// Image of an integer under Z -> F_p -> this field.
  Code from_int(long v) const;

  /// Coordinates over base(); for prime fields a single coordinate.
  std::vector<Code> coords(Code a) const;
  Code from_coords(std::span<const Code> coords) const;
  /// Canonical embedding base() -> this field.
  Code embed(Code base_code) const;

  FieldElement element(Code c) const;
  FieldElement zero() const;
  FieldElement one() const;

  std::string describe() const;

  friend bool operator==(const FieldHandle& a, const FieldHandle& b) { return a.d_ == b.d_; }
  friend bool operator!=(const FieldHandle& a, const FieldHandle& b) { return a.d_ != b.d_; }

  const detail::FieldData* data() const { return d_.get(); }

 private:
  friend FieldHandle make_field(std::uint32_t p, int m);
  friend FieldHandle extend_field(const FieldHandle& base, int r);
  explicit FieldHandle(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::FieldData> d_;
};

/// F_{p^m}. The modulus for m > 1 is the least monic irreducible in the order described in
/// FieldHandle::modulus(). Throws InvalidCharacteristicError for even or composite p.
FieldHandle make_field(std::uint32_t p, int m = 1);

/// Degree-r extension of base; r == 1 returns base itself.
FieldHandle extend_field(const FieldHandle& base, int r);

/// Element with its owning field; arithmetic across different fields throws.
class FieldElement {
 public:
  FieldElement(FieldHandle f, Code c);

  const FieldHandle& field() const { return f_; }
  Code code() const { return c_; }
  std::vector<Code> coords() const { return f_.coords(c_); }
  bool is_zero() const { return c_ == 0; }

  FieldElement inverse() const;
  FieldElement pow(std::uint64_t e) const { return {f_, f_.pow(c_, e)}; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a) { return {a.f_, a.f_.neg(a.c_)}; }
  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

 private:
  FieldHandle f_;
  Code c_;
};

int quadratic_character(const FieldHandle& k, const FieldElement& a);

bool is_prime(std::uint64_t n);

}  // namespace census
