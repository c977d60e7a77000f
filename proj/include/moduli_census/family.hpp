#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "moduli_census/field.hpp"
#include "moduli_census/poly.hpp"

namespace census {

enum class FamilyMode { kEnumerate, kSample };

/// Default bound on q^gamma for enumerate mode.
inline constexpr std::uint64_t kEnumerateBudget = 2'000'000;

struct FamilySpec {
  FieldHandle field;
  int gamma = 5;
  FamilyMode mode = FamilyMode::kEnumerate;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
  std::uint64_t budget = kEnumerateBudget;
};

/// The family H_{gamma,q} of monic square-free polynomials of degree gamma.
///
/// Both modes expose an index space [0, slots()). In enumerate mode slot i is the monic
/// polynomial whose low coefficients are the base-q digits of i, present only when it is
/// square-free. In sample mode slot i is a uniform draw from the family, a pure function of
/// (seed, i). Workers can split the index space freely and merge by slot order.
class Family {
 public:
  /// Throws DomainError for gamma < 3 and BudgetError when enumerate mode exceeds the budget.
  explicit Family(FamilySpec spec);

  const FamilySpec& spec() const { return spec_; }
  std::uint64_t slots() const { return slots_; }
  /// Member at slot i, or nothing for a non-square-free enumerate slot.
  std::optional<MonicPoly> at(std::uint64_t i) const;
  /// All members in slot order.
  std::vector<MonicPoly> members() const;
  /// Exact family size q^gamma - q^(gamma-1).
  std::uint64_t expected_size() const;

 private:
  MonicPoly draw(std::uint64_t i) const;
  FamilySpec spec_;
  std::uint64_t slots_ = 0;
};

/// splitmix64 finalizer, used for per-index seed derivation.
std::uint64_t mix64(std::uint64_t x);

}  // namespace census
