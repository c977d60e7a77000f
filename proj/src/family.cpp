#include "moduli_census/family.hpp"

#include "moduli_census/errors.hpp"

namespace census {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

/// Small counter-based generator: stream (key, counter) -> 64 random bits.
class IndexRng {
 public:
  explicit IndexRng(std::uint64_t key) : key_(key) {}
  std::uint64_t next() { return mix64(key_ ^ mix64(++counter_)); }
  /// Uniform integer in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    while (true) {
      const std::uint64_t v = next();
      if (v < limit) return v % n;
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace

Family::Family(FamilySpec spec) : spec_(std::move(spec)) {
  if (spec_.gamma < 3) throw DomainError("family degree gamma must be >= 3");
  if (spec_.mode == FamilyMode::kSample) {
    slots_ = spec_.sample_count;
    return;
  }
  std::uint64_t total = 1;
  for (int i = 0; i < spec_.gamma; ++i) {
    total *= spec_.field.order();
    if (total > spec_.budget) {
      throw BudgetError("enumerating H_{" + std::to_string(spec_.gamma) + "," + std::to_string(spec_.field.order()) +
                        "} exceeds the budget of " + std::to_string(spec_.budget) + " polynomials; use sample mode");
    }
  }
  slots_ = total;
}

std::optional<MonicPoly> Family::at(std::uint64_t i) const {
  if (i >= slots_) throw DomainError("family slot out of range");
  if (spec_.mode == FamilyMode::kSample) return draw(i);
  auto f = monic_from_index(spec_.field, spec_.gamma, i);
  if (!is_squarefree(f)) return std::nullopt;
  return f;
}

MonicPoly Family::draw(std::uint64_t i) const {
  IndexRng rng(mix64(spec_.seed) ^ mix64(i + 0x632be59bd9b4e019ULL));
  const std::uint64_t q = spec_.field.order();
  while (true) {
    std::vector<Code> c(spec_.gamma + 1);
    for (int j = 0; j < spec_.gamma; ++j) c[j] = static_cast<Code>(rng.below(q));
    c[spec_.gamma] = 1;
    MonicPoly f(spec_.field, std::move(c));
    if (is_squarefree(f)) return f;
  }
}

std::vector<MonicPoly> Family::members() const {
  std::vector<MonicPoly> out;
  for (std::uint64_t i = 0; i < slots_; ++i) {
    if (auto f = at(i)) out.push_back(std::move(*f));
  }
  return out;
}

std::uint64_t Family::expected_size() const {
  std::uint64_t pw = 1;
  for (int i = 0; i < spec_.gamma - 1; ++i) pw *= spec_.field.order();
  return pw * spec_.field.order() - pw;
}

}  // namespace census
