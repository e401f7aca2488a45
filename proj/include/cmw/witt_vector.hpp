#pragma once

// Truncated vectors indexed by the integral ideals of norm <= B, with values
// in an exact number field (cyclotomic or general) or in big-float complexes.

#include <memory>
#include <optional>
#include <unordered_map>
#include <variant>
#include <vector>

#include "cmw/bigcomplex.hpp"
#include "cmw/numfield.hpp"
#include "cmw/qfield.hpp"

namespace cmw {

using Coeff = std::variant<NfElement, BigComplex>;

struct CoeffDomain {
  enum class Kind { cyclotomic, number_field, complex };

  Kind kind = Kind::cyclotomic;
  std::shared_ptr<const NumberField> field;  // exact kinds only
  unsigned prec = 0;                         // complex kind, decimal digits

  static CoeffDomain cyclotomic(unsigned m);
  static CoeffDomain number_field(std::shared_ptr<const NumberField> F);
  static CoeffDomain complex(unsigned prec);

  bool exact() const { return kind != Kind::complex; }
  /// 10^(-prec/2) for the complex kind.
  Real tolerance() const;
  bool equal(const Coeff& a, const Coeff& b) const;
  /// |a - b| for complex values, 0/1 for exact ones.
  Real distance(const Coeff& a, const Coeff& b) const;
  /// Numeric value (exact values are embedded through the distinguished root).
  BigComplex numeric(const Coeff& a) const;
  std::string describe() const;
  std::string str(const Coeff& a, unsigned digits = 20) const;
};

/// The ideals of norm <= bound in enumeration order, with reverse lookup.
class IdealIndex {
 public:
  static std::shared_ptr<const IdealIndex> make(const QuadField& K, Int bound);

  const QuadField& field() const { return field_; }
  Int bound() const { return bound_; }
  const std::vector<IdealHNF>& ideals() const { return ideals_; }
  /// Number of ideals of norm <= b (a prefix of the enumeration).
  std::size_t count_upto(Int b) const;
  std::optional<std::size_t> find(const IdealHNF& I) const;

 private:
  explicit IdealIndex(QuadField K) : field_(std::move(K)) {}
  QuadField field_;
  Int bound_ = 0;
  std::vector<IdealHNF> ideals_;
  std::unordered_map<IdealHNF, std::size_t, IdealHash> pos_;
};

struct WittVector {
  std::shared_ptr<const IdealIndex> index;
  Int bound = 0;
  CoeffDomain domain;
  std::vector<Coeff> values;  // values[i] belongs to index->ideals()[i]

  const QuadField& field() const { return index->field(); }
  std::size_t size() const { return values.size(); }
  const IdealHNF& ideal(std::size_t i) const { return index->ideals()[i]; }
  /// Component at an in-bound ideal; throws insufficient_bound otherwise.
  const Coeff& at(const IdealHNF& I) const;
  bool in_bound(const IdealHNF& I) const;
};

/// Builds a vector by evaluating fn at each ideal of norm <= bound.
template <class Fn>
WittVector tabulate(const QuadField& K, Int bound, CoeffDomain dom, Fn&& fn) {
  WittVector v;
  v.index = IdealIndex::make(K, bound);
  v.bound = bound;
  v.domain = std::move(dom);
  v.values.reserve(v.index->ideals().size());
  for (const auto& I : v.index->ideals()) v.values.push_back(fn(I));
  return v;
}

}  // namespace cmw
