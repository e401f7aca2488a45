#include "cmw/witt_vector.hpp"

#include <algorithm>

#include "cmw/errors.hpp"

namespace cmw {

CoeffDomain CoeffDomain::cyclotomic(unsigned m) {
  CoeffDomain D;
  D.kind = Kind::cyclotomic;
  D.field = NumberField::cyclotomic(m);
  return D;
}

CoeffDomain CoeffDomain::number_field(std::shared_ptr<const NumberField> F) {
  CoeffDomain D;
  D.kind = F->is_cyclotomic() ? Kind::cyclotomic : Kind::number_field;
  D.field = std::move(F);
  return D;
}

CoeffDomain CoeffDomain::complex(unsigned prec) {
  if (prec < 10) throw invalid_input("complex domain precision must be at least 10 digits");
  CoeffDomain D;
  D.kind = Kind::complex;
  D.prec = prec;
  return D;
}

Real CoeffDomain::tolerance() const {
  PrecisionGuard g(std::max(prec, 20U) + 10);
  return boost::multiprecision::pow(Real(10), -static_cast<long>(prec / 2));
}

bool CoeffDomain::equal(const Coeff& a, const Coeff& b) const {
  if (exact()) return std::get<NfElement>(a) == std::get<NfElement>(b);
  return dist(std::get<BigComplex>(a), std::get<BigComplex>(b)) < tolerance();
}

Real CoeffDomain::distance(const Coeff& a, const Coeff& b) const {
  if (exact()) return std::get<NfElement>(a) == std::get<NfElement>(b) ? Real(0) : Real(1);
  return dist(std::get<BigComplex>(a), std::get<BigComplex>(b));
}

BigComplex CoeffDomain::numeric(const Coeff& a) const {
  if (exact()) return field->embed(std::get<NfElement>(a));
  const auto& z = std::get<BigComplex>(a);
  return BigComplex(z.re, z.im);
}

std::string CoeffDomain::describe() const {
  if (exact()) return field->describe();
  return "C(prec=" + std::to_string(prec) + ")";
}

std::string CoeffDomain::str(const Coeff& a, unsigned digits) const {
  if (exact()) return field->str(std::get<NfElement>(a));
  return std::get<BigComplex>(a).str(digits);
}

std::shared_ptr<const IdealIndex> IdealIndex::make(const QuadField& K, Int bound) {
  if (bound < 1) throw invalid_input("ideal bound must be positive");
  std::shared_ptr<IdealIndex> ix(new IdealIndex(K));
  ix->bound_ = bound;
  ix->ideals_ = K.enumerate_ideals(bound);
  ix->pos_.reserve(ix->ideals_.size());
  for (std::size_t i = 0; i < ix->ideals_.size(); ++i) ix->pos_.emplace(ix->ideals_[i], i);
  return ix;
}

std::size_t IdealIndex::count_upto(Int b) const {
  if (b >= bound_) return ideals_.size();
  auto it = std::partition_point(ideals_.begin(), ideals_.end(),
                                 [b](const IdealHNF& I) { return I.lattice_norm() <= b; });
  return static_cast<std::size_t>(it - ideals_.begin());
}

std::optional<std::size_t> IdealIndex::find(const IdealHNF& I) const {
  auto it = pos_.find(I);
  if (it == pos_.end()) return std::nullopt;
  return it->second;
}

bool WittVector::in_bound(const IdealHNF& I) const {
  return I.den == 1 && I.lattice_norm() <= bound;
}

const Coeff& WittVector::at(const IdealHNF& I) const {
  if (!in_bound(I))
    throw insufficient_bound("component " + I.str() + " is beyond the bound " + std::to_string(bound));
  auto p = index->find(I);
  if (!p || *p >= values.size()) throw insufficient_bound("component " + I.str() + " not indexed");
  return values[*p];
}

}  // namespace cmw
