#include "ratroot/number_field.hpp"

#include <sstream>

namespace ratroot {

namespace {

// Coefficients of x at level `field`; x must live in an ancestor or in field.
std::vector<NfElem> lift_coeffs(const NfElem& x, const FieldPtr& field) {
  if (x.field() == field) return x.coeffs();
  if (x.is_zero()) return {};
  return {x};
}

void reduce_mod(std::vector<NfElem>& c, const UniPoly<NfElem>& m) {
  const int d = m.degree();
  const auto& mc = m.coeffs();
  for (int i = static_cast<int>(c.size()) - 1; i >= d; --i) {
    if (c[i].is_zero()) continue;
    NfElem t = c[i];
    for (int j = 0; j < d; ++j)
      if (!mc[j].is_zero()) c[i - d + j] -= t * mc[j];
    c[i] = NfElem(0);
  }
  if (static_cast<int>(c.size()) > d) c.resize(static_cast<size_t>(d));
}

}  // namespace

FieldPtr NumberField::make(FieldPtr base, UniPoly<NfElem> minpoly, std::string name) {
  if (minpoly.degree() < 2) throw Error("minimal polynomial must have degree >= 2");
  if (!minpoly.lead().is_one()) throw Error("minimal polynomial must be monic");
  int h = base ? base->height() + 1 : 1;
  if (h > 2) throw TowerTooDeep();
  auto* f = new NumberField();
  f->base_ = std::move(base);
  f->minpoly_ = std::move(minpoly);
  f->name_ = std::move(name);
  f->height_ = h;
  return FieldPtr(f);
}

int NumberField::absolute_degree() const {
  return degree() * (base_ ? base_->absolute_degree() : 1);
}

bool NumberField::contains(const NumberField* other) const {
  if (other == nullptr) return true;
  for (const NumberField* f = this; f != nullptr; f = f->base_.get())
    if (f == other) return true;
  return false;
}

std::string NumberField::describe() const {
  std::string pre = base_ ? base_->describe() + "; " : "";
  return pre + name_ + ": " + minpoly_.to_string(name_) + " = 0";
}

FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b) return a;
  if (!a) return b;
  if (!b) return a;
  if (a->contains(b.get())) return a;
  if (b->contains(a.get())) return b;
  throw IncompatibleFields();
}

NfElem NfElem::generator(const FieldPtr& field) {
  return from_coeffs(field, {NfElem(0), NfElem(1)});
}

NfElem NfElem::from_coeffs(const FieldPtr& field, std::vector<NfElem> coeffs) {
  if (!field) return coeffs.empty() ? NfElem(0) : coeffs[0];
  NfElem e;
  e.field_ = field;
  e.q_ = 0;
  e.c_ = std::move(coeffs);
  reduce_mod(e.c_, field->minpoly());
  e.normalize();
  return e;
}

void NfElem::normalize() {
  if (!field_) return;
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  if (c_.size() <= 1) {
    NfElem v = c_.empty() ? NfElem(0) : c_[0];
    *this = std::move(v);
  }
}

NfElem NfElem::operator-() const {
  NfElem r = *this;
  if (!r.field_) {
    r.q_ = -r.q_;
    return r;
  }
  for (auto& c : r.c_) c = -c;
  return r;
}

NfElem& NfElem::operator+=(const NfElem& o) {
  if (!field_ && !o.field_) {
    q_ += o.q_;
    return *this;
  }
  FieldPtr f = common_field(field_, o.field_);
  std::vector<NfElem> a = lift_coeffs(*this, f);
  std::vector<NfElem> b = lift_coeffs(o, f);
  if (b.size() > a.size()) a.resize(b.size());
  for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  field_ = f;
  q_ = 0;
  c_ = std::move(a);
  normalize();
  return *this;
}

NfElem& NfElem::operator-=(const NfElem& o) { return *this += -o; }

NfElem& NfElem::operator*=(const NfElem& o) {
  if (!field_ && !o.field_) {
    q_ *= o.q_;
    return *this;
  }
  if (is_zero() || o.is_zero()) {
    *this = NfElem(0);
    return *this;
  }
  FieldPtr f = common_field(field_, o.field_);
  std::vector<NfElem> a = lift_coeffs(*this, f);
  std::vector<NfElem> b = lift_coeffs(o, f);
  std::vector<NfElem> r(a.size() + b.size() - 1);
  if (a.size() == 1 || b.size() == 1) {
    const NfElem& s = a.size() == 1 ? a[0] : b[0];
    const std::vector<NfElem>& v = a.size() == 1 ? b : a;
    r.assign(v.size(), NfElem(0));
    for (size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  } else {
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i].is_zero()) continue;
      for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
  }
  reduce_mod(r, f->minpoly());
  field_ = f;
  q_ = 0;
  c_ = std::move(r);
  normalize();
  return *this;
}

NfElem NfElem::inverse() const {
  if (!field_) {
    if (sgn(q_) == 0) throw ZeroInversion();
    Rational r = 1 / q_;
    return NfElem(r);
  }
  UniPoly<NfElem> a(c_);
  auto eg = ext_gcd(a, field_->minpoly());
  if (eg.g.degree() != 0) throw InternalError("minimal polynomial is not irreducible");
  return from_coeffs(field_, eg.s.coeffs());
}

bool operator==(const NfElem& a, const NfElem& b) {
  if (!a.field_ && !b.field_) return a.q_ == b.q_;
  return (a - b).is_zero();
}

std::string NfElem::to_string() const {
  if (!field_) return q_.get_str();
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    std::string cs = c_[i].to_string();
    if (i == 0) {
      os << cs;
    } else {
      if (!c_[i].is_one()) os << cs << "*";
      os << field_->name();
      if (i > 1) os << "^" << i;
    }
  }
  os << ")";
  return os.str();
}

}  // namespace ratroot
