#include "semik/semiring.hpp"

namespace semik {

const char* kernel_tag_name(KernelTag tag) {
  switch (tag) {
    case KernelTag::Bool: return "BOOL";
    case KernelTag::Trop: return "TROP";
    case KernelTag::Nat: return "NAT";
    case KernelTag::Table: return "TABLE";
  }
  return "?";
}

Element Element::nat(Int n) {
  if (n < 0) fail(Err::NegativeEntry, "NAT element must be nonnegative");
  return Element(KernelTag::Nat, std::move(n));
}

std::string format_element(const Element& e) {
  switch (e.tag()) {
    case KernelTag::Bool: return e.as_bool() ? "1" : "0";
    case KernelTag::Nat: return e.as_nat().str();
    case KernelTag::Trop: return format_trop(e.as_trop());
    case KernelTag::Table: return std::to_string(e.as_table());
  }
  return "?";
}

Kernel Kernel::table(TablePtr t) {
  if (!t) fail(Err::InvalidTable, "null table");
  if (t->order < 1) fail(Err::InvalidTable, "table must have at least one element");
  if (t->order > kMaxTableOrder) fail(Err::OrderTooLarge, "table order exceeds " + std::to_string(kMaxTableOrder));
  return Kernel(KernelTag::Table, std::move(t));
}

bool operator==(const Kernel& a, const Kernel& b) {
  if (a.tag_ != b.tag_) return false;
  if (a.tag_ != KernelTag::Table) return true;
  if (a.table_ == b.table_) return true;
  const auto& ta = *a.table_;
  const auto& tb = *b.table_;
  return ta.order == tb.order && ta.zero == tb.zero && ta.one == tb.one &&
         ta.add == tb.add && ta.mul == tb.mul;
}

void Kernel::check_element(const Element& e) const {
  if (e.tag() != tag_) fail(Err::KernelMismatch, "element does not belong to this kernel");
  if (tag_ == KernelTag::Table) {
    int i = e.as_table();
    if (i < 0 || i >= table_->order) fail(Err::KernelMismatch, "table index out of range");
  }
}

Element Kernel::zero() const {
  switch (tag_) {
    case KernelTag::Bool: return Element::boolean(false);
    case KernelTag::Trop: return Element::trop(Trop::neg_inf());
    case KernelTag::Nat: return Element::nat(0);
    case KernelTag::Table: return Element::table(table_->zero);
  }
  fail(Err::KernelMismatch, "bad tag");
}

Element Kernel::one() const {
  switch (tag_) {
    case KernelTag::Bool: return Element::boolean(true);
    case KernelTag::Trop: return Element::trop(Trop::one());
    case KernelTag::Nat: return Element::nat(1);
    case KernelTag::Table: return Element::table(table_->one);
  }
  fail(Err::KernelMismatch, "bad tag");
}

Element Kernel::add(const Element& a, const Element& b) const {
  check_element(a);
  check_element(b);
  switch (tag_) {
    case KernelTag::Bool: return Element::boolean(a.as_bool() || b.as_bool());
    case KernelTag::Trop: return Element::trop(trop_add(a.as_trop(), b.as_trop()));
    case KernelTag::Nat: return Element::nat(a.as_nat() + b.as_nat());
    case KernelTag::Table: return Element::table(table_->add[a.as_table()][b.as_table()]);
  }
  fail(Err::KernelMismatch, "bad tag");
}

Element Kernel::mul(const Element& a, const Element& b) const {
  check_element(a);
  check_element(b);
  switch (tag_) {
    case KernelTag::Bool: return Element::boolean(a.as_bool() && b.as_bool());
    case KernelTag::Trop: return Element::trop(trop_mul(a.as_trop(), b.as_trop()));
    case KernelTag::Nat: return Element::nat(a.as_nat() * b.as_nat());
    case KernelTag::Table: return Element::table(table_->mul[a.as_table()][b.as_table()]);
  }
  fail(Err::KernelMismatch, "bad tag");
}

KernelFlags Kernel::flags() const {
  KernelFlags f;
  switch (tag_) {
    case KernelTag::Bool:
    case KernelTag::Trop:
      // both are commutative additively idempotent semifields
      f.commutative = f.additively_idempotent = f.zerosumfree = f.entire = f.division = true;
      return f;
    case KernelTag::Nat:
      f.commutative = f.zerosumfree = f.entire = true;
      return f;
    case KernelTag::Table:
      break;
  }
  const auto& t = *table_;
  int n = t.order;
  f.commutative = true;
  for (int a = 0; a < n && f.commutative; ++a)
    for (int b = 0; b < n; ++b)
      if (t.mul[a][b] != t.mul[b][a]) { f.commutative = false; break; }
  f.additively_idempotent = true;
  for (int a = 0; a < n; ++a)
    if (t.add[a][a] != a) { f.additively_idempotent = false; break; }
  f.zerosumfree = true;
  for (int a = 0; a < n && f.zerosumfree; ++a)
    for (int b = 0; b < n; ++b)
      if (t.add[a][b] == t.zero && (a != t.zero || b != t.zero)) { f.zerosumfree = false; break; }
  f.entire = true;
  for (int a = 0; a < n && f.entire; ++a)
    for (int b = 0; b < n; ++b)
      if (t.mul[a][b] == t.zero && a != t.zero && b != t.zero) { f.entire = false; break; }
  // division: the nonzero part must be a group under multiplication
  f.division = t.zero != t.one && f.entire;
  if (f.division) {
    for (int a = 0; a < n; ++a) {
      if (a == t.zero) continue;
      bool inv = false;
      for (int b = 0; b < n; ++b) {
        if (b == t.zero) continue;
        if (t.mul[a][b] == t.one && t.mul[b][a] == t.one) { inv = true; break; }
      }
      if (!inv) { f.division = false; break; }
    }
  }
  return f;
}

WeakCancellativity Kernel::weak_cancellativity() const {
  WeakCancellativity w;
  switch (tag_) {
    case KernelTag::Nat:
      w.holds = true;
      return w;
    case KernelTag::Bool:
      // 1+1 = 1 = 1+0
      w.holds = false;
      w.witness = {Element::boolean(true), Element::boolean(false)};
      return w;
    case KernelTag::Trop:
      // max(0,0) = 0 = max(0,-1)
      w.holds = false;
      w.witness = {Element::trop(Trop::one()), Element::trop(Trop(Rational(-1)))};
      return w;
    case KernelTag::Table:
      break;
  }
  const auto& t = *table_;
  for (int a = 0; a < t.order; ++a)
    for (int b = 0; b < t.order; ++b)
      if (a != b && t.add[a][a] == t.add[a][b]) {
        w.holds = false;
        w.witness = {Element::table(a), Element::table(b)};
        return w;
      }
  w.holds = true;
  return w;
}

}  // namespace semik
