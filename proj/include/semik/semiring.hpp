#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "semik/errors.hpp"
#include "semik/scalars.hpp"
#include "semik/tables.hpp"

namespace semik {

enum class KernelTag { Bool, Trop, Nat, Table };

const char* kernel_tag_name(KernelTag tag);

struct KernelFlags {
  bool commutative = false;
  bool additively_idempotent = false;
  bool zerosumfree = false;
  bool entire = false;
  bool division = false;
};

class Element {
public:
  static Element boolean(bool b) { return Element(KernelTag::Bool, b); }
  static Element nat(Int n);
  static Element trop(Trop t) { return Element(KernelTag::Trop, std::move(t)); }
  static Element table(int idx) { return Element(KernelTag::Table, idx); }

  KernelTag tag() const { return tag_; }
  bool as_bool() const { return std::get<bool>(v_); }
  const Int& as_nat() const { return std::get<Int>(v_); }
  const Trop& as_trop() const { return std::get<Trop>(v_); }
  int as_table() const { return std::get<int>(v_); }

  friend bool operator==(const Element& a, const Element& b) {
    return a.tag_ == b.tag_ && a.v_ == b.v_;
  }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

private:
  template <typename T>
  Element(KernelTag tag, T v) : tag_(tag), v_(std::move(v)) {}

  KernelTag tag_;
  std::variant<bool, Int, Trop, int> v_;
};

std::string format_element(const Element& e);

struct WeakCancellativity {
  bool holds = false;
  // pair (a, b) with a+a = a+b and a != b when the law fails
  std::optional<std::pair<Element, Element>> witness;
};

// One of the four ground semirings.  Value type; TABLE kernels share their
// Cayley tables through a const pointer.
class Kernel {
public:
  static Kernel boolean() { return Kernel(KernelTag::Bool, nullptr); }
  static Kernel tropical() { return Kernel(KernelTag::Trop, nullptr); }
  static Kernel natural() { return Kernel(KernelTag::Nat, nullptr); }
  static Kernel table(TablePtr t);

  KernelTag tag() const { return tag_; }
  const TablePtr& table_ptr() const { return table_; }

  Element zero() const;
  Element one() const;
  Element add(const Element& a, const Element& b) const;
  Element mul(const Element& a, const Element& b) const;

  KernelFlags flags() const;
  WeakCancellativity weak_cancellativity() const;

  friend bool operator==(const Kernel& a, const Kernel& b);
  friend bool operator!=(const Kernel& a, const Kernel& b) { return !(a == b); }

private:
  Kernel(KernelTag tag, TablePtr t) : tag_(tag), table_(std::move(t)) {}
  void check_element(const Element& e) const;

  KernelTag tag_;
  TablePtr table_;
};

inline bool is_weakly_cancellative(const Kernel& k) { return k.weak_cancellativity().holds; }

}  // namespace semik
