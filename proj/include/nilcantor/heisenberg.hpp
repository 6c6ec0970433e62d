#pragma once

#include <string>
#include <string_view>

#include "nilcantor/integer.hpp"

namespace nilcantor {

/// The integer matrix [[1,a,c],[0,1,b],[0,0,1]] written as (a,b,c).
struct Element {
  Integer a = 0;
  Integer b = 0;
  Integer c = 0;

  static Element identity() { return {}; }
  bool is_identity() const { return a == 0 && b == 0 && c == 0; }

  std::string to_string() const;
  static Element parse(std::string_view text);

  friend bool operator==(const Element& x, const Element& y) { return x.a == y.a && x.b == y.b && x.c == y.c; }
};

/// (a+a', b+b', c+c'+a·b')
Element multiply(const Element& g, const Element& h);
Element inverse(const Element& g);
/// by·g·by⁻¹, which only shears the c coordinate.
Element conjugate(const Element& g, const Element& by);

/// The subgroup {(a·Ma, b·Mb, c·Mc)}.  Closed under the group law exactly
/// when Mc | Ma·Mb, which the constructor enforces.
class Box {
 public:
  Box(Integer ma, Integer mb, Integer mc);

  /// The whole group, Box(1,1,1).
  static Box whole() { return Box(1, 1, 1); }

  const Integer& ma() const { return ma_; }
  const Integer& mb() const { return mb_; }
  const Integer& mc() const { return mc_; }

  bool contains(const Element& g) const;
  /// Subgroup inclusion `other ⊆ *this`.
  bool includes(const Box& other) const;

  std::string to_string() const;
  static Box parse(std::string_view text);

  friend bool operator==(const Box& x, const Box& y) { return x.ma_ == y.ma_ && x.mb_ == y.mb_ && x.mc_ == y.mc_; }

 private:
  Integer ma_, mb_, mc_;
};

/// [outer : inner] for nested boxes.
Integer index_in(const Box& outer, const Box& inner);

/// Largest subgroup of `b` normal in the whole group.
Box core(const Box& b);

/// Elements of `inner` whose conjugates by every element of `outer` stay in
/// `inner`: (lcm(Ia, Ic/gcd(Ic,Ob)), lcm(Ib, Ic/gcd(Ic,Oa)), Ic).
Box relative_core(const Box& outer, const Box& inner);

bool is_normal_in_gamma(const Box& b);

}  // namespace nilcantor
