#include "nilcantor/heisenberg.hpp"

#include <vector>

#include "nilcantor/errors.hpp"

namespace nilcantor {
namespace {

// Splits "(x,y,z)" or "Name(x,y,z)" into three integers.
std::vector<Integer> parse_triple(std::string_view text, std::string_view prefix) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ' && ch != '\t') s.push_back(ch);
  }
  if (s.rfind(prefix, 0) != 0 || s.size() < prefix.size() + 2 || s[prefix.size()] != '(' || s.back() != ')')
    throw ContractError("expected " + std::string(prefix) + "(x,y,z), got '" + std::string(text) + "'");
  std::string body = s.substr(prefix.size() + 1, s.size() - prefix.size() - 2);
  std::vector<Integer> out;
  std::size_t pos = 0;
  while (true) {
    auto comma = body.find(',', pos);
    out.push_back(parse_integer(body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.size() != 3) throw ContractError("expected three coordinates in '" + std::string(text) + "'");
  return out;
}

}  // namespace

std::string Element::to_string() const {
  return "(" + nilcantor::to_string(a) + "," + nilcantor::to_string(b) + "," + nilcantor::to_string(c) + ")";
}

Element Element::parse(std::string_view text) {
  auto v = parse_triple(text, "");
  return {v[0], v[1], v[2]};
}

Element multiply(const Element& g, const Element& h) { return {g.a + h.a, g.b + h.b, g.c + h.c + g.a * h.b}; }

Element inverse(const Element& g) { return {-g.a, -g.b, -g.c + g.a * g.b}; }

Element conjugate(const Element& g, const Element& by) { return {g.a, g.b, g.c + by.a * g.b - by.b * g.a}; }

Box::Box(Integer ma, Integer mb, Integer mc) : ma_(std::move(ma)), mb_(std::move(mb)), mc_(std::move(mc)) {
  if (ma_ <= 0 || mb_ <= 0 || mc_ <= 0) throw ContractError("box moduli must be positive: " + to_string());
  if (!divides(mc_, ma_ * mb_)) throw ContractError(to_string() + " is not a subgroup: Mc does not divide Ma*Mb");
}

bool Box::contains(const Element& g) const { return divides(ma_, g.a) && divides(mb_, g.b) && divides(mc_, g.c); }

bool Box::includes(const Box& other) const {
  return divides(ma_, other.ma_) && divides(mb_, other.mb_) && divides(mc_, other.mc_);
}

std::string Box::to_string() const {
  return "Box(" + nilcantor::to_string(ma_) + "," + nilcantor::to_string(mb_) + "," + nilcantor::to_string(mc_) + ")";
}

Box Box::parse(std::string_view text) {
  auto v = parse_triple(text, "Box");
  return Box(v[0], v[1], v[2]);
}

Integer index_in(const Box& outer, const Box& inner) {
  if (!outer.includes(inner)) throw ContractError(inner.to_string() + " is not contained in " + outer.to_string());
  return (inner.ma() / outer.ma()) * (inner.mb() / outer.mb()) * (inner.mc() / outer.mc());
}

Box core(const Box& b) { return Box(lcm(b.ma(), b.mc()), lcm(b.mb(), b.mc()), b.mc()); }

Box relative_core(const Box& outer, const Box& inner) {
  if (!outer.includes(inner)) throw ContractError(inner.to_string() + " is not contained in " + outer.to_string());
  const Integer& ic = inner.mc();
  return Box(lcm(inner.ma(), ic / gcd(ic, outer.mb())), lcm(inner.mb(), ic / gcd(ic, outer.ma())), ic);
}

bool is_normal_in_gamma(const Box& b) { return divides(b.mc(), b.ma()) && divides(b.mc(), b.mb()); }

}  // namespace nilcantor
