// Declarative chain files: one schedule per line.
//
//   label <free text>
//   trivial_intersection=false
//   prime=2 coord=a start=1 base=0 slope=1
//   family qi coord=b start=i base=2 slope=0 set=primes
//
// Blank lines and lines starting with '#' are ignored.

#include <map>
#include <optional>
#include <sstream>

#include "nilcantor/errors.hpp"
#include "nilcantor/towers.hpp"

namespace nilcantor {
namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, std::size_t column, const std::string& message) {
  throw ContractError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message);
}

std::uint64_t parse_count(const Token& tok, const std::string& value, std::size_t line) {
  if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos || value.size() > 18)
    fail(line, tok.column, "expected a nonnegative integer in '" + tok.text + "'");
  return std::stoull(value);
}

// key=value pairs of one line, each remembered with its token for errors.
struct Fields {
  std::map<std::string, std::pair<std::string, Token>> values;

  std::optional<std::pair<std::string, Token>> take(const std::string& key) {
    auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    auto out = it->second;
    values.erase(it);
    return out;
  }
};

Fields split_fields(const std::vector<Token>& tokens, std::size_t first, std::size_t line) {
  Fields fields;
  for (std::size_t i = first; i < tokens.size(); ++i) {
    const auto& tok = tokens[i];
    auto eq = tok.text.find('=');
    if (eq == std::string::npos || eq == 0) fail(line, tok.column, "expected key=value, got '" + tok.text + "'");
    auto key = tok.text.substr(0, eq);
    if (fields.values.count(key)) fail(line, tok.column, "duplicate key '" + key + "'");
    fields.values.emplace(key, std::make_pair(tok.text.substr(eq + 1), tok));
  }
  return fields;
}

std::size_t parse_coord(const std::pair<std::string, Token>& field, std::size_t line) {
  if (field.first == "a") return 0;
  if (field.first == "b") return 1;
  if (field.first == "c") return 2;
  fail(line, field.second.column, "coord must be a, b or c");
}

void reject_leftovers(const Fields& fields, std::size_t line) {
  if (!fields.values.empty()) {
    const auto& [key, field] = *fields.values.begin();
    fail(line, field.second.column, "unknown key '" + key + "'");
  }
}

}  // namespace

std::string ChainSpec::to_config() const {
  std::ostringstream out;
  out << "label " << label_ << "\n";
  if (!trivial_intersection_) out << "trivial_intersection=false\n";
  for (const auto& s : primes_) {
    for (Coord c : kCoords) {
      const auto& cs = s.coords[static_cast<std::size_t>(c)];
      if (cs.is_zero()) continue;
      out << "prime=" << s.prime << " coord=" << coord_name(c) << " start=" << cs.start << " base=" << cs.base
          << " slope=" << cs.slope << "\n";
    }
  }
  if (family_) {
    for (Coord c : kCoords) {
      out << "family qi coord=" << coord_name(c) << " start=i base=" << family_->base[static_cast<std::size_t>(c)]
          << " slope=0";
      if (!(family_->set == PrimeSet::all())) out << " set=" << family_->set.id();
      out << "\n";
    }
  }
  return out.str();
}

ChainSpec ChainSpec::parse_config(std::string_view text) {
  std::string label = "config";
  bool trivial = true;
  std::map<Prime, PrimeSchedule> primes;
  std::map<Prime, std::array<bool, 3>> seen;
  std::optional<FamilySchedule> family;
  std::array<bool, 3> family_seen{};
  std::optional<std::string> family_set;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto tokens = tokenize(raw);
    if (tokens.empty() || tokens[0].text[0] == '#') continue;
    const Token& head = tokens[0];

    if (head.text == "label") {
      if (tokens.size() < 2) fail(line_no, head.column, "label needs a value");
      label = raw.substr(tokens[1].column - 1);
      while (!label.empty() && std::isspace(static_cast<unsigned char>(label.back()))) label.pop_back();
      continue;
    }
    if (head.text.rfind("trivial_intersection=", 0) == 0) {
      auto value = head.text.substr(head.text.find('=') + 1);
      if (value != "true" && value != "false") fail(line_no, head.column, "trivial_intersection must be true or false");
      trivial = value == "true";
      if (tokens.size() > 1) fail(line_no, tokens[1].column, "unexpected text after trivial_intersection");
      continue;
    }
    if (head.text == "family") {
      if (tokens.size() < 2 || tokens[1].text != "qi")
        fail(line_no, tokens.size() < 2 ? head.column + 6 : tokens[1].column, "expected 'family qi'");
      auto fields = split_fields(tokens, 2, line_no);
      auto coord = fields.take("coord");
      if (!coord) fail(line_no, head.column, "family line needs coord=");
      std::size_t c = parse_coord(*coord, line_no);
      if (family_seen[c]) fail(line_no, coord->second.column, "family coordinate given twice");
      family_seen[c] = true;
      if (auto start = fields.take("start"); start && start->first != "i")
        fail(line_no, start->second.column, "family start must be 'i'");
      if (auto slope = fields.take("slope"); slope && parse_count(slope->second, slope->first, line_no) != 0)
        fail(line_no, slope->second.column, "family slope must be 0");
      std::uint64_t base = 0;
      if (auto b = fields.take("base")) base = parse_count(b->second, b->first, line_no);
      if (auto set = fields.take("set")) {
        if (family_set && *family_set != set->first)
          fail(line_no, set->second.column, "family lines disagree on set=");
        family_set = set->first;
      }
      reject_leftovers(fields, line_no);
      if (!family) family.emplace();
      family->base[c] = base;
      continue;
    }
    if (head.text.rfind("prime=", 0) == 0) {
      auto fields = split_fields(tokens, 0, line_no);
      auto p_field = *fields.take("prime");
      Prime p = parse_count(p_field.second, p_field.first, line_no);
      if (!is_prime(p)) fail(line_no, p_field.second.column, std::to_string(p) + " is not prime");
      auto coord = fields.take("coord");
      if (!coord) fail(line_no, head.column, "prime line needs coord=");
      std::size_t c = parse_coord(*coord, line_no);
      if (seen[p][c]) fail(line_no, coord->second.column, "coordinate given twice for prime " + std::to_string(p));
      seen[p][c] = true;
      CoordinateSchedule cs;
      if (auto f = fields.take("start")) cs.start = parse_count(f->second, f->first, line_no);
      if (auto f = fields.take("base")) cs.base = parse_count(f->second, f->first, line_no);
      if (auto f = fields.take("slope")) cs.slope = parse_count(f->second, f->first, line_no);
      reject_leftovers(fields, line_no);
      auto& schedule = primes[p];
      schedule.prime = p;
      schedule.coords[c] = cs;
      continue;
    }
    fail(line_no, head.column, "unrecognized line starting with '" + head.text + "'");
  }

  if (family && family_set) {
    try {
      family->set = PrimeSet::parse(*family_set);
    } catch (const ContractError& e) {
      throw ContractError(std::string("family set: ") + e.what());
    }
  }
  std::vector<PrimeSchedule> schedules;
  for (auto& [p, s] : primes) schedules.push_back(s);
  return ChainSpec::create(label, std::move(schedules), family, trivial);
}

}  // namespace nilcantor
