#include "replete/parse.hpp"

#include "replete/errors.hpp"

#include "json.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace replete {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

std::string_view strip_brackets(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') return trim(s.substr(1, s.size() - 2));
  return s;
}

long parse_long(std::string_view s) {
  s = trim(s);
  try {
    std::size_t used = 0;
    const long v = std::stol(std::string(s), &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw DomainError("expected an integer, got '" + std::string(s) + "'");
  }
}

// Top-level bracketed groups of "[..],[..]".
std::vector<std::string_view> bracket_groups(std::string_view s) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '[') {
      if (depth++ == 0) start = i;
    } else if (s[i] == ']') {
      if (--depth == 0) out.push_back(s.substr(start, i - start + 1));
      if (depth < 0) throw DomainError("unbalanced brackets in '" + std::string(s) + "'");
    } else if (depth == 0 && s[i] != ',' && !std::isspace(static_cast<unsigned char>(s[i]))) {
      throw DomainError("unexpected '" + std::string(1, s[i]) + "' in element list");
    }
  }
  if (depth != 0) throw DomainError("unbalanced brackets in '" + std::string(s) + "'");
  return out;
}

class ExpressionParser {
 public:
  ExpressionParser(const NumberField& k, std::string_view text) : k_(k), s_(text) {}

  ExpressionValue parse_all() {
    ExpressionValue v = parse();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return v;
  }

 private:
  ExpressionValue parse() {
    skip();
    for (std::string_view fn : {"mul", "inv", "pow", "norm"}) {
      if (s_.substr(pos_, fn.size()) == fn) {
        std::size_t after = pos_ + fn.size();
        while (after < s_.size() && std::isspace(static_cast<unsigned char>(s_[after]))) ++after;
        if (after < s_.size() && s_[after] == '(') {
          pos_ = after + 1;
          return call(fn);
        }
      }
    }
    return {parse_literal(), std::nullopt};
  }

  ExpressionValue call(std::string_view fn) {
    if (fn == "mul") {
      FracIdeal a = ideal_arg();
      expect(',');
      FracIdeal b = ideal_arg();
      expect(')');
      return {multiply(k_, a, b), std::nullopt};
    }
    if (fn == "inv") {
      FracIdeal a = ideal_arg();
      expect(')');
      return {invert(k_, a), std::nullopt};
    }
    if (fn == "pow") {
      FracIdeal a = ideal_arg();
      expect(',');
      skip();
      std::size_t end = s_.find(')', pos_);
      if (end == std::string_view::npos) fail("missing ')'");
      const long e = parse_long(s_.substr(pos_, end - pos_));
      pos_ = end + 1;
      return {power(k_, a, e), std::nullopt};
    }
    FracIdeal a = ideal_arg();
    expect(')');
    return {std::nullopt, norm(a)};
  }

  FracIdeal ideal_arg() {
    ExpressionValue v = parse();
    if (!v.ideal) fail("expected an ideal, got a number");
    return *v.ideal;
  }

  FracIdeal parse_literal() {
    skip();
    const std::size_t start = pos_;
    if (s_.substr(pos_, 4) == "gen:") {
      pos_ += 4;
      skip();
      if (pos_ >= s_.size() || s_[pos_] != '[') fail("expected '[' after gen:");
      int depth = 0;
      for (; pos_ < s_.size(); ++pos_) {
        if (s_[pos_] == '[') ++depth;
        if (s_[pos_] == ']' && --depth == 0) break;
      }
      if (depth != 0) fail("unbalanced brackets");
      ++pos_;
      return parse_ideal(k_, s_.substr(start, pos_ - start));
    }
    if (pos_ < s_.size() && s_[pos_] == 'O') {
      ++pos_;
      return unit_ideal(k_);
    }
    fail("expected an ideal literal");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("ideal expression: " + what + " at offset " + std::to_string(pos_));
  }

  const NumberField& k_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

NumberField field_from_name(std::string_view name) {
  name = trim(name);
  if (name == "Q") return NumberField::rationals();
  if (name == "Qi") return NumberField::gaussian();
  if (name.starts_with("Qsqrt:")) return NumberField::quadratic(parse_long(name.substr(6)));
  if (name.starts_with("Q(sqrt,") && name.ends_with(")"))
    return NumberField::quadratic(parse_long(name.substr(7, name.size() - 8)));
  if (name.starts_with("poly:")) {
    FieldSpec spec;
    for (auto c : split(strip_brackets(name.substr(5)), ',')) spec.poly.push_back(parse_long(c));
    return NumberField::from_spec(spec);
  }
  throw DomainError("unknown field preset '" + std::string(name) + "'");
}

FieldSpec parse_field_spec(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("field spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("poly") || !doc["poly"].is_array())
    throw DomainError("field spec needs a 'poly' array");
  FieldSpec spec;
  for (const auto& c : doc["poly"]) {
    if (c.is_number_integer()) spec.poly.emplace_back(std::to_string(c.get<long long>()));
    else if (c.is_string()) spec.poly.emplace_back(parse_rational(c.get<std::string>()).get_num());
    else throw DomainError("polynomial coefficients must be integers");
  }
  if (doc.contains("basis")) {
    const auto& rows = doc["basis"];
    const std::size_t n = spec.poly.empty() ? 0 : spec.poly.size() - 1;
    if (!rows.is_array() || rows.size() != n) throw DomainError("basis must have one row per degree");
    QMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!rows[i].is_array() || rows[i].size() != n) throw DomainError("basis rows must have n entries");
      for (std::size_t j = 0; j < n; ++j) {
        const auto& e = rows[i][j];
        if (e.is_string()) b(i, j) = parse_rational(e.get<std::string>());
        else if (e.is_number_integer()) b(i, j) = Rational(std::to_string(e.get<long long>()));
        else throw DomainError("basis entries must be strings \"p/q\" or integers");
      }
    }
    spec.basis = b;
  }
  return spec;
}

NumberField field_from_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read field spec '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return NumberField::from_spec(parse_field_spec(ss.str()));
}

RationalVector parse_rational_list(std::string_view text) {
  RationalVector out;
  text = strip_brackets(text);
  if (text.empty()) return out;
  for (auto part : split(text, ',')) out.push_back(parse_rational(part));
  return out;
}

FieldElement parse_element(const NumberField& k, std::string_view text) {
  RationalVector c = parse_rational_list(text);
  if (c.size() != static_cast<std::size_t>(k.degree()))
    throw DomainError("element needs " + std::to_string(k.degree()) + " coordinates");
  return k.element(std::move(c));
}

FracIdeal parse_ideal(const NumberField& k, std::string_view text) {
  text = trim(text);
  if (text == "O") return unit_ideal(k);
  if (!text.starts_with("gen:")) throw DomainError("ideal literal must look like gen:[...]");
  std::string_view body = strip_brackets(text.substr(4));
  std::vector<FieldElement> gens;
  if (body.find('[') != std::string_view::npos) {
    for (auto g : bracket_groups(body)) gens.push_back(parse_element(k, g));
  } else {
    RationalVector flat = parse_rational_list(body);
    const std::size_t n = static_cast<std::size_t>(k.degree());
    if (flat.empty() || flat.size() % n != 0)
      throw DomainError("generator list length must be a multiple of the degree " + std::to_string(n));
    for (std::size_t i = 0; i < flat.size(); i += n)
      gens.push_back(k.element(RationalVector(flat.begin() + static_cast<long>(i), flat.begin() + static_cast<long>(i + n))));
  }
  return ideal_from_generators(k, gens);
}

RepleteIdeal parse_replete(const NumberField& k, std::string_view text) {
  const auto bar = text.find('|');
  FracIdeal fin = parse_ideal(k, text.substr(0, bar));
  if (bar == std::string_view::npos) return make_replete(k, std::move(fin), uniform_arch(k, 1).scale);
  RationalVector n = parse_rational_list(text.substr(bar + 1));
  if (n.size() == 1) n.assign(static_cast<std::size_t>(k.place_count()), n[0]);
  return make_replete(k, std::move(fin), std::move(n));
}

std::vector<PrincipalEdit> parse_edits(const NumberField& k, std::string_view text) {
  std::vector<PrincipalEdit> out;
  text = trim(text);
  if (text.empty()) return out;
  for (auto part : split(text, ';')) {
    const auto caret = part.rfind('^');
    if (caret == std::string_view::npos) throw DomainError("finite edit must look like [coords]^e");
    PrincipalEdit e{parse_element(k, part.substr(0, caret)), parse_long(part.substr(caret + 1))};
    if (e.generator.is_zero()) throw DomainError("finite edit generator must be nonzero");
    out.push_back(std::move(e));
  }
  return out;
}

ExpressionValue evaluate_ideal_expression(const NumberField& k, std::string_view text) {
  return ExpressionParser(k, text).parse_all();
}

}  // namespace replete
