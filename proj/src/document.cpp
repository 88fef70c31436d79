#include "gould/document.hpp"

#include <cctype>
#include <sstream>

namespace gould {

const SetFunction& Document::measure(const std::string& name) const {
  auto it = measures.find(name);
  if (it == measures.end()) throw ValidationError("no measure named '" + name + "'");
  return it->second;
}

const VecFunction& Document::function(const std::string& name) const {
  auto it = functions.find(name);
  if (it == functions.end())
    throw ValidationError("no function named '" + name + "'");
  return it->second;
}

const VecMeasure& Document::vmeasure(const std::string& name) const {
  auto it = vmeasures.find(name);
  if (it == vmeasures.end())
    throw ValidationError("no vmeasure named '" + name + "'");
  return it->second;
}

namespace {

enum class Tok { ident, number, lbrace, rbrace, lparen, rparen, comma, equals, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

bool is_keyword(const std::string& s) {
  return s == "space" || s == "blocks" || s == "measure" || s == "function" ||
         s == "vmeasure" || s == "dim" || s == "default";
}

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto bump = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') bump(text[i++]);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump(c);
      ++i;
      continue;
    }
    const std::size_t tl = line, tc = col;
    auto single = [&](Tok k) {
      out.push_back({k, std::string(1, c), tl, tc});
      bump(c);
      ++i;
    };
    switch (c) {
      case '{': single(Tok::lbrace); continue;
      case '}': single(Tok::rbrace); continue;
      case '(': single(Tok::lparen); continue;
      case ')': single(Tok::rparen); continue;
      case ',': single(Tok::comma); continue;
      case '=': single(Tok::equals); continue;
      default: break;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      std::string num(1, c);
      bump(c);
      ++i;
      bool saw_digit = std::isdigit(static_cast<unsigned char>(c));
      bool saw_slash = false;
      while (i < text.size()) {
        const char d = text[i];
        if (std::isdigit(static_cast<unsigned char>(d))) {
          saw_digit = true;
        } else if (d == '/' && !saw_slash && saw_digit) {
          saw_slash = true;
          saw_digit = false;  // need digits after the slash
        } else {
          break;
        }
        num += d;
        bump(d);
        ++i;
      }
      if (!saw_digit) throw ParseError(tl, tc, "malformed rational '" + num + "'");
      out.push_back({Tok::number, num, tl, tc});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        id += text[i];
        bump(text[i]);
        ++i;
      }
      out.push_back({Tok::ident, id, tl, tc});
      continue;
    }
    throw ParseError(tl, tc, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

  Document run() {
    Document doc;
    // universe
    expect_ident("space");
    std::vector<std::string> points;
    while (at(Tok::ident) && !is_keyword(cur().text)) points.push_back(take().text);
    if (points.empty()) err("'space' needs at least one point label");
    std::vector<std::vector<std::string>> blocks;
    if (at_ident("blocks")) {
      take();
      while (at(Tok::lbrace)) blocks.push_back(label_set());
      if (blocks.empty()) err("'blocks' needs at least one set");
    }
    try {
      doc.universe = std::make_shared<const Universe>(points, blocks);
    } catch (const ValidationError& e) {
      err(e.what());
    }
    const Universe& u = *doc.universe;

    while (!at(Tok::end)) {
      if (at_ident("measure")) {
        take();
        auto [name, tok] = object_name("measure");
        if (doc.measures.count(name)) err_at(tok, "duplicate measure '" + name + "'");
        doc.measures.emplace(name, parse_measure(u));
      } else if (at_ident("function")) {
        take();
        auto [name, tok] = object_name("function");
        if (doc.functions.count(name))
          err_at(tok, "duplicate function '" + name + "'");
        doc.functions.emplace(name, parse_function(u));
      } else if (at_ident("vmeasure")) {
        take();
        auto [name, tok] = object_name("vmeasure");
        if (doc.vmeasures.count(name))
          err_at(tok, "duplicate vmeasure '" + name + "'");
        doc.vmeasures.emplace(name, parse_vmeasure(u));
      } else {
        err("expected 'measure', 'function' or 'vmeasure'");
      }
    }
    return doc;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& cur() const { return toks_[pos_]; }
  bool at(Tok k) const { return cur().kind == k; }
  bool at_ident(const char* s) const { return at(Tok::ident) && cur().text == s; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void err(const std::string& msg) const { err_at(cur(), msg); }
  [[noreturn]] static void err_at(const Token& t, const std::string& msg) {
    throw ParseError(t.line, t.col, msg);
  }

  void expect_ident(const char* s) {
    if (!at_ident(s)) err(std::string("expected '") + s + "'");
    take();
  }
  Token expect(Tok k, const char* what) {
    if (!at(k)) err(std::string("expected ") + what);
    return take();
  }

  std::pair<std::string, Token> object_name(const char* kind) {
    if (!at(Tok::ident) || is_keyword(cur().text))
      err(std::string("expected a name after '") + kind + "'");
    Token t = take();
    return {t.text, t};
  }

  // "{a,b}" as labels; the caller resolves them
  std::vector<std::string> label_set() {
    expect(Tok::lbrace, "'{'");
    std::vector<std::string> labels;
    if (at(Tok::rbrace)) {
      take();
      return labels;
    }
    while (true) {
      Token t = expect(Tok::ident, "a point label");
      labels.push_back(t.text);
      if (at(Tok::comma)) {
        take();
        continue;
      }
      expect(Tok::rbrace, "'}' or ','");
      return labels;
    }
  }

  Mask set_points(const Universe& u, const std::vector<std::string>& labels,
                  const Token& where) {
    Mask pm = 0;
    for (const auto& l : labels) {
      auto idx = u.find_point(l);
      if (!idx) err_at(where, "unknown point label '" + l + "'");
      pm |= Mask(1) << *idx;
    }
    return pm;
  }

  MSet set_value(const Universe& u) {
    Token where = cur();
    auto labels = label_set();
    Mask pm = set_points(u, labels, where);
    try {
      return u.mset_from_point_mask(pm);
    } catch (const ValidationError& e) {
      err_at(where, e.what());
    }
  }

  Rational rational_value() {
    Token t = expect(Tok::number, "a rational");
    try {
      return parse_rational_token(t.text);
    } catch (const ValidationError& e) {
      err_at(t, e.what());
    }
  }

  RatVec vector_value(std::size_t dim) {
    Token where = cur();
    expect(Tok::lparen, "'('");
    RatVec v;
    while (true) {
      v.push_back(rational_value());
      if (at(Tok::comma)) {
        take();
        continue;
      }
      expect(Tok::rparen, "')' or ','");
      break;
    }
    if (v.size() != dim)
      err_at(where, "vector has " + std::to_string(v.size()) +
                        " coordinates, expected " + std::to_string(dim));
    return v;
  }

  std::size_t dim_value() {
    expect_ident("dim");
    Token t = expect(Tok::number, "a dimension");
    for (char c : t.text)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        err_at(t, "dimension must be a positive integer");
    const unsigned long d = std::stoul(t.text);
    if (d == 0 || d > 16) err_at(t, "dimension must be between 1 and 16");
    return d;
  }

  SetFunction parse_measure(const Universe& u) {
    Token open = expect(Tok::lbrace, "'{'");
    std::map<Mask, Rational> values;
    std::optional<Rational> dflt;
    while (!at(Tok::rbrace)) {
      if (at_ident("default")) {
        Token t = take();
        expect(Tok::equals, "'='");
        if (dflt) err_at(t, "duplicate 'default'");
        dflt = rational_value();
        continue;
      }
      Token where = cur();
      MSet s = set_value(u);
      expect(Tok::equals, "'='");
      Rational v = rational_value();
      if (v < 0) err_at(where, "measure values must be nonnegative");
      if (!values.emplace(s.blocks(), v).second)
        err_at(where, "duplicate entry for " + s.str());
      if (s.empty() && v != 0) err_at(where, "the empty set must map to 0");
    }
    take();  // '}'
    if (!dflt) err_at(open, "measure block needs a 'default' entry");
    if (*dflt < 0) err_at(open, "measure default must be nonnegative");
    if (*dflt != 0 && !values.count(0))
      err_at(open, "nonzero default leaves the empty set nonzero; add '{} = 0'");
    try {
      return SetFunction(u, values, *dflt);
    } catch (const ValidationError& e) {
      err_at(open, e.what());
    }
  }

  VecFunction parse_function(const Universe& u) {
    const std::size_t dim = dim_value();
    Token open = expect(Tok::lbrace, "'{'");
    std::vector<std::optional<RatVec>> per_point(u.point_count());
    while (!at(Tok::rbrace)) {
      Token t = expect(Tok::ident, "a point label");
      auto idx = u.find_point(t.text);
      if (!idx) err_at(t, "unknown point label '" + t.text + "'");
      expect(Tok::equals, "'='");
      RatVec v = vector_value(dim);
      if (per_point[*idx]) err_at(t, "duplicate entry for point '" + t.text + "'");
      per_point[*idx] = std::move(v);
    }
    take();
    std::vector<RatVec> values;
    for (std::size_t i = 0; i < u.point_count(); ++i) {
      if (!per_point[i])
        err_at(open, "function gives no value for point '" + u.point_label(i) + "'");
      values.push_back(std::move(*per_point[i]));
    }
    return VecFunction(u, dim, std::move(values));
  }

  VecMeasure parse_vmeasure(const Universe& u) {
    const std::size_t dim = dim_value();
    Token open = expect(Tok::lbrace, "'{'");
    std::map<Mask, RatVec> values;
    bool saw_default = false;
    while (!at(Tok::rbrace)) {
      if (at_ident("default")) {
        Token t = take();
        expect(Tok::equals, "'='");
        if (saw_default) err_at(t, "duplicate 'default'");
        RatVec v = vector_value(dim);
        if (!vec_is_zero(v)) err_at(t, "vmeasure default must be the zero vector");
        saw_default = true;
        continue;
      }
      Token where = cur();
      MSet s = set_value(u);
      expect(Tok::equals, "'='");
      RatVec v = vector_value(dim);
      if (!values.emplace(s.blocks(), std::move(v)).second)
        err_at(where, "duplicate entry for " + s.str());
      if (s.empty() && !vec_is_zero(values[0]))
        err_at(where, "the empty set must map to the zero vector");
    }
    take();
    if (!saw_default) err_at(open, "vmeasure block needs a 'default' entry");
    try {
      return VecMeasure(u, dim, values);
    } catch (const ValidationError& e) {
      err_at(open, e.what());
    }
  }
};

} // namespace

Rational parse_rational_token(const std::string& token) {
  const auto slash = token.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(token));
    const BigInt num(token.substr(0, slash));
    const BigInt den(token.substr(slash + 1));
    if (den == 0) throw ValidationError("zero denominator in '" + token + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw ValidationError("malformed rational '" + token + "'");
  }
}

Mask parse_set_token(const Universe& u, const std::string& token) {
  std::string t = token;
  if (t.size() < 2 || t.front() != '{' || t.back() != '}')
    throw ValidationError("set must look like {a,b} or {}, got '" + token + "'");
  t = t.substr(1, t.size() - 2);
  Mask pm = 0;
  std::size_t start = 0;
  while (start < t.size()) {
    std::size_t comma = t.find(',', start);
    if (comma == std::string::npos) comma = t.size();
    std::string label = t.substr(start, comma - start);
    if (label.empty()) throw ValidationError("empty label in set '" + token + "'");
    pm |= Mask(1) << u.point_index(label);
    start = comma + 1;
  }
  return pm;
}

RatVec parse_vector_token(const std::string& token) {
  std::string t = token;
  if (t.size() < 2 || t.front() != '(' || t.back() != ')')
    throw ValidationError("vector must look like (1,2/3), got '" + token + "'");
  t = t.substr(1, t.size() - 2);
  RatVec v;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = t.find(',', start);
    if (comma == std::string::npos) comma = t.size();
    v.push_back(parse_rational_token(t.substr(start, comma - start)));
    if (comma == t.size()) break;
    start = comma + 1;
  }
  return v;
}

Document parse_document(const std::string& text) { return Parser(text).run(); }

std::string print_document(const Document& d) {
  const Universe& u = *d.universe;
  std::ostringstream os;
  os << "space";
  for (const auto& p : u.points()) os << ' ' << p;
  os << '\n';
  if (!u.singleton_blocks()) {
    os << "blocks";
    for (std::size_t b = 0; b < u.block_count(); ++b)
      os << ' ' << MSet(&u, Mask(1) << b).str();
    os << '\n';
  }
  const Mask full = u.full_set().blocks();
  for (const auto& [name, m] : d.measures) {
    os << "measure " << name << " {\n";
    for (Mask mask = 1; mask <= full; ++mask)
      if (m.at_mask(mask) != 0)
        os << "  " << MSet(&u, mask).str() << " = " << rat_str(m.at_mask(mask))
           << '\n';
    os << "  default = 0\n}\n";
  }
  for (const auto& [name, f] : d.functions) {
    os << "function " << name << " dim " << f.dim() << " {\n";
    for (std::size_t p = 0; p < u.point_count(); ++p)
      os << "  " << u.point_label(p) << " = " << vec_str(f.at(p)) << '\n';
    os << "}\n";
  }
  for (const auto& [name, mu] : d.vmeasures) {
    os << "vmeasure " << name << " dim " << mu.dim() << " {\n";
    for (Mask mask = 1; mask <= full; ++mask)
      if (!vec_is_zero(mu.at_mask(mask)))
        os << "  " << MSet(&u, mask).str() << " = " << vec_str(mu.at_mask(mask))
           << '\n';
    os << "  default = " << vec_str(vec_zero(mu.dim())) << "\n}\n";
  }
  return os.str();
}

bool documents_equal(const Document& a, const Document& b) {
  if (!(*a.universe == *b.universe)) return false;
  const Mask full = a.universe->full_set().blocks();
  if (a.measures.size() != b.measures.size() ||
      a.functions.size() != b.functions.size() ||
      a.vmeasures.size() != b.vmeasures.size())
    return false;
  for (const auto& [name, m] : a.measures) {
    auto it = b.measures.find(name);
    if (it == b.measures.end()) return false;
    for (Mask mask = 0; mask <= full; ++mask)
      if (m.at_mask(mask) != it->second.at_mask(mask)) return false;
  }
  for (const auto& [name, f] : a.functions) {
    auto it = b.functions.find(name);
    if (it == b.functions.end() || it->second.dim() != f.dim()) return false;
    for (std::size_t p = 0; p < a.universe->point_count(); ++p)
      if (f.at(p) != it->second.at(p)) return false;
  }
  for (const auto& [name, mu] : a.vmeasures) {
    auto it = b.vmeasures.find(name);
    if (it == b.vmeasures.end() || !(mu == it->second)) return false;
  }
  return true;
}

} // namespace gould
