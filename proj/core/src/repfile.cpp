#include "stabcat/repfile.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace stabcat {

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream is{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\''))
      return false;
  return true;
}

std::uint64_t parse_count(const std::string& s, std::size_t line, const char* what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(line, std::string("expected a non-negative integer for ") + what + ", got '" + s + "'");
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ParseError(line, std::string(what) + " out of range");
  }
}

using IntRows = std::vector<std::vector<std::int64_t>>;

class MatrixParser {
 public:
  MatrixParser(std::string_view s, std::size_t line) : s_(s), line_(line) {}

  IntRows parse() {
    IntRows rows;
    expect('[');
    skip();
    if (peek() == ']') {
      ++pos_;
      finish();
      return rows;
    }
    for (;;) {
      rows.push_back(row());
      skip();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect(']');
      break;
    }
    finish();
    return rows;
  }

 private:
  std::vector<std::int64_t> row() {
    std::vector<std::int64_t> r;
    expect('[');
    skip();
    if (peek() == ']') {
      ++pos_;
      return r;
    }
    for (;;) {
      r.push_back(integer());
      skip();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect(']');
      return r;
    }
  }

  std::int64_t integer() {
    skip();
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string tok(s_.substr(start, pos_ - start));
    if (tok.empty() || tok == "-" || tok == "+")
      throw ParseError(line_, "expected an integer in matrix literal near '" + std::string(s_.substr(start, 8)) + "'");
    try {
      return std::stoll(tok);
    } catch (const std::exception&) {
      throw ParseError(line_, "matrix entry out of range: " + tok);
    }
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) throw ParseError(line_, std::string("expected '") + c + "' in matrix literal");
    ++pos_;
  }
  void finish() {
    skip();
    if (pos_ != s_.size()) throw ParseError(line_, "trailing text after matrix literal");
  }

  std::string_view s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

Mat to_mat(const IntRows& rows, std::size_t want_rows, std::size_t want_cols, PrimeField f, std::size_t line,
           const std::string& what) {
  if (rows.size() != want_rows)
    throw ParseError(line, what + ": has " + std::to_string(rows.size()) + " rows, expected " +
                               std::to_string(want_rows));
  Mat m(f, want_rows, want_cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != want_cols)
      throw ParseError(line, what + ": row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                                 " entries, expected " + std::to_string(want_cols));
    for (std::size_t c = 0; c < want_cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

class Parser {
 public:
  explicit Parser(std::string_view text) {
    std::size_t n = 0;
    std::istringstream is{std::string(text)};
    for (std::string raw; std::getline(is, raw);) {
      ++n;
      if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
      std::string t = trim(raw);
      if (!t.empty()) lines_.push_back({n, t});
    }
  }

  RepFile run() {
    if (lines_.empty() || words(lines_[0].text).at(0) != "field") throw ParseError(0, "field spec required");
    while (at_ < lines_.size()) statement();
    for (std::size_t i = 0; i < rf_.modules.size(); ++i)
      if (auto v = relation_violation(rf_.modules[i], rf_.relations)) throw ParseError(module_lines_[i], *v);
    return std::move(rf_);
  }

 private:
  void statement() {
    const Line& ln = lines_[at_];
    auto w = words(ln.text);
    const std::string& kw = w[0];
    if (kw == "field") {
      if (seen_field_) throw ParseError(ln.number, "duplicate field spec");
      if (w.size() != 2) throw ParseError(ln.number, "usage: field <p>");
      const auto p = parse_count(w[1], ln.number, "field");
      if (!is_prime(p) || p > 0x7fffffffULL)
        throw ParseError(ln.number, "field " + w[1] + " is not a prime field (only GF(p) is supported)");
      rf_.field = PrimeField(p);
      seen_field_ = true;
      ++at_;
    } else if (kw == "generators") {
      if (w.size() != 2) throw ParseError(ln.number, "usage: generators <g>");
      if (!rf_.modules.empty()) throw ParseError(ln.number, "generators must precede module blocks");
      rf_.generators = parse_count(w[1], ln.number, "generators");
      ++at_;
    } else if (kw == "relation") {
      Word word;
      for (std::size_t i = 1; i < w.size(); ++i) {
        auto g = parse_count(w[i], ln.number, "relation generator");
        if (g >= rf_.generators) throw ParseError(ln.number, "relation uses undeclared generator " + w[i]);
        word.push_back(g);
      }
      if (word.empty()) throw ParseError(ln.number, "empty relation");
      rf_.relations.push_back(std::move(word));
      ++at_;
    } else if (kw == "module") {
      module_block(w, ln.number);
    } else if (kw == "morphism") {
      morphism_block(ln);
    } else if (kw == "class") {
      class_line(ln);
    } else if (kw == "context") {
      context_line(w, ln.number);
    } else {
      throw ParseError(ln.number, "unknown statement '" + kw + "'");
    }
  }

  void claim(const std::string& name, std::size_t line) {
    if (!valid_name(name)) throw ParseError(line, "invalid name '" + name + "'");
    if (!names_.insert(name).second) throw ParseError(line, "duplicate name '" + name + "'");
  }

  // Text of a matrix literal starting at `first` (rest of the current line),
  // extended over following lines until brackets balance.
  std::string matrix_text(std::string first, std::size_t line) {
    auto depth = [](const std::string& s) {
      int d = 0;
      for (char c : s) d += c == '[' ? 1 : c == ']' ? -1 : 0;
      return d;
    };
    std::string text = trim(first);
    if (text.empty()) {
      if (at_ >= lines_.size()) throw ParseError(line, "missing matrix literal");
      text = lines_[at_++].text;
    }
    if (text.front() != '[') throw ParseError(line, "expected matrix literal");
    while (depth(text) > 0) {
      if (at_ >= lines_.size()) throw ParseError(line, "unterminated matrix literal");
      text += " " + lines_[at_++].text;
    }
    return text;
  }

  void module_block(const std::vector<std::string>& w, std::size_t line) {
    if (w.size() != 4 || w[2] != "dim") throw ParseError(line, "usage: module <name> dim <d>");
    claim(w[1], line);
    const std::size_t dim = parse_count(w[3], line, "dim");
    ++at_;
    std::vector<Mat> acts;
    for (std::size_t g = 0; g < rf_.generators; ++g) {
      if (at_ >= lines_.size()) throw ParseError(line, "module " + w[1] + ": missing gen " + std::to_string(g));
      const Line& gl = lines_[at_];
      const auto colon = gl.text.find(':');
      auto head = words(gl.text.substr(0, colon == std::string::npos ? gl.text.size() : colon));
      if (colon == std::string::npos || head.size() != 2 || head[0] != "gen")
        throw ParseError(gl.number, "module " + w[1] + ": expected 'gen " + std::to_string(g) + ": [[...]]'");
      if (parse_count(head[1], gl.number, "generator index") != g)
        throw ParseError(gl.number, "module " + w[1] + ": expected gen " + std::to_string(g));
      ++at_;
      const std::string lit = matrix_text(gl.text.substr(colon + 1), gl.number);
      const auto rows = MatrixParser(lit, gl.number).parse();
      acts.push_back(to_mat(rows, dim, dim, rf_.field, gl.number, "module " + w[1] + " gen " + std::to_string(g)));
    }
    rf_.modules.emplace_back(w[1], rf_.field, dim, std::move(acts));
    module_lines_.push_back(line);
  }

  void morphism_block(const Line& ln) {
    // morphism <name> : <src> -> <dst> [literal]
    std::string t = ln.text.substr(std::string("morphism").size());
    const auto colon = t.find(':');
    const auto arrow = t.find("->");
    if (colon == std::string::npos || arrow == std::string::npos || arrow < colon)
      throw ParseError(ln.number, "usage: morphism <name> : <src> -> <dst>");
    const std::string name = trim(t.substr(0, colon));
    const std::string src = trim(t.substr(colon + 1, arrow - colon - 1));
    std::string rest = trim(t.substr(arrow + 2));
    std::string dst = rest;
    std::string literal;
    if (auto b = rest.find('['); b != std::string::npos) {
      dst = trim(rest.substr(0, b));
      literal = rest.substr(b);
    }
    claim(name, ln.number);
    if (!rf_.has_module(src)) throw ParseError(ln.number, "morphism " + name + ": unknown module '" + src + "'");
    if (!rf_.has_module(dst)) throw ParseError(ln.number, "morphism " + name + ": unknown module '" + dst + "'");
    ++at_;
    const std::string lit = matrix_text(literal, ln.number);
    const auto rows = MatrixParser(lit, ln.number).parse();
    const Module& s = rf_.module(src);
    const Module& d = rf_.module(dst);
    Mat m = to_mat(rows, d.dim(), s.dim(), rf_.field, ln.number, "morphism " + name);
    try {
      rf_.morphisms.push_back({name, src, dst, Morphism(s, d, m)});
    } catch (const NotIntertwining& e) {
      throw ParseError(ln.number, "morphism " + name + " violates intertwining for generator " +
                                      std::to_string(e.generator()));
    }
  }

  void class_line(const Line& ln) {
    const auto eq = ln.text.find('=');
    if (eq == std::string::npos) throw ParseError(ln.number, "usage: class <name> = <mod>, ...");
    auto head = words(ln.text.substr(0, eq));
    if (head.size() != 2) throw ParseError(ln.number, "usage: class <name> = <mod>, ...");
    ClassDecl c{head[1], {}};
    if (!valid_name(c.name)) throw ParseError(ln.number, "invalid class name '" + c.name + "'");
    if (rf_.has_class(c.name)) throw ParseError(ln.number, "duplicate class '" + c.name + "'");
    std::string rest = ln.text.substr(eq + 1);
    std::istringstream is(rest);
    std::set<std::string> seen;
    for (std::string item; std::getline(is, item, ',');) {
      item = trim(item);
      if (item.empty()) continue;
      if (!rf_.has_module(item)) throw ParseError(ln.number, "class " + c.name + ": unknown module '" + item + "'");
      if (!seen.insert(item).second) throw ParseError(ln.number, "class " + c.name + ": repeated member " + item);
      c.members.push_back(item);
    }
    rf_.classes.push_back(std::move(c));
    ++at_;
  }

  void context_line(const std::vector<std::string>& w, std::size_t line) {
    if (w.size() != 4 || w[2].rfind("W=", 0) != 0 || w[3].rfind("universe=", 0) != 0)
      throw ParseError(line, "usage: context <name> W=<mod> universe=<class>");
    ContextDecl c{w[1], w[2].substr(2), w[3].substr(9)};
    for (const auto& existing : rf_.contexts)
      if (existing.name == c.name) throw ParseError(line, "duplicate context '" + c.name + "'");
    if (!rf_.has_module(c.generator)) throw ParseError(line, "context " + c.name + ": unknown module '" + c.generator + "'");
    if (!rf_.has_class(c.universe)) throw ParseError(line, "context " + c.name + ": unknown class '" + c.universe + "'");
    rf_.contexts.push_back(std::move(c));
    ++at_;
  }

  std::vector<Line> lines_;
  std::size_t at_ = 0;
  bool seen_field_ = false;
  RepFile rf_;
  std::set<std::string> names_;
  std::vector<std::size_t> module_lines_;
};

}  // namespace

bool RepFile::has_module(std::string_view name) const {
  for (const auto& m : modules)
    if (m.name() == name) return true;
  return false;
}

bool RepFile::has_morphism(std::string_view name) const {
  for (const auto& m : morphisms)
    if (m.name == name) return true;
  return false;
}

bool RepFile::has_class(std::string_view name) const {
  for (const auto& c : classes)
    if (c.name == name) return true;
  return false;
}

const Module& RepFile::module(std::string_view name) const {
  for (const auto& m : modules)
    if (m.name() == name) return m;
  throw UnknownName("unknown module '" + std::string(name) + "'");
}

const NamedMorphism& RepFile::morphism(std::string_view name) const {
  for (const auto& m : morphisms)
    if (m.name == name) return m;
  throw UnknownName("unknown morphism '" + std::string(name) + "'");
}

const ClassDecl& RepFile::class_decl(std::string_view name) const {
  for (const auto& c : classes)
    if (c.name == name) return c;
  throw UnknownName("unknown class '" + std::string(name) + "'");
}

const ContextDecl& RepFile::context(std::string_view name) const {
  for (const auto& c : contexts)
    if (c.name == name) return c;
  throw UnknownName("unknown context '" + std::string(name) + "'");
}

std::vector<Module> RepFile::class_members(std::string_view name) const {
  std::vector<Module> out;
  for (const auto& m : class_decl(name).members) out.push_back(module(m));
  return out;
}

bool operator==(const RepFile& a, const RepFile& b) {
  if (!(a.field == b.field) || a.generators != b.generators || a.relations != b.relations) return false;
  if (a.modules.size() != b.modules.size() || a.morphisms.size() != b.morphisms.size()) return false;
  for (std::size_t i = 0; i < a.modules.size(); ++i)
    if (a.modules[i].name() != b.modules[i].name() || !(a.modules[i] == b.modules[i])) return false;
  for (std::size_t i = 0; i < a.morphisms.size(); ++i) {
    const auto &x = a.morphisms[i], &y = b.morphisms[i];
    if (x.name != y.name || x.src != y.src || x.dst != y.dst || !(x.map == y.map)) return false;
  }
  if (a.classes.size() != b.classes.size() || a.contexts.size() != b.contexts.size()) return false;
  for (std::size_t i = 0; i < a.classes.size(); ++i)
    if (a.classes[i].name != b.classes[i].name || a.classes[i].members != b.classes[i].members) return false;
  for (std::size_t i = 0; i < a.contexts.size(); ++i) {
    const auto &x = a.contexts[i], &y = b.contexts[i];
    if (x.name != y.name || x.generator != y.generator || x.universe != y.universe) return false;
  }
  return true;
}

RepFile parse_repfile(std::string_view text) { return Parser(text).run(); }

std::string matrix_literal(const Mat& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) s += ",";
    s += "[";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) s += ",";
      s += std::to_string(m(r, c));
    }
    s += "]";
  }
  return s + "]";
}

std::string serialize(const RepFile& rf) {
  std::ostringstream os;
  os << "field " << rf.field.modulus() << "\n";
  os << "generators " << rf.generators << "\n";
  for (const auto& w : rf.relations) {
    os << "relation";
    for (auto g : w) os << ' ' << g;
    os << "\n";
  }
  for (const auto& m : rf.modules) {
    os << "module " << m.name() << " dim " << m.dim() << "\n";
    for (std::size_t g = 0; g < m.generators(); ++g) os << "gen " << g << ": " << matrix_literal(m.action(g)) << "\n";
  }
  for (const auto& f : rf.morphisms)
    os << "morphism " << f.name << " : " << f.src << " -> " << f.dst << "\n" << matrix_literal(f.map.mat()) << "\n";
  for (const auto& c : rf.classes) {
    os << "class " << c.name << " =";
    for (std::size_t i = 0; i < c.members.size(); ++i) os << (i ? ", " : " ") << c.members[i];
    os << "\n";
  }
  for (const auto& c : rf.contexts)
    os << "context " << c.name << " W=" << c.generator << " universe=" << c.universe << "\n";
  return os.str();
}

}  // namespace stabcat
