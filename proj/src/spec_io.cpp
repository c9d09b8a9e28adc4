#include "dla/spec_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace dla {

namespace {

struct Statement {
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;  // of text[0]
};

std::vector<Statement> split_statements(const std::string& src) {
  std::vector<Statement> out;
  Statement cur;
  std::size_t line = 1, col = 1;
  bool comment = false;
  bool fresh = true;
  auto flush = [&] {
    // trim, keeping the column of the first kept character
    std::size_t b = 0;
    while (b < cur.text.size() && std::isspace(static_cast<unsigned char>(cur.text[b]))) ++b;
    std::size_t e = cur.text.size();
    while (e > b && std::isspace(static_cast<unsigned char>(cur.text[e - 1]))) --e;
    if (e > b) {
      Statement s{cur.text.substr(b, e - b), cur.line, cur.column + b};
      out.push_back(std::move(s));
    }
    cur = {};
    fresh = true;
  };
  for (char c : src) {
    if (c == '\n') {
      flush();
      comment = false;
      ++line;
      col = 1;
      continue;
    }
    if (!comment && c == '#') comment = true;
    if (!comment && c == ';') {
      flush();
      ++col;
      continue;
    }
    if (!comment) {
      if (fresh) {
        cur.line = line;
        cur.column = col;
        fresh = false;
      }
      cur.text.push_back(c);
    }
    ++col;
  }
  flush();
  return out;
}

class Cursor {
 public:
  Cursor(const Statement& s, std::size_t start) : s_(s), pos_(start) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw SpecError(s_.line, s_.column + pos_, msg);
  }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const {
    throw SpecError(s_.line, s_.column + pos, msg);
  }
  void skip_ws() {
    while (pos_ < s_.text.size() && std::isspace(static_cast<unsigned char>(s_.text[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.text.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.text.size() ? s_.text[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::size_t pos() const { return pos_; }
  std::string word() {
    skip_ws();
    const std::size_t b = pos_;
    while (pos_ < s_.text.size() && !std::isspace(static_cast<unsigned char>(s_.text[pos_])) &&
           s_.text[pos_] != ']' && s_.text[pos_] != '[' && s_.text[pos_] != ',') {
      ++pos_;
    }
    return s_.text.substr(b, pos_ - b);
  }
  std::string rest() {
    skip_ws();
    std::string r = s_.text.substr(pos_);
    pos_ = s_.text.size();
    return r;
  }
  std::size_t integer() {
    const std::size_t at = (skip_ws(), pos_);
    const std::string w = word();
    if (w.empty() || !std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(c); })) {
      fail_at(at, "expected a non-negative integer, got '" + w + "'");
    }
    return std::stoull(w);
  }
  double real() {
    const std::size_t at = (skip_ws(), pos_);
    const std::string w = word();
    char* end = nullptr;
    const double v = std::strtod(w.c_str(), &end);
    if (w.empty() || end != w.c_str() + w.size()) fail_at(at, "expected a number, got '" + w + "'");
    if (!std::isfinite(v)) fail_at(at, "coefficient is not finite");
    return v;
  }
  std::vector<std::size_t> int_list() {
    std::vector<std::size_t> out;
    expect('[');
    if (peek() == ']') {
      ++pos_;
      return out;
    }
    while (true) {
      out.push_back(integer());
      const char c = peek();
      ++pos_;
      if (c == ']') break;
      if (c != ',') fail_at(pos_ - 1, "expected ',' or ']'");
    }
    return out;
  }

 private:
  const Statement& s_;
  std::size_t pos_;
};

PauliSymbol parse_symbol(const std::string& tok, const Cursor& cur, std::size_t at) {
  if (tok.empty()) cur.fail_at(at, "empty symbol");
  const char c = tok[0];
  if (tok == "I") return PauliSymbol::id();
  auto num = [&](const std::string& s) -> std::size_t {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(ch); })) {
      cur.fail_at(at, "malformed symbol '" + tok + "'");
    }
    return std::stoull(s);
  };
  if (c == 'P') return PauliSymbol::proj(num(tok.substr(1)));
  if (c == 'X' || c == 'Y' || c == 'Z') {
    std::size_t k = 0, q = 1;
    if (tok.size() > 1) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos) cur.fail_at(at, "malformed symbol '" + tok + "'");
      k = num(tok.substr(1, colon - 1));
      q = num(tok.substr(colon + 1));
      if (k >= q) cur.fail_at(at, "symbol '" + tok + "' needs k < q");
    }
    if (c == 'X') return PauliSymbol::x(k, q);
    if (c == 'Y') return PauliSymbol::y(k, q);
    return PauliSymbol::z(k, q);
  }
  cur.fail_at(at, "unknown symbol '" + tok + "'");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string list(const std::vector<std::size_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace

JordanType parse_type_label(const std::string& label, std::size_t dim_a, std::size_t plus,
                            std::size_t minus) {
  if (label == "R") return JordanType::real(dim_a);
  if (label.size() >= 2 && label[0] == 'S') {
    const std::size_t n = std::stoull(label.substr(1));
    if (n < 3) throw std::invalid_argument("spin factor needs n >= 3");
    return JordanType::spin(n, dim_a, plus, minus);
  }
  if (label.size() >= 4 && label[0] == 'M') {
    const auto caret = label.find('^');
    if (caret == std::string::npos) throw std::invalid_argument("matrix type needs ^k");
    const std::size_t g = std::stoull(label.substr(1, caret - 1));
    const std::size_t k = std::stoull(label.substr(caret + 1));
    if (g < 3) throw std::invalid_argument("matrix type needs gamma >= 3");
    if (k != 1 && k != 2 && k != 4) throw std::invalid_argument("matrix type needs k in {1,2,4}");
    return JordanType::matrix(g, k, dim_a, plus, minus);
  }
  throw std::invalid_argument("unknown type label '" + label + "'");
}

HamiltonianSpec parse_spec(const std::string& text) {
  HamiltonianSpec spec;
  bool have_sites = false, have_s = false;
  std::vector<std::pair<Statement, Term>> terms;
  std::optional<Statement> s_stmt;

  auto structure = [&]() -> DeclaredStructure& {
    if (!spec.structure) spec.structure = DeclaredStructure{};
    return *spec.structure;
  };

  for (const auto& st : split_statements(text)) {
    const auto colon = st.text.find(':');
    if (colon == std::string::npos) throw SpecError(st.line, st.column, "expected 'key: value'");
    std::string key = st.text.substr(0, colon);
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
    Cursor cur(st, colon + 1);

    if (key == "sites") {
      spec.site_dims = cur.int_list();
      for (auto d : spec.site_dims)
        if (d < 2) cur.fail("site dimensions must be >= 2");
      have_sites = true;
    } else if (key == "S") {
      spec.s_sites = cur.int_list();
      s_stmt = st;
      have_s = true;
    } else if (key == "name") {
      spec.name = cur.rest();
    } else if (key == "source") {
      spec.source = cur.rest();
    } else if (key == "random") {
      spec.random_locality = cur.integer();
      if (*spec.random_locality == 0) cur.fail("locality must be >= 1");
    } else if (key == "seed") {
      spec.seed = cur.integer();
    } else if (key == "term") {
      Term t;
      t.coefficient = cur.real();
      if (cur.peek() == '[') {
        cur.expect('[');
        while (cur.peek() != ']') {
          if (cur.done()) cur.fail("unterminated '['");
          const std::size_t at = cur.pos();
          t.symbols.push_back(parse_symbol(cur.word(), cur, at));
        }
        cur.expect(']');
      } else {
        const std::size_t at = (cur.skip_ws(), cur.pos());
        const std::string w = cur.word();
        if (w.empty()) cur.fail("expected Pauli symbols");
        for (std::size_t i = 0; i < w.size(); ++i) {
          t.symbols.push_back(parse_symbol(std::string(1, w[i]), cur, at + i));
        }
      }
      if (!cur.done()) cur.fail("unexpected trailing text");
      terms.emplace_back(st, std::move(t));
    } else if (key == "structure") {
      const std::string v = cur.rest();
      if (v == "regime2") structure().regime = 2;
      else if (v == "regime3") structure().regime = 3;
      else cur.fail_at(colon + 1, "expected regime2 or regime3");
    } else if (key == "ld") {
      const std::string v = cur.rest();
      if (v == "full") structure().ld_full = true;
      else if (v == "zero") structure().ld_full = false;
      else cur.fail_at(colon + 1, "expected full or zero");
    } else if (key == "block") {
      DeclaredBlock b;
      std::string label;
      std::size_t a = 1, plus = 0, minus = 0;
      bool have_b = false;
      const std::size_t label_at = (cur.skip_ws(), cur.pos());
      while (!cur.done()) {
        const std::size_t at = (cur.skip_ws(), cur.pos());
        std::string w = cur.word();
        if (cur.peek() == ',') {  // zstar=p,m
          cur.expect(',');
          w += "," + cur.word();
        }
        const auto eq = w.find('=');
        if (eq == std::string::npos) {
          if (!label.empty()) cur.fail_at(at, "unexpected '" + w + "'");
          label = w;
          continue;
        }
        const std::string k = w.substr(0, eq), v = w.substr(eq + 1);
        try {
          if (k == "B") {
            b.dim_b = std::stoull(v);
            have_b = true;
          } else if (k == "R") {
            b.dim_r = std::stoull(v);
          } else if (k == "A") {
            a = std::stoull(v);
          } else if (k == "zstar") {
            const auto comma = v.find(',');
            if (comma == std::string::npos) cur.fail_at(at, "zstar needs <plus>,<minus>");
            plus = std::stoull(v.substr(0, comma));
            minus = std::stoull(v.substr(comma + 1));
          } else {
            cur.fail_at(at, "unknown block field '" + k + "'");
          }
        } catch (const std::logic_error&) {
          cur.fail_at(at, "malformed value in '" + w + "'");
        }
      }
      if (!label.empty()) {
        if (have_b) cur.fail_at(label_at, "block takes either a type label or B=/R=");
        try {
          b.type = parse_type_label(label, a, plus, minus);
        } catch (const std::exception& e) {
          cur.fail_at(label_at, e.what());
        }
        if (b.type->has_zstar() && b.type->zstar_plus + b.type->zstar_minus != a) {
          cur.fail_at(label_at, "zstar signature must add up to A");
        }
      } else if (!have_b) {
        cur.fail_at(label_at, "block needs B=<b> R=<r> or a type label");
      }
      if (b.dim_b == 0 || b.dim_r == 0 || a == 0) cur.fail_at(label_at, "block dimensions must be >= 1");
      structure().blocks.push_back(std::move(b));
    } else {
      throw SpecError(st.line, st.column, "unknown key '" + key + "'");
    }
  }

  if (!have_sites) throw SpecError(1, 1, "missing 'sites'");
  if (!have_s) throw SpecError(1, 1, "missing 'S'");
  const std::size_t n = spec.site_dims.size();
  {
    auto sorted = spec.s_sites;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.empty() ||
        sorted.back() >= n || sorted.size() >= n) {
      throw SpecError(s_stmt->line, s_stmt->column,
                      "S must list distinct site indices, leaving at least one E site");
    }
    spec.s_sites = sorted;
  }
  for (auto& [st, t] : terms) {
    if (t.symbols.size() != n) {
      throw SpecError(st.line, st.column,
                      "term has " + std::to_string(t.symbols.size()) + " symbols for " +
                          std::to_string(n) + " sites");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto& s = t.symbols[i];
      const std::size_t top = s.kind == PauliSymbol::Kind::P ? s.k : s.q;
      if (s.kind != PauliSymbol::Kind::I && top >= spec.site_dims[i]) {
        throw SpecError(st.line, st.column,
                        "symbol " + s.token() + " does not fit site " + std::to_string(i) +
                            " of dimension " + std::to_string(spec.site_dims[i]));
      }
    }
    spec.terms.push_back(std::move(t));
  }
  if (spec.random_locality && !spec.terms.empty()) {
    throw SpecError(1, 1, "'random' and 'term' cannot be combined");
  }
  if (spec.terms.empty() && !spec.random_locality) {
    spec.warnings.push_back("no terms: zero Hamiltonian");
  }
  return spec;
}

std::string serialize(const HamiltonianSpec& spec) {
  std::ostringstream os;
  if (!spec.name.empty()) os << "name: " << spec.name << "\n";
  if (!spec.source.empty()) os << "source: " << spec.source << "\n";
  os << "sites: " << list(spec.site_dims) << "\n";
  os << "S: " << list(spec.s_sites) << "\n";
  if (spec.random_locality) os << "random: " << *spec.random_locality << "\n";
  if (spec.seed) os << "seed: " << *spec.seed << "\n";

  std::vector<std::pair<std::string, double>> lines;
  for (const auto& t : spec.terms) {
    bool compact = true;
    for (const auto& s : t.symbols) compact = compact && s.token().size() == 1 && s.kind != PauliSymbol::Kind::P;
    std::string sym;
    if (compact) {
      for (const auto& s : t.symbols) sym += s.token();
    } else {
      sym = "[";
      for (std::size_t i = 0; i < t.symbols.size(); ++i) sym += (i ? " " : "") + t.symbols[i].token();
      sym += "]";
    }
    lines.emplace_back(sym, t.coefficient);
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& [sym, c] : lines) os << "term: " << format_double(c) << " " << sym << "\n";

  if (spec.structure) {
    const auto& s = *spec.structure;
    os << "structure: regime" << s.regime << "\n";
    os << "ld: " << (s.ld_full ? "full" : "zero") << "\n";
    for (const auto& b : s.blocks) {
      if (b.type) {
        os << "block: " << b.type->label() << " A=" << b.type->dim_a;
        if (b.type->has_zstar()) os << " zstar=" << b.type->zstar_plus << "," << b.type->zstar_minus;
        os << "\n";
      } else {
        os << "block: B=" << b.dim_b << " R=" << b.dim_r << "\n";
      }
    }
  }
  return os.str();
}

}  // namespace dla
