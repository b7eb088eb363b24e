/* Copyright 2026 The listfn Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "listfn/formats.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "listfn/error.hpp"
#include "listfn/registers.hpp"

namespace listfn {

namespace fs = std::filesystem;

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words_of(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// Body lines after the header, without comments and blank lines. Comments
// start at a `;` outside double quotes.
std::vector<Line> body_lines(const std::string& text, const std::string& kind) {
  std::istringstream in(text);
  std::string line;
  std::string header = "listfn-" + kind + " 1";
  if (!std::getline(in, line) || strip(line) != header) throw SyntaxError("expected header '" + header + "'", 0);
  std::vector<Line> out;
  std::size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    bool quoted = false;
    std::size_t cut = line.size();
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == ';' && !quoted) {
        cut = i;
        break;
      }
    }
    std::string t = strip(line.substr(0, cut));
    if (!t.empty()) out.push_back({n, t});
  }
  return out;
}

[[noreturn]] void fail(const std::string& kind, const Line& l, const std::string& msg) {
  throw SyntaxError(kind + " line " + std::to_string(l.number) + ": " + msg, 0);
}

struct TableSpec {
  std::vector<std::string> elements;
  std::vector<int> table;
  std::optional<int> identity;
  std::string name;
};

TableSpec parse_table(const std::string& text, const std::string& kind) {
  TableSpec spec;
  std::optional<std::string> identity;
  std::vector<std::pair<Line, std::vector<std::string>>> rows;
  for (const auto& l : body_lines(text, kind)) {
    auto ws = words_of(l.text);
    std::vector<std::string> rest(ws.begin() + 1, ws.end());
    if (ws[0] == "elements") {
      spec.elements = rest;
    } else if (ws[0] == "identity" && rest.size() == 1) {
      identity = rest[0];
    } else if (ws[0] == "name" && rest.size() == 1) {
      spec.name = rest[0];
    } else if (ws[0] == "row") {
      rows.emplace_back(l, rest);
    } else {
      fail(kind, l, "unrecognised '" + ws[0] + "'");
    }
  }
  const std::size_t n = spec.elements.size();
  if (n == 0) throw SyntaxError(kind + ": no elements", 0);
  auto index = [&](const std::string& e) {
    for (std::size_t i = 0; i < n; ++i)
      if (spec.elements[i] == e) return static_cast<int>(i);
    return -1;
  };
  if (rows.size() != n) throw SyntaxError(kind + ": expected " + std::to_string(n) + " rows", 0);
  for (const auto& [l, row] : rows) {
    if (row.size() != n) fail(kind, l, "row has " + std::to_string(row.size()) + " entries");
    for (const auto& e : row) {
      int i = index(e);
      if (i < 0) fail(kind, l, "unknown element '" + e + "'");
      spec.table.push_back(i);
    }
  }
  if (identity) {
    int i = index(*identity);
    if (i < 0 && !identity->empty() && identity->find_first_not_of("0123456789") == std::string::npos) {
      i = std::stoi(*identity);
      if (i >= static_cast<int>(n)) i = -1;
    }
    if (i < 0) throw SyntaxError(kind + ": unknown identity '" + *identity + "'", 0);
    spec.identity = i;
  }
  return spec;
}

std::string render_table(const std::string& kind, const std::vector<std::string>& elements,
                         const std::function<int(int, int)>& mult, std::optional<int> identity,
                         const std::string& name = "") {
  std::ostringstream out;
  out << "listfn-" << kind << " 1\n";
  if (!name.empty()) out << "name " << name << "\n";
  out << "elements " << join_word(elements, " ") << "\n";
  if (identity) out << "identity " << elements[static_cast<std::size_t>(*identity)] << "\n";
  const int n = static_cast<int>(elements.size());
  for (int a = 0; a < n; ++a) {
    out << "row";
    for (int b = 0; b < n; ++b) out << " " << elements[static_cast<std::size_t>(mult(a, b))];
    out << "\n";
  }
  return out.str();
}

fs::path relative_to(const fs::path& base, const std::string& ref) {
  fs::path p(ref);
  if (p.is_absolute() || base.empty()) return p;
  return base / p;
}

// Parses `"..."` starting at s[i]; returns the contents.
std::string quoted_at(const std::string& s, std::size_t& i, const std::string& kind, const Line& l) {
  if (i >= s.size() || s[i] != '"') fail(kind, l, "expected a quoted word");
  auto end = s.find('"', i + 1);
  if (end == std::string::npos) fail(kind, l, "unterminated quote");
  std::string body = s.substr(i + 1, end - i - 1);
  i = end + 1;
  return body;
}

}  // namespace

std::string read_text_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string file_kind(const std::string& text) {
  auto eol = text.find('\n');
  auto ws = words_of(text.substr(0, eol));
  if (ws.size() != 2 || ws[0].rfind("listfn-", 0) != 0) return "";
  return ws[0].substr(7);
}

FiniteSemigroup parse_semigroup(const std::string& text) {
  auto spec = parse_table(text, "monoid");
  try {
    return FiniteSemigroup(spec.elements, spec.table, spec.identity);
  } catch (const SyntaxError&) {
    throw;
  } catch (const Error& e) {
    throw TypeError(std::string("monoid: ") + e.what());
  }
}

FiniteMonoid parse_monoid(const std::string& text) {
  auto s = parse_semigroup(text);
  if (!s.has_identity()) throw TypeError("monoid: no identity element declared");
  return FiniteMonoid(s);
}

std::string render_monoid(const FiniteSemigroup& s) {
  std::optional<int> id;
  if (s.has_identity()) id = s.identity();
  return render_table("monoid", s.elements(), [&](int a, int b) { return s.mult(a, b); }, id);
}

FiniteMonoid resolve_monoid(const std::string& ref, const fs::path& base) {
  if (ref == "builtin:U1") return monoids::u1();
  if (ref == "builtin:contains_ab") return monoids::contains_ab();
  if (ref.rfind("builtin:Z", 0) == 0) {
    std::string n = ref.substr(9);
    if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos || std::stoi(n) < 1)
      throw SyntaxError("bad builtin monoid '" + ref + "'", 0);
    return monoids::cyclic(std::stoi(n));
  }
  if (ref.rfind("builtin:", 0) == 0) throw SyntaxError("unknown builtin monoid '" + ref + "'", 0);
  return parse_monoid(read_text_file(relative_to(base, ref)));
}

GroupSpec parse_group(const std::string& text, const std::string& default_name) {
  auto spec = parse_table(text, "group");
  if (!spec.identity) throw TypeError("group: no identity element declared");
  try {
    return GroupSpec(spec.name.empty() ? default_name : spec.name, spec.elements, spec.table, *spec.identity);
  } catch (const SyntaxError&) {
    throw;
  } catch (const Error& e) {
    throw TypeError(std::string("group: ") + e.what());
  }
}

std::string render_group(const GroupSpec& g) {
  return render_table("group", g.elements(), [&](int a, int b) { return g.mult(a, b); }, g.identity(), g.name());
}

RationalFn parse_rational(const std::string& text, const fs::path& base) {
  const std::string kind = "rational";
  std::vector<std::string> sigma, gamma;
  std::optional<FiniteMonoid> monoid;
  std::map<std::string, std::string> hom;
  struct Row {
    Line line;
    std::string m, a, m2;
    Word out;
  };
  std::vector<Row> rows;
  for (const auto& l : body_lines(text, kind)) {
    if (l.text[0] == '(') {
      auto close = l.text.find(')');
      if (close == std::string::npos) fail(kind, l, "expected ')'");
      std::string inner = l.text.substr(1, close - 1);
      for (char& c : inner)
        if (c == ',') c = ' ';
      auto parts = words_of(inner);
      if (parts.size() != 3) fail(kind, l, "expected (m, a, m')");
      std::size_t i = l.text.find_first_not_of(" \t", close + 1);
      if (i == std::string::npos || l.text.compare(i, 2, "->") != 0) fail(kind, l, "expected '->'");
      i = l.text.find_first_not_of(" \t", i + 2);
      if (i == std::string::npos) fail(kind, l, "missing output word");
      std::string w = quoted_at(l.text, i, kind, l);
      if (i != l.text.size()) fail(kind, l, "trailing input");
      rows.push_back({l, parts[0], parts[1], parts[2], parse_literal(w)});
      continue;
    }
    auto ws = words_of(l.text);
    std::vector<std::string> rest(ws.begin() + 1, ws.end());
    if (ws[0] == "input") {
      sigma = rest;
    } else if (ws[0] == "output") {
      gamma = rest;
    } else if (ws[0] == "monoid" && rest.size() == 1) {
      monoid = resolve_monoid(rest[0], base);
    } else if (ws[0] == "hom" && rest.size() == 3 && rest[1] == "->") {
      if (hom.count(rest[0])) fail(kind, l, "letter '" + rest[0] + "' mapped twice");
      hom[rest[0]] = rest[2];
    } else {
      fail(kind, l, "unrecognised '" + ws[0] + "'");
    }
  }
  if (sigma.empty()) throw SyntaxError("rational: missing input alphabet", 0);
  if (!monoid) throw SyntaxError("rational: missing monoid", 0);
  const FiniteMonoid& m = *monoid;
  std::vector<int> h;
  for (const auto& a : sigma) {
    auto it = hom.find(a);
    if (it == hom.end()) throw TypeError("rational: no image for letter '" + a + "'");
    int e = m.index_of(it->second);
    if (e < 0) throw TypeError("rational: unknown monoid element '" + it->second + "'");
    h.push_back(e);
  }
  for (const auto& [a, _] : hom)
    if (std::find(sigma.begin(), sigma.end(), a) == sigma.end())
      throw TypeError("rational: hom for letter '" + a + "' outside the input alphabet");
  const std::size_t nm = static_cast<std::size_t>(m.size());
  std::vector<std::optional<Word>> out(nm * sigma.size() * nm);
  auto letter = [&](const Row& r) {
    if (r.a == "*") return -1;
    auto it = std::find(sigma.begin(), sigma.end(), r.a);
    if (it == sigma.end()) fail(kind, r.line, "unknown letter '" + r.a + "'");
    return static_cast<int>(it - sigma.begin());
  };
  auto element = [&](const Row& r, const std::string& e) {
    if (e == "*") return -1;
    int i = m.index_of(e);
    if (i < 0) fail(kind, r.line, "unknown monoid element '" + e + "'");
    return i;
  };
  for (const auto& r : rows) {
    for (const auto& c : r.out)
      if (std::find(gamma.begin(), gamma.end(), c) == gamma.end())
        fail(kind, r.line, "output letter '" + c + "' not in the output alphabet");
    int pm = element(r, r.m), pa = letter(r), pm2 = element(r, r.m2);
    for (std::size_t i = 0; i < nm; ++i)
      for (std::size_t a = 0; a < sigma.size(); ++a)
        for (std::size_t j = 0; j < nm; ++j) {
          if ((pm >= 0 && static_cast<std::size_t>(pm) != i) || (pa >= 0 && static_cast<std::size_t>(pa) != a) ||
              (pm2 >= 0 && static_cast<std::size_t>(pm2) != j))
            continue;
          out[(i * sigma.size() + a) * nm + j] = r.out;
        }
  }
  std::vector<Word> table;
  for (std::size_t i = 0; i < nm; ++i)
    for (std::size_t a = 0; a < sigma.size(); ++a)
      for (std::size_t j = 0; j < nm; ++j) {
        auto& w = out[(i * sigma.size() + a) * nm + j];
        if (!w)
          throw TypeError("rational: no output for (" + m.name(static_cast<int>(i)) + ", " + sigma[a] + ", " +
                          m.name(static_cast<int>(j)) + ")");
        table.push_back(*w);
      }
  return RationalFn(sigma, gamma, m, h, table);
}

std::string render_rational(const RationalFn& r, const std::string& monoid_ref) {
  std::ostringstream out;
  out << "listfn-rational 1\n";
  out << "input " << join_word(r.sigma, " ") << "\n";
  out << "output " << join_word(r.gamma, " ") << "\n";
  out << "monoid " << monoid_ref << "\n";
  for (std::size_t a = 0; a < r.sigma.size(); ++a) out << "hom " << r.sigma[a] << " -> " << r.monoid.name(r.h[a]) << "\n";
  for (int i = 0; i < r.monoid.size(); ++i)
    for (std::size_t a = 0; a < r.sigma.size(); ++a)
      for (int j = 0; j < r.monoid.size(); ++j)
        out << "(" << r.monoid.name(i) << ", " << r.sigma[a] << ", " << r.monoid.name(j) << ") -> \""
            << render_literal(r.output(i, static_cast<int>(a), j)) << "\"\n";
  return out.str();
}

Term parse_term_file(const std::string& text, const fs::path& base) {
  TermEnv env;
  std::string body;
  for (const auto& l : body_lines(text, "term")) {
    auto ws = words_of(l.text);
    if (ws[0] == "group") {
      if (ws.size() != 3) fail("term", l, "expected 'group NAME FILE'");
      env.groups.insert_or_assign(ws[1], parse_group(read_text_file(relative_to(base, ws[2])), ws[1]));
      continue;
    }
    body += l.text + "\n";
  }
  if (strip(body).empty()) throw SyntaxError("term: empty body", 0);
  return parse_term(body, env);
}

std::map<std::string, Type> parse_types(const std::string& text) {
  std::map<std::string, Type> out;
  for (const auto& l : body_lines(text, "types")) {
    auto eq = l.text.find('=');
    if (eq == std::string::npos) fail("types", l, "expected 'NAME = TYPE'");
    std::string name = strip(l.text.substr(0, eq));
    if (!is_identifier(name)) fail("types", l, "bad name '" + name + "'");
    if (out.count(name)) fail("types", l, "duplicate name '" + name + "'");
    out.emplace(name, parse_type(strip(l.text.substr(eq + 1))));
  }
  return out;
}

bool Workspace::contains(const std::string& name) const { return kinds_.count(name) != 0; }

void Workspace::claim(const std::string& name) {
  if (contains(name)) throw Error("workspace: duplicate name '" + name + "'");
}

std::string Workspace::load(const fs::path& p) {
  std::string text = read_text_file(p);
  std::string kind = file_kind(text);
  std::string name = p.stem().string();
  fs::path base = p.parent_path();
  if (kind == "types") {
    auto ts = parse_types(text);
    for (const auto& [n, _] : ts) claim(n);
    for (auto& [n, t] : ts) {
      kinds_[n] = kind;
      types.emplace(n, t);
    }
    return name;
  }
  claim(name);
  if (kind == "term") {
    Term t = parse_term_file(text, base);
    infer_type(t);
    terms.emplace(name, t);
  } else if (kind == "monoid") {
    monoids.emplace(name, parse_monoid(text));
  } else if (kind == "group") {
    groups.emplace(name, parse_group(text, name));
  } else if (kind == "rational") {
    rationals.emplace(name, parse_rational(text, base));
  } else if (kind == "sst") {
    ssts.emplace(name, parse_sst(text));
  } else if (kind == "fot") {
    transductions.emplace(name, parse_transduction(text));
  } else if (kind == "structure") {
    structures.emplace(name, parse_structure(text));
  } else if (kind == "pipeline") {
    pipelines.emplace(name, load_pipeline(text));
  } else {
    throw SyntaxError(p.string() + ": unknown file kind '" + kind + "'", 0);
  }
  kinds_[name] = kind;
  return name;
}

void Workspace::load_dir(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files)
    if (!file_kind(read_text_file(f)).empty()) load(f);
}

}  // namespace listfn
