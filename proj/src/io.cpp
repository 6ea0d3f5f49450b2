#include "projdim/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "projdim/rauzy.hpp"

namespace projdim {

namespace {

class TomlParser {
 public:
  TomlParser(const std::string& text, std::string origin) : s_(text), origin_(std::move(origin)) {}

  json parse() {
    json doc = json::object();
    json* current = &doc;
    for (;;) {
      skip_blank_lines();
      if (eof()) break;
      if (peek() == '[') {
        const bool array = s_.compare(pos_, 2, "[[") == 0;
        pos_ += array ? 2 : 1;
        skip_ws();
        const std::vector<std::string> path = parse_dotted_key();
        skip_ws();
        expect(']');
        if (array) expect(']');
        end_of_line();
        json* node = &doc;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) node = &descend(*node, path[i]);
        const std::string& last = path.back();
        if (array) {
          json& arr = (*node)[last];
          if (arr.is_null()) arr = json::array();
          if (!arr.is_array()) error("'" + last + "' is not an array of tables");
          arr.push_back(json::object());
          current = &arr.back();
        } else {
          current = &descend(*node, last);
        }
        continue;
      }
      const std::vector<std::string> path = parse_dotted_key();
      skip_ws();
      expect('=');
      skip_ws();
      json value = parse_value();
      end_of_line();
      json* node = current;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) node = &descend(*node, path[i]);
      if (node->contains(path.back())) error("duplicate key '" + path.back() + "'");
      (*node)[path.back()] = std::move(value);
    }
    return doc;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    throw ConfigFileError(origin_, "line " + std::to_string(line_) + ": " + msg);
  }

  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[pos_]; }

  void expect(char c) {
    if (peek() != c) error(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) ++pos_;
  }

  void skip_comment() {
    if (peek() == '#')
      while (!eof() && peek() != '\n') ++pos_;
  }

  void skip_blank_lines() {
    for (;;) {
      skip_ws();
      skip_comment();
      if (peek() == '\n') {
        ++pos_;
        ++line_;
        continue;
      }
      return;
    }
  }

  void end_of_line() {
    skip_ws();
    skip_comment();
    if (eof()) return;
    if (peek() != '\n') error("unexpected text after value");
    ++pos_;
    ++line_;
  }

  json& descend(json& node, const std::string& key) {
    json& child = node[key];
    if (child.is_null()) child = json::object();
    if (!child.is_object()) error("'" + key + "' is not a table");
    return child;
  }

  std::string parse_key() {
    if (peek() == '"') return parse_string();
    const std::size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-')) ++pos_;
    if (pos_ == start) error("expected a key");
    return s_.substr(start, pos_ - start);
  }

  std::vector<std::string> parse_dotted_key() {
    std::vector<std::string> parts{parse_key()};
    for (;;) {
      skip_ws();
      if (peek() != '.') return parts;
      ++pos_;
      skip_ws();
      parts.push_back(parse_key());
    }
  }

  std::string parse_string() {
    expect('"');
    std::string out;
    while (!eof() && peek() != '"') {
      char c = s_[pos_++];
      if (c == '\n') error("newline in string");
      if (c == '\\') {
        if (eof()) error("unterminated string");
        const char e = s_[pos_++];
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: error(std::string("unsupported escape \\") + e);
        }
      }
      out.push_back(c);
    }
    expect('"');
    return out;
  }

  // Whitespace, newlines and comments inside arrays.
  void skip_inner() {
    for (;;) {
      skip_ws();
      skip_comment();
      if (peek() == '\n') {
        ++pos_;
        ++line_;
        continue;
      }
      return;
    }
  }

  json parse_value() {
    const char c = peek();
    if (c == '"') return parse_string();
    if (c == '[') {
      ++pos_;
      json arr = json::array();
      for (;;) {
        skip_inner();
        if (peek() == ']') {
          ++pos_;
          return arr;
        }
        arr.push_back(parse_value());
        skip_inner();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        skip_inner();
        expect(']');
        return arr;
      }
    }
    if (c == '{') {
      ++pos_;
      json obj = json::object();
      skip_ws();
      if (peek() == '}') {
        ++pos_;
        return obj;
      }
      for (;;) {
        skip_ws();
        const std::string key = parse_key();
        skip_ws();
        expect('=');
        skip_ws();
        if (obj.contains(key)) error("duplicate key '" + key + "'");
        obj[key] = parse_value();
        skip_ws();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        expect('}');
        return obj;
      }
    }
    if (s_.compare(pos_, 4, "true") == 0) {
      pos_ += 4;
      return true;
    }
    if (s_.compare(pos_, 5, "false") == 0) {
      pos_ += 5;
      return false;
    }
    return parse_number();
  }

  json parse_number() {
    const std::size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '+' ||
                      peek() == '-' || peek() == '.' || peek() == '_'))
      ++pos_;
    std::string tok = s_.substr(start, pos_ - start);
    tok.erase(std::remove(tok.begin(), tok.end(), '_'), tok.end());
    if (tok.empty()) error("expected a value");
    if (tok == "inf" || tok == "+inf" || tok == "-inf" || tok == "nan")
      error("non-finite number '" + tok + "'");
    const bool is_float = tok.find_first_of(".eE") != std::string::npos;
    std::size_t used = 0;
    try {
      if (!is_float) {
        const long long v = std::stoll(tok, &used);
        if (used == tok.size()) return v;
      } else {
        const double v = std::stod(tok, &used);
        if (used == tok.size()) return v;
      }
    } catch (const std::exception&) {
    }
    error("invalid value '" + tok + "'");
  }

  const std::string& s_;
  std::string origin_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

std::string lower_trim(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

template <std::size_t N>
std::array<double, N * N> square_from_json(const json& v, const std::string& field,
                                            const std::string& origin) {
  const std::string n = std::to_string(N);
  if (!v.is_array()) throw ConfigFileError(origin, field + ": expected an array of " + n + " rows");
  if (v.size() != N)
    throw ConfigFileError(origin, field + ": expected " + n + " rows, got " + std::to_string(v.size()));
  std::array<double, N * N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    const json& row = v[i];
    const std::string rf = field + "[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != N)
      throw ConfigFileError(origin, rf + ": expected " + n + " numbers, got " +
                                        (row.is_array() ? std::to_string(row.size()) : std::string("a non-array")));
    for (std::size_t j = 0; j < N; ++j) {
      if (!row[j].is_number())
        throw ConfigFileError(origin, rf + "[" + std::to_string(j) + "]: not a number");
      const double x = row[j].get<double>();
      if (!std::isfinite(x)) throw ConfigFileError(origin, rf + "[" + std::to_string(j) + "]: not finite");
      out[N * i + j] = x;
    }
  }
  return out;
}

}  // namespace

json parse_toml(const std::string& text, const std::string& origin) {
  return TomlParser(text, origin).parse();
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigFileError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  if (ends_with(lower_trim(path), ".toml")) return parse_toml(text, path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigFileError(path, std::string("invalid JSON: ") + e.what());
  }
}

Mat3 matrix3_from_json(const json& v, const std::string& field, const std::string& origin) {
  return Mat3(square_from_json<3>(v, field, origin));
}

Mat2 matrix2_from_json(const json& v, const std::string& field, const std::string& origin) {
  const auto a = square_from_json<2>(v, field, origin);
  return {a[0], a[1], a[2], a[3]};
}

AtomicMeasure measure_from_json(const json& doc, const std::string& origin) {
  if (!doc.is_object()) throw ConfigFileError(origin, "top level must be a table/object");
  if (doc.contains("schema") && !(doc["schema"].is_number_integer() && doc["schema"].get<int>() == 1))
    throw ConfigFileError(origin, "schema: only schema = 1 is supported");
  if (!doc.contains("atoms")) throw ConfigFileError(origin, "atoms: missing");
  const json& atoms = doc["atoms"];
  if (!atoms.is_array() || atoms.empty()) throw ConfigFileError(origin, "atoms: expected a nonempty array");
  bool top_exact = false;
  if (doc.contains("exact")) {
    if (!doc["exact"].is_boolean()) throw ConfigFileError(origin, "exact: expected a boolean");
    top_exact = doc["exact"].get<bool>();
  }

  std::vector<Atom> out;
  std::size_t with_weight = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string field = "atoms[" + std::to_string(i) + "]";
    const json& a = atoms[i];
    if (!a.is_object()) throw ConfigFileError(origin, field + ": expected a table");
    if (!a.contains("matrix")) throw ConfigFileError(origin, field + ".matrix: missing");
    Atom atom{matrix3_from_json(a["matrix"], field + ".matrix", origin), 0.0, std::nullopt};
    if (a.contains("weight")) {
      if (!a["weight"].is_number()) throw ConfigFileError(origin, field + ".weight: not a number");
      atom.weight = a["weight"].get<double>();
      if (!(atom.weight > 0.0)) throw ConfigFileError(origin, field + ".weight: must be positive");
      ++with_weight;
    }
    bool exact = top_exact;
    if (a.contains("exact")) {
      if (!a["exact"].is_boolean()) throw ConfigFileError(origin, field + ".exact: expected a boolean");
      exact = a["exact"].get<bool>();
    }
    if (exact) {
      atom.exact = exact_form(atom.g);
      if (!atom.exact) throw ConfigFileError(origin, field + ".matrix: exact = true but entries are not integers");
    }
    out.push_back(atom);
  }
  if (with_weight != 0 && with_weight != out.size())
    throw ConfigFileError(origin, "atoms: give a weight for every atom or for none");
  if (with_weight == 0)
    for (Atom& a : out) a.weight = 1.0 / static_cast<double>(out.size());
  const bool any_exact = std::any_of(out.begin(), out.end(), [](const Atom& a) { return a.exact.has_value(); });
  if (any_exact && !std::all_of(out.begin(), out.end(), [](const Atom& a) { return a.exact.has_value(); }))
    throw ConfigFileError(origin, "atoms: exact must be set for all atoms or none");
  // Unspecified: integral matrices get exact forms, as for the builtins.
  const bool specified = doc.contains("exact") || std::any_of(atoms.begin(), atoms.end(), [](const json& a) {
                           return a.is_object() && a.contains("exact");
                         });
  if (!specified && std::all_of(out.begin(), out.end(), [](const Atom& a) { return exact_form(a.g).has_value(); }))
    for (Atom& a : out) a.exact = exact_form(a.g);

  std::string label = origin;
  if (doc.contains("label") && doc["label"].is_string()) label = doc["label"].get<std::string>();
  try {
    Tolerances tol = default_tolerances();
    if (with_weight == 0) tol.weight_sum = 1e-12 + 1e-15 * static_cast<double>(out.size());
    return AtomicMeasure(std::move(out), label, tol);
  } catch (const Error& e) {
    throw ConfigFileError(origin, std::string("atoms: ") + e.what());
  }
}

std::optional<std::pair<double, double>> parse_schottky_name(const std::string& name) {
  const std::string s = lower_trim(name);
  if (s == "schottky2") return std::pair{6.0, M_PI / 4.0};
  const std::string head = "schottky2(";
  if (s.rfind(head, 0) != 0 || s.back() != ')') return std::nullopt;
  const std::string args = s.substr(head.size(), s.size() - head.size() - 1);
  const auto comma = args.find(',');
  if (comma == std::string::npos) return std::nullopt;
  try {
    std::size_t u1 = 0, u2 = 0;
    const std::string a = args.substr(0, comma), b = args.substr(comma + 1);
    const double lambda = std::stod(a, &u1);
    const double theta = std::stod(b, &u2);
    if (u1 != a.size() || u2 != b.size()) return std::nullopt;
    return std::pair{lambda, theta};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

bool is_builtin(const std::string& name) {
  const std::string s = lower_trim(name);
  return s == "rauzy" || s == "diag-test" || parse_schottky_name(name).has_value();
}

std::vector<Mat3> builtin_generators(const std::string& name) {
  const std::string s = lower_trim(name);
  if (s == "rauzy") return rauzy_generators();
  if (s == "diag-test") return {Mat3::diag(4.0, 1.0, 0.25)};
  if (const auto p = parse_schottky_name(name)) {
    const SchottkySL2 group = SchottkySL2::symmetric(p->first, p->second);
    std::vector<Mat3> out;
    for (const Mat2& h : group.generators())
      out.push_back(embed_iota(h));
    return out;
  }
  fail(ErrorCode::UnknownName, "unknown generator family '" + name + "'");
}

AtomicMeasure resolve_measure(const std::string& spec) {
  if (is_builtin(spec)) return AtomicMeasure::uniform(builtin_generators(spec), lower_trim(spec));
  return measure_from_json(load_config(spec), spec);
}

std::vector<double> parse_range(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string tok;
  try {
    while (std::getline(ss, tok, ':')) parts.push_back(std::stod(tok));
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidArgument, "range '" + spec + "': expected a:b:c");
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
    fail(ErrorCode::InvalidArgument, "range '" + spec + "': expected a:b:c with a <= b, c > 0");
  const auto steps = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-3));
  if (steps > 100000) fail(ErrorCode::InvalidArgument, "range '" + spec + "': too many points");
  std::vector<double> out;
  for (long i = 0; i <= steps; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[2]);
  return out;
}

JumpConfig jump_config_from_json(const json& doc, const std::string& origin) {
  if (!doc.is_object()) throw ConfigFileError(origin, "top level must be a table/object");
  if (doc.contains("schema") && !(doc["schema"].is_number_integer() && doc["schema"].get<int>() == 1))
    throw ConfigFileError(origin, "schema: only schema = 1 is supported");
  JumpConfig cfg;
  if (doc.contains("base")) {
    if (!doc["base"].is_string()) throw ConfigFileError(origin, "base: expected a family name");
    const auto p = parse_schottky_name(doc["base"].get<std::string>());
    if (!p) throw ConfigFileError(origin, "base: expected schottky2(lambda, theta)");
    cfg.base = SchottkySL2::symmetric(p->first, p->second).generators();
  } else if (doc.contains("base_generators")) {
    const json& g = doc["base_generators"];
    if (!g.is_array() || g.empty()) throw ConfigFileError(origin, "base_generators: expected a nonempty array");
    for (std::size_t i = 0; i < g.size(); ++i)
      cfg.base.push_back(matrix2_from_json(g[i], "base_generators[" + std::to_string(i) + "]", origin));
  } else {
    throw ConfigFileError(origin, "base: missing (or give base_generators)");
  }
  if (doc.contains("direction")) {
    const json& d = doc["direction"];
    if (!d.is_array()) throw ConfigFileError(origin, "direction: expected an array of 3x3 matrices");
    for (std::size_t i = 0; i < d.size(); ++i)
      cfg.direction.push_back(matrix3_from_json(d[i], "direction[" + std::to_string(i) + "]", origin));
    if (cfg.direction.size() != cfg.base.size())
      throw ConfigFileError(origin, "direction: need one matrix per base generator");
  } else {
    cfg.direction.assign(cfg.base.size(), Mat3());
  }
  if (doc.contains("eps")) {
    const json& e = doc["eps"];
    if (!e.is_array()) throw ConfigFileError(origin, "eps: expected an array of numbers");
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i].is_number()) throw ConfigFileError(origin, "eps[" + std::to_string(i) + "]: not a number");
      cfg.eps.push_back(e[i].get<double>());
    }
  } else if (doc.contains("eps_range")) {
    if (!doc["eps_range"].is_string()) throw ConfigFileError(origin, "eps_range: expected \"a:b:c\"");
    try {
      cfg.eps = parse_range(doc["eps_range"].get<std::string>());
    } catch (const Error& e) {
      throw ConfigFileError(origin, std::string("eps_range: ") + e.what());
    }
  }
  if (doc.contains("nmax")) {
    if (!doc["nmax"].is_number_integer()) throw ConfigFileError(origin, "nmax: expected an integer");
    cfg.n_max = doc["nmax"].get<int>();
  }
  if (doc.contains("tol")) {
    if (!doc["tol"].is_number()) throw ConfigFileError(origin, "tol: not a number");
    cfg.tol = doc["tol"].get<double>();
  }
  return cfg;
}

}  // namespace projdim
