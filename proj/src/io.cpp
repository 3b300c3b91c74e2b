#include "courant/io.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "courant/error.hpp"

namespace courant {

namespace {

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

void check_format(const Json& doc) {
  if (!doc.is_object()) throw SchemaError("", "expected a JSON object");
  if (!doc.contains("format")) throw SchemaError("/format", "missing schema version");
  if (!doc["format"].is_number_integer() || doc["format"].get<int>() != kFormatVersion)
    throw SchemaError("/format", "unsupported schema version (expected " + std::to_string(kFormatVersion) + ")");
}

const Json& field(const Json& doc, const std::string& path, const std::string& key) {
  if (!doc.contains(key)) throw SchemaError(child(path, key), "missing field");
  return doc[key];
}

int int_field(const Json& doc, const std::string& path, const std::string& key) {
  const Json& v = field(doc, path, key);
  if (!v.is_number_integer()) throw SchemaError(child(path, key), "expected an integer");
  return v.get<int>();
}

Rat rat_of(const Json& v, const std::string& path) {
  try {
    if (v.is_number_integer()) return Rat(v.get<long>());
    if (v.is_string()) return parse_rat(v.get<std::string>());
  } catch (const ParseError& e) {
    throw SchemaError(path, e.what());
  }
  throw SchemaError(path, "expected a rational (integer or \"p/q\" string)");
}

Poly poly_of(const Json& v, const std::string& path, int n) {
  Poly p;
  try {
    if (v.is_number_integer())
      p = Poly(Rat(v.get<long>()));
    else if (v.is_string())
      p = Poly::parse(v.get<std::string>());
    else
      throw SchemaError(path, "expected a polynomial string");
  } catch (const ParseError& e) {
    throw SchemaError(path, e.what());
  }
  if (p.depends_on(Var::t()) || p.depends_on(Var::s()) || coordinates_used(p) > n)
    throw SchemaError(path, "polynomial uses variables outside x1..x" + std::to_string(n));
  return p;
}

const Json& array_of(const Json& v, const std::string& path, std::size_t len) {
  if (!v.is_array()) throw SchemaError(path, "expected an array");
  if (v.size() != len)
    throw SchemaError(path, "expected " + std::to_string(len) + " entries, got " + std::to_string(v.size()));
  return v;
}

RatMatrix rat_matrix(const Json& v, const std::string& path, std::size_t rows, std::size_t cols) {
  array_of(v, path, rows);
  RatMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    array_of(v[i], child(path, i), cols);
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = rat_of(v[i][j], child(child(path, i), j));
  }
  return out;
}

PolyMatrix poly_matrix(const Json& v, const std::string& path, std::size_t rows, std::size_t cols, int n) {
  array_of(v, path, rows);
  PolyMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    array_of(v[i], child(path, i), cols);
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = poly_of(v[i][j], child(child(path, i), j), n);
  }
  return out;
}

std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

int int_arg(const std::string& s, const std::string& expr) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw SchemaError("/preset", "'" + s + "' is not an integer in '" + expr + "'");
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": invalid JSON: " + e.what(), e.byte);
  }
}

StructurePtr structure_from_preset(const std::string& expr, const Json* H) {
  static const std::regex call(R"(^\s*([A-Za-z_][A-Za-z0-9_]*)\s*\((.*)\)\s*$)");
  std::smatch m;
  if (!std::regex_match(expr, m, call)) throw SchemaError("/preset", "expected name(args), got '" + expr + "'");
  const std::string name = m[1];
  const auto args = split_args(m[2]);
  auto want = [&](std::size_t k) {
    if (args.size() != k)
      throw SchemaError("/preset", name + " takes " + std::to_string(k) + " argument(s), got " +
                                       std::to_string(args.size()));
  };
  try {
    if (name == "standard") {
      want(1);
      return standard(int_arg(args[0], expr));
    }
    if (name == "standard_twisted") {
      if (args.size() == 1 && H) {
        const int n = int_arg(args[0], expr);
        std::vector<std::vector<std::vector<Poly>>> h(n, std::vector<std::vector<Poly>>(n, std::vector<Poly>(n)));
        array_of(*H, "/H", n);
        for (int i = 0; i < n; ++i) {
          array_of((*H)[i], child("/H", i), n);
          for (int j = 0; j < n; ++j) {
            array_of((*H)[i][j], child(child("/H", i), j), n);
            for (int k = 0; k < n; ++k) h[i][j][k] = poly_of((*H)[i][j][k], child(child(child("/H", i), j), k), n);
          }
        }
        return standard_twisted(n, h);
      }
      want(2);
      Rat c;
      try {
        c = parse_rat(args[1]);
      } catch (const ParseError& e) {
        throw SchemaError("/preset", e.what());
      }
      return standard_twisted(int_arg(args[0], expr), c);
    }
    if (name == "quadratic_lie") {
      want(1);
      return quadratic_lie(args[0]);
    }
    if (name == "silent") {
      want(2);
      return silent(int_arg(args[0], expr), int_arg(args[1], expr));
    }
    if (name == "abelian") {
      want(1);
      return abelian(int_arg(args[0], expr));
    }
    if (name == "aff1_action") {
      want(0);
      return aff1_action();
    }
  } catch (const DomainError& e) {
    throw SchemaError("/preset", e.what());
  }
  throw SchemaError("/preset", "unknown preset '" + name + "'");
}

StructurePtr structure_from_json(const Json& doc) {
  check_format(doc);
  if (doc.contains("preset")) {
    if (!doc["preset"].is_string()) throw SchemaError("/preset", "expected a string");
    return structure_from_preset(doc["preset"].get<std::string>(), doc.contains("H") ? &doc["H"] : nullptr);
  }
  const int n = int_field(doc, "", "n");
  const int r = int_field(doc, "", "r");
  if (n < 0 || n > kMaxCoords) throw SchemaError("/n", "must lie in 0.." + std::to_string(kMaxCoords));
  if (r < 1 || r > kMaxRank) throw SchemaError("/r", "must lie in 1.." + std::to_string(kMaxRank));
  if (doc.contains("coords")) {
    const Json& coords = array_of(doc["coords"], "/coords", n);
    for (int i = 0; i < n; ++i)
      if (!coords[i].is_string() || coords[i].get<std::string>() != "x" + std::to_string(i + 1))
        throw SchemaError(child("/coords", i), "coordinates must be named x1..xn in order");
  }
  RatMatrix g = rat_matrix(field(doc, "", "pairing"), "/pairing", r, r);
  PolyMatrix rho = poly_matrix(field(doc, "", "anchor"), "/anchor", r, n, n);
  const Json& cj = array_of(field(doc, "", "c"), "/c", r);
  std::vector<PolyMatrix> c;
  for (int a = 0; a < r; ++a) c.push_back(poly_matrix(cj[a], child("/c", a), r, r, n));
  std::string name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw SchemaError("/name", "expected a string");
    name = doc["name"].get<std::string>();
  }
  try {
    return CourantStructure::make(std::move(g), std::move(rho), std::move(c), name);
  } catch (const DomainError& e) {
    throw SchemaError("", e.what());
  }
}

Json structure_to_json(const CourantStructure& E) {
  Json doc;
  doc["format"] = kFormatVersion;
  doc["name"] = E.name();
  doc["n"] = E.n();
  doc["r"] = E.r();
  Json coords = Json::array();
  for (int i = 0; i < E.n(); ++i) coords.push_back("x" + std::to_string(i + 1));
  doc["coords"] = coords;
  doc["pairing"] = to_json(E.pairing());
  doc["anchor"] = to_json(E.anchor());
  Json c = Json::array();
  for (int a = 0; a < E.r(); ++a) {
    Json rows = Json::array();
    for (int b = 0; b < E.r(); ++b) {
      Json row = Json::array();
      for (int d = 0; d < E.r(); ++d) row.push_back(to_json(E.structure(a, b, d)));
      rows.push_back(row);
    }
    c.push_back(rows);
  }
  doc["c"] = c;
  return doc;
}

Connection connection_from_json(const StructurePtr& E, const Json& doc) {
  check_format(doc);
  const int m = int_field(doc, "", "m");
  if (m < 1) throw SchemaError("/m", "fiber rank must be positive");
  const Json& gj = array_of(field(doc, "", "gamma"), "/gamma", E->r());
  std::vector<PolyMatrix> gamma;
  for (int a = 0; a < E->r(); ++a) gamma.push_back(poly_matrix(gj[a], child("/gamma", a), m, m, E->n()));
  std::optional<RatMatrix> h;
  if (doc.contains("fiber_pairing")) h = rat_matrix(doc["fiber_pairing"], "/fiber_pairing", m, m);
  try {
    return Connection(E, std::move(gamma), h);
  } catch (const DomainError& e) {
    throw SchemaError("/fiber_pairing", e.what());
  }
}

Json connection_to_json(const Connection& nabla) {
  Json doc;
  doc["format"] = kFormatVersion;
  doc["m"] = nabla.m();
  Json g = Json::array();
  for (const auto& mat : nabla.coefficients()) g.push_back(to_json(mat));
  doc["gamma"] = g;
  if (nabla.fiber_pairing()) doc["fiber_pairing"] = to_json(*nabla.fiber_pairing());
  return doc;
}

LinearConnection linear_connection_from_json(const CourantStructure& E, const Json& doc) {
  check_format(doc);
  const Json& lj = array_of(field(doc, "", "L"), "/L", E.n());
  LinearConnection L;
  for (int i = 0; i < E.n(); ++i) L.push_back(poly_matrix(lj[i], child("/L", i), E.r(), E.r(), E.n()));
  return L;
}

RatMatrix metric_from_json(const Json& doc, int r) {
  check_format(doc);
  return rat_matrix(field(doc, "", "metric"), "/metric", r, r);
}

std::vector<Section> frame_from_json(const CourantStructure& E, const Json& doc) {
  check_format(doc);
  const Json& sj = field(doc, "", "sections");
  if (!sj.is_array()) throw SchemaError("/sections", "expected an array");
  std::vector<Section> out;
  for (std::size_t j = 0; j < sj.size(); ++j) {
    const std::string path = child("/sections", j);
    array_of(sj[j], path, E.r());
    Section s(E.r());
    for (int a = 0; a < E.r(); ++a) s[a] = poly_of(sj[j][a], child(path, a), E.n());
    out.push_back(s);
  }
  return out;
}

Json frame_to_json(const std::vector<Section>& frame) {
  Json doc;
  doc["format"] = kFormatVersion;
  Json s = Json::array();
  for (const auto& sec : frame) s.push_back(to_json(sec));
  doc["sections"] = s;
  return doc;
}

Section parse_section(const CourantStructure& E, std::string_view text) {
  auto parts = split_args(std::string(text));
  if (static_cast<int>(parts.size()) != E.r())
    throw ParseError("section needs " + std::to_string(E.r()) + " comma-separated components, got " +
                     std::to_string(parts.size()));
  Section s(E.r());
  for (int a = 0; a < E.r(); ++a) {
    s[a] = Poly::parse(parts[a]);
    if (s[a].depends_on(Var::t()) || s[a].depends_on(Var::s()) || coordinates_used(s[a]) > E.n())
      throw ParseError("section component " + std::to_string(a + 1) + " uses variables outside x1..x" +
                       std::to_string(E.n()));
  }
  return s;
}

Cochain parse_cochain(const StructurePtr& E, std::string_view text, int degree) {
  GradedElem body = GradedElem::parse(E->context(), text);
  try {
    return degree < 0 ? Cochain(E, std::move(body)) : Cochain(E, std::move(body), degree);
  } catch (const DomainError& e) {
    throw ParseError(std::string("cochain: ") + e.what());
  }
}

Json to_json(const Rat& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return Json(q.get_num().get_si());
  return Json(to_string(q));
}

Json to_json(const Poly& p) { return Json(p.to_string()); }

Json to_json(const PolyVec& v) {
  Json out = Json::array();
  for (const auto& p : v) out.push_back(to_json(p));
  return out;
}

Json to_json(const Cochain& w) {
  Json out;
  out["degree"] = w.degree();
  out["text"] = w.to_string();
  return out;
}

Json to_json(const RatMatrix& a) {
  Json out = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(to_json(a(i, j)));
    out.push_back(row);
  }
  return out;
}

Json to_json(const PolyMatrix& a) {
  Json out = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(to_json(a(i, j)));
    out.push_back(row);
  }
  return out;
}

Json evaluation_table(const Cochain& w) {
  const auto& E = w.structure();
  const int r = E->r(), k = w.degree();
  Json rows = Json::array();
  std::vector<int> idx(k, 0);
  auto rec = [&](auto&& self, int pos, int start) -> void {
    if (pos == k) {
      std::vector<Section> args;
      for (int a : idx) args.push_back(unit_vector(r, a));
      Poly v = evaluate(w, args);
      if (!v.is_zero()) {
        Json entry;
        Json one_based = Json::array();
        for (int a : idx) one_based.push_back(a + 1);
        entry["frame"] = one_based;
        entry["value"] = to_json(v);
        rows.push_back(entry);
      }
      return;
    }
    for (int a = start; a < r; ++a) {
      idx[pos] = a;
      self(self, pos + 1, a);
    }
  };
  rec(rec, 0, 0);
  return rows;
}

}  // namespace courant
