#include "courant/poly.hpp"

#include <algorithm>
#include <sstream>

#include "courant/detail/expr_parser.hpp"
#include "courant/error.hpp"

namespace courant {

Var Var::x(int one_based) {
  if (one_based < 1 || one_based > kMaxCoords)
    throw DomainError("coordinate index x" + std::to_string(one_based) + " out of range 1.." +
                      std::to_string(kMaxCoords));
  return Var(one_based - 1);
}

Var Var::from_slot(int slot) {
  if (slot < 0 || slot >= kVarSlots) throw DomainError("variable slot out of range");
  return Var(slot);
}

Var Var::parse(std::string_view name) {
  if (name == "t") return t();
  if (name == "s") return s();
  if (name.size() >= 2 && name[0] == 'x') {
    int idx = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
      if (name[i] < '0' || name[i] > '9') throw ParseError("unknown variable '" + std::string(name) + "'");
      idx = idx * 10 + (name[i] - '0');
      if (idx > 1000) break;
    }
    if (idx < 1 || idx > kMaxCoords) throw ParseError("unknown variable '" + std::string(name) + "'");
    return x(idx);
  }
  throw ParseError("unknown variable '" + std::string(name) + "'");
}

std::string Var::name() const {
  if (slot_ == kMaxCoords) return "t";
  if (slot_ == kMaxCoords + 1) return "s";
  return "x" + std::to_string(slot_ + 1);
}

int Monomial::total_degree() const {
  int d = 0;
  for (auto e : exp) d += e;
  return d;
}

int Monomial::coordinate_degree() const {
  int d = 0;
  for (int i = 0; i < kMaxCoords; ++i) d += exp[i];
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kVarSlots; ++i) r.exp[i] = static_cast<std::uint16_t>(exp[i] + o.exp[i]);
  return r;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  int da = a.total_degree(), db = b.total_degree();
  if (da != db) return da > db;
  for (int i = 0; i < kVarSlots; ++i)
    if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i];
  return false;
}

Poly::Poly(const Rat& c) {
  if (!courant::is_zero(c)) terms_.emplace(Monomial{}, c);
}

Poly Poly::variable(Var v, int power) {
  Monomial m;
  m.exp[v.slot()] = static_cast<std::uint16_t>(power);
  return monomial(m, Rat(1));
}

Poly Poly::monomial(const Monomial& m, const Rat& c) {
  Poly p;
  p.add_term(m, c);
  return p;
}

Poly Poly::parse(std::string_view text) {
  static const detail::ExprParser<Poly> parser(
      [](detail::Cursor& cur) {
        std::size_t at = cur.position();
        std::string id = cur.read_identifier();
        try {
          return Poly::variable(Var::parse(id));
        } catch (const ParseError&) {
          throw ParseError("unknown variable '" + id + "'", at);
        }
      },
      [](const Poly& b, int e) { return courant::pow(b, e); }, [](const Rat& c) { return Poly(c); });
  return parser.parse(text);
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
}

Rat Poly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rat(0) : it->second;
}

int Poly::degree() const { return terms_.empty() ? kZeroDegree : terms_.begin()->first.total_degree(); }

int Poly::coordinate_degree() const {
  int d = kZeroDegree;
  for (const auto& [m, c] : terms_) d = std::max(d, m.coordinate_degree());
  return d;
}

bool Poly::depends_on(Var v) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first.exp[v.slot()] > 0; });
}

void Poly::add_term(const Monomial& m, const Rat& c) {
  if (courant::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (courant::is_zero(it->second)) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rat& c) {
  if (courant::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  if (a.is_zero() || b.is_zero()) return r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rat mag = abs(c);
    bool negative = sgn(c) < 0;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    bool unit = mag == 1;
    bool constant = m == Monomial{};
    if (!unit || constant) out << mag.get_str();
    bool need_star = !unit || constant;
    for (int i = 0; i < kVarSlots; ++i) {
      if (m.exp[i] == 0) continue;
      if (need_star) out << "*";
      out << Var::from_slot(i).name();
      if (m.exp[i] > 1) out << "^" << m.exp[i];
      need_star = true;
    }
  }
  return out.str();
}

Poly pow(const Poly& p, int e) {
  if (e < 0) throw DomainError("negative polynomial power");
  Poly r(Rat(1));
  for (int i = 0; i < e; ++i) r = r * p;
  return r;
}

Poly partial(const Poly& f, Var v) {
  Poly r;
  int s = v.slot();
  for (const auto& [m, c] : f.terms()) {
    if (m.exp[s] == 0) continue;
    Monomial d = m;
    d.exp[s] -= 1;
    r.add_term(d, c * m.exp[s]);
  }
  return r;
}

Poly partial(const Poly& f, std::string_view var_name) { return partial(f, Var::parse(var_name)); }

Poly integrate_param(const Poly& f, Var param, const Rat& lo, const Rat& hi) {
  if (param.is_coordinate())
    throw DomainError("integrate_param: '" + param.name() + "' is not a path parameter");
  int s = param.slot();
  Poly r;
  for (const auto& [m, c] : f.terms()) {
    unsigned k = m.exp[s] + 1u;
    Monomial base = m;
    base.exp[s] = 0;
    Rat hi_pow(1), lo_pow(1);
    for (unsigned i = 0; i < k; ++i) {
      hi_pow *= hi;
      lo_pow *= lo;
    }
    r.add_term(base, c * (hi_pow - lo_pow) / Rat(k));
  }
  return r;
}

Poly substitute(const Poly& f, Var v, const Rat& value) {
  Poly r;
  int s = v.slot();
  for (const auto& [m, c] : f.terms()) {
    Rat factor(1);
    for (unsigned i = 0; i < m.exp[s]; ++i) factor *= value;
    Monomial base = m;
    base.exp[s] = 0;
    r.add_term(base, c * factor);
  }
  return r;
}

int coordinates_used(const Poly& f) {
  int used = 0;
  for (const auto& [m, c] : f.terms())
    for (int i = 0; i < kMaxCoords; ++i)
      if (m.exp[i] > 0) used = std::max(used, i + 1);
  return used;
}

}  // namespace courant
