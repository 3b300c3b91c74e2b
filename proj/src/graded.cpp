#include "courant/graded.hpp"

#include <bit>
#include <sstream>

#include "courant/detail/expr_parser.hpp"
#include "courant/error.hpp"

namespace courant {

namespace {

// Sign of moving xi^a (a in s) to the right end of the ordered monomial xi^s.
int right_extract_sign(std::uint64_t s, int a) {
  return (std::popcount(s >> (a + 1)) & 1) ? -1 : 1;
}

// Sign of moving xi^a (a in s) to the front of xi^s.
int left_extract_sign(std::uint64_t s, int a) {
  std::uint64_t below = a == 0 ? 0 : (s & ((std::uint64_t{1} << a) - 1));
  return (std::popcount(below) & 1) ? -1 : 1;
}

}  // namespace

std::shared_ptr<const GradedContext> GradedContext::make(int n, int r, RatMatrix pairing) {
  if (n < 0 || n > kMaxCoords) throw DomainError("base dimension must be in 0.." + std::to_string(kMaxCoords));
  if (r < 0 || r > kMaxRank) throw DomainError("rank must be in 0.." + std::to_string(kMaxRank));
  if (pairing.rows() != static_cast<std::size_t>(r) || pairing.cols() != static_cast<std::size_t>(r))
    throw DomainError("pairing must be an r x r matrix");
  if (!pairing.is_symmetric()) throw DomainError("pairing is not symmetric");
  RatMatrix inv = inverse(pairing);  // throws on singular pairing
  return std::shared_ptr<const GradedContext>(new GradedContext(n, r, std::move(pairing), std::move(inv)));
}

bool GradedContext::same_as(const GradedContext& o) const {
  return this == &o || (n_ == o.n_ && r_ == o.r_ && g_ == o.g_);
}

void require_same_context(const ContextPtr& a, const ContextPtr& b) {
  if (!a || !b || !a->same_as(*b)) throw ContextMismatch("graded elements live over different contexts");
}

int GradedKey::odd_degree() const { return std::popcount(xi); }

int GradedKey::p_degree() const {
  int d = 0;
  for (auto e : p) d += e;
  return d;
}

bool GradedKeyLess::operator()(const GradedKey& a, const GradedKey& b) const {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  if (a.xi != b.xi) return a.xi < b.xi;
  return a.p < b.p;
}

int xi_product_sign(std::uint64_t s, std::uint64_t t) {
  if (s & t) return 0;
  int inversions = 0;
  for (std::uint64_t rest = t; rest; rest &= rest - 1) {
    int b = std::countr_zero(rest);
    inversions += std::popcount(s >> (b + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

GradedElem::GradedElem(ContextPtr ctx, const Poly& scalar) : ctx_(std::move(ctx)) { add_term(GradedKey{}, scalar); }

GradedElem GradedElem::xi(ContextPtr ctx, int a) {
  if (a < 0 || a >= ctx->r()) throw DomainError("odd generator index out of range");
  GradedElem e(ctx);
  GradedKey k;
  k.xi = std::uint64_t{1} << a;
  e.add_term(k, Poly(1));
  return e;
}

GradedElem GradedElem::p(ContextPtr ctx, int i) {
  if (i < 0 || i >= ctx->n()) throw DomainError("momentum index out of range");
  GradedElem e(ctx);
  GradedKey k;
  k.p[i] = 1;
  e.add_term(k, Poly(1));
  return e;
}

GradedElem GradedElem::eta(ContextPtr ctx, int a) {
  GradedElem e(ctx);
  const auto& gi = ctx->inverse_pairing();
  for (int b = 0; b < ctx->r(); ++b) {
    if (courant::is_zero(gi(a, b))) continue;
    GradedKey k;
    k.xi = std::uint64_t{1} << b;
    e.add_term(k, Poly(gi(a, b)));
  }
  return e;
}

GradedElem GradedElem::parse(ContextPtr ctx, std::string_view text) {
  detail::ExprParser<GradedElem> parser(
      [ctx](detail::Cursor& cur) -> GradedElem {
        std::size_t at = cur.position();
        std::string id = cur.read_identifier();
        if (id == "xi") {
          cur.expect('{');
          GradedElem prod(ctx, Poly(1));
          if (!cur.accept('}')) {
            do {
              int a = std::stoi(cur.read_digits());
              if (a < 1 || a > ctx->r()) throw ParseError("xi index out of range", cur.position());
              prod = prod * GradedElem::xi(ctx, a - 1);
            } while (cur.accept(','));
            cur.expect('}');
          }
          return prod;
        }
        if (id.size() >= 2 && id[0] == 'p') {
          int i = std::stoi(id.substr(1));
          if (i < 1 || i > ctx->n()) throw ParseError("momentum p" + std::to_string(i) + " out of range", at);
          return GradedElem::p(ctx, i - 1);
        }
        Var v = [&] {
          try {
            return Var::parse(id);
          } catch (const ParseError&) {
            throw ParseError("unknown symbol '" + id + "'", at);
          }
        }();
        if (v.is_coordinate() && v.slot() >= ctx->n())
          throw ParseError("coordinate " + id + " exceeds base dimension", at);
        return GradedElem(ctx, Poly::variable(v));
      },
      [ctx](const GradedElem& b, int e) {
        GradedElem r(ctx, Poly(1));
        for (int i = 0; i < e; ++i) r = r * b;
        return r;
      },
      [ctx](const Rat& c) { return GradedElem(ctx, Poly(c)); });
  return parser.parse(text);
}

std::optional<int> GradedElem::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = terms_.begin()->first.degree();
  for (const auto& [k, c] : terms_)
    if (k.degree() != d) return std::nullopt;
  return d;
}

bool GradedElem::is_homogeneous(int k) const {
  for (const auto& [key, c] : terms_)
    if (key.degree() != k) return false;
  return true;
}

Poly GradedElem::scalar_part() const {
  Poly r;
  for (const auto& [k, c] : terms_) {
    if (k.degree() != 0) throw DomainError("element is not of degree 0");
    r += c;
  }
  return r;
}

int GradedElem::max_coordinate_degree() const {
  int d = Poly::kZeroDegree;
  for (const auto& [k, c] : terms_) d = std::max(d, c.coordinate_degree());
  return d;
}

void GradedElem::add_term(const GradedKey& key, const Poly& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

GradedElem& GradedElem::operator+=(const GradedElem& o) {
  require_same_context(ctx_, o.ctx_);
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

GradedElem& GradedElem::operator-=(const GradedElem& o) {
  require_same_context(ctx_, o.ctx_);
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

GradedElem GradedElem::operator-() const {
  GradedElem r(ctx_);
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

GradedElem operator*(const GradedElem& a, const GradedElem& b) {
  require_same_context(a.ctx_, b.ctx_);
  GradedElem r(a.ctx_);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      int sign = xi_product_sign(ka.xi, kb.xi);
      if (sign == 0) continue;
      GradedKey k;
      k.xi = ka.xi | kb.xi;
      for (int i = 0; i < kMaxCoords; ++i) k.p[i] = static_cast<std::uint8_t>(ka.p[i] + kb.p[i]);
      Poly c = ca * cb;
      r.add_term(k, sign > 0 ? c : -c);
    }
  return r;
}

GradedElem operator*(const Poly& f, const GradedElem& a) {
  GradedElem r(a.ctx_);
  if (f.is_zero()) return r;
  for (const auto& [k, c] : a.terms_) r.add_term(k, f * c);
  return r;
}

bool operator==(const GradedElem& a, const GradedElem& b) {
  return a.ctx_->same_as(*b.ctx_) && a.terms_ == b.terms_;
}

std::string GradedElem::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    std::ostringstream gen;
    bool any = false;
    if (k.xi) {
      gen << "xi{";
      bool comma = false;
      for (int a = 0; a < kMaxRank; ++a)
        if (k.xi >> a & 1) {
          if (comma) gen << ",";
          gen << (a + 1);
          comma = true;
        }
      gen << "}";
      any = true;
    }
    for (int i = 0; i < kMaxCoords; ++i) {
      if (!k.p[i]) continue;
      if (any) gen << "*";
      gen << "p" << (i + 1);
      if (k.p[i] > 1) gen << "^" << static_cast<int>(k.p[i]);
      any = true;
    }
    std::string coeff = c.to_string();
    bool negative = false;
    if (c.terms().size() == 1) {
      negative = sgn(c.terms().begin()->second) < 0;
      if (negative) coeff = (-c).to_string();
    } else if (any) {
      coeff = "(" + coeff + ")";
    }
    if (!first) out << (negative ? " - " : " + ");
    else if (negative) out << "-";
    first = false;
    if (!any) out << coeff;
    else if (coeff == "1") out << gen.str();
    else out << coeff << "*" << gen.str();
  }
  return out.str();
}

GradedElem gmul(const GradedElem& a, const GradedElem& b) { return a * b; }

GradedElem pbracket(const GradedElem& a, const GradedElem& b) {
  require_same_context(a.context(), b.context());
  const auto& ctx = a.context();
  const int n = ctx->n(), r = ctx->r();
  const auto& g = ctx->pairing();
  GradedElem out(ctx);
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      // even part: x/p pairs
      int merge_sign = xi_product_sign(ka.xi, kb.xi);
      if (merge_sign != 0) {
        for (int i = 0; i < n; ++i) {
          Var xi_var = Var::x(i + 1);
          if (ka.p[i] > 0) {
            Poly db = partial(cb, xi_var);
            if (!db.is_zero()) {
              GradedKey k;
              k.xi = ka.xi | kb.xi;
              for (int j = 0; j < kMaxCoords; ++j) k.p[j] = static_cast<std::uint8_t>(ka.p[j] + kb.p[j]);
              k.p[i] -= 1;
              Poly c = ca * db * Rat(ka.p[i] * merge_sign);
              out.add_term(k, c);
            }
          }
          if (kb.p[i] > 0) {
            Poly da = partial(ca, xi_var);
            if (!da.is_zero()) {
              GradedKey k;
              k.xi = ka.xi | kb.xi;
              for (int j = 0; j < kMaxCoords; ++j) k.p[j] = static_cast<std::uint8_t>(ka.p[j] + kb.p[j]);
              k.p[i] -= 1;
              Poly c = da * cb * Rat(-kb.p[i] * merge_sign);
              out.add_term(k, c);
            }
          }
        }
      }
      // odd part: contract one xi from each side against g
      if (ka.xi == 0 || kb.xi == 0) continue;
      Poly cab;
      bool have_cab = false;
      for (int x = 0; x < r; ++x) {
        if (!(ka.xi >> x & 1)) continue;
        for (int y = 0; y < r; ++y) {
          if (!(kb.xi >> y & 1) || is_zero(g(x, y))) continue;
          std::uint64_t sa = ka.xi & ~(std::uint64_t{1} << x);
          std::uint64_t sb = kb.xi & ~(std::uint64_t{1} << y);
          int sign = xi_product_sign(sa, sb);
          if (sign == 0) continue;
          sign *= right_extract_sign(ka.xi, x) * left_extract_sign(kb.xi, y);
          if (!have_cab) {
            cab = ca * cb;
            have_cab = true;
          }
          GradedKey k;
          k.xi = sa | sb;
          for (int j = 0; j < kMaxCoords; ++j) k.p[j] = static_cast<std::uint8_t>(ka.p[j] + kb.p[j]);
          out.add_term(k, cab * Rat(g(x, y) * sign));
        }
      }
    }
  return out;
}

GradedElem degree_part(const GradedElem& a, int k) {
  GradedElem r(a.context());
  for (const auto& [key, c] : a.terms())
    if (key.degree() == k) r.add_term(key, c);
  return r;
}

std::vector<GradedKey> keys_of_degree(const GradedContext& ctx, int k) {
  std::vector<GradedKey> out;
  if (k < 0) return out;
  const int n = ctx.n(), r = ctx.r();
  // enumerate p-monomials of p-degree d with odd part of size k - 2d
  std::vector<std::array<std::uint8_t, kMaxCoords>> pmons;
  for (int d = 0; 2 * d <= k; ++d) {
    int odd = k - 2 * d;
    if (odd > r) continue;
    pmons.clear();
    std::array<std::uint8_t, kMaxCoords> cur{};
    auto rec = [&](auto&& self, int i, int left) -> void {
      if (i == n) {
        if (left == 0) pmons.push_back(cur);
        return;
      }
      for (int e = left; e >= 0; --e) {
        cur[i] = static_cast<std::uint8_t>(e);
        self(self, i + 1, left - e);
      }
      cur[i] = 0;
    };
    if (n == 0) {
      if (d == 0) pmons.push_back(cur);
    } else {
      rec(rec, 0, d);
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
      if (std::popcount(mask) != odd) continue;
      for (const auto& pm : pmons) {
        GradedKey key;
        key.xi = mask;
        key.p = pm;
        out.push_back(key);
      }
    }
  }
  return out;
}

}  // namespace courant
