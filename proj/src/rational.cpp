#include "courant/rational.hpp"

#include <cctype>

#include "courant/error.hpp"

namespace courant {

Rat make_rat(long num, long den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Rat parse_rat(std::string_view text) {
  std::string s(text);
  auto strip = [](std::string& v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.pop_back();
    std::size_t i = 0;
    while (i < v.size() && std::isspace(static_cast<unsigned char>(v[i]))) ++i;
    v.erase(0, i);
  };
  strip(s);
  if (s.empty()) throw ParseError("empty rational");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_slash = false;
  bool digit_before = false, digit_after = false;
  for (std::size_t i = start; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/') {
      if (seen_slash) throw ParseError("malformed rational '" + s + "'", i);
      seen_slash = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      (seen_slash ? digit_after : digit_before) = true;
    } else {
      throw ParseError("malformed rational '" + s + "'", i);
    }
  }
  if (!digit_before || (seen_slash && !digit_after)) throw ParseError("malformed rational '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Rat q;
  if (q.set_str(s, 10) != 0) throw ParseError("malformed rational '" + s + "'");
  if (seen_slash && sgn(q.get_den()) == 0) throw ParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rat& q) { return q.get_str(); }

}  // namespace courant
