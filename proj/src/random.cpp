#include "courant/random.hpp"

namespace courant {

Rat RandomSource::rational() {
  Rat r(uniform(-3, 3));
  switch (uniform(0, 5)) {
    case 0: r /= 2; break;
    case 1: r /= 3; break;
    default: break;
  }
  return r;
}

Poly RandomSource::poly(int n, int max_degree, int terms) {
  Poly f;
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    int deg = uniform(0, max_degree);
    for (int d = 0; d < deg && n > 0; ++d) ++m.exp[uniform(0, n - 1)];
    f.add_term(m, rational());
  }
  return f;
}

std::vector<Poly> RandomSource::vec(std::size_t len, int n, int max_degree, int terms) {
  std::vector<Poly> v(len);
  for (auto& c : v) c = poly(n, max_degree, terms);
  return v;
}

GradedElem RandomSource::graded(const ContextPtr& ctx, int k, int coeff_degree, int terms) {
  GradedElem e(ctx);
  auto keys = keys_of_degree(*ctx, k);
  if (keys.empty()) return e;
  for (int t = 0; t < terms; ++t) {
    const auto& key = keys[uniform(0, static_cast<int>(keys.size()) - 1)];
    e.add_term(key, poly(ctx->n(), coeff_degree, 2));
  }
  return e;
}

}  // namespace courant
