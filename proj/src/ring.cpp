#include "mfkit/ring.hpp"

#include <algorithm>
#include <stdexcept>

namespace mfkit {

int RingDesc::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return static_cast<int>(i);
  return -1;
}

RingPtr make_ring(std::vector<std::string> vars) {
  if (vars.empty() || static_cast<int>(vars.size()) > MFKIT_MAX_VARS)
    throw std::invalid_argument("ring: need between 1 and 4 variables");
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j])
        throw std::invalid_argument("ring: duplicate variable " + vars[i]);
  auto r = std::make_shared<RingDesc>();
  r->vars = std::move(vars);
  return r;
}

std::vector<Monomial> monomials_up_to(int nvars, int cap) {
  std::vector<Monomial> out;
  Monomial m;
  // odometer over exponent tuples with total degree <= cap
  int i = 0;
  (void)i;
  std::vector<int> e(nvars, 0);
  while (true) {
    Monomial mm;
    for (int k = 0; k < nvars; ++k) mm.e[k] = static_cast<std::uint8_t>(e[k]);
    out.push_back(mm);
    int pos = 0;
    while (pos < nvars) {
      ++e[pos];
      int d = 0;
      for (int k = 0; k < nvars; ++k) d += e[k];
      if (d <= cap) break;
      e[pos] = 0;
      ++pos;
    }
    if (pos == nvars) break;
  }
  std::sort(out.begin(), out.end(), grevlex_less);
  return out;
}

}  // namespace mfkit
