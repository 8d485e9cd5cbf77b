#include "mfkit/semigroup.hpp"

#include <numeric>
#include <sstream>

namespace mfkit {

bool SemigroupRing::contains(long long m) const {
  if (m < 0) return false;
  if (m >= conductor()) return true;
  for (long long beta = 0; beta * b <= m; ++beta)
    if ((m - beta * b) % a == 0) return true;
  return false;
}

std::optional<std::pair<int, int>> SemigroupRing::split(long long m) const {
  if (m < 0) return std::nullopt;
  // unique beta in [0, a) with m = a*alpha + b*beta, alpha >= 0
  for (int beta = 0; beta < a; ++beta) {
    long long rest = m - static_cast<long long>(beta) * b;
    if (rest >= 0 && rest % a == 0)
      return std::make_pair(static_cast<int>(rest / a), beta);
  }
  return std::nullopt;
}

SemigroupRing make_semigroup(int a, int b) {
  if (a < 2 || b <= a) throw std::invalid_argument("semigroup: need 2 <= a < b");
  if (std::gcd(a, b) != 1) throw std::invalid_argument("semigroup: generators must be coprime");
  return SemigroupRing{a, b};
}

bool FractionalIdeal::contains(long long m) const {
  for (int g : gens)
    if (ring.contains(m - g)) return true;
  return false;
}

FractionalIdeal make_ideal(SemigroupRing R, std::vector<int> gens) {
  if (gens.empty()) throw std::invalid_argument("ideal: at least one generator required");
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<int> min;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < i && !redundant; ++j)
      if (R.contains(gens[i] - gens[j])) redundant = true;
    if (!redundant) min.push_back(gens[i]);
  }
  return FractionalIdeal{R, std::move(min)};
}

FractionalIdeal shift_ideal(const FractionalIdeal& I, int m) {
  std::vector<int> g = I.gens;
  for (auto& x : g) x += m;
  return FractionalIdeal{I.ring, std::move(g)};
}

FractionalIdeal colon(const FractionalIdeal& I, const FractionalIdeal& J) {
  const SemigroupRing R = I.ring;
  if (!(J.ring == R)) throw std::invalid_argument("colon: mixed semigroups");
  const int c = R.conductor();
  const int lo = I.gens.front() - J.gens.back() - 1;
  const int hi = I.gens.front() - J.gens.front() + c;  // everything above is inside
  std::vector<int> found;
  for (int m = lo; m <= hi + R.b; ++m) {
    bool ok = true;
    // m + J inside I iff every generator of J lands inside I
    for (int j : J.gens)
      if (!I.contains(static_cast<long long>(m) + j)) {
        ok = false;
        break;
      }
    if (ok) found.push_back(m);
  }
  if (found.empty()) throw std::logic_error("colon: scan window produced nothing");
  return make_ideal(R, std::move(found));
}

std::string tpow_label(int m) {
  if (m == 0) return "1";
  if (m == 1) return "t";
  return "t^" + std::to_string(m);
}

namespace {

struct PathInfo {
  std::vector<int> arrow_ids;
  int src = 0, dst = 0, total = 0;
};

std::string path_string(const QuiverPresentation& q, const PathInfo& p) {
  std::string s = q.arrows[static_cast<std::size_t>(p.arrow_ids.front())].from;
  for (int id : p.arrow_ids) {
    const QuiverArrow& a = q.arrows[static_cast<std::size_t>(id)];
    s += " -" + tpow_label(a.tpow) + "-> " + a.to;
  }
  return s;
}

}  // namespace

QuiverPresentation irreducible_arrows(
    const std::vector<std::pair<std::string, FractionalIdeal>>& verts) {
  if (verts.empty()) throw std::invalid_argument("irreducible_arrows: no vertices");
  const SemigroupRing R = verts.front().second.ring;
  for (auto& [n, I] : verts)
    if (!(I.ring == R)) throw std::invalid_argument("irreducible_arrows: mixed semigroups");
  const int n = static_cast<int>(verts.size());
  const int c = R.conductor();
  const int w = 2 * (c + R.b) + 2;  // window half width; true labels stay well inside

  // the radical description below needs pairwise non-isomorphic vertices
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int m = -w; m <= w; ++m)
        if (shift_ideal(verts[static_cast<std::size_t>(u)].second, m) ==
            verts[static_cast<std::size_t>(v)].second)
          throw std::invalid_argument("irreducible_arrows: " +
                                      verts[static_cast<std::size_t>(u)].first + " and " +
                                      verts[static_cast<std::size_t>(v)].first +
                                      " are isomorphic ideals");

  auto idx = [&](int m) { return m + w; };
  std::vector<std::vector<std::vector<char>>> rad(
      static_cast<std::size_t>(n),
      std::vector<std::vector<char>>(static_cast<std::size_t>(n),
                                     std::vector<char>(static_cast<std::size_t>(2 * w + 1), 0)));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      FractionalIdeal h = colon(verts[static_cast<std::size_t>(v)].second,
                                verts[static_cast<std::size_t>(u)].second);
      for (int m = -w; m <= w; ++m) {
        if (u == v && m == 0) continue;  // identity is the only unit of End
        if (h.contains(m)) rad[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]
                              [static_cast<std::size_t>(idx(m))] = 1;
      }
    }

  QuiverPresentation q;
  for (auto& [name, I] : verts) q.vertices.push_back(name);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int m = -(c + R.b); m <= c + R.b; ++m) {
        if (!rad[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]
                [static_cast<std::size_t>(idx(m))])
          continue;
        bool in_rad2 = false;
        for (int t = 0; t < n && !in_rad2; ++t)
          for (int m1 = -w; m1 <= w && !in_rad2; ++m1) {
            int m2 = m - m1;
            if (m2 < -w || m2 > w) continue;
            if (rad[static_cast<std::size_t>(u)][static_cast<std::size_t>(t)]
                   [static_cast<std::size_t>(idx(m1))] &&
                rad[static_cast<std::size_t>(t)][static_cast<std::size_t>(v)]
                   [static_cast<std::size_t>(idx(m2))])
              in_rad2 = true;
          }
        if (!in_rad2)
          q.arrows.push_back(QuiverArrow{verts[static_cast<std::size_t>(u)].first,
                                         verts[static_cast<std::size_t>(v)].first, m});
      }

  // parallel path pairs composing to the same power, up to length three
  std::vector<PathInfo> paths;
  const int na = static_cast<int>(q.arrows.size());
  std::map<std::string, int> vid;
  for (int i = 0; i < n; ++i) vid[q.vertices[static_cast<std::size_t>(i)]] = i;
  for (int i = 0; i < na; ++i)
    paths.push_back({{i}, vid[q.arrows[static_cast<std::size_t>(i)].from],
                     vid[q.arrows[static_cast<std::size_t>(i)].to],
                     q.arrows[static_cast<std::size_t>(i)].tpow});
  std::size_t len_start = 0, len_end = paths.size();
  for (int len = 2; len <= 3; ++len) {
    std::size_t next_start = paths.size();
    for (std::size_t p = len_start; p < len_end; ++p)
      for (int i = 0; i < na; ++i) {
        if (vid[q.arrows[static_cast<std::size_t>(i)].from] != paths[p].dst) continue;
        PathInfo ext = paths[p];
        ext.arrow_ids.push_back(i);
        ext.dst = vid[q.arrows[static_cast<std::size_t>(i)].to];
        ext.total += q.arrows[static_cast<std::size_t>(i)].tpow;
        paths.push_back(std::move(ext));
      }
    len_start = next_start;
    len_end = paths.size();
  }
  std::set<std::string> hints;
  for (std::size_t i = 0; i < paths.size(); ++i)
    for (std::size_t j = i + 1; j < paths.size(); ++j) {
      if (paths[i].src != paths[j].src || paths[i].dst != paths[j].dst) continue;
      if (paths[i].total != paths[j].total) continue;
      if (paths[i].arrow_ids.size() + paths[j].arrow_ids.size() > 5) continue;
      // a shared first or last arrow means the pair extends a shorter relation
      if (paths[i].arrow_ids.front() == paths[j].arrow_ids.front()) continue;
      if (paths[i].arrow_ids.back() == paths[j].arrow_ids.back()) continue;
      std::string sa = path_string(q, paths[i]), sb = path_string(q, paths[j]);
      hints.insert(sa < sb ? sa + "  ==  " + sb : sb + "  ==  " + sa);
    }
  q.relation_hints.assign(hints.begin(), hints.end());
  return q;
}

std::string quiver_text(const QuiverPresentation& q) {
  std::ostringstream os;
  os << "vertices:";
  for (auto& v : q.vertices) os << " " << v;
  os << "\n";
  for (auto& a : q.arrows) os << a.from << " -" << tpow_label(a.tpow) << "-> " << a.to << "\n";
  if (!q.relation_hints.empty()) {
    os << "relations:\n";
    for (auto& r : q.relation_hints) os << "  " << r << "\n";
  }
  return os.str();
}

std::string quiver_dot(const QuiverPresentation& q) {
  std::ostringstream os;
  os << "digraph quiver {\n";
  for (auto& v : q.vertices) os << "  \"" << v << "\";\n";
  for (auto& a : q.arrows)
    os << "  \"" << a.from << "\" -> \"" << a.to << "\" [label=\"" << tpow_label(a.tpow)
       << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace mfkit
