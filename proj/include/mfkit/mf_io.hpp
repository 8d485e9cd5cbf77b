#pragma once
// Plain-text factorization files.  print_mf emits the canonical form; the
// parser accepts exactly that shape (modulo surrounding whitespace), so a
// parse/print round trip is byte identity -- tests depend on it.
//
//   ring x,y
//   prec 30
//   field fp:32003
//   potential x^4+y^3
//   phi
//   [x^3, -y]
//   [y^2, x]
//   psi
//   [x, y]
//   [-y^2, x^3]

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mfkit/mf.hpp"

namespace mfkit {

template <class K>
std::string print_mf(const MF<K>& m, const std::string& field_tag = "") {
  std::ostringstream out;
  out << "ring ";
  for (std::size_t i = 0; i < m.ring->vars.size(); ++i)
    out << (i ? "," : "") << m.ring->vars[i];
  out << "\n";
  out << "prec " << m.prec() << "\n";
  out << "field " << (field_tag.empty() ? K::field_tag() : field_tag) << "\n";
  out << "potential " << print_poly(m.f) << "\n";
  auto rows = [&](const Mat<K>& M) {
    for (int i = 0; i < M.rows; ++i) {
      out << "[";
      for (int j = 0; j < M.cols; ++j) out << (j ? ", " : "") << print_poly(M.at(i, j));
      out << "]\n";
    }
  };
  out << "phi\n";
  rows(m.phi);
  out << "psi\n";
  rows(m.psi);
  return out.str();
}

namespace detail {

inline std::string strip_ws(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(strip_ws(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(strip_ws(cur));
  return out;
}

}  // namespace detail

template <class K>
MF<K> parse_mf(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto next_line = [&](const char* what) {
    while (std::getline(in, line)) {
      line = detail::strip_ws(line);
      if (!line.empty()) return;
    }
    throw std::invalid_argument(std::string("factorization file: missing ") + what);
  };

  auto expect_kv = [&](const std::string& key) {
    next_line(key.c_str());
    if (line.rfind(key + " ", 0) != 0)
      throw std::invalid_argument("factorization file: expected '" + key + " ...', got '" + line + "'");
    return detail::strip_ws(line.substr(key.size() + 1));
  };

  RingPtr ring = make_ring(detail::split_on(expect_kv("ring"), ','));
  int prec = std::stoi(expect_kv("prec"));
  if (prec < 1 || prec > 200)
    throw std::invalid_argument("factorization file: precision out of range");
  std::string field = expect_kv("field");
  // files tagged "int" hold integer coefficients and load over any field;
  // anything else must match the session scalar exactly
  if (field != K::field_tag() && field != "int")
    throw std::invalid_argument("factorization file: field '" + field +
                                "' does not match session field '" + K::field_tag() + "'");
  Series<K> f = parse_poly<K>(ring, prec, expect_kv("potential"));

  auto read_matrix = [&](const char* name) {
    next_line(name);
    if (line != name)
      throw std::invalid_argument(std::string("factorization file: expected '") + name + "'");
    std::vector<std::vector<Series<K>>> rows;
    while (true) {
      std::streampos mark = in.tellg();
      if (!std::getline(in, line)) break;
      std::string t = detail::strip_ws(line);
      if (t.empty()) continue;
      if (t.front() != '[') {
        in.seekg(mark);
        break;
      }
      if (t.back() != ']')
        throw std::invalid_argument("factorization file: unterminated row " + t);
      std::vector<Series<K>> row;
      for (auto& cell : detail::split_on(t.substr(1, t.size() - 2), ','))
        row.push_back(parse_poly<K>(ring, prec, cell));
      rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument(std::string("factorization file: empty ") + name);
    Mat<K> M(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()), ring, prec);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.front().size())
        throw std::invalid_argument("factorization file: ragged rows");
      for (std::size_t j = 0; j < rows[i].size(); ++j)
        M.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    }
    return M;
  };

  Mat<K> phi = read_matrix("phi");
  Mat<K> psi = read_matrix("psi");
  if (phi.rows != phi.cols || psi.rows != psi.cols || phi.rows != psi.rows)
    throw std::invalid_argument("factorization file: phi/psi must be square of equal size");
  return MF<K>{ring, f, phi, psi};
}

template <class K>
MF<K> load_mf_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_mf<K>(ss.str());
}

template <class K>
void save_mf_file(const std::string& path, const MF<K>& m,
                  const std::string& field_tag = "") {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << print_mf(m, field_tag);
}

}  // namespace mfkit
