#include "mfkit/tokens.hpp"

#include <cctype>
#include <stdexcept>

namespace mfkit {

std::vector<Token> tokenize_poly(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Num, src.substr(i, j - i)});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      out.push_back({Tok::Name, src.substr(i, j - i)});
      i = j;
      continue;
    }
    switch (c) {
      case '^': out.push_back({Tok::Caret, "^"}); break;
      case '*': out.push_back({Tok::Star, "*"}); break;
      case '+': out.push_back({Tok::Plus, "+"}); break;
      case '-': out.push_back({Tok::Minus, "-"}); break;
      case '/': out.push_back({Tok::Slash, "/"}); break;
      default:
        throw std::invalid_argument(std::string("polynomial: unexpected character '") + c + "'");
    }
    ++i;
  }
  out.push_back({Tok::End, ""});
  return out;
}

}  // namespace mfkit
