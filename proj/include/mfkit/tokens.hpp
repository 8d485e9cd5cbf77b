#pragma once
#include <string>
#include <vector>

namespace mfkit {

enum class Tok { Num, Name, Caret, Star, Plus, Minus, Slash, End };

struct Token {
  Tok kind;
  std::string text;
};

// Lexes the polynomial grammar shared by files, the CLI and fixtures.
// Throws std::invalid_argument on unexpected characters.
std::vector<Token> tokenize_poly(const std::string& src);

}  // namespace mfkit
