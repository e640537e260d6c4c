#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "tqa/errors.hpp"
#include "tqa/quiver.hpp"

namespace tqa {

struct QuiverSpec {
  Quiver quiver;
  std::optional<int> N;
};

namespace detail {

struct Token {
  enum Kind { Ident, Number, Colon, Arrow } kind;
  std::string text;
  std::size_t column;
};

inline std::vector<Token> tokenize_line(const std::string& line, std::size_t lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t col = i + 1;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) ++j;
      out.push_back({Token::Ident, line.substr(i, j - i), col});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
        out.push_back({Token::Arrow, "->", col});
        i += 2;
        continue;
      }
      std::size_t j = i + 1;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      if (c == '-' && j == i + 1) throw ParseError(lineno, col, "unexpected '-'");
      out.push_back({Token::Number, line.substr(i, j - i), col});
      i = j;
    } else if (c == ':') {
      out.push_back({Token::Colon, ":", col});
      ++i;
    } else {
      throw ParseError(lineno, col, std::string("unexpected character '") + c + "'");
    }
  }
  return out;
}

inline QuiverSpec build_spec(const std::vector<std::string>& vertices,
                             const std::vector<std::tuple<std::string, std::string, std::string>>& arrows,
                             std::optional<int> N) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!index.emplace(vertices[i], static_cast<int>(i)).second)
      throw ValidationError("duplicate vertex label '" + vertices[i] + "'");
  }
  std::vector<Arrow> out;
  for (const auto& [label, s, t] : arrows) {
    auto si = index.find(s), ti = index.find(t);
    if (si == index.end()) throw ValidationError("arrow '" + label + "' uses unknown vertex '" + s + "'");
    if (ti == index.end()) throw ValidationError("arrow '" + label + "' uses unknown vertex '" + t + "'");
    out.push_back({label, si->second, ti->second});
  }
  if (N && *N < 2) throw ValidationError("truncation must be at least 2");
  return {Quiver(vertices, std::move(out)), N};
}

inline bool valid_label(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

inline QuiverSpec parse_json_quiver(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON quiver: ") + e.what());
  }
  try {
    std::vector<std::string> vertices = j.at("vertices").get<std::vector<std::string>>();
    std::vector<std::tuple<std::string, std::string, std::string>> arrows;
    if (j.contains("arrows"))
      for (const auto& a : j.at("arrows"))
        arrows.emplace_back(a.at("label").get<std::string>(), a.at("source").get<std::string>(),
                            a.at("target").get<std::string>());
    for (const auto& v : vertices)
      if (!valid_label(v)) throw ValidationError("invalid vertex label '" + v + "'");
    for (const auto& a : arrows)
      if (!valid_label(std::get<0>(a))) throw ValidationError("invalid arrow label '" + std::get<0>(a) + "'");
    std::optional<int> N;
    if (j.contains("N")) N = j.at("N").get<int>();
    return build_spec(vertices, arrows, N);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed JSON quiver: ") + e.what());
  }
}

}  // namespace detail

// Line-oriented DSL, or a JSON object when the text starts with '{'.
inline QuiverSpec parse_quiver(const std::string& text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return detail::parse_json_quiver(text);

  std::vector<std::string> vertices;
  std::vector<std::tuple<std::string, std::string, std::string>> arrows;
  std::optional<int> N;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  using detail::Token;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::tokenize_line(line, lineno);
    if (toks.empty()) continue;
    const Token& head = toks[0];
    auto expect = [&](std::size_t i, Token::Kind k, const char* what) -> const Token& {
      if (i >= toks.size()) throw ParseError(lineno, line.size() + 1, std::string("expected ") + what);
      if (toks[i].kind != k) throw ParseError(lineno, toks[i].column, std::string("expected ") + what);
      return toks[i];
    };
    if (head.kind != Token::Ident) throw ParseError(lineno, head.column, "expected a keyword");
    if (head.text == "vertices") {
      expect(1, Token::Colon, "':'");
      if (toks.size() < 3) throw ParseError(lineno, line.size() + 1, "expected at least one vertex label");
      for (std::size_t i = 2; i < toks.size(); ++i) vertices.push_back(expect(i, Token::Ident, "a vertex label").text);
    } else if (head.text == "arrow") {
      const auto& label = expect(1, Token::Ident, "an arrow label");
      expect(2, Token::Colon, "':'");
      const auto& s = expect(3, Token::Ident, "a source vertex");
      expect(4, Token::Arrow, "'->'");
      const auto& t = expect(5, Token::Ident, "a target vertex");
      if (toks.size() > 6) throw ParseError(lineno, toks[6].column, "unexpected trailing token");
      arrows.emplace_back(label.text, s.text, t.text);
    } else if (head.text == "truncation") {
      expect(1, Token::Colon, "':'");
      const auto& n = expect(2, Token::Number, "an integer");
      if (toks.size() > 3) throw ParseError(lineno, toks[3].column, "unexpected trailing token");
      if (N) throw ParseError(lineno, head.column, "truncation declared twice");
      try {
        N = std::stoi(n.text);
      } catch (const std::exception&) {
        throw ParseError(lineno, n.column, "truncation out of range");
      }
    } else {
      throw ParseError(lineno, head.column, "unknown keyword '" + head.text + "'");
    }
  }
  return detail::build_spec(vertices, arrows, N);
}

}  // namespace tqa
