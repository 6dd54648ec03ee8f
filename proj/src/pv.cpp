#include "hda/pv.hpp"

#include <cctype>
#include <set>

#include "hda/error.hpp"
#include "hda/generators.hpp"

namespace hda {

namespace {

struct Token {
  enum class Kind { Name, Number, Symbol, Break, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int column = 1;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    const int l = line;
    const int col = column;
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
    } else if (c == '\n' || c == ';') {
      out.push_back({Token::Kind::Break, std::string(1, c), l, col});
      advance(1);
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({Token::Kind::Name, std::string(text.substr(i, j - i)), l, col});
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Token::Kind::Number, std::string(text.substr(i, j - i)), l, col});
      advance(j - i);
    } else if (c == '=' || c == '(' || c == ')' || c == '.') {
      out.push_back({Token::Kind::Symbol, std::string(1, c), l, col});
      advance(1);
    } else {
      throw FormatError("unexpected character '" + std::string(1, c) + "'", l, col);
    }
  }
  out.push_back({Token::Kind::End, "", line, column});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  PVProgram run() {
    while (peek().kind != Token::Kind::End) {
      if (peek().kind == Token::Kind::Break) {
        ++pos_;
        continue;
      }
      statement();
      if (peek().kind != Token::Kind::Break && peek().kind != Token::Kind::End) fail("expected ';' or end of line");
    }
    return std::move(program_);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    const std::string found = t.kind == Token::Kind::End ? "end of input"
                              : t.kind == Token::Kind::Break && t.text == "\n" ? "line break"
                                                                               : "'" + t.text + "'";
    throw FormatError(what + ", found " + found, t.line, t.column);
  }

  const Token& expect(Token::Kind kind, const std::string& text, const std::string& what) {
    if (peek().kind != kind || (!text.empty() && peek().text != text)) fail("expected " + what);
    return tokens_[pos_++];
  }

  void statement() {
    if (peek().kind == Token::Kind::Name && peek().text == "sem" && peek(1).kind == Token::Kind::Name) {
      ++pos_;
      const Token name = expect(Token::Kind::Name, "", "semaphore name");
      long capacity = 1;
      if (peek().kind == Token::Kind::Symbol && peek().text == "=") {
        ++pos_;
        const std::string digits = expect(Token::Kind::Number, "", "capacity").text;
        capacity = digits.size() > 9 ? -1 : std::stol(digits);
      }
      if (capacity != 1) {
        throw DomainError("semaphore '" + name.text + "' must have capacity 1");
      }
      if (!program_.semaphores.emplace(name.text, 1).second) {
        throw DomainError("semaphore '" + name.text + "' declared twice");
      }
      return;
    }
    PVProcess process;
    if (peek().kind == Token::Kind::Name && peek(1).kind == Token::Kind::Symbol && peek(1).text == "=") {
      process.name = peek().text;
      pos_ += 2;
    } else {
      process.name = "p" + std::to_string(program_.processes.size());
    }
    process.actions.push_back(action());
    while (peek().kind == Token::Kind::Symbol && peek().text == ".") {
      ++pos_;
      process.actions.push_back(action());
    }
    for (const auto& other : program_.processes) {
      if (other.name == process.name) throw DomainError("process '" + process.name + "' defined twice");
    }
    check_matching(process);
    for (const auto& a : process.actions) program_.semaphores.emplace(a.semaphore, 1);
    program_.processes.push_back(std::move(process));
  }

  PVAction action() {
    const Token& op = expect(Token::Kind::Name, "", "P(...) or V(...)");
    if (op.text != "P" && op.text != "V") {
      --pos_;
      fail("expected P(...) or V(...)");
    }
    expect(Token::Kind::Symbol, "(", "'('");
    const Token& name = expect(Token::Kind::Name, "", "semaphore name");
    expect(Token::Kind::Symbol, ")", "')'");
    return {op.text == "P" ? PVAction::Kind::P : PVAction::Kind::V, name.text};
  }

  static void check_matching(const PVProcess& process) {
    std::set<std::string> held;
    for (std::size_t j = 0; j < process.actions.size(); ++j) {
      const auto& a = process.actions[j];
      const std::string at = " at position " + std::to_string(j + 1) + " of process '" + process.name + "'";
      if (a.kind == PVAction::Kind::P && !held.insert(a.semaphore).second) {
        throw DomainError("P(" + a.semaphore + ") while already holding it" + at);
      }
      if (a.kind == PVAction::Kind::V && held.erase(a.semaphore) == 0) {
        throw DomainError("unmatched V(" + a.semaphore + ")" + at);
      }
    }
    if (!held.empty()) {
      throw DomainError("unmatched P(" + *held.begin() + ") in process '" + process.name + "'");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  PVProgram program_;
};

std::string vertex_name(const std::vector<long>& at) {
  std::string out = "v";
  for (std::size_t i = 0; i < at.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(at[i]);
  }
  return out;
}

}  // namespace

PVProgram parse_pv(std::string_view text) { return Parser(tokenize(text)).run(); }

std::map<std::string, std::vector<HoldInterval>> hold_intervals(const PVProcess& process) {
  std::map<std::string, std::vector<HoldInterval>> out;
  std::map<std::string, long> open;
  for (std::size_t j = 0; j < process.actions.size(); ++j) {
    const auto& a = process.actions[j];
    const long pos = static_cast<long>(j) + 1;
    if (a.kind == PVAction::Kind::P) {
      open[a.semaphore] = pos;
    } else {
      auto it = open.find(a.semaphore);
      if (it == open.end()) throw DomainError("unmatched V(" + a.semaphore + ") in process '" + process.name + "'");
      out[a.semaphore].push_back({it->second - 1, pos});
      open.erase(it);
    }
  }
  if (!open.empty()) {
    throw DomainError("unmatched P(" + open.begin()->first + ") in process '" + process.name + "'");
  }
  return out;
}

PVModel pv_to_euclidean(const PVProgram& program) {
  const std::size_t n = program.processes.size();
  std::vector<long> extent;
  std::vector<std::map<std::string, std::vector<HoldInterval>>> holds;
  for (const auto& p : program.processes) {
    extent.push_back(static_cast<long>(p.actions.size()));
    holds.push_back(hold_intervals(p));
  }
  for (const auto& [name, capacity] : program.semaphores) {
    if (capacity != 1) throw DomainError("semaphore '" + name + "' must have capacity 1");
  }

  // Relative interior of coordinate i: the point {low} or the open (low, low+1).
  auto inside = [](long low, bool free, const HoldInterval& h) {
    return free ? h.lower <= low && low + 1 <= h.upper : h.lower < low && low < h.upper;
  };
  auto forbidden = [&](const std::vector<long>& low, const std::vector<char>& free) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (const auto& [sem, hi] : holds[i]) {
          auto other = holds[j].find(sem);
          if (other == holds[j].end()) continue;
          for (const auto& a : hi) {
            if (!inside(low[i], free[i], a)) continue;
            for (const auto& b : other->second) {
              if (inside(low[j], free[j], b)) return true;
            }
          }
        }
      }
    }
    return false;
  };

  std::vector<BoxSpec> boxes;
  // Per coordinate a state s in [0, 2 k_i]: low = s / 2, free when s is odd.
  std::vector<long> state(n, 0);
  std::vector<long> low(n);
  std::vector<char> free(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) {
      low[i] = state[i] / 2;
      free[i] = static_cast<char>(state[i] % 2);
    }
    if (!forbidden(low, free)) {
      BoxSpec box{low, low};
      for (std::size_t i = 0; i < n; ++i) box.top[i] += free[i];
      boxes.push_back(std::move(box));
    }
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (state[i] < 2 * extent[i]) {
        ++state[i];
        break;
      }
      state[i] = 0;
    }
    if (i == n) break;
  }

  PVModel out;
  out.cubes = euclidean(boxes);
  out.start = out.cubes.index(vertex_name(std::vector<long>(n, 0)));
  out.end = out.cubes.index(vertex_name(extent));
  return out;
}

}  // namespace hda
