#include "vpr/action.hpp"

#include <cctype>
#include <charconv>
#include <string>
#include <vector>

#include "vpr/errors.hpp"

namespace vpr {

namespace {

constexpr std::string_view kOpen = "<answer>";
constexpr std::string_view kClose = "</answer>";

std::size_t count_occurrences(std::string_view hay, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string_view::npos;
       pos = hay.find(needle, pos + needle.size()))
    ++n;
  return n;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Token {
  std::string name;
  std::vector<long long> args;
};

// `<name(a,b[,c])>`; anything else is a FormatError.
Token tokenize(std::string_view s) {
  auto fail = [&](const char* why) {
    return FormatError(std::string("malformed action '") + std::string(s) + "': " + why);
  };
  if (s.size() < 2 || s.front() != '<' || s.back() != '>') throw fail("expected <...>");
  s = s.substr(1, s.size() - 2);
  const auto paren = s.find('(');
  if (paren == std::string_view::npos || s.back() != ')') throw fail("expected name(args)");
  Token tok;
  tok.name = std::string(s.substr(0, paren));
  if (tok.name.empty()) throw fail("missing action name");
  for (char ch : tok.name)
    if (!std::isalpha(static_cast<unsigned char>(ch))) throw fail("bad action name");
  std::string_view args = s.substr(paren + 1, s.size() - paren - 2);
  while (true) {
    const auto comma = args.find(',');
    std::string_view item = args.substr(0, comma);
    if (item.empty()) throw fail("empty argument");
    long long value = 0;
    const char* first = item.data();
    const char* last = item.data() + item.size();
    if (*first == '-' && item.size() == 1) throw fail("bad integer");
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range) {
      // Well-formed but enormous: a range problem, not a grammar one.
      bool digits = true;
      for (const char* p = (*first == '-' ? first + 1 : first); p != last; ++p)
        digits = digits && std::isdigit(static_cast<unsigned char>(*p));
      if (digits) throw OutOfRangeError("coordinate out of range in '" + std::string(s) + "'");
      throw fail("bad integer");
    }
    if (ec != std::errc() || ptr != last) throw fail("bad integer");
    tok.args.push_back(value);
    if (comma == std::string_view::npos) break;
    args.remove_prefix(comma + 1);
  }
  return tok;
}

void check_range(long long v, long long lo, long long hi, const char* what) {
  if (v < lo || v > hi)
    throw OutOfRangeError(std::string(what) + " " + std::to_string(v) + " outside [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

}  // namespace

std::string_view to_string(EnvKind env) {
  switch (env) {
    case EnvKind::tictactoe: return "tictactoe";
    case EnvKind::sudoku: return "sudoku";
    case EnvKind::minesweeper: return "minesweeper";
  }
  return "unknown";
}

EnvKind env_from_string(std::string_view tag) {
  if (tag == "tictactoe") return EnvKind::tictactoe;
  if (tag == "sudoku") return EnvKind::sudoku;
  if (tag == "minesweeper") return EnvKind::minesweeper;
  throw ConfigError("unknown environment '" + std::string(tag) + "'");
}

EnvKind env_of(const Action& a) {
  if (std::holds_alternative<Place>(a)) return EnvKind::tictactoe;
  if (std::holds_alternative<Fill>(a)) return EnvKind::sudoku;
  return EnvKind::minesweeper;
}

std::string format_action(const Action& a) {
  struct Visitor {
    std::string operator()(const Place& p) const {
      return std::string("<") + mark_char(p.mark) + "(" + std::to_string(p.row) + "," +
             std::to_string(p.col) + ")>";
    }
    std::string operator()(const Fill& f) const {
      return "<fill(" + std::to_string(f.row) + "," + std::to_string(f.col) + "," +
             std::to_string(f.digit) + ")>";
    }
    std::string operator()(const Reveal& r) const {
      return "<reveal(" + std::to_string(r.row) + "," + std::to_string(r.col) + ")>";
    }
    std::string operator()(const Flag& f) const {
      return "<flag(" + std::to_string(f.row) + "," + std::to_string(f.col) + ")>";
    }
  };
  return std::visit(Visitor{}, a);
}

std::string wrap_answer(const Action& a) {
  return std::string(kOpen) + format_action(a) + std::string(kClose);
}

Action parse_action(std::string_view text, EnvKind env, GridDims mine_dims) {
  const auto opens = count_occurrences(text, kOpen);
  const auto closes = count_occurrences(text, kClose);
  if (opens == 0 || closes == 0) throw FormatError("no <answer>...</answer> wrapper");
  if (opens > 1 || closes > 1) throw FormatError("more than one <answer> wrapper");
  const auto open = text.find(kOpen);
  const auto close = text.find(kClose);
  if (close < open) throw FormatError("</answer> precedes <answer>");
  if (!trim(text.substr(close + kClose.size())).empty())
    throw FormatError("text after </answer>");

  const Token tok = tokenize(trim(text.substr(open + kOpen.size(), close - open - kOpen.size())));
  auto expect_args = [&](std::size_t n) {
    if (tok.args.size() != n)
      throw FormatError("action '" + tok.name + "' expects " + std::to_string(n) + " arguments");
  };

  switch (env) {
    case EnvKind::tictactoe: {
      if (tok.name != "X" && tok.name != "O")
        throw FormatError("expected <X(r,c)> or <O(r,c)>, got '" + tok.name + "'");
      expect_args(2);
      check_range(tok.args[0], 0, 2, "row");
      check_range(tok.args[1], 0, 2, "column");
      return Place{tok.name == "X" ? Mark::X : Mark::O, static_cast<int>(tok.args[0]),
                   static_cast<int>(tok.args[1])};
    }
    case EnvKind::sudoku: {
      if (tok.name != "fill") throw FormatError("expected <fill(r,c,d)>, got '" + tok.name + "'");
      expect_args(3);
      check_range(tok.args[0], 1, 9, "row");
      check_range(tok.args[1], 1, 9, "column");
      check_range(tok.args[2], 1, 9, "digit");
      return Fill{static_cast<int>(tok.args[0]), static_cast<int>(tok.args[1]),
                  static_cast<int>(tok.args[2])};
    }
    case EnvKind::minesweeper: {
      if (tok.name != "reveal" && tok.name != "flag")
        throw FormatError("expected <reveal(r,c)> or <flag(r,c)>, got '" + tok.name + "'");
      expect_args(2);
      check_range(tok.args[0], 0, mine_dims.rows - 1, "row");
      check_range(tok.args[1], 0, mine_dims.cols - 1, "column");
      const int r = static_cast<int>(tok.args[0]);
      const int c = static_cast<int>(tok.args[1]);
      if (tok.name == "reveal") return Reveal{r, c};
      return Flag{r, c};
    }
  }
  throw FormatError("unknown environment");
}

}  // namespace vpr
