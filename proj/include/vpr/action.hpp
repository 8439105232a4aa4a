#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>

namespace vpr {

enum class EnvKind { tictactoe, sudoku, minesweeper };

std::string_view to_string(EnvKind env);
/// Throws ConfigError on an unknown tag.
EnvKind env_from_string(std::string_view tag);

enum class Mark : unsigned char { X, O };

constexpr Mark opponent_of(Mark m) noexcept { return m == Mark::X ? Mark::O : Mark::X; }
constexpr char mark_char(Mark m) noexcept { return m == Mark::X ? 'X' : 'O'; }

// Tic-Tac-Toe placement, 0-indexed.
struct Place {
  Mark mark{Mark::X};
  int row{0};
  int col{0};
  auto operator<=>(const Place&) const = default;
};

// Sudoku fill. Row, column and digit are all 1-indexed, as presented to agents.
struct Fill {
  int row{1};
  int col{1};
  int digit{1};
  auto operator<=>(const Fill&) const = default;
};

// Minesweeper reveal, 0-indexed.
struct Reveal {
  int row{0};
  int col{0};
  auto operator<=>(const Reveal&) const = default;
};

// Minesweeper flag toggle, 0-indexed.
struct Flag {
  int row{0};
  int col{0};
  auto operator<=>(const Flag&) const = default;
};

using Action = std::variant<Place, Fill, Reveal, Flag>;
using ActionSet = std::set<Action>;

/// Grid bounds used when validating parsed coordinates.
struct GridDims {
  int rows{5};
  int cols{5};
};

/// Inner token without the answer wrapper, e.g. `<X(0,0)>` or `<fill(1,1,5)>`.
std::string format_action(const Action& a);

/// Canonical agent response: `<answer><X(0,0)></answer>`.
std::string wrap_answer(const Action& a);

/// Extracts the single action of an agent response.
///
/// Leading text (the model's reasoning) is ignored. Exactly one
/// `<answer>...</answer>` pair must be present, and only whitespace may follow
/// the closing tag. Throws FormatError on grammar violations and
/// OutOfRangeError when coordinates or digits fall outside the board.
/// `mine_dims` bounds Minesweeper coordinates (5x5 by default).
Action parse_action(std::string_view text, EnvKind env, GridDims mine_dims = {});

/// Which environment an action belongs to.
EnvKind env_of(const Action& a);

}  // namespace vpr
