#include "vpr/render.hpp"

#include <string>

namespace vpr {

namespace {

// Right-aligns `s` in a field of `width`.
void pad_left(std::string& out, const std::string& s, std::size_t width) {
  if (s.size() < width) out.append(width - s.size(), ' ');
  out += s;
}

void rstrip(std::string& s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\n')) s.pop_back();
}

}  // namespace

std::string render_observation(const TttState& s) {
  std::string out = "  ";
  for (int c = 0; c < 3; ++c) pad_left(out, std::to_string(c), 3);
  for (int r = 0; r < 3; ++r) {
    out += '\n';
    pad_left(out, std::to_string(r), 2);
    for (int c = 0; c < 3; ++c) {
      const auto m = s.at(r, c);
      pad_left(out, m ? std::string(1, mark_char(*m)) : ".", 3);
    }
  }
  return out;
}

std::string render_observation(const SudokuGrid& g) {
  static const std::string kSeparator = "   - - - - - - - - - - - - - - - - ";
  std::string out = "  ";
  for (int c = 0; c < 9; ++c) {
    out += " C" + std::to_string(c + 1);
    if (c % 3 == 2) out += "  ";
  }
  for (int r = 0; r < 9; ++r) {
    if (r == 3 || r == 6) out += '\n' + kSeparator;
    out += "\nR" + std::to_string(r + 1);
    for (int c = 0; c < 9; ++c) {
      const auto d = g[r * 9 + c];
      pad_left(out, d ? std::string(1, static_cast<char>('0' + d)) : ".", 3);
      if (c == 2 || c == 5) out += " |";
    }
  }
  rstrip(out);
  return out;
}

std::string render_observation(const SudokuEpisode& ep) { return render_observation(ep.current); }

std::string render_observation(const MineObservation& obs) {
  std::string out = "  ";
  for (int c = 0; c < obs.cols; ++c) pad_left(out, std::to_string(c), 3);
  for (int r = 0; r < obs.rows; ++r) {
    out += '\n';
    pad_left(out, std::to_string(r), 2);
    for (int c = 0; c < obs.cols; ++c) {
      const int v = obs.at(r, c);
      std::string sym;
      switch (v) {
        case MineObservation::kHidden: sym = "."; break;
        case MineObservation::kFlag: sym = "F"; break;
        case MineObservation::kMine: sym = "*"; break;
        default: sym = std::to_string(v);
      }
      pad_left(out, sym, 3);
    }
    out += ' ';
  }
  rstrip(out);
  return out;
}

std::string render_observation(const MineBoard& b) { return render_observation(observe(b)); }

}  // namespace vpr
