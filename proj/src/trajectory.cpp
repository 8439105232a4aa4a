#include "vpr/trajectory.hpp"

#include <string>

#include "vpr/errors.hpp"

namespace vpr {

std::string_view to_string(RewardMode m) noexcept {
  switch (m) {
    case RewardMode::vpr: return "vpr";
    case RewardMode::outcome: return "outcome";
    case RewardMode::mcpr: return "mcpr";
  }
  return "?";
}

RewardMode reward_mode_from_string(std::string_view s) {
  if (s == "vpr") return RewardMode::vpr;
  if (s == "outcome") return RewardMode::outcome;
  if (s == "mcpr") return RewardMode::mcpr;
  throw ConfigError("unknown reward mode '" + std::string(s) + "'");
}

VerifierVerdict make_verdict(const Action& taken, ActionSet oracle_valid_set,
                             std::optional<std::string> meta) {
  VerifierVerdict v;
  v.valid = oracle_valid_set.count(taken) ? 1 : 0;
  v.oracle_valid_set = std::move(oracle_valid_set);
  v.oracle_meta = std::move(meta);
  return v;
}

Trajectory append_turn(Trajectory traj, TurnRecord rec) {
  if (traj.closed()) throw SequenceError("append to a terminated trajectory");
  const auto expected = static_cast<int>(traj.turns.size()) + 1;
  if (rec.turn_index != expected)
    throw SequenceError("turn index " + std::to_string(rec.turn_index) + ", expected " +
                        std::to_string(expected));
  if (rec.terminal) traj.outcome.terminal = true;
  traj.turns.push_back(std::move(rec));
  return traj;
}

}  // namespace vpr
