#include "vpr/persistence.hpp"

#include <fstream>

#include "vpr/errors.hpp"

namespace vpr {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get(const json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad field '") + key + "': " + e.what());
  }
}

json options_json(const EnvOptions& o) {
  return {{"sudoku_blanks", o.sudoku_blanks},
          {"mine_rows", o.mine_rows},
          {"mine_cols", o.mine_cols},
          {"mine_count", o.mine_count},
          {"mine_flood_fill", o.mine_flood_fill}};
}

EnvOptions options_from(const json& j) {
  EnvOptions o;
  o.sudoku_blanks = get<int>(j, "sudoku_blanks");
  o.mine_rows = get<int>(j, "mine_rows");
  o.mine_cols = get<int>(j, "mine_cols");
  o.mine_count = get<int>(j, "mine_count");
  o.mine_flood_fill = get<bool>(j, "mine_flood_fill");
  return o;
}

GridDims dims_of(const EnvOptions& o) { return GridDims{o.mine_rows, o.mine_cols}; }

json outcome_json(const Outcome& o) {
  return {{"terminal", o.terminal},   {"success", o.success},
          {"return", o.ret},          {"completion_rate", o.completion_rate},
          {"forfeit", o.forfeit},     {"truncated", o.truncated}};
}

Outcome outcome_from(const json& j) {
  Outcome o;
  o.terminal = get<bool>(j, "terminal");
  o.success = get<bool>(j, "success");
  o.ret = get<double>(j, "return");
  o.completion_rate = get<double>(j, "completion_rate");
  o.forfeit = get<bool>(j, "forfeit");
  o.truncated = get<bool>(j, "truncated");
  return o;
}

json policy_json(const Policy& p) {
  if (p.kind() == PolicyKind::scripted_replay) throw ConfigError("scripted policies are not serialisable");
  return p.name();
}

Policy policy_from(const json& j, const char* key) {
  try {
    return Policy::from_string(get<std::string>(j, key));
  } catch (const ConfigError& e) {
    throw FormatError(e.what());
  }
}

}  // namespace

json to_json(const Action& a) { return format_action(a); }

Action action_from_json(const json& j, EnvKind env, GridDims dims) {
  if (!j.is_string()) throw FormatError("action must be a string");
  try {
    return parse_action("<answer>" + j.get<std::string>() + "</answer>", env, dims);
  } catch (const OutOfRangeError& e) {
    throw FormatError(e.what());
  }
}

json to_json(const VerifierVerdict& v) {
  json set = json::array();
  for (const auto& a : v.oracle_valid_set) set.push_back(format_action(a));
  json out = {{"valid", v.valid}, {"oracle_valid_set", set}};
  out["oracle_meta"] = v.oracle_meta ? json(*v.oracle_meta) : json(nullptr);
  return out;
}

json to_json(const Trajectory& t) {
  json turns = json::array();
  for (const auto& r : t.turns) {
    json rec = {{"turn", r.turn_index},
                {"observation", r.observation_text},
                {"action", r.action ? to_json(*r.action) : json(nullptr)},
                {"reward_vpr", r.reward_vpr},
                {"reward", r.reward},
                {"terminal", r.terminal}};
    if (r.response) rec["response"] = *r.response;
    if (r.verdict) rec["verdict"] = to_json(*r.verdict);
    if (r.opponent_reply) rec["opponent_reply"] = to_json(*r.opponent_reply);
    turns.push_back(std::move(rec));
  }
  json opening = json::array();
  for (const auto& a : t.opening) opening.push_back(to_json(a));
  return {{"schema_version", kTrajectorySchemaVersion},
          {"env", to_string(t.env)},
          {"seed", t.seed},
          {"options", options_json(t.options)},
          {"reward_mode", to_string(t.reward_mode)},
          {"agent_mark", std::string(1, mark_char(t.agent_mark))},
          {"opening", opening},
          {"turns", turns},
          {"outcome", outcome_json(t.outcome)}};
}

Trajectory trajectory_from_json(const json& j) {
  if (get<int>(j, "schema_version") != kTrajectorySchemaVersion)
    throw FormatError("unsupported trajectory schema version " + field(j, "schema_version").dump());
  Trajectory t;
  try {
    t.env = env_from_string(get<std::string>(j, "env"));
    t.reward_mode = reward_mode_from_string(get<std::string>(j, "reward_mode"));
  } catch (const ConfigError& e) {
    throw FormatError(e.what());
  }
  t.seed = get<std::uint64_t>(j, "seed");
  t.options = options_from(field(j, "options"));
  const auto mark = get<std::string>(j, "agent_mark");
  if (mark != "X" && mark != "O") throw FormatError("agent_mark must be X or O");
  t.agent_mark = mark == "X" ? Mark::X : Mark::O;
  const GridDims dims = dims_of(t.options);
  for (const auto& a : field(j, "opening")) t.opening.push_back(action_from_json(a, t.env, dims));
  for (const auto& r : field(j, "turns")) {
    TurnRecord rec;
    rec.turn_index = get<int>(r, "turn");
    rec.observation_text = get<std::string>(r, "observation");
    if (!field(r, "action").is_null()) rec.action = action_from_json(r.at("action"), t.env, dims);
    if (r.contains("response")) rec.response = get<std::string>(r, "response");
    rec.reward_vpr = get<int>(r, "reward_vpr");
    rec.reward = get<double>(r, "reward");
    rec.terminal = get<bool>(r, "terminal");
    if (r.contains("verdict")) {
      const auto& v = r.at("verdict");
      VerifierVerdict verdict;
      verdict.valid = get<int>(v, "valid");
      for (const auto& a : field(v, "oracle_valid_set"))
        verdict.oracle_valid_set.insert(action_from_json(a, t.env, dims));
      if (!field(v, "oracle_meta").is_null()) verdict.oracle_meta = get<std::string>(v, "oracle_meta");
      rec.verdict = std::move(verdict);
    }
    if (r.contains("opponent_reply")) rec.opponent_reply = action_from_json(r.at("opponent_reply"), t.env, dims);
    try {
      t = append_turn(std::move(t), std::move(rec));
    } catch (const SequenceError& e) {
      throw FormatError(e.what());
    }
  }
  t.outcome = outcome_from(field(j, "outcome"));
  return t;
}

json to_json(const VerifierConfig& v) {
  return {{"ttt", v.ttt == TttVerifier::mcts ? "mcts" : "minimax"},
          {"n_simulations", v.search.n_simulations},
          {"uct_c", v.search.uct_c},
          {"tie_tolerance", v.search.tie_tolerance},
          {"solve", v.search.solve}};
}

VerifierConfig verifier_from_json(const json& j) {
  VerifierConfig v;
  const auto kind = get<std::string>(j, "ttt");
  if (kind != "mcts" && kind != "minimax") throw FormatError("verifier must be mcts or minimax");
  v.ttt = kind == "mcts" ? TttVerifier::mcts : TttVerifier::minimax;
  v.search.n_simulations = get<int>(j, "n_simulations");
  v.search.uct_c = get<double>(j, "uct_c");
  v.search.tie_tolerance = get<double>(j, "tie_tolerance");
  v.search.solve = get<bool>(j, "solve");
  return v;
}

json to_json(const EpisodeConfig& c) {
  return {{"env", to_string(c.env)},
          {"options", options_json(c.options)},
          {"reward_mode", to_string(c.reward_mode)},
          {"verifier", to_json(c.verifier)},
          {"seat", to_string(c.seat)},
          {"opponent", policy_json(c.opponent)},
          {"opponent_random_share", c.opponent_random_share},
          {"mcpr", {{"rollouts", c.mcpr.rollouts},
                    {"policy", policy_json(c.mcpr.policy)},
                    {"opponent", policy_json(c.mcpr.opponent)}}}};
}

EpisodeConfig episode_config_from_json(const json& j) {
  EpisodeConfig c;
  try {
    c.env = env_from_string(get<std::string>(j, "env"));
    c.reward_mode = reward_mode_from_string(get<std::string>(j, "reward_mode"));
    c.seat = seat_from_string(get<std::string>(j, "seat"));
  } catch (const ConfigError& e) {
    throw FormatError(e.what());
  }
  c.options = options_from(field(j, "options"));
  c.verifier = verifier_from_json(field(j, "verifier"));
  c.opponent = policy_from(j, "opponent");
  c.opponent_random_share = get<double>(j, "opponent_random_share");
  const auto& m = field(j, "mcpr");
  c.mcpr.rollouts = get<int>(m, "rollouts");
  c.mcpr.policy = policy_from(m, "policy");
  c.mcpr.opponent = policy_from(m, "opponent");
  return c;
}

std::size_t persist_trajectories(const std::vector<EpisodeLog>& logs, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  for (const auto& log : logs) {
    json line = to_json(log.trajectory);
    line["config"] = to_json(log.config);
    out << line.dump() << '\n';
  }
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
  return logs.size();
}

std::vector<EpisodeLog> load_trajectories(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<EpisodeLog> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      out.push_back({episode_config_from_json(field(j, "config")), trajectory_from_json(j)});
    } catch (const json::exception& e) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    } catch (const FormatError& e) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

Trajectory reverify(const EpisodeLog& log) {
  const auto& rec = log.trajectory;
  Episode ep(log.config, rec.seed);
  if (ep.trajectory().opening != rec.opening) throw ReplayError("opening move diverged");
  for (const auto& turn : rec.turns) {
    if (ep.done()) throw ReplayError("replayed episode ended early at turn " + std::to_string(turn.turn_index));
    StepResult r;
    if (turn.action) {
      r = ep.step(*turn.action);
    } else if (turn.response) {
      r = ep.step_text(*turn.response);
    } else {
      throw ReplayError("turn " + std::to_string(turn.turn_index) + " has neither action nor response");
    }
    if (r.opponent_reply != turn.opponent_reply)
      throw ReplayError("opponent reply diverged at turn " + std::to_string(turn.turn_index));
  }
  return ep.trajectory();
}

}  // namespace vpr
