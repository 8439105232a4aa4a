#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "vpr/episode.hpp"

namespace vpr {

inline constexpr int kTrajectorySchemaVersion = 1;

nlohmann::json to_json(const Action& a);
Action action_from_json(const nlohmann::json& j, EnvKind env, GridDims dims);
nlohmann::json to_json(const VerifierVerdict& v);
nlohmann::json to_json(const Trajectory& t);
/// Throws FormatError on a malformed record or an unknown schema version.
Trajectory trajectory_from_json(const nlohmann::json& j);

nlohmann::json to_json(const VerifierConfig& v);
VerifierConfig verifier_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EpisodeConfig& c);
EpisodeConfig episode_config_from_json(const nlohmann::json& j);

/// A trajectory plus the configuration that produced it, enough to replay
/// and re-verify it.
struct EpisodeLog {
  EpisodeConfig config;
  Trajectory trajectory;
};

/// One JSON object per line. Returns the number of records written. Throws
/// IoError naming the path when the file cannot be written.
std::size_t persist_trajectories(const std::vector<EpisodeLog>& logs, const std::filesystem::path& path);
/// Throws IoError when the file cannot be read and FormatError (with line
/// number) on a bad record.
std::vector<EpisodeLog> load_trajectories(const std::filesystem::path& path);

/// Replays the recorded actions through a fresh episode with the stored
/// configuration and returns the trajectory it produces; verdicts and rewards
/// are recomputed, not copied. Throws ReplayError when the replay diverges.
Trajectory reverify(const EpisodeLog& log);

}  // namespace vpr
