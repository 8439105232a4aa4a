#pragma once

#include <filesystem>
#include <string>

#include "vpr/episode.hpp"

namespace vpr {

/// Directory holding the prompt templates: $VPR_DATA_DIR/prompts when set,
/// else the source tree's data/prompts.
std::filesystem::path default_prompt_dir();

/// Reads <dir>/<env>.txt. Throws IoError naming the path.
std::string load_prompt_template(const std::filesystem::path& dir, EnvKind env);

/// Canonical strings of the legal actions, in set order.
std::vector<std::string> legal_action_strings(const Episode& ep);

/// Substitutes {game_state}, {legal_actions}, {mark}, {rows}, {cols} and
/// {mines} in `tmpl`.
std::string render_prompt(const std::string& tmpl, const Episode& ep);

}  // namespace vpr
