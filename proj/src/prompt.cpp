#include "vpr/prompt.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "vpr/errors.hpp"

#ifndef VPR_SOURCE_DATA_DIR
#define VPR_SOURCE_DATA_DIR "data"
#endif

namespace vpr {

std::filesystem::path default_prompt_dir() {
  if (const char* env = std::getenv("VPR_DATA_DIR"); env && *env) return std::filesystem::path(env) / "prompts";
  return std::filesystem::path(VPR_SOURCE_DATA_DIR) / "prompts";
}

std::string load_prompt_template(const std::filesystem::path& dir, EnvKind env) {
  const auto path = dir / (std::string(to_string(env)) + ".txt");
  std::ifstream in(path);
  if (!in) throw IoError("cannot read prompt template '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> legal_action_strings(const Episode& ep) {
  std::vector<std::string> out;
  for (const auto& a : ep.legal()) out.push_back(format_action(a));
  return out;
}

namespace {

void replace_all(std::string& s, const std::string& key, const std::string& value) {
  for (std::size_t pos = s.find(key); pos != std::string::npos; pos = s.find(key, pos + value.size()))
    s.replace(pos, key.size(), value);
}

}  // namespace

std::string render_prompt(const std::string& tmpl, const Episode& ep) {
  std::string legal;
  for (const auto& a : legal_action_strings(ep)) {
    if (!legal.empty()) legal += ", ";
    legal += a;
  }
  const auto& o = ep.config().options;
  std::string out = tmpl;
  replace_all(out, "{mark}", std::string(1, mark_char(ep.trajectory().agent_mark)));
  replace_all(out, "{rows}", std::to_string(o.mine_rows));
  replace_all(out, "{cols}", std::to_string(o.mine_cols));
  replace_all(out, "{mines}", std::to_string(o.mine_count));
  replace_all(out, "{legal_actions}", legal);
  // Last, so board text is never rescanned for placeholders.
  replace_all(out, "{game_state}", ep.observation());
  return out;
}

}  // namespace vpr
