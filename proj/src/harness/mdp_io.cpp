#include "avgmdp/harness/mdp_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace avgmdp::harness {

using nlohmann::json;

MdpTables parse_mdp_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("MDP file is not valid JSON: ") + e.what());
  }
  try {
    const auto n = doc.at("n_states").get<std::size_t>();
    const auto n_actions = doc.at("n_actions").get<std::size_t>();
    MdpTables t;
    t.transition = doc.at("transitions").get<decltype(t.transition)>();
    t.reward = doc.at("rewards").get<decltype(t.reward)>();
    if (n == 0 || n_actions == 0) throw FormatError("n_states and n_actions must be positive");
    if (t.transition.size() != n || t.reward.size() != n)
      throw FormatError("transitions/rewards do not have n_states entries");
    for (std::size_t s = 0; s < n; ++s)
      if (t.transition[s].size() != n_actions || t.reward[s].size() != n_actions)
        throw FormatError("state " + std::to_string(s) + " does not have n_actions entries");
    return t;
  } catch (const json::exception& e) {
    throw FormatError(std::string("MDP file has the wrong shape: ") + e.what());
  }
}

std::string mdp_to_json(const Mdp& m) {
  const MdpTables t = m.to_tables();
  json doc;
  doc["n_states"] = m.n_states();
  doc["n_actions"] = m.n_actions();
  doc["transitions"] = t.transition;
  doc["rewards"] = t.reward;
  return doc.dump() + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << content;
  if (!out) throw FormatError("failed writing " + path);
}

Mdp load_mdp(const std::string& path) { return Mdp::from_tables(parse_mdp_json(read_file(path))); }

void save_mdp(const Mdp& m, const std::string& path) { write_file(path, mdp_to_json(m)); }

}  // namespace avgmdp::harness
