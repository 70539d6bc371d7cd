#pragma once

#include <string>

#include "avgmdp/mdp.hpp"

namespace avgmdp::harness {

/// Raised for unreadable or malformed files; validation failures surface as InvalidMdp.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// {"n_states", "n_actions", "transitions"[s][a][s'], "rewards"[s][a]}.
MdpTables parse_mdp_json(const std::string& text);
std::string mdp_to_json(const Mdp& m);

/// Throws FormatError on I/O or shape problems, InvalidMdp on validation failure.
Mdp load_mdp(const std::string& path);
void save_mdp(const Mdp& m, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace avgmdp::harness
