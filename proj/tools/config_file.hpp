#pragma once

// Flat "key = value" config files. Each line becomes "--key value" placed
// right after the subcommand, so flags given on the command line win.

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinvortex::cli {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot read config file " + path);
  std::vector<std::string> args;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw config_error(path + ":" + std::to_string(lineno) + ": empty key");
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

/// argv with every "--config FILE" / "--config=FILE" expanded in place of the
/// subcommand's own arguments.
inline std::vector<std::string> expand_config(const std::vector<std::string>& argv) {
  std::vector<std::string> rest;
  std::vector<std::string> from_file;
  for (std::size_t i = 1; i < argv.size(); ++i) {
    const std::string& a = argv[i];
    if (a == "--config") {
      if (i + 1 >= argv.size()) throw config_error("--config needs a file name");
      const auto more = read_config(argv[++i]);
      from_file.insert(from_file.end(), more.begin(), more.end());
    } else if (a.rfind("--config=", 0) == 0) {
      const auto more = read_config(a.substr(9));
      from_file.insert(from_file.end(), more.begin(), more.end());
    } else {
      rest.push_back(a);
    }
  }
  std::vector<std::string> out{argv.empty() ? std::string("spinvortex") : argv[0]};
  std::size_t pos = 0;
  // global flags (e.g. --help) stay before the subcommand
  while (pos < rest.size() && rest[pos].rfind("-", 0) == 0) out.push_back(rest[pos++]);
  if (pos < rest.size()) out.push_back(rest[pos++]);
  out.insert(out.end(), from_file.begin(), from_file.end());
  out.insert(out.end(), rest.begin() + static_cast<std::ptrdiff_t>(pos), rest.end());
  return out;
}

} // namespace spinvortex::cli
