// Runs the reltoa binary as a subprocess; shared by test_cli and acceptance.
#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace cli {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out, err;
};

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string config(const std::string& name) { return std::string(RELTOA_CONFIG_DIR) + "/" + name; }

/// Fresh scratch directory, removed on destruction.
struct Scratch {
  fs::path root;
  explicit Scratch(const std::string& tag) {
    root = fs::temp_directory_path() / ("reltoa_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(root);
    fs::create_directories(root);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(root, ec);
  }
  fs::path operator/(const std::string& s) const { return root / s; }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(root / name, std::ios::binary) << text;
    return root / name;
  }
};

inline std::string quote(const std::string& s) { return "'" + s + "'"; }

inline Result run(const std::vector<std::string>& args, const Scratch& scratch) {
  std::string cmd = quote(RELTOA_CLI_PATH);
  for (const auto& a : args) cmd += " " + quote(a);
  const fs::path o = scratch / ".stdout", e = scratch / ".stderr";
  cmd += " >" + quote(o.string()) + " 2>" + quote(e.string());
  const int st = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  r.out = slurp(o);
  r.err = slurp(e);
  return r;
}

inline std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

/// Byte comparison of every regular file under two directories.
inline bool same_tree(const fs::path& a, const fs::path& b, std::string* why = nullptr) {
  std::vector<std::string> na, nb;
  for (const auto& e : fs::directory_iterator(a)) na.push_back(e.path().filename().string());
  for (const auto& e : fs::directory_iterator(b)) nb.push_back(e.path().filename().string());
  std::sort(na.begin(), na.end());
  std::sort(nb.begin(), nb.end());
  if (na != nb) {
    if (why) *why = "file sets differ";
    return false;
  }
  for (const auto& n : na)
    if (slurp(a / n) != slurp(b / n)) {
      if (why) *why = n + " differs";
      return false;
    }
  return true;
}

}  // namespace cli
