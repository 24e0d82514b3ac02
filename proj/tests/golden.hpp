#pragma once

// Shared pieces of the golden-file runner: command lists, process capture.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace veq::golden {

struct Case {
  int exit = 0;
  std::string args;  // shell words, passed through as written
};

struct Captured {
  std::string out;
  int exit = -1;
};

inline std::vector<Case> read_cases(const std::filesystem::path& cmds) {
  std::ifstream in(cmds);
  if (!in) throw std::runtime_error("cannot read " + cmds.string());
  std::vector<Case> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    Case c;
    ss >> c.exit;
    std::getline(ss, c.args);
    const auto first = c.args.find_first_not_of(' ');
    c.args = first == std::string::npos ? "" : c.args.substr(first);
    out.push_back(c);
  }
  return out;
}

inline std::string quote(const std::string& s) {
  std::string out = "'";
  for (char ch : s) out += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
  return out + "'";
}

inline Captured capture(const std::string& command) {
  Captured c;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot run " + command);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), n);
  const int status = pclose(pipe);
  c.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return c;
}

inline std::string command_for(const std::string& veq, const std::filesystem::path& workspace, const Case& c) {
  return quote(veq) + " --json -f " + quote(workspace.string()) + " " + c.args;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct FamilyResult {
  std::size_t cases = 0;
  std::vector<std::string> problems;
};

/// Runs every case of one family; with `update` rewrites the expected file.
inline FamilyResult run_family(const std::string& veq, const std::filesystem::path& root, const std::string& family,
                               bool update) {
  FamilyResult r;
  const auto cases = read_cases(root / "tests" / "golden" / (family + ".cmds"));
  const auto workspace = root / "corpus" / (family + ".veq");
  const auto expected_path = root / "tests" / "golden" / (family + ".jsonl");
  std::string actual;
  for (const auto& c : cases) {
    auto got = capture(command_for(veq, workspace, c));
    ++r.cases;
    if (got.exit != c.exit)
      r.problems.push_back(family + ": `" + c.args + "` exited " + std::to_string(got.exit) + ", expected " +
                           std::to_string(c.exit));
    actual += got.out;
  }
  if (update) {
    std::ofstream(expected_path, std::ios::binary) << actual;
    return r;
  }
  const std::string expected = slurp(expected_path);
  if (expected != actual) {
    std::istringstream a(actual), e(expected);
    std::string la, le;
    std::size_t line = 1;
    while (true) {
      const bool ga = static_cast<bool>(std::getline(a, la));
      const bool ge = static_cast<bool>(std::getline(e, le));
      if (!ga && !ge) break;
      if (!ga || !ge || la != le) {
        r.problems.push_back(family + ".jsonl line " + std::to_string(line) + " differs:\n  expected: " + le +
                             "\n  actual:   " + la);
        break;
      }
      ++line;
    }
  }
  return r;
}

inline const std::vector<std::string>& families() {
  static const std::vector<std::string> f{"finset", "groups", "theories", "birkhoff", "inserters", "series"};
  return f;
}

}  // namespace veq::golden
