// golden_runner VEQ ROOT FAMILY... [--update]
//
// Runs each tests/golden/<family>.cmds line against corpus/<family>.veq and
// compares stdout byte for byte with tests/golden/<family>.jsonl.

#include <iostream>

#include "golden.hpp"

int main(int argc, char** argv) {
  if (argc < 4) {
    std::cerr << "usage: golden_runner VEQ ROOT FAMILY... [--update]\n";
    return 2;
  }
  const std::string veq = argv[1];
  const std::filesystem::path root = argv[2];
  bool update = false;
  std::vector<std::string> fams;
  for (int i = 3; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--update")
      update = true;
    else
      fams.push_back(a);
  }
  int status = 0;
  for (const auto& f : fams) {
    try {
      auto r = veq::golden::run_family(veq, root, f, update);
      for (const auto& p : r.problems) std::cerr << p << "\n";
      std::cout << f << ": " << r.cases << " cases, " << (r.problems.empty() ? "ok" : "FAILED") << "\n";
      if (!r.problems.empty()) status = 1;
    } catch (const std::exception& e) {
      std::cerr << f << ": " << e.what() << "\n";
      status = 1;
    }
  }
  return status;
}
