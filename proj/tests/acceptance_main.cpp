// Runs the ten acceptance criteria with their pinned tolerances and the
// default seed. Prints one PASS/FAIL line per criterion; exit 1 on any FAIL.
//
// usage: acceptance [criterion ids...]

#include <cstdlib>
#include <iostream>
#include <vector>

#include "brw/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty()) ids = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

  brw::AcceptanceOptions opt;  // default seed, all cores, full replicate counts
  int failed = 0;
  for (int id : ids) {
    try {
      const auto r = brw::run_criterion(id, opt);
      std::cout << brw::criterion_line(r) << " [" << brw::accept::fmt(r.seconds, 3) << " s]" << std::endl;
      failed += !r.passed;
    } catch (const std::exception& e) {
      std::cout << "FAIL criterion " << id << ": error: " << e.what() << std::endl;
      ++failed;
    }
  }
  std::cout << (ids.size() - static_cast<std::size_t>(failed)) << "/" << ids.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
