#pragma once

#include <string>
#include <vector>

namespace bkm::verify {

struct Assertion {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id = 0;
  std::string title;
  std::vector<Assertion> assertions;
  bool passed() const;
};

// Criteria 1..11 of the acceptance suite. Throws InvalidInput for other ids.
Criterion run_criterion(int id);

// Named bundles for `bkm verify`: "c1" .. "c11", "thmD-n3", "all".
std::vector<std::string> bundle_names();
std::vector<Assertion> run_bundle(const std::string& name);

}  // namespace bkm::verify
