#pragma once

#include <functional>
#include <string>
#include <vector>

#include "semeq/interp.hpp"

namespace semeq {

// A reproducible example: a fixed pair of interpretations plus named checks
// that re-derive every claimed outcome through the public solvers. Checks
// carry their own copies of the data, so entries stay independent and pure.
struct GalleryCheck {
  std::string name;
  std::string claim;
  std::function<bool(std::string& note)> run;  // fills note on failure
};

struct GalleryEntry {
  std::string id;
  std::string title;
  Interpretation a, b;
  std::vector<GalleryCheck> checks;
};

const std::vector<GalleryEntry>& gallery();
const GalleryEntry* gallery_find(const std::string& id);

struct ReproReport {
  std::string id;
  int passed = 0;
  std::vector<std::string> failures;  // "check: note"
};
ReproReport run_gallery_entry(const GalleryEntry& e);

}  // namespace semeq
