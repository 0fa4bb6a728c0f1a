#pragma once

#include <string>
#include <vector>

#include "lfg/group.hpp"

namespace lfg {

struct CorpusEntry {
  std::string name;
  FiniteGroup group;
};

/// The 14 groups of order <= 8 up to isomorphism, built in a fixed order
/// (ascending order, cyclic first).  This is the same list the bundled
/// `data/corpus/*.mtable` files were generated from.
const std::vector<CorpusEntry>& builtin_corpus();

const FiniteGroup& corpus_group(const std::string& name);

/// Loads every `*.mtable` file in a directory, sorted by filename.
/// Throws CorpusLoadError naming the offending file.
std::vector<CorpusEntry> load_corpus_dir(const std::string& dir);

}  // namespace lfg
