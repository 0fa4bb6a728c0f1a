#include "lfg/corpus.hpp"

#include <algorithm>
#include <filesystem>

#include "lfg/mtable_io.hpp"

namespace lfg {

const std::vector<CorpusEntry>& builtin_corpus() {
  static const std::vector<CorpusEntry> corpus = [] {
    std::vector<CorpusEntry> c;
    auto z = [](int n) { return FiniteGroup::cyclic(n); };
    const FiniteGroup z2 = z(2);
    c.push_back({"o1_trivial", FiniteGroup::trivial()});
    c.push_back({"o2_z2", z(2)});
    c.push_back({"o3_z3", z(3)});
    c.push_back({"o4a_z4", z(4)});
    c.push_back({"o4b_v4", FiniteGroup::direct_product(z2, z2)});
    c.push_back({"o5_z5", z(5)});
    c.push_back({"o6a_z6", z(6)});
    c.push_back({"o6b_s3", FiniteGroup::symmetric(3)});
    c.push_back({"o7_z7", z(7)});
    c.push_back({"o8a_z8", z(8)});
    c.push_back({"o8b_z4xz2", FiniteGroup::direct_product(z(4), z2)});
    c.push_back({"o8c_z2cube", FiniteGroup::direct_product(FiniteGroup::direct_product(z2, z2), z2)});
    c.push_back({"o8d_d4", FiniteGroup::dihedral(4)});
    c.push_back({"o8e_q8", FiniteGroup::quaternion8()});
    return c;
  }();
  return corpus;
}

const FiniteGroup& corpus_group(const std::string& name) {
  for (const auto& e : builtin_corpus())
    if (e.name == name) return e.group;
  throw Error(ErrorKind::CorpusLoadError, "no corpus group named " + name);
}

std::vector<CorpusEntry> load_corpus_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.path().extension() == ".mtable") files.push_back(entry.path());
  }
  if (ec) throw Error(ErrorKind::CorpusLoadError, dir + ": " + ec.message());
  std::sort(files.begin(), files.end());
  std::vector<CorpusEntry> out;
  for (const auto& f : files) {
    try {
      out.push_back({f.stem().string(), parse_group_file(f.string())});
    } catch (const Error& e) {
      throw Error(ErrorKind::CorpusLoadError, f.string() + ": " + e.what());
    }
  }
  return out;
}

}  // namespace lfg
