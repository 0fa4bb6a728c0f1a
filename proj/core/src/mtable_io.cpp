#include "lfg/mtable_io.hpp"

#include <fstream>
#include <sstream>

namespace lfg {

FiniteGroup parse_group_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  long long n = -1;
  std::vector<std::vector<long long>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    std::istringstream ls(line);
    if (n < 0) {
      std::string tag;
      ls >> tag >> n;
      if (tag != "mtable" || ls.fail() || n < 1)
        throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": expected `mtable <n>`");
      continue;
    }
    std::vector<long long> row;
    long long v;
    while (ls >> v) row.push_back(v);
    if (!ls.eof()) {
      std::string rest;
      ls.clear();
      ls >> rest;
      throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": bad token `" + rest + "`");
    }
    if (row.empty()) continue;
    if ((long long)row.size() != n)
      throw Error(ErrorKind::ParseError,
                  "line " + std::to_string(lineno) + ": expected " + std::to_string(n) + " entries, got " +
                      std::to_string(row.size()));
    rows.push_back(std::move(row));
    if ((long long)rows.size() == n) break;
  }
  if (n < 0) throw Error(ErrorKind::ParseError, "missing `mtable <n>` header");
  if ((long long)rows.size() != n)
    throw Error(ErrorKind::ParseError, "expected " + std::to_string(n) + " rows, got " +
                                           std::to_string(rows.size()));
  return FiniteGroup::validate_table(rows);
}

FiniteGroup parse_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_group_text(buf.str());
}

std::string format_group(const FiniteGroup& g) {
  std::ostringstream out;
  out << "mtable " << g.order() << "\n";
  for (int i = 0; i < g.order(); ++i) {
    for (int j = 0; j < g.order(); ++j) {
      if (j) out << ' ';
      out << int(g.mul(Elem(i), Elem(j)));
    }
    out << '\n';
  }
  return out.str();
}

void write_group_file(const FiniteGroup& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::ParseError, "cannot open " + path + " for writing");
  out << format_group(g);
}

}  // namespace lfg
