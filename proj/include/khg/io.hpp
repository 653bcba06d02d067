#pragma once

// Text instance format (versioned):
//   line 1: "khg 1"
//   line 2: "k n m"
//   then m lines of k strictly increasing 1-based vertex ids, space separated.
// Duplicate edges and malformed lines are rejected with line-numbered errors.
//
// Partition sidecar (".part"):
//   line 1: "X: i1 i2 ..."
//   line 2: "Y: j1 j2 ..."
// 1-based ids; together the two lines must list every vertex exactly once.

#include "khg/hypergraph.hpp"

#include <iosfwd>
#include <string>

namespace khg {

Hypergraph read_khg(std::istream& in);
Hypergraph read_khg_file(const std::string& path);
void write_khg(std::ostream& out, const Hypergraph& h);
void write_khg_file(const std::string& path, const Hypergraph& h);

Bipartition read_part(std::istream& in, int n);
Bipartition read_part_file(const std::string& path, int n);
void write_part(std::ostream& out, const Bipartition& p);
void write_part_file(const std::string& path, const Bipartition& p);

} // namespace khg
