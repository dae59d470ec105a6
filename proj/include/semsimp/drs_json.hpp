#ifndef SEMSIMP_DRS_JSON_HPP
#define SEMSIMP_DRS_JSON_HPP

#include <string>
#include <vector>

#include "semsimp/semantic_graph.hpp"

namespace semsimp {

// Line-delimited DRS-JSON, one record per line:
//   {"id": str, "tokens": [str,...],
//    "nodes": [{"var": str, "kind": "event"|"entity",
//               "preds": [{"lemma": str, "pos": [int,...]}],
//               "named": [[str,int],...]?, "timex": [[str,int],...]?}],
//    "edges": [{"from": str, "to": str, "label": str}]}
// Unknown fields are ignored. Preprocessing is NOT applied here.
SemanticGraph parse_drs_record(const std::string& line, std::size_t line_no);
std::vector<SemanticGraph> parse_drs_file(const std::string& path);

// One record per line, fields in canonical order. parse(serialize(g))
// reproduces g for graphs that have not been preprocessed.
std::string serialize_drs_record(const SemanticGraph& g);

}  // namespace semsimp

#endif
