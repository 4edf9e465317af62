#pragma once

#include <memory>
#include <string>

#include "sublap/oracle.hpp"
#include "sublap/polytope.hpp"

namespace sublap {

enum class InstanceFormat { graph, digraph, hypergraph, smf_json, jointdist };

std::string format_name(InstanceFormat format);

/// A parsed instance file. Vertices are 1-indexed on disk and 0-indexed in
/// memory.
struct Instance {
  InstanceFormat format = InstanceFormat::graph;
  std::shared_ptr<const SubmodularTransformation> transformation;
  std::string path;
};

/// Detects the format from the file extension (.graph, .digraph,
/// .hypergraph, .json, .jointdist) and parses.
Instance load_instance(const std::string& path);

Instance parse_instance(const std::string& text, InstanceFormat format);

/// One point per line, space-separated decimals, after the header line
/// "n eps_abs count".
void write_cover_file(const std::string& path, const CoverSet& cover);

}  // namespace sublap
