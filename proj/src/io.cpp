#include "sublap/io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace sublap {

namespace {

int parse_vertex(std::istream& in, int n, const char* what) {
  int v;
  if (!(in >> v)) throw InputError(std::string("expected a vertex index in ") + what);
  if (v < 1 || v > n) throw InputError(std::string("vertex index out of range in ") + what);
  return v - 1;
}

std::pair<int, int> parse_header(std::istream& in, const char* what) {
  int n, m;
  if (!(in >> n >> m) || n < 1 || m < 0)
    throw InputError(std::string("malformed header in ") + what);
  return {n, m};
}

SubmodularTransformation parse_graph(const std::string& text, bool directed) {
  std::istringstream in(text);
  const auto [n, m] = parse_header(in, "graph file");
  std::vector<Edge> edges;
  std::vector<Arc> arcs;
  for (int i = 0; i < m; ++i) {
    const int u = parse_vertex(in, n, "graph file");
    const int v = parse_vertex(in, n, "graph file");
    if (directed)
      arcs.push_back({u, v});
    else
      edges.push_back({u, v});
  }
  return directed ? build_directed_cut(n, arcs) : build_undirected_cut(n, edges);
}

SubmodularTransformation parse_hypergraph(const std::string& text) {
  std::istringstream in(text);
  const auto [n, m] = parse_header(in, "hypergraph file");
  std::vector<std::vector<int>> hyperedges;
  for (int i = 0; i < m; ++i) {
    int k;
    if (!(in >> k) || k < 2) throw InputError("malformed hyperedge size");
    std::vector<int> edge;
    for (int j = 0; j < k; ++j) edge.push_back(parse_vertex(in, n, "hypergraph file"));
    hyperedges.push_back(std::move(edge));
  }
  return build_hypergraph_cut(n, hyperedges);
}

SubmodularTransformation parse_smf_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid json: ") + e.what());
  }
  if (!doc.contains("n") || !doc.contains("functions"))
    throw InputError("smf-json needs fields \"n\" and \"functions\"");
  const int n = doc["n"].get<int>();
  if (n < 1 || n > kMaxGroundSize) throw InputError("smf-json: n out of range");

  std::vector<SubmodularOracle> oracles;
  for (const auto& fn : doc["functions"]) {
    std::vector<int> support;
    for (const auto& v : fn.at("support")) {
      const int idx = v.get<int>();
      if (idx < 1 || idx > n) throw InputError("smf-json: support index out of range");
      support.push_back(idx - 1);
    }
    const int s = static_cast<int>(support.size());
    if (s > 16) throw InputError("smf-json: support larger than 16");

    // Value masks refer to the support order as listed; remap onto the
    // sorted support the oracle uses internally.
    std::vector<int> sorted = support;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InputError("smf-json: duplicate support index");
    std::vector<int> position(s);
    for (int j = 0; j < s; ++j)
      position[j] = static_cast<int>(std::find(sorted.begin(), sorted.end(), support[j]) -
                                     sorted.begin());

    std::vector<double> values(std::size_t{1} << s, 0.0);
    std::vector<bool> present(values.size(), false);
    for (const auto& [key, value] : fn.at("values").items()) {
      std::size_t listed_mask;
      try {
        listed_mask = std::stoull(key);
      } catch (const std::exception&) {
        throw InputError("smf-json: value keys must be decimal subset masks");
      }
      if (listed_mask >= values.size()) throw InputError("smf-json: subset mask out of range");
      std::size_t sorted_mask = 0;
      for (int j = 0; j < s; ++j)
        if (listed_mask >> j & 1) sorted_mask |= std::size_t{1} << position[j];
      values[sorted_mask] = value.get<double>();
      present[sorted_mask] = true;
    }
    if (std::find(present.begin(), present.end(), false) != present.end())
      throw InputError("smf-json: missing subset entry");
    oracles.push_back(build_table_function(n, sorted, values));
  }
  return SubmodularTransformation(GroundSet(n), std::move(oracles));
}

SubmodularTransformation parse_jointdist(const std::string& text) {
  std::istringstream in(text);
  int n;
  if (!(in >> n) || n < 1 || n > kMaxGroundSize)
    throw InputError("jointdist: malformed variable count");
  std::vector<int> alphabet(n);
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (!(in >> alphabet[i]) || alphabet[i] < 1) throw InputError("jointdist: bad alphabet size");
    total *= static_cast<std::size_t>(alphabet[i]);
  }

  std::vector<double> probabilities(total, 0.0);
  while (true) {
    std::vector<int> outcome(n);
    if (!(in >> outcome[0])) break;
    for (int i = 1; i < n; ++i)
      if (!(in >> outcome[i])) throw InputError("jointdist: truncated outcome row");
    double p;
    if (!(in >> p)) throw InputError("jointdist: missing probability");
    std::size_t index = 0;
    for (int i = 0; i < n; ++i) {
      if (outcome[i] < 1 || outcome[i] > alphabet[i])
        throw InputError("jointdist: outcome symbol out of range");
      index = index * alphabet[i] + (outcome[i] - 1);
    }
    probabilities[index] = p;
  }
  return build_mutual_information(JointDistribution(std::move(alphabet), std::move(probabilities)));
}

}  // namespace

std::string format_name(InstanceFormat format) {
  switch (format) {
    case InstanceFormat::graph: return "graph";
    case InstanceFormat::digraph: return "digraph";
    case InstanceFormat::hypergraph: return "hypergraph";
    case InstanceFormat::smf_json: return "smf-json";
    case InstanceFormat::jointdist: return "jointdist";
  }
  return "unknown";
}

Instance parse_instance(const std::string& text, InstanceFormat format) {
  Instance instance;
  instance.format = format;
  switch (format) {
    case InstanceFormat::graph:
      instance.transformation =
          std::make_shared<SubmodularTransformation>(parse_graph(text, false));
      break;
    case InstanceFormat::digraph:
      instance.transformation =
          std::make_shared<SubmodularTransformation>(parse_graph(text, true));
      break;
    case InstanceFormat::hypergraph:
      instance.transformation = std::make_shared<SubmodularTransformation>(parse_hypergraph(text));
      break;
    case InstanceFormat::smf_json:
      instance.transformation = std::make_shared<SubmodularTransformation>(parse_smf_json(text));
      break;
    case InstanceFormat::jointdist:
      instance.transformation = std::make_shared<SubmodularTransformation>(parse_jointdist(text));
      break;
  }
  return instance;
}

Instance load_instance(const std::string& path) {
  InstanceFormat format;
  if (path.ends_with(".graph"))
    format = InstanceFormat::graph;
  else if (path.ends_with(".digraph"))
    format = InstanceFormat::digraph;
  else if (path.ends_with(".hypergraph"))
    format = InstanceFormat::hypergraph;
  else if (path.ends_with(".json"))
    format = InstanceFormat::smf_json;
  else if (path.ends_with(".jointdist"))
    format = InstanceFormat::jointdist;
  else
    throw InputError("unrecognized instance extension: " + path);

  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  Instance instance = parse_instance(buffer.str(), format);
  instance.path = path;
  return instance;
}

void write_cover_file(const std::string& path, const CoverSet& cover) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open cover output file: " + path);
  out.precision(17);
  out << cover.dim << " " << cover.radius << " " << cover.points.size() << "\n";
  for (const auto& p : cover.points) {
    for (int i = 0; i < p.size(); ++i) out << (i ? " " : "") << p(i);
    out << "\n";
  }
}

}  // namespace sublap
