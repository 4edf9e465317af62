#include "sublap/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace sublap {

namespace {

constexpr double kValueTolerance = 1e-9;

std::string mask_to_string(Subset s, int n) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (int v = 0; v < n; ++v) {
    if (s >> v & 1) {
      if (!first) out << ",";
      out << v;
      first = false;
    }
  }
  out << "}";
  return out.str();
}

}  // namespace

SubmodularOracle::SubmodularOracle(int ground_size, std::vector<int> support,
                                   std::function<double(Subset)> eval_local, std::string name)
    : ground_size_(ground_size),
      support_(std::move(support)),
      eval_local_(std::move(eval_local)),
      name_(std::move(name)) {
  if (ground_size_ < 1 || ground_size_ > kMaxGroundSize)
    throw InputError("oracle ground size must be in [1, 20]");
  std::sort(support_.begin(), support_.end());
  if (std::adjacent_find(support_.begin(), support_.end()) != support_.end())
    throw InputError("oracle support contains duplicates");
  for (int v : support_)
    if (v < 0 || v >= ground_size_) throw InputError("oracle support index out of range");

  const int s = support_size();
  if (std::abs(eval_local_(0)) > kValueTolerance)
    throw InputError("oracle is not normalized: F(empty) != 0");
  for (Subset t = 0; t < (Subset{1} << s); ++t) {
    infinity_norm_ = std::max(infinity_norm_, eval_local_(t));
    if (std::abs(eval_local_(t) - eval_local_(full_mask(s) & ~t)) > kValueTolerance)
      symmetric_ = false;
  }
  for (int i = 0; i < s; ++i) singleton_max_ = std::max(singleton_max_, eval_local_(Subset{1} << i));
  value_on_support_ = eval_local_(full_mask(s));
}

double SubmodularOracle::evaluate(Subset ground_mask) const {
  if (ground_mask >> ground_size_) throw InputError("subset index out of range");
  return eval_local_(ground_to_local(ground_mask));
}

Subset SubmodularOracle::ground_to_local(Subset ground_mask) const {
  Subset local = 0;
  for (int i = 0; i < support_size(); ++i)
    if (ground_mask >> support_[i] & 1) local |= Subset{1} << i;
  return local;
}

Subset SubmodularOracle::local_to_ground(Subset local_mask) const {
  Subset ground = 0;
  for (int i = 0; i < support_size(); ++i)
    if (local_mask >> i & 1) ground |= Subset{1} << support_[i];
  return ground;
}

std::optional<SubmodularityViolation> check_submodular(const SubmodularOracle& oracle,
                                                       double tolerance) {
  const int s = oracle.support_size();
  if (s > 16) throw CapabilityError("check_submodular: support larger than 16");
  // Diminishing returns on pairs: F(v | A) >= F(v | A ∪ {u}) for all A, u, v ∉ A.
  for (Subset a = 0; a < (Subset{1} << s); ++a) {
    for (int u = 0; u < s; ++u) {
      if (a >> u & 1) continue;
      for (int v = u + 1; v < s; ++v) {
        if (a >> v & 1) continue;
        const Subset bu = Subset{1} << u, bv = Subset{1} << v;
        const double gap = oracle.evaluate_local(a | bu | bv) + oracle.evaluate_local(a) -
                           oracle.evaluate_local(a | bu) - oracle.evaluate_local(a | bv);
        if (gap > tolerance) {
          // Violating definition pair: S = A ∪ {v}, T = A ∪ {u}.
          return SubmodularityViolation{oracle.local_to_ground(a | bv),
                                        oracle.local_to_ground(a | bu), gap};
        }
      }
    }
  }
  return std::nullopt;
}

SubmodularTransformation::SubmodularTransformation(GroundSet ground,
                                                   std::vector<SubmodularOracle> functions)
    : ground_(std::move(ground)), functions_(std::move(functions)) {
  degrees_.assign(ground_.n, 0);
  for (const auto& f : functions_) {
    if (f.ground_size() != ground_.n)
      throw InputError("oracle ground size does not match transformation");
    for (int v : f.support()) ++degrees_[v];
  }
  total_volume_ = std::accumulate(degrees_.begin(), degrees_.end(), 0L);

  vanishes_on_ground_ = true;
  for (const auto& f : functions_)
    if (std::abs(f.value_on_support()) > kValueTolerance) vanishes_on_ground_ = false;

  // Symmetric as a transformation: the multiset of component values at S
  // matches the multiset at V \ S for every S.
  symmetric_ = true;
  const Subset full = full_mask(ground_.n);
  for (Subset s = 0; symmetric_ && s <= full / 2; ++s) {
    std::multiset<long long> a, b;
    for (const auto& f : functions_) {
      a.insert(std::llround(f.evaluate(s) * 1e9));
      b.insert(std::llround(f.evaluate(full & ~s) * 1e9));
    }
    if (a != b) symmetric_ = false;
  }
}

long SubmodularTransformation::volume(Subset s) const {
  long vol = 0;
  for (int v = 0; v < ground_.n; ++v)
    if (s >> v & 1) vol += degrees_[v];
  return vol;
}

double SubmodularTransformation::cut(Subset s) const {
  double c = 0.0;
  for (const auto& f : functions_) c += f.evaluate(s);
  return c;
}

SubmodularTransformation build_undirected_cut(int n, const std::vector<Edge>& edges) {
  GroundSet ground(n);
  std::vector<SubmodularOracle> oracles;
  oracles.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u == e.v) throw InputError("undirected cut: self-loop");
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw InputError("undirected cut: endpoint out of range");
    oracles.emplace_back(
        n, std::vector<int>{std::min(e.u, e.v), std::max(e.u, e.v)},
        [](Subset t) { return (popcount(t) == 1) ? 1.0 : 0.0; }, "edge-cut");
  }
  return SubmodularTransformation(std::move(ground), std::move(oracles));
}

SubmodularTransformation build_directed_cut(int n, const std::vector<Arc>& arcs) {
  GroundSet ground(n);
  std::vector<SubmodularOracle> oracles;
  oracles.reserve(arcs.size());
  for (const auto& a : arcs) {
    if (a.tail == a.head) throw InputError("directed cut: self-loop");
    if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n)
      throw InputError("directed cut: endpoint out of range");
    const bool tail_first = a.tail < a.head;
    // Local bit 0 is the smaller vertex index.
    const Subset tail_bit = tail_first ? 1 : 2;
    oracles.emplace_back(
        n, std::vector<int>{std::min(a.tail, a.head), std::max(a.tail, a.head)},
        [tail_bit](Subset t) { return (t == tail_bit) ? 1.0 : 0.0; }, "arc-cut");
  }
  return SubmodularTransformation(std::move(ground), std::move(oracles));
}

SubmodularTransformation build_hypergraph_cut(int n,
                                              const std::vector<std::vector<int>>& hyperedges) {
  GroundSet ground(n);
  std::vector<SubmodularOracle> oracles;
  oracles.reserve(hyperedges.size());
  for (const auto& e : hyperedges) {
    std::set<int> verts(e.begin(), e.end());
    if (verts.size() != e.size() || verts.size() < 2)
      throw InputError("hypergraph cut: hyperedge needs >= 2 distinct vertices");
    for (int v : verts)
      if (v < 0 || v >= n) throw InputError("hypergraph cut: vertex out of range");
    const int s = static_cast<int>(verts.size());
    oracles.emplace_back(
        n, std::vector<int>(verts.begin(), verts.end()),
        [s](Subset t) { return (t != 0 && t != full_mask(s)) ? 1.0 : 0.0; }, "hyperedge-cut");
  }
  return SubmodularTransformation(std::move(ground), std::move(oracles));
}

SubmodularOracle build_table_function(int ground_size, const std::vector<int>& support,
                                      const std::vector<double>& values) {
  const int s = static_cast<int>(support.size());
  if (s > 20) throw InputError("table function: support larger than 20");
  if (values.size() != (std::size_t{1} << s))
    throw InputError("table function: need exactly 2^|support| values");
  if (std::abs(values[0]) > kValueTolerance)
    throw InputError("table function: not normalized, values[empty] != 0");

  auto table = std::make_shared<std::vector<double>>(values);
  SubmodularOracle oracle(ground_size, support,
                          [table](Subset t) { return (*table)[t]; }, "table");
  if (s <= 12) {
    if (auto bad = check_submodular(oracle)) {
      throw ValidationError("table function is not submodular: F(S)+F(T) < F(S∪T)+F(S∩T) for S=" +
                            mask_to_string(bad->s, ground_size) +
                            ", T=" + mask_to_string(bad->t, ground_size));
    }
  }
  return oracle;
}

JointDistribution::JointDistribution(std::vector<int> alphabet_sizes,
                                     std::vector<double> probabilities)
    : alphabet_sizes_(std::move(alphabet_sizes)), probabilities_(std::move(probabilities)) {
  if (alphabet_sizes_.empty() || alphabet_sizes_.size() > kMaxGroundSize)
    throw InputError("joint distribution: variable count must be in [1, 20]");
  std::size_t total = 1;
  for (int a : alphabet_sizes_) {
    if (a < 1) throw InputError("joint distribution: alphabet size must be positive");
    total *= static_cast<std::size_t>(a);
  }
  if (probabilities_.size() != total)
    throw InputError("joint distribution: probability table has wrong size");
  double sum = 0.0;
  for (double p : probabilities_) {
    if (p < -1e-15) throw InputError("joint distribution: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw InputError("joint distribution: probabilities do not sum to 1");
}

double JointDistribution::entropy(Subset s) const {
  const int n = variable_count();
  // Marginalize onto S by accumulating over outcomes of V \ S.
  std::map<std::vector<int>, double> marginal;
  std::vector<int> outcome(n, 0);
  for (double p : probabilities_) {
    if (p > 0) {
      std::vector<int> key;
      for (int v = 0; v < n; ++v)
        if (s >> v & 1) key.push_back(outcome[v]);
      marginal[key] += p;
    }
    for (int v = n - 1; v >= 0; --v) {
      if (++outcome[v] < alphabet_sizes_[v]) break;
      outcome[v] = 0;
    }
  }
  double h = 0.0;
  for (const auto& [key, p] : marginal)
    if (p > 0) h -= p * std::log2(p);
  return h;
}

double JointDistribution::mutual_information(Subset s) const {
  const Subset full = full_mask(variable_count());
  return entropy(s) + entropy(full & ~s) - entropy(full);
}

SubmodularTransformation build_mutual_information(const JointDistribution& dist) {
  const int n = dist.variable_count();
  const double h_total = dist.entropy(full_mask(n));
  if (h_total <= 1e-12)
    throw InputError("mutual information: deterministic distribution, H(V) = 0");

  // Precompute the full table; entropy marginalization is expensive per call.
  auto table = std::make_shared<std::vector<double>>(std::size_t{1} << n);
  for (Subset s = 0; s < (Subset{1} << n); ++s)
    (*table)[s] = dist.mutual_information(s) / h_total;

  std::vector<int> support(n);
  std::iota(support.begin(), support.end(), 0);
  std::vector<SubmodularOracle> oracles;
  oracles.emplace_back(n, support, [table](Subset t) { return (*table)[t]; },
                       "mutual-information");
  return SubmodularTransformation(GroundSet(n), std::move(oracles));
}

SubmodularOracle build_appendix_c_family(int n, int k) {
  if (k < 1 || 2 * k > n) throw InputError("symmetrized matroid rank: need 1 <= k <= n/2");
  std::vector<int> support(n);
  std::iota(support.begin(), support.end(), 0);
  return SubmodularOracle(
      n, support,
      [n, k](Subset t) {
        // Halved symmetrization of the uniform-matroid rank min{|S|, k}.
        // The half keeps the extreme points in {-1/2, 0, 1/2}^V and the
        // Hausdorff norm at sqrt(k/2).
        const int c = popcount(t);
        return 0.5 * (std::min(c, k) + std::min(n - c, k) - k);
      },
      "uniform-matroid-sym");
}

SubmodularTransformation make_transformation(const SubmodularOracle& oracle) {
  return SubmodularTransformation(GroundSet(oracle.ground_size()),
                                  std::vector<SubmodularOracle>{oracle});
}

std::pair<SubmodularTransformation, double> scale_for_general_sdp(
    const SubmodularTransformation& transformation) {
  double max_norm = 0.0;
  for (const auto& f : transformation.functions()) max_norm = std::max(max_norm, f.infinity_norm());
  if (max_norm <= 0.0) throw InputError("scale_for_general_sdp: all functions are zero");
  const double factor = 100.0 * max_norm;

  std::vector<SubmodularOracle> scaled;
  scaled.reserve(transformation.functions().size());
  for (const auto& f : transformation.functions()) {
    // Capture by value keeps the original oracle's evaluator alive.
    scaled.emplace_back(
        f.ground_size(), f.support(),
        [f, factor](Subset t) { return f.evaluate_local(t) / factor; }, f.name() + "/scaled");
  }
  return {SubmodularTransformation(transformation.ground(), std::move(scaled)), factor};
}

}  // namespace sublap
