#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sublap/errors.hpp"

namespace sublap {

using Subset = std::uint32_t;  // bitmask over ground-set indices, n <= 20

constexpr int kMaxGroundSize = 20;

inline int popcount(Subset s) { return __builtin_popcount(s); }
inline Subset full_mask(int n) { return (n >= 32) ? ~Subset{0} : ((Subset{1} << n) - 1); }

/// The vertex set V. Indices are 0..n-1; names are optional labels.
struct GroundSet {
  int n = 0;
  std::vector<std::string> names;  // empty, or exactly n unique labels

  explicit GroundSet(int size) : n(size) {
    if (n < 1 || n > kMaxGroundSize) throw InputError("ground set size must be in [1, 20]");
  }
  GroundSet(int size, std::vector<std::string> labels) : GroundSet(size) {
    if (!labels.empty() && static_cast<int>(labels.size()) != n)
      throw InputError("label count must match ground set size");
    names = std::move(labels);
  }
};

/// A normalized submodular set function F with F(empty) = 0.
///
/// Evaluation is by bitmask over the ground set; the value depends only on
/// the intersection with the support. The local evaluator receives a bitmask
/// over support positions (bit i <-> support()[i]).
class SubmodularOracle {
 public:
  SubmodularOracle(int ground_size, std::vector<int> support,
                   std::function<double(Subset)> eval_local, std::string name);

  int ground_size() const { return ground_size_; }
  const std::vector<int>& support() const { return support_; }
  int support_size() const { return static_cast<int>(support_.size()); }
  const std::string& name() const { return name_; }

  /// F(S ∩ support) for a ground-set bitmask S.
  double evaluate(Subset ground_mask) const;
  /// F at a bitmask over support positions.
  double evaluate_local(Subset local_mask) const { return eval_local_(local_mask); }

  Subset ground_to_local(Subset ground_mask) const;
  Subset local_to_ground(Subset local_mask) const;

  double infinity_norm() const { return infinity_norm_; }   // max_S F(S)
  double singleton_max() const { return singleton_max_; }   // max_v F({v})
  bool is_symmetric() const { return symmetric_; }          // F(T) = F(supp \ T)
  double value_on_support() const { return value_on_support_; }  // F(support)

 private:
  int ground_size_;
  std::vector<int> support_;  // sorted, distinct
  std::function<double(Subset)> eval_local_;
  std::string name_;
  double infinity_norm_ = 0.0;
  double singleton_max_ = 0.0;
  double value_on_support_ = 0.0;
  bool symmetric_ = true;
};

/// Witness for a failed submodularity check: F(S) + F(T) < F(S∪T) + F(S∩T).
struct SubmodularityViolation {
  Subset s = 0;
  Subset t = 0;
  double gap = 0.0;  // F(S∪T) + F(S∩T) - F(S) - F(T), positive on violation
};

/// Exhaustive diminishing-returns check over the oracle's support.
/// Returns nullopt when the oracle is submodular. Support size capped at 16.
std::optional<SubmodularityViolation> check_submodular(const SubmodularOracle& oracle,
                                                       double tolerance = 1e-9);

/// An ordered family of submodular oracles over a shared ground set,
/// with the per-vertex degree vector d_F(v) = #{e : v in supp(F_e)}.
class SubmodularTransformation {
 public:
  SubmodularTransformation(GroundSet ground, std::vector<SubmodularOracle> functions);

  const GroundSet& ground() const { return ground_; }
  int n() const { return ground_.n; }
  int m() const { return static_cast<int>(functions_.size()); }
  const std::vector<SubmodularOracle>& functions() const { return functions_; }
  const SubmodularOracle& function(int e) const { return functions_.at(e); }

  const std::vector<int>& degrees() const { return degrees_; }
  int degree(int v) const { return degrees_.at(v); }
  long volume(Subset s) const;
  long total_volume() const { return total_volume_; }

  bool is_symmetric() const { return symmetric_; }
  bool vanishes_on_ground() const { return vanishes_on_ground_; }  // F(V) = 0

  /// cut_F(S) = sum_e F_e(S).
  double cut(Subset s) const;

 private:
  GroundSet ground_;
  std::vector<SubmodularOracle> functions_;
  std::vector<int> degrees_;
  long total_volume_ = 0;
  bool symmetric_ = false;
  bool vanishes_on_ground_ = false;
};

// --- Concrete families ---

struct Edge {
  int u, v;
};
struct Arc {
  int tail, head;
};

SubmodularTransformation build_undirected_cut(int n, const std::vector<Edge>& edges);
SubmodularTransformation build_directed_cut(int n, const std::vector<Arc>& arcs);
SubmodularTransformation build_hypergraph_cut(int n, const std::vector<std::vector<int>>& hyperedges);

/// Explicit table over 2^|support| subsets, indexed by local bitmask.
/// Submodularity is validated eagerly for supports up to 12 positions.
SubmodularOracle build_table_function(int ground_size, const std::vector<int>& support,
                                      const std::vector<double>& values);

/// Discrete joint distribution over n variables with given alphabet sizes.
/// Probabilities are indexed by mixed-radix outcome tuples.
class JointDistribution {
 public:
  JointDistribution(std::vector<int> alphabet_sizes, std::vector<double> probabilities);

  int variable_count() const { return static_cast<int>(alphabet_sizes_.size()); }
  const std::vector<int>& alphabet_sizes() const { return alphabet_sizes_; }

  /// Shannon entropy of the marginal on S, in bits.
  double entropy(Subset s) const;
  /// I(S ; V\S) in bits.
  double mutual_information(Subset s) const;

 private:
  std::vector<int> alphabet_sizes_;
  std::vector<double> probabilities_;  // flat, mixed-radix order
};

/// Single-oracle transformation F(S) = I(S ; V\S) / H(V).
SubmodularTransformation build_mutual_information(const JointDistribution& dist);

/// G_k(S) = (min{|S|,k} + min{n-|S|,k} - k)/2, the halved symmetrized
/// uniform-matroid rank; its base polytope has extreme points in
/// {-1/2, 0, 1/2}^V with exactly k coordinates of each sign.
SubmodularOracle build_appendix_c_family(int n, int k);

/// Wraps a single oracle as a transformation over its own ground set.
SubmodularTransformation make_transformation(const SubmodularOracle& oracle);

/// Divides all function values so they land in [0, 1/100]; the returned
/// factor restores the original scale (original = scaled * factor).
std::pair<SubmodularTransformation, double> scale_for_general_sdp(
    const SubmodularTransformation& transformation);

}  // namespace sublap
