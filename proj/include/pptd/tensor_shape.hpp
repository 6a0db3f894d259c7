#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pptd {

/// Ordered list of subsystem dimensions together with a split of the
/// subsystems into side A and side B.
///
/// Subsystems are laid out in Kronecker order: subsystem 0 is the most
/// significant index. An empty side B means the shape carries no bipartition
/// (the output of a partial trace that removed one side, for instance);
/// operations that need a cut (partial transpose, fidelity) reject it.
class TensorShape {
 public:
  /// Single subsystem of dimension `dim`, no bipartition.
  explicit TensorShape(int dim);
  /// Subsystems `dims`; the indices in `side_b` form side B, the rest side A.
  /// If `side_b` is nonempty it must leave side A nonempty.
  TensorShape(std::vector<int> dims, std::vector<int> side_b);

  /// C^dA (side A) tensor C^dB (side B).
  static TensorShape bipartite(int dim_a, int dim_b);

  [[nodiscard]] const std::vector<int>& dims() const { return dims_; }
  [[nodiscard]] const std::vector<int>& side_b() const { return side_b_; }
  [[nodiscard]] std::vector<int> side_a() const;
  [[nodiscard]] int subsystem_count() const { return static_cast<int>(dims_.size()); }
  [[nodiscard]] int total_dim() const { return total_; }
  [[nodiscard]] bool is_bipartite() const { return !side_b_.empty(); }
  [[nodiscard]] bool in_side_b(int subsystem) const;

  /// Product of the side-A (resp. side-B) dimensions.
  [[nodiscard]] int dim_a() const;
  [[nodiscard]] int dim_b() const;

  /// Shape of the tensor product: the subsystems of `other` are appended
  /// after ours and keep their side labels.
  [[nodiscard]] TensorShape tensor(const TensorShape& other) const;

  /// Throws unless every index is a valid, distinct subsystem index.
  void check_selection(std::span<const int> subsystems) const;

  bool operator==(const TensorShape& other) const = default;

 private:
  std::vector<int> dims_;
  std::vector<int> side_b_;
  int total_ = 1;
};

}  // namespace pptd
