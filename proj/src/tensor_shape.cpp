#include "pptd/tensor_shape.hpp"

#include <algorithm>
#include <string>

#include "pptd/errors.hpp"

namespace pptd {

TensorShape::TensorShape(int dim) : dims_{dim}, total_(dim) {
  if (dim < 1) throw InvalidArgument("TensorShape: dimension must be positive");
}

TensorShape::TensorShape(std::vector<int> dims, std::vector<int> side_b)
    : dims_(std::move(dims)), side_b_(std::move(side_b)) {
  if (dims_.empty()) throw InvalidArgument("TensorShape: no subsystems");
  long long total = 1;
  for (int d : dims_) {
    if (d < 1) throw InvalidArgument("TensorShape: subsystem dimensions must be positive");
    total *= d;
    if (total > (1LL << 24)) throw InvalidArgument("TensorShape: total dimension too large");
  }
  total_ = static_cast<int>(total);
  std::sort(side_b_.begin(), side_b_.end());
  check_selection(side_b_);
  // An empty side B means "no bipartition"; otherwise the split must be proper.
  if (!side_b_.empty() && side_b_.size() == dims_.size()) {
    throw InvalidArgument("TensorShape: bipartition must be a nonempty proper split");
  }
}

TensorShape TensorShape::bipartite(int dim_a, int dim_b) {
  return TensorShape({dim_a, dim_b}, {1});
}

std::vector<int> TensorShape::side_a() const {
  std::vector<int> out;
  for (int k = 0; k < subsystem_count(); ++k) {
    if (!in_side_b(k)) out.push_back(k);
  }
  return out;
}

bool TensorShape::in_side_b(int subsystem) const {
  return std::binary_search(side_b_.begin(), side_b_.end(), subsystem);
}

int TensorShape::dim_a() const {
  int d = 1;
  for (int k : side_a()) d *= dims_[k];
  return d;
}

int TensorShape::dim_b() const {
  int d = 1;
  for (int k : side_b_) d *= dims_[k];
  return d;
}

TensorShape TensorShape::tensor(const TensorShape& other) const {
  if (!is_bipartite() || !other.is_bipartite()) {
    throw InvalidArgument("TensorShape::tensor: both factors must be bipartite");
  }
  std::vector<int> dims = dims_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  std::vector<int> side_b = side_b_;
  const int offset = subsystem_count();
  for (int k : other.side_b_) side_b.push_back(k + offset);
  return TensorShape(std::move(dims), std::move(side_b));
}

void TensorShape::check_selection(std::span<const int> subsystems) const {
  std::vector<int> seen;
  for (int k : subsystems) {
    if (k < 0 || k >= subsystem_count()) {
      throw InvalidArgument("subsystem index " + std::to_string(k) + " out of range for " +
                            std::to_string(subsystem_count()) + " subsystems");
    }
    if (std::find(seen.begin(), seen.end(), k) != seen.end()) {
      throw InvalidArgument("subsystem index " + std::to_string(k) + " selected twice");
    }
    seen.push_back(k);
  }
}

}  // namespace pptd
