#include "cvc/dataset.hpp"

#include <string>

#include "cvc/errors.hpp"

namespace cvc {

void LabeledDataset::validate() const {
  if (static_cast<Eigen::Index>(labels.size()) != data.cols())
    throw ParameterError("dataset: label count does not match point count");
  if (n_classes < 1) throw ParameterError("dataset: need at least one class");
  if (!data.allFinite()) throw ParameterError("dataset: non-finite entries");
  std::vector<int> per_class(static_cast<std::size_t>(n_classes), 0);
  bool seen_probe = false;
  for (int v : labels) {
    if (v < 1 || v > probe_label())
      throw ParameterError("dataset: label " + std::to_string(v) +
                           " out of range");
    if (v == probe_label()) {
      seen_probe = true;
    } else {
      if (seen_probe)
        throw ParameterError("dataset: gallery point after probe block");
      ++per_class[static_cast<std::size_t>(v - 1)];
    }
  }
  for (int c = 0; c < n_classes; ++c)
    if (per_class[static_cast<std::size_t>(c)] == 0)
      throw ParameterError("dataset: gallery class " + std::to_string(c + 1) +
                           " has no points");
}

}  // namespace cvc
