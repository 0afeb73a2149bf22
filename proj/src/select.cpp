#include <algorithm>
#include <vector>

#include "circw/error.hpp"
#include "circw/optimize.hpp"

namespace circw {

namespace {

void insertion_sort(std::span<double> v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double key = v[i];
    std::size_t j = i;
    while (j > 0 && v[j - 1] > key) {
      v[j] = v[j - 1];
      --j;
    }
    v[j] = key;
  }
}

}  // namespace

// Median of medians with groups of five (Blum, Floyd, Pratt, Rivest, Tarjan).
double select_kth_inplace(std::span<double> v, std::size_t k) {
  if (k >= v.size()) throw InvalidArgument("select_kth: index out of range");
  for (;;) {
    const std::size_t n = v.size();
    if (n <= 10) {
      insertion_sort(v);
      return v[k];
    }
    // Group medians are gathered at the front.
    std::size_t groups = 0;
    for (std::size_t i = 0; i < n; i += 5) {
      const std::size_t len = std::min<std::size_t>(5, n - i);
      auto group = v.subspan(i, len);
      insertion_sort(group);
      std::swap(v[groups++], group[(len - 1) / 2]);
    }
    const double pivot = select_kth_inplace(v.first(groups), groups / 2);

    // Three-way partition: [< pivot | == pivot | > pivot].
    std::size_t lt = 0;
    std::size_t i = 0;
    std::size_t gt = n;
    while (i < gt) {
      if (v[i] < pivot) {
        std::swap(v[lt++], v[i++]);
      } else if (v[i] > pivot) {
        std::swap(v[i], v[--gt]);
      } else {
        ++i;
      }
    }
    if (k < lt) {
      v = v.first(lt);
    } else if (k < gt) {
      return pivot;
    } else {
      k -= gt;
      v = v.subspan(gt);
    }
  }
}

double select_kth(std::span<const double> values, std::size_t k,
                  SelectMethod method) {
  if (k >= values.size()) throw InvalidArgument("select_kth: index out of range");
  std::vector<double> scratch(values.begin(), values.end());
  if (method == SelectMethod::Sort) {
    std::sort(scratch.begin(), scratch.end());
    return scratch[k];
  }
  return select_kth_inplace(scratch, k);
}

}  // namespace circw
