#ifndef HMT_PARALLEL_HPP
#define HMT_PARALLEL_HPP

#include <functional>

namespace hmt {

/// Global worker count for parallelizable loops (default 1). Results never
/// depend on the thread count: workers own disjoint index ranges and all
/// reductions stay sequential.
void set_num_threads(int n);
int num_threads();

/// Runs fn(i) for i in [0, count) using the configured worker count.
void parallel_for(int count, const std::function<void(int)>& fn);

} // namespace hmt

#endif
