#include "gapwalk/engine.hpp"

namespace gapwalk {

template SolutionSet<Accumulation> search(const SearchConfig<Accumulation>&);
template Accumulation recompute_accumulation(const SearchConfig<Accumulation>&, const Traversal&);

}  // namespace gapwalk
