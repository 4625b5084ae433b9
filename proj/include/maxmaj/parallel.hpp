// Copyright the maxmaj authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef MAXMAJ_PARALLEL_HPP
#define MAXMAJ_PARALLEL_HPP

#include <functional>

namespace maxmaj
{

// Worker count used by ParallelFor; 1 (the default) runs inline, n <= 0 selects the
// hardware concurrency.
void SetThreadCount(int n);
int ThreadCount();

// Calls fn(i) for i in [0, n). Iterations must be independent; each writes its own slot.
void ParallelFor(int n, const std::function<void(int)> &fn);

}  // namespace maxmaj

#endif  // MAXMAJ_PARALLEL_HPP
