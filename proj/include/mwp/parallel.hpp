// Copyright 2026 The mwp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MWP_PARALLEL_HPP_
#define MWP_PARALLEL_HPP_

namespace mwp::parallel {

// Thread budget for OpenMP regions, read from MWP_THREADS on every call.
// Unset, empty, unparsable or 0 means sequential (1).
int thread_count();

}  // namespace mwp::parallel

#endif  // MWP_PARALLEL_HPP_
