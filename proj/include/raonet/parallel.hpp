#pragma once

namespace raonet::parallel {

// Worker-count resolution order: explicit request > RAONET_THREADS > OpenMP default.
int default_workers();
int resolve(int requested);

} // namespace raonet::parallel
