#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>
#include <span>

namespace pvclass {

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Deterministic sub-stream seed from a master seed and a path of indices.
///
/// Every replication / chunk / class draws from `Rng(derive_seed(master, {...}))`
/// so results do not depend on how work is partitioned across threads.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

/// Seeded generator with portable uniform and normal variates.
///
/// The standard library distributions are implementation-defined; these are
/// built directly on the 64-bit engine output so a seed gives the same stream
/// on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  /// Standard normal (Box-Muller, second variate cached).
  double normal();
  /// Index drawn with probabilities proportional to `weights`.
  std::size_t categorical(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

/// Seed from std::random_device, for runs where the user gave none.
std::uint64_t entropy_seed();

/// Runs fn(i) for i in [0, count) on up to `threads` workers (0 = hardware).
/// fn must write only to per-index state; exceptions are rethrown (lowest index first).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn, unsigned threads = 0);

}  // namespace pvclass
