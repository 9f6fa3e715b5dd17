#pragma once

#include "qhlab/control.hpp"

#include <array>
#include <cstdint>
#include <ostream>
#include <vector>

namespace qhlab {

// Bucketed supremum of output ratios against input ratios.
//
// Buckets 1..64 split [1e-4, 1e4] log-uniformly; bucket 0 collects inputs
// below 1e-4 and bucket 65 inputs at or above 1e4.
class DistortionEnvelope {
public:
  static constexpr int kInner = 64;
  static constexpr int kSlots = kInner + 2;
  static constexpr double kLow = 1e-4;
  static constexpr double kHigh = 1e4;

  struct Bucket {
    std::uint64_t count = 0;
    double sup = 0.0;
    double t_at_sup = 0.0;
    double t_min = 0.0;
    double t_max = 0.0;
    std::array<std::uint32_t, 4> witness{0, 0, 0, 0};
    std::uint64_t scan_index = 0;
  };

  explicit DistortionEnvelope(int arity) : arity_(arity) {}

  static int bucket_of(double t);
  static double lower_edge(int b);
  static double upper_edge(int b);
  // Same as bucket_of(t) given log(t) as well; avoids the logarithm when the
  // caller has it from precomputed tables.
  static int bucket_of_log(double t, double log_t);

  // Ties on the value keep the smaller scan index, so merges are order-free.
  void record(double t_in, double t_out, const std::array<std::uint32_t, 4>& witness, std::uint64_t scan_index);
  // As above with b == bucket_of(t_in) already known.
  void record(int b, double t_in, double t_out, const std::array<std::uint32_t, 4>& witness,
              std::uint64_t scan_index);
  void merge(const DistortionEnvelope& other);
  void count_skipped(std::uint64_t n = 1) { skipped_ += n; }

  int arity() const { return arity_; }
  const Bucket& bucket(int b) const { return buckets_[static_cast<std::size_t>(b)]; }
  bool empty(int b) const { return bucket(b).count == 0; }
  std::uint64_t observations() const;
  std::uint64_t skipped() const { return skipped_; }

  // Nondecreasing upper envelope: sup over all nonempty buckets <= b
  // (0 before the first nonempty bucket).
  double envelope(int b) const;
  double max_sup() const;

  // A strictly increasing control function g with t_out <= g(t_in) for every
  // recorded observation.
  ControlFunction dominating_control() const;

  // First nonempty bucket whose sup exceeds bound(t_max of that bucket) times
  // (1 + rel_tol); -1 if none.
  int first_violation(const ControlFunction& bound, double rel_tol = 1e-9) const;

  // One row per nonempty bucket: t_bucket is the input ratio realizing the
  // sup, witness_id joins the witness indices with colons.
  void write_csv(std::ostream& os) const;

private:
  int arity_;
  std::array<Bucket, kSlots> buckets_{};
  std::uint64_t skipped_ = 0;
};

} // namespace qhlab
