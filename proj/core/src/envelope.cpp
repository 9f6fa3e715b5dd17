#include "qhlab/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qhlab {

int DistortionEnvelope::bucket_of(double t) {
  if (t < kLow) return 0;
  if (t >= kHigh) return kSlots - 1;
  return bucket_of_log(t, std::log(t));
}

double DistortionEnvelope::lower_edge(int b) {
  if (b <= 0) return 0.0;
  if (b >= kSlots - 1) return kHigh;
  return kLow * std::pow(kHigh / kLow, static_cast<double>(b - 1) / kInner);
}

double DistortionEnvelope::upper_edge(int b) {
  if (b >= kSlots - 1) return std::numeric_limits<double>::infinity();
  if (b == kInner) return kHigh;
  return lower_edge(b + 1);
}

int DistortionEnvelope::bucket_of_log(double t, double log_t) {
  static const double log_low = std::log(kLow);
  static const double scale = kInner / std::log(kHigh / kLow);
  static const std::array<double, kSlots + 1> edges = [] {
    std::array<double, kSlots + 1> e{};
    for (int b = 0; b <= kSlots; ++b) e[static_cast<std::size_t>(b)] = b == kSlots ? kHigh * 2 : lower_edge(b);
    return e;
  }();
  if (t < kLow) return 0;
  if (t >= kHigh) return kSlots - 1;
  int b = std::clamp(1 + static_cast<int>(std::floor((log_t - log_low) * scale)), 1, kInner);
  // Rounding in the log can move t across an edge; settle against the edges.
  if (t < edges[static_cast<std::size_t>(b)] && b > 1) --b;
  else if (b < kInner && t >= edges[static_cast<std::size_t>(b + 1)]) ++b;
  return b;
}

namespace {

void absorb(DistortionEnvelope::Bucket& into, const DistortionEnvelope::Bucket& from) {
  if (from.count == 0) return;
  if (into.count == 0) {
    into = from;
    return;
  }
  into.t_min = std::min(into.t_min, from.t_min);
  into.t_max = std::max(into.t_max, from.t_max);
  if (from.sup > into.sup || (from.sup == into.sup && from.scan_index < into.scan_index)) {
    into.sup = from.sup;
    into.t_at_sup = from.t_at_sup;
    into.witness = from.witness;
    into.scan_index = from.scan_index;
  }
  into.count += from.count;
}

} // namespace

void DistortionEnvelope::record(double t_in, double t_out, const std::array<std::uint32_t, 4>& witness,
                                std::uint64_t scan_index) {
  if (!(t_in > 0) || std::isinf(t_in) || std::isnan(t_out)) {
    ++skipped_;
    return;
  }
  Bucket one;
  one.count = 1;
  one.sup = t_out;
  one.t_at_sup = t_in;
  one.t_min = t_in;
  one.t_max = t_in;
  one.witness = witness;
  one.scan_index = scan_index;
  absorb(buckets_[static_cast<std::size_t>(bucket_of(t_in))], one);
}

void DistortionEnvelope::record(int b, double t_in, double t_out, const std::array<std::uint32_t, 4>& witness,
                                std::uint64_t scan_index) {
  if (!(t_in > 0) || std::isinf(t_in) || std::isnan(t_out)) {
    ++skipped_;
    return;
  }
  Bucket& k = buckets_[static_cast<std::size_t>(b)];
  if (k.count == 0) {
    k.count = 1;
    k.sup = t_out;
    k.t_at_sup = t_in;
    k.t_min = k.t_max = t_in;
    k.witness = witness;
    k.scan_index = scan_index;
    return;
  }
  ++k.count;
  k.t_min = std::min(k.t_min, t_in);
  k.t_max = std::max(k.t_max, t_in);
  if (t_out > k.sup || (t_out == k.sup && scan_index < k.scan_index)) {
    k.sup = t_out;
    k.t_at_sup = t_in;
    k.witness = witness;
    k.scan_index = scan_index;
  }
}

void DistortionEnvelope::merge(const DistortionEnvelope& other) {
  for (std::size_t b = 0; b < buckets_.size(); ++b) absorb(buckets_[b], other.buckets_[b]);
  skipped_ += other.skipped_;
}

std::uint64_t DistortionEnvelope::observations() const {
  std::uint64_t n = 0;
  for (const auto& b : buckets_) n += b.count;
  return n;
}

double DistortionEnvelope::envelope(int b) const {
  double v = 0.0;
  for (int i = 0; i <= b && i < kSlots; ++i)
    if (!empty(i)) v = std::max(v, bucket(i).sup);
  return v;
}

double DistortionEnvelope::max_sup() const { return envelope(kSlots - 1); }

ControlFunction DistortionEnvelope::dominating_control() const {
  std::vector<std::pair<double, double>> knots;
  double running = 0.0;
  for (int b = 0; b < kSlots; ++b) {
    if (empty(b)) continue;
    running = std::max(running, bucket(b).sup);
    double y = std::max(running, std::numeric_limits<double>::min());
    if (!knots.empty()) y = std::max(y, std::nextafter(knots.back().second, std::numeric_limits<double>::infinity()));
    knots.emplace_back(bucket(b).t_min, y);
  }
  if (knots.empty()) return ControlFunction::identity();
  if (knots.size() == 1) knots.emplace_back(2.0 * knots[0].first, 2.0 * knots[0].second);
  return ControlFunction::table(std::move(knots));
}

int DistortionEnvelope::first_violation(const ControlFunction& bound, double rel_tol) const {
  for (int b = 0; b < kSlots; ++b) {
    if (empty(b)) continue;
    if (bucket(b).sup > bound(bucket(b).t_max) * (1.0 + rel_tol)) return b;
  }
  return -1;
}

void DistortionEnvelope::write_csv(std::ostream& os) const {
  os << "t_bucket,sup_ratio,witness_id,bucket,count,t_min,t_max,envelope\n";
  os.precision(17);
  for (int b = 0; b < kSlots; ++b) {
    if (empty(b)) continue;
    const auto& k = bucket(b);
    os << k.t_at_sup << ',' << k.sup << ',';
    for (int i = 0; i < arity_; ++i) os << (i ? ":" : "") << k.witness[static_cast<std::size_t>(i)];
    os << ',' << b << ',' << k.count << ',' << k.t_min << ',' << k.t_max << ',' << envelope(b) << "\n";
  }
}

} // namespace qhlab
