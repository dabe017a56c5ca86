#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace seqdesign {

// Philox4x32-10 counter-based generator.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;
PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key);

// Reserved substream lanes. Each replicate owns every lane independently.
enum class Lane : std::uint8_t {
  theta = 1,
  data = 2,
  posterior = 3,
  predictive_fit = 4,
  predictive_data = 5,
  bootstrap = 6,
  calibration = 7,
  chain = 8,
};

// Coordinates of one substream. Distinct keys give statistically independent streams.
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint32_t replicate = 0;
  Lane lane = Lane::theta;
  std::uint8_t stage = 0;
  std::uint16_t sub = 0;
  std::uint32_t index = 0;

  StreamKey with_lane(Lane l) const { StreamKey k = *this; k.lane = l; return k; }
  StreamKey with_stage(std::uint8_t s) const { StreamKey k = *this; k.stage = s; return k; }
  StreamKey with_sub(std::uint16_t s) const { StreamKey k = *this; k.sub = s; return k; }
  StreamKey with_index(std::uint32_t i) const { StreamKey k = *this; k.index = i; return k; }
};

class RngStream {
 public:
  using result_type = std::uint32_t;

  explicit RngStream(const StreamKey& key);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();
  std::uint64_t next_u64();

  // Uniform on the open interval (0,1) with 53-bit resolution.
  double uniform();
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  // Uniform integer on [0, bound).
  std::uint64_t below(std::uint64_t bound);
  double normal();
  double exponential();
  double gamma(double shape);
  double beta(double a, double b);

 private:
  void refill();

  PhiloxKey key_;
  PhiloxCounter ctr_;
  PhiloxCounter buf_{};
  int pos_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace seqdesign
