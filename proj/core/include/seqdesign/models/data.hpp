#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace seqdesign {

// Observations in accrual order. arm and status are used by two-arm, censored models.
// status: 0 = event observed, 1 = administrative censoring, 2 = dropout censoring.
struct DataBlock {
  std::vector<double> y;
  std::vector<std::int8_t> arm;
  std::vector<std::int8_t> status;

  std::size_t size() const noexcept { return y.size(); }
  void reserve(std::size_t n);
  void append(const DataBlock& other);
  DataBlock prefix(std::size_t n) const;
  bool operator==(const DataBlock& o) const = default;
};

// Read-only view of the first n observations of a block.
class DataView {
 public:
  DataView(const DataBlock& block, std::size_t n);
  explicit DataView(const DataBlock& block) : DataView(block, block.size()) {}

  std::size_t size() const noexcept { return n_; }
  double y(std::size_t i) const { return block_->y[i]; }
  int arm(std::size_t i) const { return block_->arm.empty() ? 0 : block_->arm[i]; }
  int status(std::size_t i) const { return block_->status.empty() ? 0 : block_->status[i]; }
  const DataBlock& block() const noexcept { return *block_; }

 private:
  const DataBlock* block_;
  std::size_t n_;
};

}  // namespace seqdesign
